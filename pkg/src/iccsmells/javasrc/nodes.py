"""Syntax tree produced by the parser.

Only the shapes the analysis needs are distinguished; everything else
collapses into ``Opaque`` (expressions) or ``OtherStmt`` (statements) while
still carrying any nested sub-expressions so calls inside them are seen.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Pos = tuple[int, int]


# -- expressions -------------------------------------------------------------


@dataclass(eq=False)
class Literal:
    kind: str  # string | char | int | float | boolean | null
    value: object
    pos: Pos


@dataclass(eq=False)
class Name:
    ident: str
    pos: Pos


@dataclass(eq=False)
class This:
    qualifier: Optional[str]
    pos: Pos


@dataclass(eq=False)
class Super:
    qualifier: Optional[str]
    pos: Pos


@dataclass(eq=False)
class FieldAccess:
    target: "Expr"
    name: str
    pos: Pos


@dataclass(eq=False)
class Call:
    target: Optional["Expr"]
    name: str
    args: list["Expr"]
    pos: Pos  # position of the method name


@dataclass(eq=False)
class New:
    type_name: str
    args: list["Expr"]
    body: Optional["TypeNode"]
    pos: Pos
    outer: Optional["Expr"] = None


@dataclass(eq=False)
class ClassLit:
    type_name: str
    pos: Pos


@dataclass(eq=False)
class Cast:
    type_name: str
    expr: "Expr"
    pos: Pos


@dataclass(eq=False)
class Assign:
    target: "Expr"
    op: str
    value: "Expr"
    pos: Pos


@dataclass(eq=False)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"
    pos: Pos


@dataclass(eq=False)
class Paren:
    expr: "Expr"
    pos: Pos


@dataclass(eq=False)
class Lambda:
    params: list[str]
    body: Union["Expr", "Block"]
    pos: Pos


@dataclass(eq=False)
class Opaque:
    """Any other expression form; ``parts`` keeps nested expressions and blocks."""

    what: str
    parts: list[Union["Expr", "Stmt"]]
    pos: Pos


Expr = Union[Literal, Name, This, Super, FieldAccess, Call, New, ClassLit, Cast,
             Assign, Binary, Paren, Lambda, Opaque]


# -- statements ----------------------------------------------------------------


@dataclass(eq=False)
class Block:
    stmts: list["Stmt"]
    pos: Pos


@dataclass(eq=False)
class LocalVar:
    type_name: str
    declarators: list[tuple[str, Optional[Expr], Pos]]
    pos: Pos


@dataclass(eq=False)
class ExprStmt:
    expr: Expr
    pos: Pos


@dataclass(eq=False)
class Return:
    expr: Optional[Expr]
    pos: Pos


@dataclass(eq=False)
class LocalType:
    decl: "TypeNode"
    pos: Pos


@dataclass(eq=False)
class OtherStmt:
    """if/for/while/try/switch/throw/... with their sub-parts flattened."""

    what: str
    parts: list[Union[Expr, "Stmt"]]
    pos: Pos
    # Names introduced by the statement itself (for-each variables, catch params, resources).
    binds: list[tuple[str, str, Optional[Expr], Pos]] = field(default_factory=list)


Stmt = Union[Block, LocalVar, ExprStmt, Return, LocalType, OtherStmt]


# -- declarations ----------------------------------------------------------------


@dataclass(eq=False)
class Param:
    name: str
    type_name: str


@dataclass(eq=False)
class MethodNode:
    name: str
    params: list[Param]
    body: Optional[Block]
    pos: Pos
    return_type: Optional[str] = None  # None for constructors and initializer blocks


@dataclass(eq=False)
class FieldNode:
    name: str
    type_name: str
    init: Optional[Expr]
    is_final: bool
    is_static: bool
    pos: Pos


@dataclass(eq=False)
class TypeNode:
    name: str
    kind: str  # class | interface | enum | record | annotation | anonymous
    supertypes: list[str]
    pos: Pos
    methods: list[MethodNode] = field(default_factory=list)
    fields: list[FieldNode] = field(default_factory=list)
    members: list["TypeNode"] = field(default_factory=list)
    # Anonymous bodies of enum constants and ``new X() {...}`` are kept as members too.


@dataclass(eq=False)
class CompilationUnit:
    types: list[TypeNode]
