"""Error-tolerant recursive-descent parser for Java-syntax sources.

The grammar coverage is broad but shallow: statements and expressions are
parsed faithfully enough to find calls, declarations and simple data flow,
while anything unexpected is skipped at the nearest statement or member
boundary and reported as a problem. ``parse`` never raises.
"""

from __future__ import annotations

from typing import Callable, Optional, TypeVar

from iccsmells.javasrc.lexer import PRIMITIVES, Token, tokenize
from iccsmells.javasrc.nodes import (
    Assign, Binary, Block, Call, Cast, ClassLit, CompilationUnit, ExprStmt, FieldAccess,
    FieldNode, Lambda, Literal, LocalType, LocalVar, MethodNode, Name, New, Opaque,
    OtherStmt, Param, Paren, Return, Super, This, TypeNode,
)

T = TypeVar("T")

MAX_DEPTH = 90

MODIFIER_KEYWORDS = frozenset(
    "public private protected static final abstract native synchronized transient "
    "volatile strictfp".split()
)
MODIFIER_IDENTS = frozenset(("sealed",))

PRECEDENCE = {
    "||": 3, "&&": 4, "|": 5, "^": 6, "&": 7, "==": 8, "!=": 8,
    "<": 9, ">": 9, "<=": 9, ">=": 9, "instanceof": 9,
    "<<": 10, ">>": 10, ">>>": 10, "+": 11, "-": 11, "*": 12, "/": 12, "%": 12,
}
ASSIGN_OPS = frozenset("= += -= *= /= %= &= |= ^= <<= >>= >>>=".split())

# Tokens that may start the operand of a cast to a reference type.
_CAST_FOLLOW_OPS = frozenset(("(", "!", "~"))
_CAST_FOLLOW_KWS = frozenset(("this", "super", "new", "true", "false", "null", "switch"))


class ParseError(Exception):
    def __init__(self, tok: Token, message: str) -> None:
        super().__init__(message)
        self.line = tok.line
        self.column = tok.column


def _adjacent(a: Token, b: Token) -> bool:
    return a.line == b.line and b.column == a.column + len(a.text)


class Parser:
    def __init__(self, tokens: list[Token]) -> None:
        self.toks = tokens
        self.i = 0
        self.problems: list[tuple[int, int, str]] = []
        self.type_stack: list[TypeNode] = []
        self.anon_counts: dict[str, int] = {}
        self.depth = 0
        self.no_lambda = False
        self.matching = self._match_brackets()

    # -- token helpers -------------------------------------------------------

    def _match_brackets(self) -> dict[int, int]:
        pairs = {")": "(", "]": "[", "}": "{"}
        stack: list[int] = []
        out: dict[int, int] = {}
        for idx, tok in enumerate(self.toks):
            if tok.kind != "op":
                continue
            if tok.text in "([{":
                stack.append(idx)
            elif tok.text in pairs:
                # Unwind to the nearest opener of the right kind; mismatches stay unmatched.
                for depth in range(len(stack) - 1, -1, -1):
                    if self.toks[stack[depth]].text == pairs[tok.text]:
                        out[stack[depth]] = idx
                        del stack[depth:]
                        break
        return out

    def peek(self, k: int = 0) -> Token:
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else self.toks[-1]

    def next(self) -> Token:
        tok = self.peek()
        if tok.kind != "eof":
            self.i += 1
        return tok

    def at(self, *ops: str) -> bool:
        return self.peek().is_op(*ops)

    def at_kw(self, *words: str) -> bool:
        return self.peek().is_kw(*words)

    def accept(self, op: str) -> bool:
        if self.at(op):
            self.i += 1
            return True
        return False

    def expect(self, op: str) -> Token:
        tok = self.peek()
        if not tok.is_op(op):
            raise ParseError(tok, f"expected {op!r} but found {tok.text or 'end of file'!r}")
        return self.next()

    def expect_kw(self, word: str) -> Token:
        tok = self.peek()
        if not tok.is_kw(word):
            raise ParseError(tok, f"expected {word!r} but found {tok.text or 'end of file'!r}")
        return self.next()

    def ident(self) -> Token:
        tok = self.peek()
        if tok.kind != "ident":
            raise ParseError(tok, f"expected identifier but found {tok.text or 'end of file'!r}")
        return self.next()

    def pos(self, tok: Optional[Token] = None) -> tuple[int, int]:
        tok = tok or self.peek()
        return (tok.line, tok.column)

    def problem(self, line: int, column: int, message: str) -> None:
        self.problems.append((line, column, message))

    def speculate(self, fn: Callable[[], T]) -> Optional[T]:
        start, nprob, nanon = self.i, len(self.problems), dict(self.anon_counts)
        depth = self.depth
        try:
            return fn()
        except (ParseError, RecursionError):
            self.i, self.depth = start, depth
            del self.problems[nprob:]
            self.anon_counts = nanon
            return None

    def enter(self) -> None:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError(self.peek(), "nesting too deep")

    def leave(self) -> None:
        self.depth -= 1

    def recover(self, start: int) -> None:
        """Skip to just after the next ';' or balanced block, or up to a closing '}'."""
        if self.i == start and not self.at("}"):
            self.skip_one()
        elif self.i == start:
            return
        while True:
            tok = self.peek()
            if tok.kind == "eof" or tok.is_op("}"):
                return
            if tok.is_op(";"):
                self.i += 1
                return
            if tok.is_op("{"):
                self.skip_one()
                return
            self.skip_one()

    def skip_one(self) -> None:
        """Advance past one token, or past a whole bracketed group when at an opener."""
        if self.peek().kind == "op" and self.peek().text in "([{" and self.i in self.matching:
            self.i = self.matching[self.i] + 1
        else:
            self.next()

    def guarded(self, fn: Callable[[], None]) -> None:
        start = self.i
        depth = self.depth
        try:
            fn()
        except (ParseError, RecursionError) as exc:
            self.depth = depth
            if isinstance(exc, ParseError):
                self.problem(exc.line, exc.column, str(exc))
            else:
                tok = self.peek()
                self.problem(tok.line, tok.column, "nesting too deep")
            self.recover(start)

    # -- compilation unit ---------------------------------------------------------

    def parse_unit(self) -> CompilationUnit:
        types: list[TypeNode] = []
        while self.peek().kind != "eof":
            tok = self.peek()
            if tok.is_kw("package", "import"):
                self.guarded(self._skip_to_semicolon)
                continue
            if tok.is_op(";"):
                self.next()
                continue
            if tok.is_op("}"):
                self.problem(tok.line, tok.column, "unbalanced '}' at top level")
                self.next()
                continue

            def top() -> None:
                self.modifiers()
                if not self.at_type_start():
                    tok2 = self.peek()
                    raise ParseError(tok2, f"expected a type declaration but found {tok2.text!r}")
                types.append(self.type_decl())

            self.guarded(top)
        return CompilationUnit(types)

    def _skip_to_semicolon(self) -> None:
        while not self.at(";"):
            if self.peek().kind == "eof" or self.at("{", "}"):
                raise ParseError(self.peek(), "expected ';'")
            self.next()
        self.next()

    # -- declarations ----------------------------------------------------------

    def modifiers(self, in_class: bool = False) -> set[str]:
        mods: set[str] = set()
        while True:
            tok = self.peek()
            if tok.kind == "keyword" and tok.text in MODIFIER_KEYWORDS:
                mods.add(tok.text)
                self.next()
            elif tok.kind == "ident" and tok.text in MODIFIER_IDENTS:
                self.next()
            elif tok.kind == "ident" and tok.text == "non" and self.peek(1).is_op("-") \
                    and self.peek(2).text == "sealed":
                self.i += 3
            elif in_class and tok.is_kw("default") and not self.peek(1).is_op(":", "->"):
                mods.add("default")
                self.next()
            elif tok.is_op("@") and not self.peek(1).is_kw("interface"):
                self.annotation()
            else:
                return mods

    def annotation(self) -> None:
        self.expect("@")
        self.ident()
        while self.at(".") and self.peek(1).kind == "ident":
            self.i += 2
        if self.at("("):
            self.skip_one()

    def at_type_start(self) -> bool:
        tok = self.peek()
        if tok.is_kw("class", "interface", "enum"):
            return True
        if tok.is_op("@") and self.peek(1).is_kw("interface"):
            return True
        return tok.kind == "ident" and tok.text == "record" and self.peek(1).kind == "ident" \
            and self.peek(2).is_op("(", "<")

    def type_decl(self) -> TypeNode:
        tok = self.next()
        if tok.is_op("@"):
            self.next()
            kind = "annotation"
        else:
            kind = tok.text
        name_tok = self.ident()
        node = TypeNode(name=name_tok.text, kind=kind, supertypes=[], pos=self.pos(name_tok))
        if self.at("<"):
            self.skip_angle()
        if kind == "record" and self.at("("):
            self.skip_one()
        while True:
            if self.at_kw("extends", "implements"):
                self.next()
                node.supertypes.extend(self.type_list())
            elif self.peek().kind == "ident" and self.peek().text == "permits":
                self.next()
                self.type_list()
            else:
                break
        self.class_body(node)
        return node

    def type_list(self) -> list[str]:
        names = [self.parse_type()]
        while self.accept(","):
            names.append(self.parse_type())
        return names

    def class_body(self, node: TypeNode) -> None:
        self.enter()
        self.expect("{")
        self.type_stack.append(node)
        try:
            if node.kind == "enum":
                self.enum_constants(node)
            while True:
                tok = self.peek()
                if tok.kind == "eof":
                    self.problem(tok.line, tok.column, f"unterminated body of type {node.name!r}")
                    return
                if tok.is_op("}"):
                    self.next()
                    return
                self.guarded(lambda: self.member(node))
        finally:
            self.type_stack.pop()
            self.leave()

    def enum_constants(self, node: TypeNode) -> None:
        while True:
            while self.at("@"):
                self.annotation()
            tok = self.peek()
            if tok.kind != "ident":
                break
            self.next()
            if self.at("("):
                self.skip_one()
            if self.at("{"):
                anon = self.anonymous_type(node.name, tok)
                node.members.append(anon)
            if not self.accept(","):
                break
        self.accept(";")

    def member(self, node: TypeNode) -> None:
        if self.accept(";"):
            return
        if self.at("{"):
            self._initializer(node, "<init>")
            return
        mods = self.modifiers(in_class=True)
        if self.at("{"):
            self._initializer(node, "<clinit>" if "static" in mods else "<init>")
            return
        if self.at_type_start():
            node.members.append(self.type_decl())
            return
        if self.at("<"):
            self.skip_angle()
        tok = self.peek()
        if tok.kind == "ident" and self.peek(1).is_op("("):
            # Constructor (or a record's compact constructor without parens is handled below).
            self.next()
            node.methods.append(self.method_rest(tok, None))
            return
        if tok.kind == "ident" and tok.text == node.name and self.peek(1).is_op("{") \
                and node.kind == "record":
            self.next()
            node.methods.append(MethodNode(tok.text, [], self.block(), self.pos(tok)))
            return
        type_name = self.parse_type()
        name_tok = self.ident()
        if self.at("("):
            node.methods.append(self.method_rest(name_tok, type_name))
            return
        self.field_declarators(node, type_name, name_tok, mods)

    def _initializer(self, node: TypeNode, name: str) -> None:
        tok = self.peek()
        node.methods.append(MethodNode(name, [], self.block(), self.pos(tok)))

    def method_rest(self, name_tok: Token, return_type: Optional[str]) -> MethodNode:
        params = self.parameters()
        while self.at("[") and self.peek(1).is_op("]"):
            self.i += 2
        if self.at_kw("throws"):
            self.next()
            self.type_list()
        if self.at_kw("default"):
            self.next()
            self.skip_element_value()
        body = None
        if self.at("{"):
            body = self.block()
        else:
            self.expect(";")
        return MethodNode(name_tok.text, params, body, self.pos(name_tok), return_type)

    def skip_element_value(self) -> None:
        while not self.at(";"):
            if self.peek().kind == "eof" or self.at("}"):
                raise ParseError(self.peek(), "expected ';'")
            self.skip_one()

    def parameters(self) -> list[Param]:
        self.expect("(")
        params: list[Param] = []
        if self.accept(")"):
            return params
        while True:
            self.modifiers()
            type_name = self.parse_type()
            if self.accept("..."):
                type_name += "[]"
            if self.at_kw("this"):
                self.next()
            else:
                # Receiver parameters may be qualified: Outer.this
                name = self.ident().text
                if self.at(".") and self.peek(1).is_kw("this"):
                    self.i += 2
                else:
                    while self.at("[") and self.peek(1).is_op("]"):
                        self.i += 2
                        type_name += "[]"
                    params.append(Param(name, type_name))
            if self.accept(")"):
                return params
            self.expect(",")

    def field_declarators(self, node: TypeNode, type_name: str, name_tok: Token, mods: set[str]) -> None:
        is_final = "final" in mods or node.kind in ("interface", "annotation")
        is_static = "static" in mods or node.kind in ("interface", "annotation")
        while True:
            t = type_name
            while self.at("[") and self.peek(1).is_op("]"):
                self.i += 2
                t += "[]"
            init = None
            if self.accept("="):
                init = self.var_init()
            node.fields.append(FieldNode(name_tok.text, t, init, is_final, is_static, self.pos(name_tok)))
            if self.accept(";"):
                return
            self.expect(",")
            name_tok = self.ident()

    # -- types --------------------------------------------------------------------

    def parse_type(self) -> str:
        while self.at("@"):
            self.annotation()
        tok = self.peek()
        if tok.kind == "keyword" and tok.text in PRIMITIVES:
            self.next()
            name = tok.text
        elif tok.kind == "ident":
            self.next()
            name = tok.text
            if self.at("<"):
                self.skip_angle()
            while self.at(".") and (self.peek(1).kind == "ident" or self.peek(1).is_op("@")):
                self.next()
                while self.at("@"):
                    self.annotation()
                name = self.ident().text
                if self.at("<"):
                    self.skip_angle()
        else:
            raise ParseError(tok, f"expected a type but found {tok.text or 'end of file'!r}")
        while True:
            while self.at("@") and not self.peek(1).is_kw("interface"):
                self.annotation()
            if self.at("[") and self.peek(1).is_op("]"):
                self.i += 2
                name += "[]"
            else:
                return name

    def skip_angle(self) -> None:
        start = self.peek()
        self.expect("<")
        depth = 1
        while depth:
            tok = self.next()
            if tok.kind == "eof":
                raise ParseError(start, "unterminated type arguments")
            if tok.kind == "op":
                if tok.text == "<":
                    depth += 1
                elif tok.text == ">":
                    depth -= 1
                elif tok.text == ">=":
                    raise ParseError(tok, "unexpected '>=' in type arguments")
                elif tok.text not in (",", ".", "?", "&", "[", "]", "@", "(", ")"):
                    raise ParseError(tok, f"unexpected {tok.text!r} in type arguments")
                elif tok.text in "()":
                    # Annotation arguments are the only parentheses allowed here.
                    prev = self.toks[self.i - 2] if self.i >= 2 else tok
                    if tok.text == "(" and prev.kind == "ident" and self.i - 1 in self.matching:
                        self.i = self.matching[self.i - 1] + 1
                    else:
                        raise ParseError(tok, "unexpected parenthesis in type arguments")
            elif tok.kind == "keyword" and tok.text not in PRIMITIVES and tok.text not in ("extends", "super"):
                raise ParseError(tok, f"unexpected {tok.text!r} in type arguments")
            elif tok.kind in ("string", "char", "number"):
                raise ParseError(tok, "unexpected literal in type arguments")

    # -- statements --------------------------------------------------------------

    def block(self) -> Block:
        open_tok = self.expect("{")
        self.enter()
        stmts: list = []
        try:
            while True:
                tok = self.peek()
                if tok.kind == "eof":
                    self.problem(open_tok.line, open_tok.column, "unterminated block")
                    break
                if tok.is_op("}"):
                    self.next()
                    break
                self.guarded(lambda: stmts.append(self.statement()))
        finally:
            self.leave()
        return Block(stmts, self.pos(open_tok))

    def statement(self):
        self.enter()
        try:
            return self._statement()
        finally:
            self.leave()

    def _statement(self):
        tok = self.peek()
        p = self.pos(tok)
        if tok.is_op("{"):
            return self.block()
        if tok.is_op(";"):
            self.next()
            return OtherStmt("empty", [], p)
        if tok.kind == "keyword":
            handler = getattr(self, f"_stmt_{tok.text}", None)
            if handler is not None:
                return handler(p)
        if tok.kind == "ident":
            nxt = self.peek(1)
            if nxt.is_op(":"):
                self.i += 2
                return OtherStmt("labeled", [self.statement()], p)
            if tok.text == "yield" and not nxt.is_op("=", "(", ".", "[", "++", "--", "+=", "-=", "->", ";"):
                self.next()
                value = self.expr()
                self.expect(";")
                return OtherStmt("yield", [value], p)
        if self.at_local_type_start():
            self.modifiers()
            return LocalType(self.type_decl(), p)
        decl = self.speculate(self.local_var_head)
        if decl is not None:
            type_name, name_tok = decl
            return self.local_var_rest(type_name, name_tok, p)
        expr = self.expr()
        self.expect(";")
        return ExprStmt(expr, p)

    def at_local_type_start(self) -> bool:
        j = 0
        while True:
            tok = self.peek(j)
            if tok.kind == "keyword" and tok.text in ("abstract", "final", "static", "strictfp"):
                j += 1
                continue
            break
        tok = self.peek(j)
        if tok.is_kw("class", "interface", "enum"):
            return True
        return tok.kind == "ident" and tok.text == "record" and self.peek(j + 1).kind == "ident" \
            and self.peek(j + 2).is_op("(", "<")

    def local_var_head(self) -> tuple[str, Token]:
        self.modifiers()
        type_name = self.parse_type()
        name_tok = self.ident()
        if not self.at("=", ";", ",", "[", ":"):
            raise ParseError(self.peek(), "not a declaration")
        return type_name, name_tok

    def local_var_rest(self, type_name: str, name_tok: Token, p) -> LocalVar:
        declarators = []
        while True:
            while self.at("[") and self.peek(1).is_op("]"):
                self.i += 2
            init = self.var_init() if self.accept("=") else None
            declarators.append((name_tok.text, init, self.pos(name_tok)))
            if self.accept(";"):
                return LocalVar(type_name, declarators, p)
            self.expect(",")
            name_tok = self.ident()

    def var_init(self):
        if self.at("{"):
            tok = self.next()
            parts = []
            while not self.at("}"):
                parts.append(self.var_init())
                if not self.accept(","):
                    break
            self.expect("}")
            return Opaque("array_init", parts, self.pos(tok))
        return self.expr()

    def paren_expr(self):
        self.expect("(")
        e = self.expr()
        self.expect(")")
        return e

    def _stmt_if(self, p):
        self.next()
        parts = [self.paren_expr(), self.statement()]
        if self.at_kw("else"):
            self.next()
            parts.append(self.statement())
        return OtherStmt("if", parts, p)

    def _stmt_while(self, p):
        self.next()
        return OtherStmt("while", [self.paren_expr(), self.statement()], p)

    def _stmt_do(self, p):
        self.next()
        body = self.statement()
        self.expect_kw("while")
        cond = self.paren_expr()
        self.expect(";")
        return OtherStmt("do", [body, cond], p)

    def _stmt_for(self, p):
        self.next()
        self.expect("(")

        def each_head():
            self.modifiers()
            type_name = self.parse_type()
            name = self.ident()
            self.expect(":")
            return type_name, name

        head = self.speculate(each_head)
        if head is not None:
            iterable = self.expr()
            self.expect(")")
            stmt = OtherStmt("foreach", [iterable], p,
                             binds=[(head[1].text, head[0], None, self.pos(head[1]))])
            stmt.parts.append(self.statement())
            return stmt
        parts: list = []
        if not self.at(";"):
            decl = self.speculate(self.local_var_head)
            if decl is not None:
                parts.append(self.local_var_rest(decl[0], decl[1], p))
            else:
                parts.append(ExprStmt(self.expr(), p))
                while self.accept(","):
                    parts.append(ExprStmt(self.expr(), p))
                self.expect(";")
        else:
            self.next()
        if not self.at(";"):
            parts.append(self.expr())
        self.expect(";")
        while not self.at(")"):
            parts.append(ExprStmt(self.expr(), p))
            if not self.accept(","):
                break
        self.expect(")")
        parts.append(self.statement())
        return OtherStmt("for", parts, p)

    def _stmt_try(self, p):
        self.next()
        stmt = OtherStmt("try", [], p)
        if self.accept("("):
            while not self.at(")"):
                decl = self.speculate(self._resource_head)
                if decl is not None:
                    type_name, name_tok = decl
                    init = self.expr()
                    stmt.binds.append((name_tok.text, type_name, init, self.pos(name_tok)))
                    stmt.parts.append(init)
                else:
                    stmt.parts.append(self.expr())
                if not self.accept(";"):
                    break
            self.expect(")")
        stmt.parts.append(self.block())
        while self.at_kw("catch"):
            self.next()
            self.expect("(")
            self.modifiers()
            type_name = self.parse_type()
            while self.accept("|"):
                self.parse_type()
            name_tok = self.ident()
            self.expect(")")
            stmt.binds.append((name_tok.text, type_name, None, self.pos(name_tok)))
            stmt.parts.append(self.block())
        if self.at_kw("finally"):
            self.next()
            stmt.parts.append(self.block())
        return stmt

    def _resource_head(self):
        self.modifiers()
        type_name = self.parse_type()
        name_tok = self.ident()
        self.expect("=")
        return type_name, name_tok

    def _stmt_switch(self, p):
        parts = self.switch_body()
        self.accept(";")
        return OtherStmt("switch", parts, p)

    def switch_body(self) -> list:
        self.expect_kw("switch")
        parts: list = [self.paren_expr()]
        open_tok = self.expect("{")
        while True:
            tok = self.peek()
            if tok.kind == "eof":
                self.problem(open_tok.line, open_tok.column, "unterminated switch")
                return parts
            if tok.is_op("}"):
                self.next()
                return parts
            if tok.is_kw("case", "default"):
                self.guarded(lambda: self.switch_label(parts))
            else:
                self.guarded(lambda: parts.append(self.statement()))

    def switch_label(self, parts: list) -> None:
        tok = self.next()
        if tok.is_kw("case"):
            saved = self.no_lambda
            self.no_lambda = True
            try:
                while True:
                    pattern = self.speculate(self._type_pattern)
                    if pattern is None:
                        if self.at_kw("default"):
                            self.next()
                        else:
                            parts.append(self.ternary())
                    if not self.accept(","):
                        break
                if self.peek().kind == "ident" and self.peek().text == "when":
                    self.next()
                    parts.append(self.ternary())
            finally:
                self.no_lambda = saved
        if self.accept(":"):
            return
        self.expect("->")
        if self.at("{"):
            parts.append(self.block())
        elif self.at_kw("throw"):
            parts.append(self.statement())
        else:
            parts.append(ExprStmt(self.expr(), self.pos()))
            self.expect(";")

    def _type_pattern(self):
        self.modifiers()
        self.parse_type()
        if self.at("("):
            self.skip_one()
            if self.peek().kind == "ident":
                self.next()
        else:
            self.ident()
        if not self.at(":", "->", ",") and not (self.peek().kind == "ident" and self.peek().text == "when"):
            raise ParseError(self.peek(), "not a pattern")

    def _stmt_synchronized(self, p):
        self.next()
        return OtherStmt("synchronized", [self.paren_expr(), self.block()], p)

    def _stmt_return(self, p):
        self.next()
        value = None if self.at(";") else self.expr()
        self.expect(";")
        return Return(value, p)

    def _stmt_throw(self, p):
        self.next()
        value = self.expr()
        self.expect(";")
        return OtherStmt("throw", [value], p)

    def _stmt_break(self, p):
        self.next()
        if self.peek().kind == "ident":
            self.next()
        self.expect(";")
        return OtherStmt("break", [], p)

    _stmt_continue = _stmt_break

    def _stmt_assert(self, p):
        self.next()
        parts = [self.expr()]
        if self.accept(":"):
            parts.append(self.expr())
        self.expect(";")
        return OtherStmt("assert", parts, p)

    # -- expressions -------------------------------------------------------------

    def expr(self):
        self.enter()
        try:
            lam = self.lambda_expr()
            if lam is not None:
                return lam
            left = self.ternary()
            op, n = self.peek_operator()
            if op in ASSIGN_OPS:
                tok = self.peek()
                self.i += n
                value = self.expr()
                return Assign(left, op, value, self.pos(tok))
            return left
        finally:
            self.leave()

    def lambda_expr(self):
        if self.no_lambda:
            return None
        tok = self.peek()
        params: list[str] = []
        if tok.kind == "ident" and self.peek(1).is_op("->"):
            params = [tok.text]
            self.i += 2
        elif tok.is_op("(") and self.i in self.matching:
            close = self.matching[self.i]
            if close + 1 < len(self.toks) and self.toks[close + 1].is_op("->"):
                inner = self.toks[self.i + 1:close]
                for k, t in enumerate(inner):
                    if t.kind == "ident" and (k + 1 == len(inner) or inner[k + 1].is_op(",")):
                        params.append(t.text)
                self.i = close + 2
            else:
                return None
        else:
            return None
        body = self.block() if self.at("{") else self.expr()
        return Lambda(params, body, self.pos(tok))

    def peek_operator(self) -> tuple[Optional[str], int]:
        tok = self.peek()
        if tok.kind == "keyword" and tok.text == "instanceof":
            return "instanceof", 1
        if tok.kind != "op":
            return None, 0
        if tok.text == ">":
            t1 = self.peek(1)
            if t1.is_op(">") and _adjacent(tok, t1):
                t2 = self.peek(2)
                if t2.is_op(">") and _adjacent(t1, t2):
                    return ">>>", 3
                if t2.is_op(">=") and _adjacent(t1, t2):
                    return ">>>=", 3
                return ">>", 2
            if t1.is_op(">=") and _adjacent(tok, t1):
                return ">>=", 2
        return tok.text, 1

    def ternary(self):
        cond = self.binary(1)
        if self.at("?"):
            tok = self.next()
            a = self.expr()
            self.expect(":")
            b = self.expr()
            return Opaque("conditional", [cond, a, b], self.pos(tok))
        return cond

    def binary(self, min_prec: int):
        left = self.unary()
        while True:
            op, n = self.peek_operator()
            prec = PRECEDENCE.get(op) if op else None
            if prec is None or prec < min_prec:
                return left
            tok = self.peek()
            self.i += n
            if op == "instanceof":
                self.accept_kw_final()
                self.parse_type()
                if self.at("("):
                    self.skip_one()
                if self.peek().kind == "ident":
                    self.next()
                left = Opaque("instanceof", [left], self.pos(tok))
                continue
            right = self.binary(prec + 1)
            left = Binary(op, left, right, self.pos(tok))

    def accept_kw_final(self) -> None:
        if self.at_kw("final"):
            self.next()

    def unary(self):
        tok = self.peek()
        if tok.is_op("+", "-", "!", "~"):
            self.next()
            operand = self.unary()
            if tok.text == "-" and isinstance(operand, Literal) and operand.kind == "int" \
                    and isinstance(operand.value, int):
                return Literal("int", -operand.value, self.pos(tok))
            return Opaque("unary" + tok.text, [operand], self.pos(tok))
        if tok.is_op("++", "--"):
            self.next()
            return Opaque("inc", [self.unary()], self.pos(tok))
        if tok.is_op("("):
            cast = self.speculate(self._cast)
            if cast is not None:
                return cast
        return self.postfix(self.primary())

    def _cast(self):
        open_tok = self.expect("(")
        first = self.peek()
        type_name = self.parse_type()
        while self.accept("&"):
            self.parse_type()
        self.expect(")")
        nxt = self.peek()
        primitive = first.kind == "keyword" and first.text in PRIMITIVES and not type_name.endswith("]")
        if not primitive:
            ok = nxt.kind in ("ident", "string", "char", "number") \
                or (nxt.kind == "op" and nxt.text in _CAST_FOLLOW_OPS) \
                or (nxt.kind == "keyword" and (nxt.text in _CAST_FOLLOW_KWS or nxt.text in PRIMITIVES))
            if not ok:
                raise ParseError(nxt, "not a cast")
        lam = self.lambda_expr()
        operand = lam if lam is not None else self.unary()
        return Cast(type_name, operand, self.pos(open_tok))

    def postfix(self, e):
        while True:
            tok = self.peek()
            if tok.is_op("."):
                self.next()
                if self.at("<"):
                    self.skip_angle()
                nxt = self.peek()
                if nxt.is_kw("new"):
                    created = self.creator()
                    created.outer = e
                    e = created
                elif nxt.is_kw("this"):
                    self.next()
                    e = This(_simple_name(e), self.pos(nxt))
                elif nxt.is_kw("class"):
                    self.next()
                    e = ClassLit(_qualified_name(e) or "?", self.pos(nxt))
                elif nxt.is_kw("super"):
                    self.next()
                    e = Super(_simple_name(e), self.pos(nxt))
                else:
                    name_tok = self.ident()
                    if self.at("("):
                        e = Call(e, name_tok.text, self.arguments(), self.pos(name_tok))
                    else:
                        e = FieldAccess(e, name_tok.text, self.pos(name_tok))
            elif tok.is_op("["):
                if self.peek(1).is_op("]"):
                    # Array type in a class literal or method reference: String[].class
                    dims = ""
                    while self.at("[") and self.peek(1).is_op("]"):
                        self.i += 2
                        dims += "[]"
                    if self.at("::"):
                        continue
                    self.expect(".")
                    self.expect_kw("class")
                    e = ClassLit((_qualified_name(e) or "?") + dims, self.pos(tok))
                    continue
                self.next()
                index = self.expr()
                self.expect("]")
                e = Opaque("index", [e, index], self.pos(tok))
            elif tok.is_op("++", "--"):
                self.next()
                e = Opaque("inc", [e], self.pos(tok))
            elif tok.is_op("::"):
                self.next()
                if self.at("<"):
                    self.skip_angle()
                if self.at_kw("new"):
                    self.next()
                else:
                    self.ident()
                e = Opaque("methodref", [e], self.pos(tok))
            elif tok.is_op("<") and isinstance(e, (Name, FieldAccess)):
                # Generic type in a method reference: List<String>::new
                ref = self.speculate(self._generic_ref)
                if ref is None:
                    return e
                e = Opaque("methodref", [e], self.pos(tok))
            else:
                return e

    def _generic_ref(self):
        self.skip_angle()
        self.expect("::")
        if self.at_kw("new"):
            self.next()
        else:
            self.ident()
        return True

    def arguments(self) -> list:
        self.expect("(")
        args: list = []
        if self.accept(")"):
            return args
        while True:
            args.append(self.expr())
            if self.accept(")"):
                return args
            self.expect(",")

    def primary(self):
        tok = self.peek()
        p = self.pos(tok)
        kind = tok.kind
        if kind == "string":
            self.next()
            return Literal("string", tok.value, p)
        if kind == "char":
            self.next()
            return Literal("char", tok.value, p)
        if kind == "number":
            self.next()
            if tok.value is None:
                return Literal("float", tok.text, p)
            return Literal("int", tok.value, p)
        if kind == "ident":
            self.next()
            if self.at("("):
                return Call(None, tok.text, self.arguments(), p)
            return Name(tok.text, p)
        if kind == "keyword":
            word = tok.text
            if word in ("true", "false"):
                self.next()
                return Literal("boolean", word == "true", p)
            if word == "null":
                self.next()
                return Literal("null", None, p)
            if word == "this":
                self.next()
                if self.at("("):
                    return Call(None, "this", self.arguments(), p)
                return This(None, p)
            if word == "super":
                self.next()
                if self.at("("):
                    return Call(None, "super", self.arguments(), p)
                return Super(None, p)
            if word == "new":
                return self.creator()
            if word == "switch":
                return Opaque("switch", self.switch_body(), p)
            if word in PRIMITIVES:
                type_name = self.parse_type()
                if self.at("::"):
                    return Name(type_name, p)
                self.expect(".")
                self.expect_kw("class")
                return ClassLit(type_name, p)
        if tok.is_op("("):
            self.next()
            inner = self.expr()
            self.expect(")")
            return Paren(inner, p)
        raise ParseError(tok, f"unexpected {tok.text or 'end of file'!r} in expression")

    def creator(self) -> New | Opaque:
        new_tok = self.expect_kw("new")
        p = self.pos(new_tok)
        while self.at("@"):
            self.annotation()
        if self.at("<"):
            self.skip_angle()
        tok = self.peek()
        if tok.kind == "keyword" and tok.text in PRIMITIVES:
            self.next()
            type_name = tok.text
        else:
            type_name = self.ident().text
            if self.at("<"):
                self.skip_angle()
            while self.at(".") and (self.peek(1).kind == "ident" or self.peek(1).is_op("@")):
                self.next()
                while self.at("@"):
                    self.annotation()
                type_name = self.ident().text
                if self.at("<"):
                    self.skip_angle()
        if self.at("["):
            parts: list = []
            while self.at("["):
                self.next()
                if not self.at("]"):
                    parts.append(self.expr())
                self.expect("]")
            if self.at("{"):
                parts.append(self.var_init())
            return Opaque("new_array", parts, p)
        args = self.arguments()
        body = None
        if self.at("{"):
            outer = self.type_stack[-1].name if self.type_stack else "<unit>"
            body = self.anonymous_type(outer, tok, supertype=type_name)
        return New(type_name, args, body, p)

    def anonymous_type(self, outer: str, tok: Token, supertype: Optional[str] = None) -> TypeNode:
        count = self.anon_counts.get(outer, 0) + 1
        self.anon_counts[outer] = count
        node = TypeNode(
            name=f"{outer}$anon{count}",
            kind="anonymous",
            supertypes=[supertype or outer],
            pos=self.pos(tok),
        )
        self.class_body(node)
        return node


def _simple_name(e) -> Optional[str]:
    if isinstance(e, Name):
        return e.ident
    if isinstance(e, FieldAccess):
        return e.name
    return None


def _qualified_name(e) -> Optional[str]:
    # Class literals keep only the simple name; qualification adds nothing here.
    return _simple_name(e)


def parse(text: str) -> tuple[CompilationUnit, list[tuple[int, int, str]]]:
    """Parse ``text``; returns the tree and (line, column, message) problems."""
    tokens, lex_problems = tokenize(text)
    parser = Parser(tokens)
    try:
        unit = parser.parse_unit()
    except RecursionError:
        tok = parser.peek()
        parser.problem(tok.line, tok.column, "nesting too deep; rest of file skipped")
        unit = CompilationUnit([])
    problems = [(p.line, p.column, p.message) for p in lex_problems] + parser.problems
    problems.sort()
    return unit, problems
