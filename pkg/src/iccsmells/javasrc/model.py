"""Public, immutable model of one parsed source file."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Optional, Union

from iccsmells.common import ParseDiagnostic, SourceLocation


class ReceiverKind(str, enum.Enum):
    CONTEXT_LIKE = "context_like"
    PENDING_INTENT = "pending_intent"
    INTENT_FILTER = "intent_filter"
    URI_MATCHER = "uri_matcher"
    BINDER = "binder"
    WEB_VIEW = "web_view"
    LOCAL_BROADCAST_MANAGER = "local_broadcast_manager"
    UNKNOWN = "unknown"


class IntentClass(str, enum.Enum):
    IMPLICIT = "implicit"
    EXPLICIT = "explicit"
    UNKNOWN = "unknown"


class StatementKind(str, enum.Enum):
    RETURN_FALSE = "return_false"
    RETURN_TRUE = "return_true"
    RETURN_NULL = "return_null"
    SUPER_CALL_ONLY = "super_call_only"
    LOAD_URL_THEN_RETURN = "load_url_then_return"
    OTHER = "other"


SINGLE_STATEMENT_KINDS = frozenset({
    StatementKind.RETURN_FALSE, StatementKind.RETURN_TRUE,
    StatementKind.RETURN_NULL, StatementKind.SUPER_CALL_ONLY,
})


@dataclass(frozen=True)
class ConstValue:
    kind: str  # string | integer | boolean | null
    value: Union[str, int, bool, None]

    def __post_init__(self) -> None:
        expected = {"string": str, "integer": int, "boolean": bool, "null": type(None)}
        if self.kind not in expected:
            raise ValueError(f"unknown constant kind {self.kind!r}")
        ok = isinstance(self.value, expected[self.kind])
        if self.kind == "integer" and isinstance(self.value, bool):
            ok = False
        if not ok:
            raise ValueError(f"{self.value!r} is not a {self.kind} constant")

    @property
    def is_null(self) -> bool:
        return self.kind == "null"


NULL = ConstValue("null", None)


@dataclass(frozen=True)
class ArgSummary:
    const_value: Optional[ConstValue]
    is_null_literal: bool
    intent_class: Optional[IntentClass] = None
    # Type created by ``new T(...)`` when the argument traces to a constructor;
    # anonymous classes carry their synthetic ``Outer$anonN`` name.
    new_type: Optional[str] = None


@dataclass(frozen=True)
class CallSite:
    method_name: str
    receiver_kind: ReceiverKind
    argument_summaries: tuple[ArgSummary, ...]
    enclosing_type: str
    enclosing_method: str
    location: SourceLocation

    @property
    def arg_count(self) -> int:
        return len(self.argument_summaries)

    def arg(self, index: int) -> Optional[ArgSummary]:
        if 0 <= index < len(self.argument_summaries):
            return self.argument_summaries[index]
        return None


@dataclass(frozen=True)
class BodySummary:
    sole_statement_kind: Optional[StatementKind]
    statement_count: int
    calls_within: tuple[str, ...]


@dataclass(frozen=True)
class MethodDecl:
    name: str
    parameter_count: int
    body_summary: Optional[BodySummary]
    location: SourceLocation


@dataclass(frozen=True)
class TypeDecl:
    name: str
    supertypes: tuple[str, ...]
    methods: tuple[MethodDecl, ...]
    location: SourceLocation

    def methods_named(self, name: str) -> tuple[MethodDecl, ...]:
        return tuple(m for m in self.methods if m.name == name)


@dataclass(frozen=True)
class SourceUnit:
    path: str
    type_decls: tuple[TypeDecl, ...] = ()
    call_sites: tuple[CallSite, ...] = ()
    diagnostics: tuple[ParseDiagnostic, ...] = ()

    def calls_named(self, *names: str) -> tuple[CallSite, ...]:
        return tuple(c for c in self.call_sites if c.method_name in names)


def classify_intent_argument(call: CallSite, index: int) -> IntentClass:
    """Implicit/explicit/unknown for the intent passed at ``index``.

    Arguments the parser could not trace to an intent construction are unknown.
    """
    arg = call.arg(index)
    if arg is None or arg.intent_class is None:
        return IntentClass.UNKNOWN
    return arg.intent_class
