"""Turn a syntax tree into a :class:`SourceUnit`.

All reasoning is name-based and confined to one file: receiver types come
from local, parameter and field declarations, constants from literal
initializers, and intents are traced within the enclosing method only.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Optional, Union

from iccsmells.common import ParseDiagnostic, SourceLocation
from iccsmells.javasrc import nodes as n
from iccsmells.javasrc.model import (
    NULL, ArgSummary, BodySummary, CallSite, ConstValue, IntentClass, MethodDecl,
    ReceiverKind, SourceUnit, StatementKind, TypeDecl,
)
from iccsmells.javasrc.parser import parse

KIND_BY_TYPE = {
    "PendingIntent": ReceiverKind.PENDING_INTENT,
    "IntentFilter": ReceiverKind.INTENT_FILTER,
    "UriMatcher": ReceiverKind.URI_MATCHER,
    "Binder": ReceiverKind.BINDER,
    "Stub": ReceiverKind.BINDER,
    "WebView": ReceiverKind.WEB_VIEW,
    "LocalBroadcastManager": ReceiverKind.LOCAL_BROADCAST_MANAGER,
}

CONTEXT_TYPES = frozenset("""
    Context ContextWrapper ContextThemeWrapper MockContext
    Activity AppCompatActivity FragmentActivity ComponentActivity ActionBarActivity
    ListActivity PreferenceActivity ExpandableListActivity TabActivity LauncherActivity
    AliasActivity NativeActivity AccountAuthenticatorActivity
    Service IntentService JobIntentService JobService LifecycleService AccessibilityService
    InputMethodService WallpaperService MediaBrowserService MediaBrowserServiceCompat
    NotificationListenerService TileService VpnService HostApduService
    Application MultiDexApplication BackupAgent BackupAgentHelper
""".split())
CONTEXT_SUFFIXES = ("Activity", "Service", "Application")

# Bare calls inside these also go to a Context (receivers get one via onReceive).
BARE_CONTEXT_TYPES = frozenset({"BroadcastReceiver"})

CONTEXT_GETTERS = frozenset({
    "getApplicationContext", "getBaseContext", "getContext", "requireContext",
    "getActivity", "requireActivity", "getApplication",
})

INTENT_TARGETING = frozenset({"setClass", "setClassName", "setComponent", "setPackage"})
INTENT_BUILDERS = INTENT_TARGETING | frozenset({
    "setAction", "setData", "setDataAndType", "setDataAndNormalize", "setDataAndTypeAndNormalize",
    "setType", "setTypeAndNormalize", "putExtra", "putExtras", "replaceExtras", "removeExtra",
    "addFlags", "setFlags", "removeFlags", "addCategory", "removeCategory", "setSelector",
    "setClipData", "setIdentifier", "setSourceBounds", "putParcelableArrayListExtra",
    "putStringArrayListExtra", "putIntegerArrayListExtra", "putCharSequenceArrayListExtra",
})
# Calls that hand back an existing intent of unknown shape.
INTENT_SOURCES = frozenset({"getIntent", "createChooser", "parseUri", "getLaunchIntentForPackage",
                            "makeMainActivity", "cloneFilter"})

Node = Union[n.Expr, n.Stmt]


def children(node) -> list:
    if isinstance(node, (n.Literal, n.Name, n.This, n.Super, n.ClassLit, n.LocalType)):
        return []
    if isinstance(node, n.FieldAccess):
        return [node.target]
    if isinstance(node, n.Call):
        return ([node.target] if node.target is not None else []) + node.args
    if isinstance(node, n.New):
        return ([node.outer] if node.outer is not None else []) + node.args
    if isinstance(node, (n.Cast, n.Paren)):
        return [node.expr]
    if isinstance(node, n.Assign):
        return [node.target, node.value]
    if isinstance(node, n.Binary):
        return [node.left, node.right]
    if isinstance(node, n.Lambda):
        return [node.body]
    if isinstance(node, (n.Opaque, n.OtherStmt)):
        return node.parts
    if isinstance(node, n.Block):
        return node.stmts
    if isinstance(node, n.LocalVar):
        return [init for _, init, _ in node.declarators if init is not None]
    if isinstance(node, n.ExprStmt):
        return [node.expr]
    if isinstance(node, n.Return):
        return [node.expr] if node.expr is not None else []
    return []


def walk(root) -> Iterator:
    """Pre-order traversal that stops at nested type bodies."""
    stack = [root]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def strip(expr):
    while isinstance(expr, n.Paren):
        expr = expr.expr
    return expr


@dataclass
class VarInfo:
    name: str
    type_name: Optional[str]
    init: Optional[n.Expr]
    pos: n.Pos
    kind: str  # local | param | bound | lambda


@dataclass(eq=False)
class TypeCtx:
    node: n.TypeNode
    outer: Optional["TypeCtx"]
    fields: dict[str, n.FieldNode] = field(default_factory=dict)
    scope: Optional["Scope"] = None  # scope the type was declared in (local/anonymous types)

    @property
    def name(self) -> str:
        return self.node.name


@dataclass(eq=False)
class Scope:
    parent: Optional["Scope"]
    type_ctx: TypeCtx
    method_name: str
    vars: dict[str, list[VarInfo]] = field(default_factory=dict)
    assigns: dict[str, list[Optional[n.Expr]]] = field(default_factory=dict)
    calls: list[n.Call] = field(default_factory=list)
    nested: list[n.TypeNode] = field(default_factory=list)

    def declare(self, name: str, type_name: Optional[str], init, pos, kind: str) -> None:
        self.vars.setdefault(name, []).append(VarInfo(name, type_name, init, pos, kind))


class UnitContext:
    """Analysis state for one file; holds every scope and type context."""

    def __init__(self, path: str, unit: n.CompilationUnit) -> None:
        self.path = path
        self.types: list[TypeCtx] = []
        self.types_by_name: dict[str, TypeCtx] = {}
        self.field_assigns: Counter[str] = Counter()
        self.scopes: list[Scope] = []
        self.method_scopes: dict[int, Scope] = {}
        for node in unit.types:
            self._declare_type(node, None, None)

    # -- phase 1: scopes -----------------------------------------------------

    def _declare_type(self, node: n.TypeNode, outer: Optional[TypeCtx], scope: Optional[Scope]) -> TypeCtx:
        ctx = TypeCtx(node, outer, {f.name: f for f in node.fields}, scope)
        self.types.append(ctx)
        self.types_by_name.setdefault(node.name, ctx)
        for method in node.methods:
            s = Scope(scope, ctx, method.name)
            for p in method.params:
                s.declare(p.name, p.type_name, None, method.pos, "param")
            if method.body is not None:
                self._ingest(s, method.body)
            self.method_scopes[id(method)] = s
            self.scopes.append(s)
        if node.fields:
            for is_static in (False, True):
                inits = [f for f in node.fields if f.init is not None and f.is_static == is_static]
                if inits:
                    s = Scope(scope, ctx, "<clinit>" if is_static else "<init>")
                    for f in inits:
                        self._ingest(s, f.init)
                    self.scopes.append(s)
        for member in node.members:
            self._declare_type(member, ctx, scope)
        return ctx

    def _ingest(self, s: Scope, root) -> None:
        for node in walk(root):
            if isinstance(node, n.LocalVar):
                for name, init, pos in node.declarators:
                    s.declare(name, node.type_name, init, pos, "local")
            elif isinstance(node, n.OtherStmt):
                for name, type_name, init, pos in node.binds:
                    s.declare(name, type_name, init, pos, "local" if init is not None else "bound")
            elif isinstance(node, n.Lambda):
                for name in node.params:
                    s.declare(name, None, None, node.pos, "lambda")
            elif isinstance(node, n.Assign):
                self._note_assignment(s, node.target, node.value)
            elif isinstance(node, n.Opaque) and node.what == "inc" and node.parts:
                self._note_assignment(s, node.parts[0], None)
            elif isinstance(node, n.Call):
                s.calls.append(node)
            if isinstance(node, n.New) and node.body is not None:
                s.nested.append(node.body)
            elif isinstance(node, n.LocalType):
                s.nested.append(node.decl)
        for nested in s.nested:
            self._declare_type(nested, s.type_ctx, s)

    def _note_assignment(self, s: Scope, target, value) -> None:
        target = strip(target)
        if isinstance(target, n.Name):
            s.assigns.setdefault(target.ident, []).append(value)
            self.field_assigns[target.ident] += 1
        elif isinstance(target, n.FieldAccess):
            self.field_assigns[target.name] += 1

    # -- lookups -----------------------------------------------------------------

    def lookup(self, name: str, s: Scope) -> Optional[tuple[str, object, object]]:
        """Resolve a simple name to ('var', [VarInfo], Scope) or ('field', FieldNode, TypeCtx)."""
        cur: Optional[Scope] = s
        while cur is not None:
            if name in cur.vars:
                return ("var", cur.vars[name], cur)
            if name in cur.type_ctx.fields:
                return ("field", cur.type_ctx.fields[name], cur.type_ctx)
            if cur.parent is None:
                t = cur.type_ctx.outer
                while t is not None:
                    if name in t.fields:
                        return ("field", t.fields[name], t)
                    t = t.outer
                return None
            cur = cur.parent
        return None

    def class_ref(self, expr, s: Scope) -> Optional[str]:
        """Simple class name when ``expr`` names a type rather than a value."""
        expr = strip(expr)
        if isinstance(expr, n.Name):
            if expr.ident[:1].isupper() and self.lookup(expr.ident, s) is None:
                return expr.ident
            return None
        if isinstance(expr, n.FieldAccess) and expr.name[:1].isupper():
            target = strip(expr.target)
            if isinstance(target, n.Name) and self.lookup(target.ident, s) is None:
                return expr.name
            if isinstance(target, n.FieldAccess) and self.class_ref(target, s) is None \
                    and not target.name[:1].isupper():
                return expr.name
            if self.class_ref(target, s) is not None and expr.name in self.types_by_name:
                return expr.name
        return None

    def _type_ctx_named(self, name: Optional[str], s: Scope) -> Optional[TypeCtx]:
        if name is None:
            return s.type_ctx
        t: Optional[TypeCtx] = s.type_ctx
        while t is not None:
            if t.name == name:
                return t
            t = t.outer
        return self.types_by_name.get(name)

    def type_of(self, expr, s: Scope, depth: int = 0) -> Optional[str]:
        if depth > 20:
            return None
        expr = strip(expr)
        if isinstance(expr, n.Cast):
            return expr.type_name
        if isinstance(expr, n.New):
            return expr.type_name
        if isinstance(expr, n.Literal):
            return {"string": "String", "int": "int", "boolean": "boolean"}.get(expr.kind)
        if isinstance(expr, n.ClassLit):
            return "Class"
        if isinstance(expr, n.Assign):
            return self.type_of(expr.target, s, depth + 1)
        if isinstance(expr, n.This):
            ctx = self._type_ctx_named(expr.qualifier, s)
            return ctx.name if ctx else expr.qualifier
        if isinstance(expr, n.Super):
            ctx = self._type_ctx_named(expr.qualifier, s)
            return ctx.node.supertypes[0] if ctx and ctx.node.supertypes else None
        if isinstance(expr, n.Name):
            found = self.lookup(expr.ident, s)
            if found is None:
                return None
            if found[0] == "field":
                return found[1].type_name
            infos: list[VarInfo] = found[1]
            info = infos[0]
            if info.type_name == "var":
                return self.type_of(info.init, found[2], depth + 1) if info.init is not None else None
            return info.type_name
        if isinstance(expr, n.FieldAccess):
            target = strip(expr.target)
            ctx = None
            if isinstance(target, n.This):
                ctx = self._type_ctx_named(target.qualifier, s)
            else:
                cls = self.class_ref(target, s)
                if cls is not None:
                    ctx = self.types_by_name.get(cls)
            if ctx is not None and expr.name in ctx.fields:
                return ctx.fields[expr.name].type_name
            return None
        if isinstance(expr, n.Call):
            if not expr.args and expr.name in CONTEXT_GETTERS:
                return "Context"
            if expr.target is not None and expr.name == "getInstance":
                cls = self.class_ref(expr.target, s)
                if cls is not None:
                    return cls
            if expr.target is None or isinstance(strip(expr.target), n.This):
                t: Optional[TypeCtx] = s.type_ctx
                while t is not None:
                    for m in t.node.methods:
                        if m.name == expr.name and m.return_type and len(m.params) == len(expr.args):
                            return m.return_type
                    t = t.outer
        return None

    def type_kind(self, type_name: Optional[str], bare: bool = False, seen: Optional[set] = None) -> ReceiverKind:
        if not type_name or type_name.endswith("]"):
            return ReceiverKind.UNKNOWN
        if type_name in KIND_BY_TYPE:
            return KIND_BY_TYPE[type_name]
        if type_name in CONTEXT_TYPES or type_name.endswith(CONTEXT_SUFFIXES):
            return ReceiverKind.CONTEXT_LIKE
        if bare and type_name in BARE_CONTEXT_TYPES:
            return ReceiverKind.CONTEXT_LIKE
        ctx = self.types_by_name.get(type_name)
        if ctx is None:
            return ReceiverKind.UNKNOWN
        seen = seen if seen is not None else set()
        if type_name in seen:
            return ReceiverKind.UNKNOWN
        seen.add(type_name)
        return self._ctx_kind(ctx, bare, seen)

    def _ctx_kind(self, ctx: TypeCtx, bare: bool, seen: Optional[set] = None) -> ReceiverKind:
        seen = seen if seen is not None else {ctx.name}
        for sup in ctx.node.supertypes:
            kind = self.type_kind(sup, bare, seen)
            if kind is not ReceiverKind.UNKNOWN:
                return kind
        return ReceiverKind.UNKNOWN

    # -- receiver kinds --------------------------------------------------------------

    def resolve_receiver_kind(self, call: n.Call, s: Scope) -> ReceiverKind:
        target = strip(call.target) if call.target is not None else None
        if target is None:
            if call.name in ("this", "super"):
                return ReceiverKind.UNKNOWN
            return self._bare_kind(s.type_ctx)
        if isinstance(target, (n.This, n.Super)):
            ctx = self._type_ctx_named(target.qualifier, s)
            return self._bare_kind(ctx, walk_outward=False) if ctx else ReceiverKind.UNKNOWN
        cls = self.class_ref(target, s)
        if cls is not None:
            return self.type_kind(cls)
        return self.type_kind(self.type_of(target, s))

    def _bare_kind(self, ctx: Optional[TypeCtx], walk_outward: bool = True) -> ReceiverKind:
        while ctx is not None:
            kind = self._ctx_kind(ctx, bare=True)
            if kind is not ReceiverKind.UNKNOWN:
                return kind
            if not walk_outward:
                break
            ctx = ctx.outer
        return ReceiverKind.UNKNOWN

    # -- constants -----------------------------------------------------------------

    def evaluate_constant(self, expr, s: Scope, _seen: Optional[set] = None) -> Optional[ConstValue]:
        raw = self._const(expr, s, _seen if _seen is not None else set())
        if raw is None or raw[0] == "char":
            return None
        return ConstValue(*raw)

    def _const(self, expr, s: Scope, seen: set) -> Optional[tuple[str, object]]:
        expr = strip(expr)
        if isinstance(expr, n.Literal):
            if expr.kind == "string":
                return ("string", expr.value)
            if expr.kind == "char":
                return ("char", expr.value)
            if expr.kind == "int" and isinstance(expr.value, int):
                return ("integer", expr.value)
            if expr.kind == "boolean":
                return ("boolean", expr.value)
            if expr.kind == "null":
                return ("null", None)
            return None
        if isinstance(expr, n.Binary) and expr.op == "+":
            left = self._const(expr.left, s, seen)
            right = self._const(expr.right, s, seen)
            if left is None or right is None:
                return None
            if left[0] == "string" or right[0] == "string":
                return ("string", _java_str(left) + _java_str(right))
            return None
        if isinstance(expr, n.Name):
            found = self.lookup(expr.ident, s)
            if found is None:
                return None
            if found[0] == "var":
                infos, scope = found[1], found[2]
                if len(infos) != 1 or infos[0].kind != "local" or infos[0].init is None:
                    return None
                if scope.assigns.get(expr.ident):
                    return None
                return self._guarded_const(("var", id(infos[0])), infos[0].init, scope, seen)
            return self._field_const(found[1], found[2], seen)
        if isinstance(expr, n.FieldAccess):
            target = strip(expr.target)
            ctx = None
            if isinstance(target, n.This):
                ctx = self._type_ctx_named(target.qualifier, s)
            else:
                cls = self.class_ref(target, s)
                if cls is not None:
                    ctx = self.types_by_name.get(cls)
            if ctx is not None and expr.name in ctx.fields:
                return self._field_const(ctx.fields[expr.name], ctx, seen)
        return None

    def _field_const(self, fld: n.FieldNode, ctx: TypeCtx, seen: set):
        if fld.init is None:
            return None
        if not fld.is_final and self.field_assigns[fld.name]:
            return None
        scope = Scope(ctx.scope, ctx, "<field>")
        return self._guarded_const(("field", id(fld)), fld.init, scope, seen)

    def _guarded_const(self, key, init, scope: Scope, seen: set):
        if key in seen:
            return None
        seen.add(key)
        try:
            return self._const(init, scope, seen)
        finally:
            seen.discard(key)

    # -- intents ---------------------------------------------------------------------

    def intent_class(self, expr, s: Scope, at: n.Pos, depth: int = 0) -> Optional[IntentClass]:
        """Classify an expression that yields an Intent; None when it is not one."""
        if depth > 20:
            return IntentClass.UNKNOWN
        expr = strip(expr)
        if isinstance(expr, n.Cast) and expr.type_name == "Intent":
            expr = strip(expr.expr)
        if isinstance(expr, n.New):
            if expr.type_name != "Intent" or expr.body is not None:
                return None
            return self._constructor_class(expr, s, at, depth)
        if isinstance(expr, n.Call):
            if expr.target is not None and expr.name in INTENT_BUILDERS:
                inner = self.intent_class(expr.target, s, at, depth + 1)
                if inner is None:
                    return None
                return IntentClass.EXPLICIT if expr.name in INTENT_TARGETING else inner
            if expr.name in INTENT_SOURCES or self.type_of(expr, s) == "Intent":
                return IntentClass.UNKNOWN
            return None
        if isinstance(expr, n.Name):
            return self._variable_intent_class(expr.ident, s, at, depth)
        if isinstance(expr, n.FieldAccess):
            return IntentClass.UNKNOWN if self.type_of(expr, s) == "Intent" else None
        return None

    def _variable_intent_class(self, name: str, s: Scope, at: n.Pos, depth: int) -> Optional[IntentClass]:
        found = self.lookup(name, s)
        if found is None:
            return None
        if found[0] == "field":
            return IntentClass.UNKNOWN if found[1].type_name == "Intent" else None
        infos: list[VarInfo] = found[1]
        scope: Scope = found[2]
        declared_intent = any(i.type_name == "Intent" for i in infos) or any(
            i.type_name == "var" and i.init is not None
            and self.intent_class(i.init, scope, at, depth + 1) is not None for i in infos)
        if not declared_intent:
            return None
        if len(infos) != 1 or infos[0].kind != "local":
            return IntentClass.UNKNOWN
        assigned = scope.assigns.get(name, [])
        values = ([infos[0].init] if infos[0].init is not None else []) + assigned
        if len(values) != 1 or values[0] is None:
            return IntentClass.UNKNOWN
        base = self.intent_class(values[0], scope, at, depth + 1)
        if base is None:
            return IntentClass.UNKNOWN
        if base is IntentClass.EXPLICIT:
            return base
        if self._targeted_before(name, scope, at):
            return IntentClass.EXPLICIT
        return base

    def _targeted_before(self, name: str, scope: Scope, at: n.Pos) -> bool:
        for call in scope.calls:
            if call.pos >= at:
                continue
            chain: Optional[n.Call] = call
            targeting = False
            root = None
            while isinstance(chain, n.Call):
                if chain.name in INTENT_TARGETING:
                    targeting = True
                if chain.name not in INTENT_BUILDERS:
                    break
                root = strip(chain.target) if chain.target is not None else None
                chain = root if isinstance(root, n.Call) else None
            if targeting and isinstance(root, n.Name) and root.ident == name:
                return True
        return False

    def _constructor_class(self, expr: n.New, s: Scope, at: n.Pos, depth: int) -> IntentClass:
        args = expr.args
        if not args:
            return IntentClass.IMPLICIT
        if len(args) == 1:
            if self.type_of(args[0], s) == "Intent" or self.intent_class(args[0], s, at, depth + 1) is not None:
                return IntentClass.UNKNOWN
            return IntentClass.IMPLICIT
        if len(args) == 2:
            if self._is_class_arg(args[1], s):
                return IntentClass.EXPLICIT
            if self._is_action_arg(args[0], s) or self.type_of(args[1], s) == "Uri":
                return IntentClass.IMPLICIT
            return IntentClass.UNKNOWN
        if len(args) == 4 and self._is_class_arg(args[3], s):
            return IntentClass.EXPLICIT
        return IntentClass.UNKNOWN

    def _is_class_arg(self, expr, s: Scope) -> bool:
        expr = strip(expr)
        if isinstance(expr, n.ClassLit):
            return True
        t = self.type_of(expr, s)
        return t is not None and t.split("<")[0] == "Class"

    def _is_action_arg(self, expr, s: Scope) -> bool:
        const = self.evaluate_constant(expr, s)
        if const is not None and const.kind == "string":
            return True
        if self.type_of(expr, s) == "String":
            return True
        expr = strip(expr)
        name = expr.ident if isinstance(expr, n.Name) else expr.name if isinstance(expr, n.FieldAccess) else ""
        return "ACTION" in name

    def new_type(self, expr, s: Scope, depth: int = 0) -> Optional[str]:
        expr = strip(expr)
        if isinstance(expr, n.New):
            return expr.body.name if expr.body is not None else expr.type_name
        if isinstance(expr, n.Name) and depth < 5:
            found = self.lookup(expr.ident, s)
            if found is not None and found[0] == "var":
                infos, scope = found[1], found[2]
                values = [i.init for i in infos if i.init is not None] + scope.assigns.get(expr.ident, [])
                if len(infos) == 1 and len(values) == 1 and values[0] is not None:
                    return self.new_type(values[0], scope, depth + 1)
            elif found is not None and found[0] == "field":
                fld = found[1]
                if fld.init is not None and not self.field_assigns[fld.name]:
                    return self.new_type(fld.init, Scope(found[2].scope, found[2], "<field>"), depth + 1)
        return None

    # -- phase 2: model ----------------------------------------------------------------

    def arg_summary(self, arg, s: Scope, at: n.Pos) -> ArgSummary:
        const = self.evaluate_constant(arg, s)
        stripped = strip(arg)
        is_null = isinstance(stripped, n.Literal) and stripped.kind == "null"
        if is_null:
            const = NULL
        return ArgSummary(
            const_value=const,
            is_null_literal=is_null,
            intent_class=self.intent_class(arg, s, at),
            new_type=self.new_type(arg, s),
        )

    def call_sites(self) -> list[CallSite]:
        out = []
        for s in self.scopes:
            for call in s.calls:
                if call.target is None and call.name in ("this", "super"):
                    continue
                out.append(CallSite(
                    method_name=call.name,
                    receiver_kind=self.resolve_receiver_kind(call, s),
                    argument_summaries=tuple(self.arg_summary(a, s, call.pos) for a in call.args),
                    enclosing_type=s.type_ctx.name,
                    enclosing_method=s.method_name,
                    location=self.loc(call.pos),
                ))
        out.sort(key=lambda c: (c.location.line, c.location.column))
        return out

    def summarize_method_body(self, method: n.MethodNode, s: Scope) -> BodySummary:
        assert method.body is not None
        stmts = [st for st in method.body.stmts if not (isinstance(st, n.OtherStmt) and st.what == "empty")]
        calls = tuple(c.name for c in _calls_in(method.body))
        kind: Optional[StatementKind] = None
        if len(stmts) == 1:
            kind = _single_statement_kind(stmts[0])
        elif len(stmts) == 2:
            kind = StatementKind.OTHER
            first, second = stmts
            if isinstance(first, n.ExprStmt) and isinstance(second, n.Return):
                call = strip(first.expr)
                if isinstance(call, n.Call) and call.name == "loadUrl" and call.target is not None \
                        and self._is_view_target(call.target, method, s):
                    kind = StatementKind.LOAD_URL_THEN_RETURN
        elif stmts:
            kind = StatementKind.OTHER
        return BodySummary(kind, len(stmts), calls)

    def _is_view_target(self, target, method: n.MethodNode, s: Scope) -> bool:
        target = strip(target)
        if isinstance(target, n.Name) and method.params and target.ident == method.params[0].name:
            return True
        return self.type_kind(self.type_of(target, s)) is ReceiverKind.WEB_VIEW

    def type_decls(self) -> list[TypeDecl]:
        decls = []
        for ctx in self.types:
            methods = []
            for m in ctx.node.methods:
                s = self.method_scopes[id(m)]
                summary = self.summarize_method_body(m, s) if m.body is not None else None
                methods.append(MethodDecl(m.name, len(m.params), summary, self.loc(m.pos)))
            decls.append(TypeDecl(ctx.name, tuple(ctx.node.supertypes), tuple(methods), self.loc(ctx.node.pos)))
        decls.sort(key=lambda d: (d.location.line, d.location.column, d.name))
        return decls

    def loc(self, pos: n.Pos) -> SourceLocation:
        return SourceLocation(self.path, max(pos[0], 1), max(pos[1], 1))


def _java_str(value: tuple[str, object]) -> str:
    kind, v = value
    if kind == "boolean":
        return "true" if v else "false"
    if kind == "null":
        return "null"
    return str(v)


def _calls_in(root) -> Iterator[n.Call]:
    for node in walk(root):
        if isinstance(node, n.Call) and not (node.target is None and node.name in ("this", "super")):
            yield node


def _single_statement_kind(stmt) -> StatementKind:
    if isinstance(stmt, n.Return) and stmt.expr is not None:
        value = strip(stmt.expr)
        if isinstance(value, n.Literal):
            if value.kind == "boolean":
                return StatementKind.RETURN_TRUE if value.value else StatementKind.RETURN_FALSE
            if value.kind == "null":
                return StatementKind.RETURN_NULL
        if isinstance(value, n.Call) and isinstance(value.target, n.Super):
            return StatementKind.SUPER_CALL_ONLY
    if isinstance(stmt, n.ExprStmt):
        value = strip(stmt.expr)
        if isinstance(value, n.Call) and isinstance(value.target, n.Super):
            return StatementKind.SUPER_CALL_ONLY
    return StatementKind.OTHER


def parse_source_unit(text: str, path: str) -> SourceUnit:
    """Model one Java-syntax file. Never raises; problems become diagnostics."""
    try:
        tree, problems = parse(text)
        ctx = UnitContext(path, tree)
        calls = ctx.call_sites()
        decls = ctx.type_decls()
    except RecursionError:
        return SourceUnit(path, diagnostics=(
            ParseDiagnostic(path, 1, 1, "syntax_error", "source too deeply nested to analyze"),))
    diagnostics = tuple(
        ParseDiagnostic(path, max(line, 1), max(col, 1), "syntax_error", msg) for line, col, msg in problems
    )
    return SourceUnit(path, tuple(decls), tuple(calls), diagnostics)
