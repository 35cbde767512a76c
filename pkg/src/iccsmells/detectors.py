"""The twelve smell detectors.

Each ``detect_smXX`` is a pure function of an :class:`AppModel`. Detectors
that notice something worth telling the user but not worth a finding accept
an optional ``diagnostics`` list and append to it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Optional

from iccsmells.common import Confidence, ParseDiagnostic, SourceLocation
from iccsmells.javasrc import CallSite, IntentClass, ReceiverKind, StatementKind, TypeDecl, classify_intent_argument
from iccsmells.manifest import ComponentKind, effective_task_affinity
from iccsmells.project import AppModel
from iccsmells.smells import SMELL_IDS, ThreatClass, map_threats, normalize_smell_id, smell

__all__ = [
    "AppModel", "ConfigError", "DetectorConfig", "Finding", "DETECTORS", "load_detector_config",
    "parse_detector_config", "run_all",
] + [f"detect_sm{i:02d}" for i in range(1, 13)]

CTX = ReceiverKind.CONTEXT_LIKE
HIGH, MEDIUM, LOW = Confidence.HIGH, Confidence.MEDIUM, Confidence.LOW


@dataclass(frozen=True)
class Finding:
    smell: str
    location: SourceLocation
    confidence: Confidence
    message: str
    threat_classes: tuple[ThreatClass, ...] = ()
    mitigation_hint: str = ""

    @property
    def title(self) -> str:
        return smell(self.smell).title

    def sort_key(self) -> tuple:
        loc = self.location
        return (loc.file, loc.line, loc.column, self.smell, self.message)


def finding(smell_id: str, location: SourceLocation, confidence: Confidence, message: str) -> Finding:
    return Finding(smell_id, location, confidence, message, map_threats(smell_id), smell(smell_id).mitigation)


def _calls(app: AppModel, names: Iterable[str], kinds: Optional[set] = None) -> list[CallSite]:
    names = frozenset(names)
    out = []
    for unit in app.units:
        for call in unit.call_sites:
            if call.method_name in names and (kinds is None or call.receiver_kind in kinds):
                out.append(call)
    return out


def _where(call: CallSite) -> str:
    return f"in {call.enclosing_type}.{call.enclosing_method}"


# -- SM01 ----------------------------------------------------------------------


def detect_sm01(app: AppModel, strict: bool = False) -> list[Finding]:
    grants = _calls(app, ["grantUriPermission"], {CTX})
    if not grants or (not strict and _calls(app, ["revokeUriPermission"])):
        return []
    return [finding("SM01", c.location, HIGH, f"grantUriPermission {_where(c)} is never revoked")
            for c in grants]


# -- SM02 ----------------------------------------------------------------------

STANDARD_SCHEMES = frozenset({"http", "https", "file", "content", "ftp", "tel", "mailto",
                              "geo", "sms", "smsto", "market"})


def _scheme_confidence(scheme: Optional[str]) -> Confidence:
    return LOW if scheme is not None and scheme.lower() in STANDARD_SCHEMES else HIGH


def detect_sm02(app: AppModel) -> list[Finding]:
    out = []
    for comp in app.manifest.components:
        for flt in comp.intent_filters:
            for scheme, loc in zip(flt.schemes, flt.scheme_locations):
                out.append(finding("SM02", loc, _scheme_confidence(scheme),
                                   f"{comp.name} accepts the URI scheme '{scheme}'"))
    for call in _calls(app, ["addDataScheme"], {ReceiverKind.INTENT_FILTER}):
        arg = call.arg(0)
        const = arg.const_value if arg else None
        scheme = const.value if const is not None and const.kind == "string" else None
        label = f"'{scheme}'" if scheme is not None else "a computed scheme"
        out.append(finding("SM02", call.location, _scheme_confidence(scheme),
                           f"addDataScheme registers {label} {_where(call)}"))
    return out


# -- SM03 ----------------------------------------------------------------------


def detect_sm03(app: AppModel) -> list[Finding]:
    return [finding("SM03", p.location, HIGH, f"permission {p.name} has no protectionLevel")
            for p in app.manifest.permissions_declared if p.protection_level is None]


# -- SM04 ----------------------------------------------------------------------

# Sending method -> index of its receiverPermission argument (None when it has none).
SM04_METHODS = {
    "startActivity": None,
    "sendBroadcast": 1,
    "sendOrderedBroadcast": 1,
    "sendBroadcastAsUser": 2,
    "sendOrderedBroadcastAsUser": 2,
}


def _intent_confidence(call: CallSite, index: int) -> Optional[Confidence]:
    cls = classify_intent_argument(call, index)
    if cls is IntentClass.EXPLICIT:
        return None
    return HIGH if cls is IntentClass.IMPLICIT else LOW


def detect_sm04(app: AppModel) -> list[Finding]:
    out = []
    for call in _calls(app, SM04_METHODS, {CTX}):
        conf = _intent_confidence(call, 0)
        if conf is None:
            continue
        perm_index = SM04_METHODS[call.method_name]
        perm = call.arg(perm_index) if perm_index is not None else None
        if perm is not None:
            if perm.const_value is not None:
                if not perm.const_value.is_null:
                    continue
            else:
                # A computed permission is probably set; keep the finding for triage only.
                conf = LOW
        kind = "implicit" if conf is HIGH else "possibly implicit"
        out.append(finding("SM04", call.location, conf,
                           f"{call.method_name} sends a {kind} intent without a receiver restriction {_where(call)}"))
    return out


# -- SM05 ----------------------------------------------------------------------

STICKY_METHODS = frozenset({
    "sendStickyBroadcast", "sendStickyBroadcastAsUser", "sendStickyOrderedBroadcast",
    "sendStickyOrderedBroadcastAsUser", "removeStickyBroadcast", "removeStickyBroadcastAsUser",
})
BROADCAST_STICKY = "android.permission.BROADCAST_STICKY"


def detect_sm05(app: AppModel) -> list[Finding]:
    calls = _calls(app, STICKY_METHODS, {CTX})
    out = [finding("SM05", c.location, HIGH, f"{c.method_name} {_where(c)}") for c in calls]
    if not calls:
        for use in app.manifest.uses_permissions:
            if use.name == BROADCAST_STICKY:
                out.append(finding("SM05", use.location, LOW,
                                   "BROADCAST_STICKY is requested but no sticky broadcast call was found"))
    return out


# -- SM06 ----------------------------------------------------------------------

WEB_VIEW_CLIENT = "WebViewClient"
PERMISSIVE_OVERRIDE = frozenset({StatementKind.RETURN_FALSE, StatementKind.SUPER_CALL_ONLY,
                                 StatementKind.LOAD_URL_THEN_RETURN})


def _web_view_clients(app: AppModel) -> dict[str, TypeDecl]:
    """Declared types that extend WebViewClient directly or through other declared types."""
    decls: dict[str, TypeDecl] = {}
    for unit in app.units:
        for t in unit.type_decls:
            decls.setdefault(t.name, t)
    memo: dict[str, bool] = {}

    def is_client(name: str, seen: frozenset) -> bool:
        if name == WEB_VIEW_CLIENT:
            return True
        if name in memo:
            return memo[name]
        t = decls.get(name)
        result = t is not None and name not in seen and any(
            is_client(s, seen | {name}) for s in t.supertypes)
        memo[name] = result
        return result

    return {name: t for name, t in decls.items() if is_client(name, frozenset())}


def _overrides_checks(t: TypeDecl) -> bool:
    return bool(t.methods_named("shouldOverrideUrlLoading") or t.methods_named("shouldInterceptRequest"))


def detect_sm06(app: AppModel) -> list[Finding]:
    out = []
    clients = _web_view_clients(app)
    for name, t in sorted(clients.items()):
        for m in t.methods_named("shouldOverrideUrlLoading"):
            kind = m.body_summary.sole_statement_kind if m.body_summary else None
            if kind in PERMISSIVE_OVERRIDE:
                out.append(finding("SM06", m.location, HIGH,
                                   f"{name}.shouldOverrideUrlLoading allows every URL ({kind.value})"))
        for m in t.methods_named("shouldInterceptRequest"):
            kind = m.body_summary.sole_statement_kind if m.body_summary else None
            if kind is StatementKind.RETURN_NULL:
                out.append(finding("SM06", m.location, HIGH,
                                   f"{name}.shouldInterceptRequest passes every request through"))
    for call in _calls(app, ["setWebViewClient"]):
        arg = call.arg(0)
        created = arg.new_type if arg else None
        if created == WEB_VIEW_CLIENT or (created in clients and not _overrides_checks(clients[created])):
            out.append(finding("SM06", call.location, MEDIUM,
                               f"setWebViewClient installs a client with no URL checks {_where(call)}"))
    return out


# -- SM07 ----------------------------------------------------------------------

CALLING_OR_SELF = frozenset({"checkCallingOrSelfPermission", "enforceCallingOrSelfPermission",
                             "checkCallingOrSelfUriPermission", "enforceCallingOrSelfUriPermission"})
PLAIN_CHECKS = frozenset({"checkPermission", "checkUriPermission", "enforcePermission", "enforceUriPermission"})


def detect_sm07(app: AppModel) -> list[Finding]:
    out = []
    if _calls(app, ["startService"]):
        for call in _calls(app, CALLING_OR_SELF):
            out.append(finding("SM07", call.location, HIGH,
                               f"{call.method_name} also passes when the service checks itself {_where(call)}"))
    for unit in app.units:
        identity_types = {c.enclosing_type for c in unit.calls_named("getCallingPid", "getCallingUid")
                          if c.receiver_kind is ReceiverKind.BINDER}
        for call in unit.calls_named(*PLAIN_CHECKS):
            if call.receiver_kind is CTX and call.enclosing_type in identity_types:
                out.append(finding("SM07", call.location, HIGH,
                                   f"{call.method_name} with Binder caller identity {_where(call)}"))
    return out


# -- SM08 / SM09 ---------------------------------------------------------------


def detect_sm08(app: AppModel) -> list[Finding]:
    if not any(c.path_permissions for c in app.manifest.components_of(ComponentKind.PROVIDER)):
        return []
    return [finding("SM08", c.location, HIGH, f"UriMatcher.match {_where(c)} alongside path permissions")
            for c in _calls(app, ["match"], {ReceiverKind.URI_MATCHER})]


def detect_sm09(app: AppModel) -> list[Finding]:
    out = []
    for comp in app.manifest.components_of(ComponentKind.PROVIDER):
        guarded = any(p is not None for p in (comp.permission, comp.read_permission, comp.write_permission))
        for pp in comp.path_permissions:
            out.append(finding("SM09", pp.location, HIGH if guarded else MEDIUM,
                               f"{comp.name} declares a path permission for {pp.path_kind} '{pp.path_spec}'"))
    return out


# -- SM10 ----------------------------------------------------------------------


def detect_sm10(app: AppModel) -> list[Finding]:
    out = []
    for call in _calls(app, ["registerReceiver"], {CTX}):
        perm = call.arg(2)
        if perm is None:
            conf, why = HIGH, "without a broadcast permission"
        elif perm.const_value is None:
            conf, why = LOW, "with a computed broadcast permission"
        elif perm.const_value.kind == "null":
            conf, why = HIGH, "with a null broadcast permission"
        elif perm.const_value.kind == "integer" and call.arg_count == 3:
            # registerReceiver(receiver, filter, flags) carries no permission at all.
            conf, why = HIGH, "without a broadcast permission"
        else:
            continue
        out.append(finding("SM10", call.location, conf, f"registerReceiver {why} {_where(call)}"))
    return out


# -- SM11 ----------------------------------------------------------------------

PENDING_FACTORIES = frozenset({"getActivity", "getBroadcast", "getService", "getForegroundService"})


def detect_sm11(app: AppModel, diagnostics: Optional[list] = None) -> list[Finding]:
    out = []
    for call in _calls(app, PENDING_FACTORIES | {"getActivities"}, {ReceiverKind.PENDING_INTENT}):
        loc = call.location
        if call.method_name == "getActivities":
            if diagnostics is not None:
                diagnostics.append(ParseDiagnostic(loc.file, loc.line, loc.column, "not_analyzed",
                                                   "PendingIntent.getActivities wraps an intent array; not checked"))
            continue
        conf = _intent_confidence(call, 2)
        if conf is None:
            continue
        kind = "an implicit" if conf is HIGH else "a possibly implicit"
        out.append(finding("SM11", loc, conf, f"PendingIntent.{call.method_name} wraps {kind} intent {_where(call)}"))
    return out


# -- SM12 ----------------------------------------------------------------------


def detect_sm12(app: AppModel) -> list[Finding]:
    out = []
    manifest = app.manifest
    for comp in manifest.components_of(ComponentKind.ACTIVITY):
        affinity = effective_task_affinity(comp, manifest)
        if not affinity:
            continue
        loc = comp.location
        if comp.task_affinity is None and manifest.application_location is not None:
            loc = manifest.application_location
        out.append(finding("SM12", loc, MEDIUM, f"activity {comp.name} has task affinity '{affinity}'"))
    return out


# -- orchestration ---------------------------------------------------------------

DETECTORS: dict[str, Callable[..., list[Finding]]] = {
    "SM01": detect_sm01, "SM02": detect_sm02, "SM03": detect_sm03, "SM04": detect_sm04,
    "SM05": detect_sm05, "SM06": detect_sm06, "SM07": detect_sm07, "SM08": detect_sm08,
    "SM09": detect_sm09, "SM10": detect_sm10, "SM11": detect_sm11, "SM12": detect_sm12,
}


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class DetectorConfig:
    enabled: frozenset = field(default_factory=lambda: frozenset(SMELL_IDS))
    min_confidence: Confidence = Confidence.LOW
    sm01_strict: bool = False

    def with_overrides(self, enable=(), disable=(), min_confidence: Optional[Confidence] = None) -> "DetectorConfig":
        enabled = set(self.enabled)
        if enable:
            enabled = {normalize_smell_id(s) for s in enable}
        enabled -= {normalize_smell_id(s) for s in disable}
        return DetectorConfig(frozenset(enabled), min_confidence or self.min_confidence, self.sm01_strict)


def _smell_list(value: str) -> set[str]:
    try:
        return {normalize_smell_id(s) for s in value.split(",") if s.strip()}
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def parse_detector_config(text: str) -> DetectorConfig:
    enabled = set(SMELL_IDS)
    disabled: set[str] = set()
    min_conf = Confidence.LOW
    strict = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip().lower(), value.strip()
        if not sep:
            raise ConfigError(f"line {lineno}: expected key=value")
        if key == "enable":
            enabled = _smell_list(value)
        elif key == "disable":
            disabled |= _smell_list(value)
        elif key == "min_confidence":
            try:
                min_conf = Confidence.parse(value)
            except ValueError as exc:
                raise ConfigError(f"line {lineno}: {exc}") from None
        elif key == "sm01_strict":
            if value.lower() not in ("true", "false"):
                raise ConfigError(f"line {lineno}: sm01_strict must be true or false")
            strict = value.lower() == "true"
        else:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
    return DetectorConfig(frozenset(enabled - disabled), min_conf, strict)


def load_detector_config(path) -> DetectorConfig:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return parse_detector_config(text)


def run_all(app: AppModel, config: Optional[DetectorConfig] = None,
            diagnostics: Optional[list] = None) -> list[Finding]:
    config = config or DetectorConfig()
    out: list[Finding] = []
    for smell_id in SMELL_IDS:
        if smell_id not in config.enabled:
            continue
        if smell_id == "SM01":
            found = detect_sm01(app, strict=config.sm01_strict)
        elif smell_id == "SM11":
            found = detect_sm11(app, diagnostics)
        else:
            found = DETECTORS[smell_id](app)
        out.extend(f for f in found if f.confidence >= config.min_confidence)
    out.sort(key=Finding.sort_key)
    return out
