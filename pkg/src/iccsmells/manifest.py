"""Typed, immutable view of ``AndroidManifest.xml`` and ``strings.xml``.

Parsing goes through expat directly because ElementTree drops element
positions, and every manifest-side finding has to point at a line and column.
"""

from __future__ import annotations

import enum
import xml.parsers.expat
from dataclasses import dataclass, field
from typing import Mapping, Optional

from iccsmells.common import ParseDiagnostic, SourceLocation

ANDROID_NS = "http://schemas.android.com/apk/res/android"

COMPONENT_TAGS = ("activity", "service", "receiver", "provider")

# Priority order used when a <path-permission> carries more than one spec.
PATH_SPEC_KINDS = ("path", "pathPrefix", "pathPattern", "pathAdvancedPattern")


class MalformedXml(Exception):
    def __init__(self, position: tuple[int, int], reason: str) -> None:
        super().__init__(f"malformed XML at {position[0]}:{position[1]}: {reason}")
        self.position = position
        self.reason = reason


class MissingManifestRoot(Exception):
    pass


class ComponentKind(str, enum.Enum):
    ACTIVITY = "activity"
    SERVICE = "service"
    RECEIVER = "receiver"
    PROVIDER = "provider"


@dataclass(frozen=True)
class PermissionDecl:
    name: str
    protection_level: Optional[str]
    location: SourceLocation


@dataclass(frozen=True)
class UsesPermissionDecl:
    name: str
    location: SourceLocation


@dataclass(frozen=True)
class IntentFilterDecl:
    actions: tuple[str, ...]
    categories: tuple[str, ...]
    schemes: tuple[str, ...]
    location: SourceLocation
    # One location per entry in ``schemes``.
    scheme_locations: tuple[SourceLocation, ...] = ()


@dataclass(frozen=True)
class PathPermissionDecl:
    path_spec: str
    path_kind: str
    read_permission: Optional[str]
    write_permission: Optional[str]
    location: SourceLocation


@dataclass(frozen=True)
class ComponentDecl:
    kind: ComponentKind
    name: str
    exported: Optional[bool]
    permission: Optional[str]
    read_permission: Optional[str]
    write_permission: Optional[str]
    task_affinity: Optional[str]
    intent_filters: tuple[IntentFilterDecl, ...]
    path_permissions: tuple[PathPermissionDecl, ...]
    location: SourceLocation


@dataclass(frozen=True)
class ManifestModel:
    package_name: str
    permissions_declared: tuple[PermissionDecl, ...]
    uses_permissions: tuple[UsesPermissionDecl, ...]
    components: tuple[ComponentDecl, ...]
    application_task_affinity: Optional[str]
    source_path: str
    application_location: Optional[SourceLocation] = None
    diagnostics: tuple[ParseDiagnostic, ...] = ()

    @property
    def permissions_used(self) -> tuple[str, ...]:
        return tuple(u.name for u in self.uses_permissions)

    def components_of(self, kind: ComponentKind) -> tuple[ComponentDecl, ...]:
        return tuple(c for c in self.components if c.kind is kind)


@dataclass(frozen=True)
class StringResourceTable:
    values: Mapping[str, str] = field(default_factory=dict)
    diagnostics: tuple[ParseDiagnostic, ...] = ()

    def __contains__(self, key: str) -> bool:
        return key in self.values

    def __len__(self) -> int:
        return len(self.values)

    def get(self, key: str) -> Optional[str]:
        return self.values.get(key)


@dataclass
class _Element:
    ns: str
    tag: str
    attrs: dict[tuple[str, str], str]
    line: int
    column: int
    children: list["_Element"] = field(default_factory=list)
    text: list[str] = field(default_factory=list)

    def android(self, name: str) -> Optional[str]:
        return self.attrs.get((ANDROID_NS, name))

    def plain(self, name: str) -> Optional[str]:
        return self.attrs.get(("", name))

    def find_all(self, tag: str) -> list["_Element"]:
        return [c for c in self.children if c.tag == tag and not c.ns]


def _split_name(name: str) -> tuple[str, str]:
    ns, sep, local = name.rpartition(" ")
    return (ns, local) if sep else ("", name)


def _parse_tree(xml_bytes: bytes) -> _Element:
    parser = xml.parsers.expat.ParserCreate(namespace_separator=" ")
    stack: list[_Element] = []
    root: list[_Element] = []

    def start(name: str, attrs: dict[str, str]) -> None:
        ns, tag = _split_name(name)
        elem = _Element(
            ns=ns,
            tag=tag,
            attrs={_split_name(k): v for k, v in attrs.items()},
            line=parser.CurrentLineNumber,
            column=parser.CurrentColumnNumber + 1,
        )
        if stack:
            stack[-1].children.append(elem)
        else:
            root.append(elem)
        stack.append(elem)

    def end(name: str) -> None:
        stack.pop()

    def chars(data: str) -> None:
        if stack:
            stack[-1].text.append(data)

    def entity_decl(*args: object) -> None:
        # Refuse entity declarations outright; manifests never need them.
        raise MalformedXml(
            (parser.CurrentLineNumber, parser.CurrentColumnNumber + 1),
            "entity declarations are not supported",
        )

    parser.StartElementHandler = start
    parser.EndElementHandler = end
    parser.CharacterDataHandler = chars
    parser.EntityDeclHandler = entity_decl
    try:
        parser.Parse(xml_bytes, True)
    except xml.parsers.expat.ExpatError as exc:
        raise MalformedXml(
            (exc.lineno, exc.offset + 1), xml.parsers.expat.ErrorString(exc.code)
        ) from None
    if not root:
        raise MalformedXml((1, 1), "no root element")
    return root[0]


def parse_string_resources(xml_bytes: bytes, path: str = "strings.xml") -> StringResourceTable:
    """Read ``<string name="k">v</string>`` entries; other elements are ignored.

    Duplicate keys keep the last value and leave a diagnostic behind.
    """
    root = _parse_tree(xml_bytes)
    values: dict[str, str] = {}
    diagnostics: list[ParseDiagnostic] = []
    for elem in root.find_all("string"):
        key = elem.plain("name")
        if not key:
            continue
        if key in values:
            diagnostics.append(
                ParseDiagnostic(path, elem.line, elem.column, "duplicate_resource",
                                f"string resource {key!r} defined more than once; last one wins")
            )
        values[key] = _unescape_resource("".join(elem.text))
    return StringResourceTable(values=values, diagnostics=tuple(diagnostics))


def _unescape_resource(text: str) -> str:
    text = text.strip()
    if len(text) >= 2 and text[0] == text[-1] == '"':
        return text[1:-1]
    return text.replace("\\'", "'").replace('\\"', '"').replace("\\n", "\n")


class _Resolver:
    def __init__(self, path: str, resources: Optional[StringResourceTable]) -> None:
        self.path = path
        self.resources = resources
        self.diagnostics: list[ParseDiagnostic] = []

    def note(self, elem: _Element, kind: str, message: str) -> None:
        self.diagnostics.append(ParseDiagnostic(self.path, elem.line, elem.column, kind, message))

    def value(self, elem: _Element, name: str) -> Optional[str]:
        raw = elem.android(name)
        if raw is None or not raw.startswith("@"):
            return raw
        if raw.startswith("@string/") and self.resources is not None:
            resolved = self.resources.get(raw[len("@string/"):])
            if resolved is not None:
                return resolved
        self.note(elem, "unresolved_reference", f"android:{name}={raw!r} left unresolved")
        return raw

    def boolean(self, elem: _Element, name: str) -> Optional[bool]:
        raw = self.value(elem, name)
        if raw is None:
            return None
        lowered = raw.strip().lower()
        if lowered in ("true", "false"):
            return lowered == "true"
        self.note(elem, "invalid_boolean", f"android:{name}={raw!r} is not a boolean")
        return None

    def location(self, elem: _Element) -> SourceLocation:
        return SourceLocation(self.path, elem.line, elem.column)


def parse_manifest(
    xml_bytes: bytes,
    path: str = "AndroidManifest.xml",
    resources: Optional[StringResourceTable] = None,
) -> ManifestModel:
    root = _parse_tree(xml_bytes)
    if root.tag != "manifest" or root.ns:
        raise MissingManifestRoot(f"{path}: root element is <{root.tag}>, expected <manifest>")
    package = (root.plain("package") or "").strip()
    if not package:
        raise MissingManifestRoot(f"{path}: <manifest> has no package attribute")

    res = _Resolver(path, resources)
    permissions = []
    for elem in root.find_all("permission"):
        name = res.value(elem, "name")
        if name:
            permissions.append(PermissionDecl(name, res.value(elem, "protectionLevel"), res.location(elem)))

    uses = []
    for tag in ("uses-permission", "uses-permission-sdk-23"):
        for elem in root.find_all(tag):
            name = res.value(elem, "name")
            if name:
                uses.append(UsesPermissionDecl(name, res.location(elem)))
    uses.sort(key=lambda u: (u.location.line, u.location.column))

    components: list[ComponentDecl] = []
    app_affinity = None
    app_location = None
    for app in root.find_all("application"):
        app_location = res.location(app)
        app_affinity = res.value(app, "taskAffinity")
        for child in app.children:
            if child.ns or child.tag not in COMPONENT_TAGS:
                continue
            components.append(_component(child, res))

    return ManifestModel(
        package_name=package,
        permissions_declared=tuple(permissions),
        uses_permissions=tuple(uses),
        components=tuple(components),
        application_task_affinity=app_affinity,
        source_path=path,
        application_location=app_location,
        diagnostics=tuple(res.diagnostics),
    )


def _component(elem: _Element, res: _Resolver) -> ComponentDecl:
    kind = ComponentKind(elem.tag)
    filters = tuple(_intent_filter(f, res) for f in elem.find_all("intent-filter"))
    path_perms: tuple[PathPermissionDecl, ...] = ()
    if kind is ComponentKind.PROVIDER:
        path_perms = tuple(
            p for p in (_path_permission(e, res) for e in elem.find_all("path-permission")) if p
        )
    return ComponentDecl(
        kind=kind,
        name=res.value(elem, "name") or "",
        exported=res.boolean(elem, "exported"),
        permission=res.value(elem, "permission"),
        read_permission=res.value(elem, "readPermission"),
        write_permission=res.value(elem, "writePermission"),
        task_affinity=res.value(elem, "taskAffinity") if kind is ComponentKind.ACTIVITY else None,
        intent_filters=filters,
        path_permissions=path_perms,
        location=res.location(elem),
    )


def _intent_filter(elem: _Element, res: _Resolver) -> IntentFilterDecl:
    actions = [v for v in (res.value(a, "name") for a in elem.find_all("action")) if v]
    categories = [v for v in (res.value(c, "name") for c in elem.find_all("category")) if v]
    schemes: list[str] = []
    locations: list[SourceLocation] = []
    for data in elem.find_all("data"):
        scheme = res.value(data, "scheme")
        if scheme:
            schemes.append(scheme)
            locations.append(res.location(data))
    return IntentFilterDecl(
        actions=tuple(actions),
        categories=tuple(categories),
        schemes=tuple(schemes),
        location=res.location(elem),
        scheme_locations=tuple(locations),
    )


def _path_permission(elem: _Element, res: _Resolver) -> Optional[PathPermissionDecl]:
    present = [k for k in PATH_SPEC_KINDS if elem.android(k) is not None]
    if not present:
        res.note(elem, "invalid_path_permission", "<path-permission> without a path specification")
        return None
    if len(present) > 1:
        res.note(elem, "ambiguous_path_permission",
                 f"several path specifications ({', '.join(present)}); using android:{present[0]}")
    kind = present[0]
    shared = res.value(elem, "permission")
    return PathPermissionDecl(
        path_spec=res.value(elem, kind) or "",
        path_kind=kind,
        read_permission=res.value(elem, "readPermission") or shared,
        write_permission=res.value(elem, "writePermission") or shared,
        location=res.location(elem),
    )


def effective_task_affinity(component: ComponentDecl, manifest: ManifestModel) -> str:
    """Affinity the platform would use: own value, then application value, then package."""
    if component.task_affinity is not None:
        return component.task_affinity
    if manifest.application_task_affinity is not None:
        return manifest.application_task_affinity
    return manifest.package_name
