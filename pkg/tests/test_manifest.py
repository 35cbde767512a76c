import pytest
from hypothesis import given, settings, strategies as st

from conftest import manifest_xml
from iccsmells.manifest import (
    ComponentKind, MalformedXml, MissingManifestRoot, effective_task_affinity, parse_manifest,
    parse_string_resources,
)


def parse(xml: str, **kw):
    return parse_manifest(xml.encode("utf-8"), "AndroidManifest.xml", **kw)


def test_components_and_locations():
    xml = manifest_xml(
        '  <activity android:name=".Main" android:exported="TRUE">\n'
        "    <intent-filter>\n"
        '      <action android:name="android.intent.action.VIEW"/>\n'
        '      <data android:scheme="myapp"/>\n'
        "    </intent-filter>\n"
        "  </activity>\n"
        '  <service android:name=".Sync" android:permission="p.SYNC"/>\n')
    m = parse(xml)
    assert m.package_name == "com.t.app"
    main, sync = m.components
    assert main.kind is ComponentKind.ACTIVITY and main.exported is True
    assert main.location.line == 4 and main.location.column == 3
    flt = main.intent_filters[0]
    assert flt.actions == ("android.intent.action.VIEW",)
    assert flt.schemes == ("myapp",)
    assert (flt.scheme_locations[0].line, flt.scheme_locations[0].column) == (7, 7)
    assert sync.permission == "p.SYNC"
    assert m.components_of(ComponentKind.SERVICE) == (sync,)


def test_permissions_declared_and_used():
    xml = manifest_xml(top='<permission android:name="a.P"/>\n'
                           '<permission android:name="a.Q" android:protectionLevel="signature"/>\n'
                           '<uses-permission android:name="android.permission.BROADCAST_STICKY"/>\n')
    m = parse(xml)
    assert [(p.name, p.protection_level) for p in m.permissions_declared] == [("a.P", None), ("a.Q", "signature")]
    assert m.permissions_used == ("android.permission.BROADCAST_STICKY",)
    assert m.uses_permissions[0].location.line == 5


def test_invalid_boolean_becomes_absent_with_diagnostic():
    m = parse(manifest_xml('<receiver android:name=".R" android:exported="yes"/>\n'))
    assert m.components[0].exported is None
    assert [d.kind for d in m.diagnostics] == ["invalid_boolean"]


def test_string_references_resolve_only_when_known():
    res = parse_string_resources(b'<resources><string name="perm">a.b.P</string>'
                                 b'<string name="perm">a.b.Q</string></resources>')
    assert res.get("perm") == "a.b.Q"
    assert [d.kind for d in res.diagnostics] == ["duplicate_resource"]
    xml = manifest_xml(top='<permission android:name="@string/perm"/>\n'
                           '<permission android:name="@string/missing"/>\n')
    m = parse(xml, resources=res)
    assert [p.name for p in m.permissions_declared] == ["a.b.Q", "@string/missing"]
    assert [d.kind for d in m.diagnostics] == ["unresolved_reference"]


def test_path_permission_priority_and_fallback():
    xml = manifest_xml(
        '<provider android:name=".P" android:authorities="a" android:permission="p.ALL">\n'
        '  <path-permission android:pathPrefix="/x" android:path="/x/y" android:permission="p.X"/>\n'
        '  <path-permission android:readPermission="p.R"/>\n'
        '  <path-permission android:pathPattern="/z.*" android:writePermission="p.W"/>\n'
        "</provider>\n")
    m = parse(xml)
    provider = m.components[0]
    assert [(pp.path_kind, pp.path_spec) for pp in provider.path_permissions] == [
        ("path", "/x/y"), ("pathPattern", "/z.*")]
    first, second = provider.path_permissions
    assert (first.read_permission, first.write_permission) == ("p.X", "p.X")
    assert (second.read_permission, second.write_permission) == (None, "p.W")
    assert sorted(d.kind for d in m.diagnostics) == ["ambiguous_path_permission", "invalid_path_permission"]


def test_task_affinity_inheritance():
    xml = manifest_xml('<activity android:name=".A"/>\n'
                       '<activity android:name=".B" android:taskAffinity="x.y"/>\n', app_attrs="")
    m = parse(xml)
    a, b = m.components
    assert effective_task_affinity(a, m) == "com.t.app"
    assert effective_task_affinity(b, m) == "x.y"
    m2 = parse(manifest_xml('<activity android:name=".A"/>\n'))
    assert effective_task_affinity(m2.components[0], m2) == ""


def test_bom_is_accepted():
    m = parse_manifest("﻿".encode() + manifest_xml().encode(), "AndroidManifest.xml")
    assert m.package_name == "com.t.app"


@pytest.mark.parametrize("xml", [
    "<manifest package='a'>",
    "<manifest package='a'></manifest><extra/>",
    "",
    '<!DOCTYPE m [<!ENTITY x "boom">]><manifest package="a">&x;</manifest>',
])
def test_malformed_xml(xml):
    with pytest.raises(MalformedXml):
        parse_manifest(xml.encode(), "AndroidManifest.xml")


@pytest.mark.parametrize("xml", ["<resources/>", "<manifest/>", '<manifest package=" "/>'])
def test_missing_manifest_root(xml):
    with pytest.raises(MissingManifestRoot):
        parse_manifest(xml.encode(), "AndroidManifest.xml")


@settings(max_examples=200, deadline=None)
@given(st.binary(max_size=300))
def test_arbitrary_bytes_raise_only_documented_errors(data):
    try:
        parse_manifest(data, "AndroidManifest.xml")
    except (MalformedXml, MissingManifestRoot):
        pass
