import os

import pytest

from conftest import manifest_xml, write_project
from iccsmells.manifest import MalformedXml
from iccsmells.project import NoManifestFound, build_app_model

SRC = """
    class A extends Activity {
        void m() { sendBroadcast(new Intent("x")); }
    }
"""


def test_two_sources(tmp_path):
    write_project(tmp_path, manifest_xml(), {"com/t/A.java": SRC, "com/t/B.java": "class B {}"})
    app = build_app_model(tmp_path)
    assert [u.path for u in app.units] == ["app/src/main/java/com/t/A.java", "app/src/main/java/com/t/B.java"]
    assert app.manifest.source_path == "app/src/main/AndroidManifest.xml"
    assert app.app_id == "com.t.app"


def test_missing_manifest(tmp_path):
    (tmp_path / "src").mkdir()
    with pytest.raises(NoManifestFound):
        build_app_model(tmp_path)
    with pytest.raises(NoManifestFound):
        build_app_model(tmp_path / "nope")


def test_unreadable_and_undecodable_files(tmp_path):
    write_project(tmp_path, manifest_xml(), {"com/t/A.java": SRC, "com/t/Bad.java": b"\xff\xfe\x00junk"})
    bad = tmp_path / "app/src/main/java/com/t/Locked.java"
    bad.write_text(SRC)
    os.chmod(bad, 0)
    try:
        app = build_app_model(tmp_path)
    finally:
        os.chmod(bad, 0o644)
    by_path = {u.path.rsplit("/", 1)[-1]: u for u in app.units}
    assert len(by_path["A.java"].call_sites) == 1
    assert [d.kind for d in by_path["Bad.java"].diagnostics] == ["unreadable_file"]
    if os.geteuid() != 0:  # root can read mode-000 files
        assert [d.kind for d in by_path["Locked.java"].diagnostics] == ["unreadable_file"]


def test_excluded_dirs_kotlin_and_extra_manifests(tmp_path):
    write_project(tmp_path, manifest_xml(), {"com/t/A.java": SRC, "com/t/K.kt": "class K"})
    for sub in ("app/build/gen/java", "app/src/test/java", "app/src/androidTest/java"):
        d = tmp_path / sub
        d.mkdir(parents=True)
        (d / "X.java").write_text(SRC)
    extra = tmp_path / "lib/src/main/deeper"
    extra.mkdir(parents=True)
    (extra / "AndroidManifest.xml").write_text(manifest_xml(pkg="com.other"))
    (tmp_path / "app/build/AndroidManifest.xml").write_text(manifest_xml(pkg="com.built"))
    app = build_app_model(tmp_path)
    assert app.app_id == "com.t.app"
    assert [u.path for u in app.units] == ["app/src/main/java/com/t/A.java"]
    kinds = sorted(d.kind for d in app.diagnostics)
    assert kinds == ["ignored_manifest", "unsupported_language"]


def test_shallowest_manifest_wins(tmp_path):
    (tmp_path / "AndroidManifest.xml").write_text(manifest_xml(pkg="com.top"))
    write_project(tmp_path, manifest_xml(pkg="com.deep"))
    assert build_app_model(tmp_path).app_id == "com.top"


def test_string_resources_next_to_manifest(tmp_path):
    write_project(tmp_path, manifest_xml(top='<permission android:name="@string/p"/>\n'))
    values = tmp_path / "app/src/main/res/values"
    values.mkdir(parents=True)
    (values / "strings.xml").write_text('<resources><string name="p">com.t.P</string></resources>')
    app = build_app_model(tmp_path)
    assert app.manifest.permissions_declared[0].name == "com.t.P"


def test_malformed_manifest_is_fatal(tmp_path):
    write_project(tmp_path, "<manifest package='a'>")
    with pytest.raises(MalformedXml):
        build_app_model(tmp_path)
