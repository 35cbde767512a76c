import textwrap
from pathlib import Path

import pytest

from iccsmells.javasrc import parse_source_unit
from iccsmells.manifest import parse_manifest
from iccsmells.project import AppModel

MANIFEST_HEAD = ('<?xml version="1.0" encoding="utf-8"?>\n'
                 '<manifest xmlns:android="http://schemas.android.com/apk/res/android" package="{pkg}">\n')


def manifest_xml(body: str = "", app_attrs: str = ' android:taskAffinity=""', top: str = "",
                 pkg: str = "com.t.app") -> str:
    return (MANIFEST_HEAD.format(pkg=pkg) + top
            + f"<application{app_attrs}>\n{body}</application>\n</manifest>\n")


def make_app(sources=None, body: str = "", app_attrs: str = ' android:taskAffinity=""', top: str = "",
             manifest: str = None) -> AppModel:
    """AppModel from in-memory manifest parts and {path: java text}."""
    xml = manifest if manifest is not None else manifest_xml(body, app_attrs, top)
    m = parse_manifest(xml.encode(), "AndroidManifest.xml")
    units = tuple(parse_source_unit(textwrap.dedent(text), path)
                  for path, text in sorted((sources or {}).items()))
    return AppModel(m, units)


def write_project(root: Path, manifest: str, sources=None) -> Path:
    main = root / "app" / "src" / "main"
    main.mkdir(parents=True, exist_ok=True)
    (main / "AndroidManifest.xml").write_text(manifest, encoding="utf-8")
    for rel, text in (sources or {}).items():
        p = main / "java" / rel
        p.parent.mkdir(parents=True, exist_ok=True)
        if isinstance(text, bytes):
            p.write_bytes(text)
        else:
            p.write_text(textwrap.dedent(text), encoding="utf-8")
    return root


@pytest.fixture
def app_factory():
    return make_app
