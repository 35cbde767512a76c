"""Discover a project's manifest and sources and model them together."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from iccsmells.common import ParseDiagnostic
from iccsmells.javasrc import SourceUnit, parse_source_unit
from iccsmells.manifest import ManifestModel, StringResourceTable, parse_manifest, parse_string_resources

MANIFEST_NAME = "AndroidManifest.xml"
EXCLUDED_DIRS = frozenset({"build", "test", "androidTest"})
SOURCE_ROOT_DIRS = frozenset({"java", "src"})


class NoManifestFound(Exception):
    pass


@dataclass(frozen=True)
class AppModel:
    manifest: ManifestModel
    units: tuple[SourceUnit, ...] = ()
    diagnostics: tuple[ParseDiagnostic, ...] = ()

    @property
    def app_id(self) -> str:
        return self.manifest.package_name

    def all_diagnostics(self) -> tuple[ParseDiagnostic, ...]:
        out = list(self.diagnostics) + list(self.manifest.diagnostics)
        for unit in self.units:
            out.extend(unit.diagnostics)
        return tuple(out)


def _walk(root: Path) -> list[Path]:
    found = []
    for dirpath, dirnames, filenames in os.walk(root):
        dirnames[:] = sorted(d for d in dirnames if d not in EXCLUDED_DIRS and not d.startswith("."))
        for name in sorted(filenames):
            found.append(Path(dirpath) / name)
    return found


def _rel(path: Path, root: Path) -> str:
    return path.relative_to(root).as_posix()


def _decode(data: bytes) -> str:
    return data.decode("utf-8-sig")


def discover(root: Path) -> tuple[list[Path], list[Path], list[Path]]:
    """Return (manifests, java sources, kotlin sources) under ``root``."""
    manifests, java, kotlin = [], [], []
    for path in _walk(root):
        parts = path.relative_to(root).parts
        if path.name == MANIFEST_NAME:
            manifests.append(path)
        elif path.suffix in (".java", ".kt") and SOURCE_ROOT_DIRS.intersection(parts[:-1]):
            (java if path.suffix == ".java" else kotlin).append(path)
    manifests.sort(key=lambda p: (len(p.relative_to(root).parts), _rel(p, root)))
    return manifests, java, kotlin


def _load_resources(manifest_path: Path, root: Path, diags: list[ParseDiagnostic]) -> Optional[StringResourceTable]:
    strings = manifest_path.parent / "res" / "values" / "strings.xml"
    if not strings.is_file():
        return None
    rel = _rel(strings, root)
    try:
        return parse_string_resources(strings.read_bytes(), rel)
    except Exception as exc:  # a broken strings.xml must not sink the manifest
        diags.append(ParseDiagnostic(rel, 1, 1, "unreadable_file", f"string resources ignored: {exc}"))
        return None


def load_source(path: Path, rel: str) -> SourceUnit:
    try:
        text = _decode(path.read_bytes())
    except OSError as exc:
        return SourceUnit(rel, diagnostics=(ParseDiagnostic(rel, 1, 1, "unreadable_file", str(exc)),))
    except UnicodeDecodeError as exc:
        return SourceUnit(rel, diagnostics=(
            ParseDiagnostic(rel, 1, 1, "unreadable_file", f"not valid UTF-8 at byte {exc.start}"),))
    return parse_source_unit(text, rel)


def build_app_model(project_root) -> AppModel:
    """Model the project under ``project_root``.

    Raises NoManifestFound, or the manifest parser's MalformedXml /
    MissingManifestRoot when the chosen manifest cannot be read.
    """
    root = Path(project_root)
    if not root.is_dir():
        raise NoManifestFound(f"{root}: not a directory")
    manifests, java, kotlin = discover(root)
    if not manifests:
        raise NoManifestFound(f"{root}: no {MANIFEST_NAME} found")

    diags: list[ParseDiagnostic] = []
    chosen = manifests[0]
    for other in manifests[1:]:
        diags.append(ParseDiagnostic(_rel(other, root), 1, 1, "ignored_manifest",
                                     f"additional manifest ignored; using {_rel(chosen, root)}"))
    resources = _load_resources(chosen, root, diags)
    manifest_rel = _rel(chosen, root)
    try:
        manifest_bytes = chosen.read_bytes()
    except OSError as exc:
        raise NoManifestFound(f"{manifest_rel}: {exc}") from exc
    manifest = parse_manifest(manifest_bytes, manifest_rel, resources)
    if resources is not None:
        diags.extend(resources.diagnostics)

    for path in kotlin:
        diags.append(ParseDiagnostic(_rel(path, root), 1, 1, "unsupported_language",
                                     "Kotlin sources are not analyzed"))
    units = tuple(load_source(p, _rel(p, root)) for p in sorted(java, key=lambda p: _rel(p, root)))
    return AppModel(manifest, units, tuple(diags))
