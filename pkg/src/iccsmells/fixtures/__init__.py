"""Bundled fixture corpus: small projects with hand-written expected findings."""

from __future__ import annotations

import json
import shutil
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from iccsmells.pipeline import analyze_project

CORPUS_DIR = Path(__file__).resolve().parent / "corpus"
EXPECTED_NAME = "expected.json"

Key = tuple[str, str, int, int, str]


@dataclass(frozen=True)
class FixtureResult:
    name: str
    expected: tuple[Key, ...]
    actual: tuple[Key, ...]
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.error is None and Counter(self.expected) == Counter(self.actual)

    def describe(self) -> str:
        if self.error:
            return f"{self.name}: error: {self.error}"
        missing = Counter(self.expected) - Counter(self.actual)
        extra = Counter(self.actual) - Counter(self.expected)
        parts = [f"missing {k}" for k in sorted(missing.elements())]
        parts += [f"unexpected {k}" for k in sorted(extra.elements())]
        return f"{self.name}: " + ("; ".join(parts) if parts else "ok")


def fixture_dirs(root: Path = CORPUS_DIR) -> list[Path]:
    if not Path(root).is_dir():
        return []
    return sorted(p for p in Path(root).iterdir() if (p / EXPECTED_NAME).is_file())


def load_expected(fixture: Path) -> tuple[Key, ...]:
    doc = json.loads((fixture / EXPECTED_NAME).read_text(encoding="utf-8"))
    return tuple(sorted((f["smell"], f["file"], f["line"], f["column"], f["confidence"])
                        for f in doc["findings"]))


def check_fixture(fixture: Path) -> FixtureResult:
    try:
        expected = load_expected(fixture)
    except (OSError, ValueError, KeyError, TypeError) as exc:
        return FixtureResult(fixture.name, (), (), f"bad {EXPECTED_NAME}: {exc}")
    try:
        report = analyze_project(fixture)
    except Exception as exc:  # report any failure per fixture, keep checking the rest
        return FixtureResult(fixture.name, expected, (), f"{type(exc).__name__}: {exc}")
    actual = tuple(sorted((f.smell, f.location.file, f.location.line, f.location.column, f.confidence.label)
                          for f in report.findings))
    return FixtureResult(fixture.name, expected, actual)


def check_corpus(root: Path = CORPUS_DIR) -> list[FixtureResult]:
    return [check_fixture(d) for d in fixture_dirs(root)]


def materialize(dest: Path) -> list[Path]:
    dest = Path(dest)
    dest.mkdir(parents=True, exist_ok=True)
    out = []
    for src in fixture_dirs():
        target = dest / src.name
        shutil.copytree(src, target, dirs_exist_ok=True,
                        ignore=shutil.ignore_patterns("__pycache__"))
        out.append(target)
    return out
