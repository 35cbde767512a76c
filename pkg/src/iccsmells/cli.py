"""Command-line entry point: ``iccsmells analyze|batch|stats|fixtures``."""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path
from typing import Optional, Sequence

from iccsmells import fixtures
from iccsmells.common import Confidence
from iccsmells.detectors import ConfigError, DetectorConfig, load_detector_config
from iccsmells.manifest import MalformedXml, MissingManifestRoot
from iccsmells.pipeline import analyze_project
from iccsmells.project import NoManifestFound
from iccsmells.reporting import RENDERERS, MalformedReport, Report, parse_report
from iccsmells.smells import normalize_smell_id
from iccsmells import stats

log = logging.getLogger("iccsmells")

EXIT_CLEAN, EXIT_FINDINGS, EXIT_FATAL = 0, 1, 2
EXTENSIONS = {"text": "txt", "json": "json", "xml": "xml"}
PROJECT_ERRORS = (NoManifestFound, MalformedXml, MissingManifestRoot, OSError)
_UNSAFE_FILENAME = re.compile(r"[^A-Za-z0-9._-]")


class UsageError(Exception):
    pass


def _smell_arg(text: str) -> str:
    try:
        return normalize_smell_id(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _detector_options(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=sorted(EXTENSIONS), default=None,
                   help="report format (default: text for analyze, json for batch)")
    p.add_argument("--config", type=Path, help="detector config file (key=value lines)")
    p.add_argument("--min-confidence", choices=["low", "medium", "high"])
    p.add_argument("--enable", action="append", type=_smell_arg, default=[], metavar="SMxx",
                   help="run only these smells (repeatable)")
    p.add_argument("--disable", action="append", type=_smell_arg, default=[], metavar="SMxx")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iccsmells", description="Detect Android ICC security smells.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="analyze one project")
    p.add_argument("project", type=Path)
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")
    _detector_options(p)

    p = sub.add_parser("batch", help="analyze several projects")
    p.add_argument("projects", nargs="*", type=Path)
    p.add_argument("--out", type=Path, default=Path("reports"), help="output directory (default: reports)")
    p.add_argument("--jobs", type=int, default=1)
    _detector_options(p)

    p = sub.add_parser("stats", help="corpus statistics from JSON reports")
    p.add_argument("reports", nargs="+", type=Path, help="report files or directories holding them")
    p.add_argument("--external", type=Path, help="CSV with app_id,category,count")
    p.add_argument("--out", type=Path, default=Path("."), help="directory for the CSV files")

    p = sub.add_parser("fixtures", help="bundled fixture corpus")
    fsub = p.add_subparsers(dest="action", required=True)
    m = fsub.add_parser("materialize", help="copy the corpus to a directory")
    m.add_argument("dest", type=Path)
    c = fsub.add_parser("check", help="analyze each fixture and compare with its expected findings")
    c.add_argument("root", type=Path, nargs="?", default=None)
    return parser


def _detector_config(args) -> DetectorConfig:
    config = load_detector_config(args.config) if args.config else DetectorConfig()
    level = Confidence.parse(args.min_confidence) if args.min_confidence else None
    return config.with_overrides(args.enable, args.disable, level)


def _write(data: bytes, out: Optional[Path]) -> None:
    if out is None:
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_bytes(data)


def cmd_analyze(args) -> int:
    config = _detector_config(args)
    try:
        report = analyze_project(args.project, config)
    except PROJECT_ERRORS as exc:
        log.error("%s", exc)
        return EXIT_FATAL
    _write(RENDERERS[args.format or "text"](report), args.out)
    return EXIT_FINDINGS if report.findings else EXIT_CLEAN


def _analyze_one(path: Path, config: DetectorConfig) -> tuple[Optional[Report], Optional[str]]:
    try:
        return analyze_project(path, config), None
    except PROJECT_ERRORS as exc:
        return None, str(exc)
    except Exception as exc:  # isolate projects from each other
        return None, f"{type(exc).__name__}: {exc}"


def _unique_ids(names: Sequence[str]) -> list[str]:
    seen: dict[str, int] = {}
    taken = set(names)
    out = []
    for name in names:
        if name not in seen:
            seen[name] = 1
            out.append(name)
            continue
        k = seen[name]
        while True:
            k += 1
            candidate = f"{name}-{k}"
            if candidate not in taken:
                break
        seen[name] = k
        taken.add(candidate)
        out.append(candidate)
    return out


def cmd_batch(args) -> int:
    if not args.projects:
        raise UsageError("batch needs at least one project path")
    if args.jobs < 1:
        raise UsageError("--jobs must be at least 1")
    config = _detector_config(args)
    fmt = args.format or "json"
    projects = sorted(args.projects, key=lambda p: str(p))
    if args.jobs > 1 and len(projects) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            results = list(pool.map(_analyze_one, projects, [config] * len(projects)))
    else:
        results = [_analyze_one(p, config) for p in projects]

    names = [_UNSAFE_FILENAME.sub("_", r.app_id if r is not None else p.resolve().name).lstrip(".") or "app"
             for p, (r, _) in zip(projects, results)]
    ids = _unique_ids(names)
    out_dir: Path = args.out
    out_dir.mkdir(parents=True, exist_ok=True)
    entries = []
    for app_id, path, (report, error) in sorted(zip(ids, projects, results), key=lambda t: t[0]):
        entry = {"app_id": app_id, "project": path.as_posix()}
        if report is None:
            log.error("%s: %s", path, error)
            entry.update(status="error", error=error, report=None, findings=None)
        else:
            name = f"{app_id}.{EXTENSIONS[fmt]}"
            (out_dir / name).write_bytes(RENDERERS[fmt](report))
            entry.update(status="ok", error=None, report=name, findings=len(report.findings))
        entries.append(entry)
    index = {"schema": 1, "format": fmt, "projects": entries}
    (out_dir / "index.json").write_text(json.dumps(index, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    failed = sum(1 for e in entries if e["status"] == "error")
    log.info("batch: %d projects, %d failed", len(entries), failed)
    return EXIT_FATAL if failed == len(entries) else EXIT_CLEAN


def _report_files(paths: Sequence[Path]) -> list[Path]:
    files = []
    for p in paths:
        if p.is_dir():
            files.extend(sorted(q for q in p.glob("*.json") if q.name != "index.json"))
        elif p.is_file():
            files.append(p)
        else:
            log.error("%s: no such file or directory", p)
    return files


def cmd_stats(args) -> int:
    reports = []
    for path in _report_files(args.reports):
        try:
            reports.append(parse_report(path.read_bytes()))
        except (OSError, MalformedReport) as exc:
            log.error("%s: skipped: %s", path, exc)
    if not reports:
        log.error("no reports found")
        return EXIT_FATAL
    reports.sort(key=lambda r: r.app_id)
    external: dict = {}
    if args.external:
        try:
            external = stats.load_external_counts(args.external.read_text(encoding="utf-8"))
        except (OSError, ValueError) as exc:
            log.error("%s: %s", args.external, exc)
            return EXIT_FATAL
    summary = stats.aggregate(reports)
    vectors = [stats.stats_vector(r, external.get(r.app_id)) for r in reports]
    known = set(stats.categories_of(vectors))
    for app_cats in external.values():
        known.update(app_cats)
    matrix = stats.correlate_categories(vectors, known)
    out: Path = args.out
    out.mkdir(parents=True, exist_ok=True)
    (out / "prevalence.csv").write_bytes(stats.prevalence_csv(summary))
    (out / "distribution.csv").write_bytes(stats.distribution_csv(summary))
    (out / "correlation.csv").write_bytes(stats.correlation_csv(matrix))
    return EXIT_CLEAN


def cmd_fixtures(args) -> int:
    if args.action == "materialize":
        made = fixtures.materialize(args.dest)
        print(f"materialized {len(made)} fixtures into {args.dest}")
        return EXIT_CLEAN
    root = args.root or fixtures.CORPUS_DIR
    results = fixtures.check_corpus(root)
    if not results:
        log.error("%s: no fixtures found", root)
        return EXIT_FATAL
    for r in results:
        print(("PASS " if r.ok else "FAIL ") + r.describe())
    failed = sum(not r.ok for r in results)
    print(f"{len(results) - failed}/{len(results)} fixtures match")
    return EXIT_CLEAN if failed == 0 else EXIT_FINDINGS


def _configure_logging(verbose: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("iccsmells: %(levelname)s: %(message)s"))
    log.handlers[:] = [handler]
    log.setLevel(logging.INFO if verbose else logging.WARNING)
    log.propagate = False


COMMANDS = {"analyze": cmd_analyze, "batch": cmd_batch, "stats": cmd_stats, "fixtures": cmd_fixtures}


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigError) as exc:
        parser.print_usage(sys.stderr)
        print(f"iccsmells: error: {exc}", file=sys.stderr)
        return EXIT_FATAL
    except KeyboardInterrupt:
        return 130
