"""Report container and its text, JSON and XML renderings."""

from __future__ import annotations

import json
import logging
import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Any

from iccsmells.common import Confidence, ParseDiagnostic, SourceLocation
from iccsmells.detectors import Finding
from iccsmells.smells import SMELL_BY_ID, SMELL_IDS, ThreatClass, map_threats, smell

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1
_TOP_KEYS = ("schema", "app_id", "findings", "diagnostics", "counts")
_FINDING_KEYS = ("smell", "title", "file", "line", "column", "confidence", "message", "threats", "mitigation")
_DIAG_KEYS = ("file", "line", "column", "kind", "message")


class MalformedReport(ValueError):
    pass


@dataclass(frozen=True)
class Report:
    app_id: str
    findings: tuple[Finding, ...] = ()
    diagnostics: tuple[ParseDiagnostic, ...] = field(default_factory=tuple)

    @property
    def per_smell_counts(self) -> dict[str, int]:
        counts = dict.fromkeys(SMELL_IDS, 0)
        for f in self.findings:
            counts[f.smell] += 1
        return counts

    @property
    def distinct_smell_categories(self) -> int:
        return sum(1 for v in self.per_smell_counts.values() if v > 0)


# -- text ------------------------------------------------------------------------


def render_text(report: Report) -> str:
    n = len(report.findings)
    lines = [f"ICC smell report for {report.app_id}: {n} finding{'s' if n != 1 else ''}"]
    if not report.findings:
        lines.append("no findings")
    for f in report.findings:
        lines.append(f"{f.location} [{f.smell}/{f.confidence.label}] {f.title} — {f.message}")
        lines.append(f"    mitigation: {f.mitigation_hint}")
        lines.append(f"    threats: {', '.join(t.value for t in f.threat_classes)}")
    if report.diagnostics:
        lines.append(f"diagnostics ({len(report.diagnostics)}):")
        lines.extend(f"    {d}" for d in report.diagnostics)
    return "\n".join(lines) + "\n"


# -- JSON --------------------------------------------------------------------------


def _finding_dict(f: Finding) -> dict[str, Any]:
    return {
        "smell": f.smell,
        "title": f.title,
        "file": f.location.file,
        "line": f.location.line,
        "column": f.location.column,
        "confidence": f.confidence.label,
        "message": f.message,
        "threats": [t.value for t in f.threat_classes],
        "mitigation": f.mitigation_hint,
    }


def _diag_dict(d: ParseDiagnostic) -> dict[str, Any]:
    return {"file": d.file, "line": d.line, "column": d.column, "kind": d.kind, "message": d.message}


def report_dict(report: Report) -> dict[str, Any]:
    return {
        "schema": SCHEMA_VERSION,
        "app_id": report.app_id,
        "findings": [_finding_dict(f) for f in report.findings],
        "diagnostics": [_diag_dict(d) for d in report.diagnostics],
        "counts": report.per_smell_counts,
    }


def render_json(report: Report) -> bytes:
    return (json.dumps(report_dict(report), indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def _check_keys(obj: Any, required: tuple[str, ...], what: str) -> dict:
    if not isinstance(obj, dict):
        raise MalformedReport(f"{what} must be an object")
    missing = [k for k in required if k not in obj]
    if missing:
        raise MalformedReport(f"{what} lacks {', '.join(missing)}")
    extra = sorted(set(obj) - set(required))
    if extra:
        log.warning("ignoring unknown %s keys: %s", what, ", ".join(extra))
    return obj


def _typed(obj: dict, key: str, kind: type, what: str) -> Any:
    value = obj[key]
    if kind is int and isinstance(value, bool) or not isinstance(value, kind):
        raise MalformedReport(f"{what}.{key} must be {kind.__name__}")
    return value


def _location(obj: dict, what: str) -> SourceLocation:
    try:
        return SourceLocation(_typed(obj, "file", str, what), _typed(obj, "line", int, what),
                              _typed(obj, "column", int, what))
    except ValueError as exc:
        if isinstance(exc, MalformedReport):
            raise
        raise MalformedReport(f"{what}: {exc}") from None


def _parse_finding(obj: Any, i: int) -> Finding:
    what = f"findings[{i}]"
    _check_keys(obj, _FINDING_KEYS, what)
    smell_id = _typed(obj, "smell", str, what)
    if smell_id not in SMELL_BY_ID:
        raise MalformedReport(f"{what}: unknown smell {smell_id!r}")
    try:
        conf = Confidence.parse(_typed(obj, "confidence", str, what))
    except ValueError as exc:
        raise MalformedReport(f"{what}: {exc}") from None
    threats = _typed(obj, "threats", list, what)
    try:
        threat_classes = tuple(ThreatClass(t) for t in threats)
    except ValueError as exc:
        raise MalformedReport(f"{what}: {exc}") from None
    if threat_classes != map_threats(smell_id):
        raise MalformedReport(f"{what}: threats do not match {smell_id}")
    if _typed(obj, "title", str, what) != smell(smell_id).title:
        raise MalformedReport(f"{what}: title does not match {smell_id}")
    return Finding(smell_id, _location(obj, what), conf, _typed(obj, "message", str, what),
                   threat_classes, _typed(obj, "mitigation", str, what))


def _parse_diag(obj: Any, i: int) -> ParseDiagnostic:
    what = f"diagnostics[{i}]"
    _check_keys(obj, _DIAG_KEYS, what)
    return ParseDiagnostic(_typed(obj, "file", str, what), _typed(obj, "line", int, what),
                           _typed(obj, "column", int, what), _typed(obj, "kind", str, what),
                           _typed(obj, "message", str, what))


def parse_report(data: bytes) -> Report:
    try:
        doc = json.loads(data.decode("utf-8") if isinstance(data, (bytes, bytearray)) else data)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedReport(f"not a JSON document: {exc}") from None
    _check_keys(doc, _TOP_KEYS, "report")
    if doc["schema"] != SCHEMA_VERSION or isinstance(doc["schema"], bool):
        raise MalformedReport(f"unsupported schema {doc['schema']!r}")
    app_id = _typed(doc, "app_id", str, "report")
    findings = tuple(_parse_finding(f, i) for i, f in enumerate(_typed(doc, "findings", list, "report")))
    diags = tuple(_parse_diag(d, i) for i, d in enumerate(_typed(doc, "diagnostics", list, "report")))
    report = Report(app_id, findings, diags)
    counts = _typed(doc, "counts", dict, "report")
    if counts != report.per_smell_counts:
        raise MalformedReport("counts disagree with findings")
    return report


# -- XML ---------------------------------------------------------------------------


def render_xml(report: Report) -> bytes:
    root = ET.Element("report", {"schema": str(SCHEMA_VERSION), "app_id": report.app_id})
    findings = ET.SubElement(root, "findings")
    for f in report.findings:
        d = _finding_dict(f)
        el = ET.SubElement(findings, "finding", {k: str(d[k]) for k in ("smell", "title", "file", "line",
                                                                          "column", "confidence")})
        ET.SubElement(el, "message").text = f.message
        ET.SubElement(el, "mitigation").text = f.mitigation_hint
        threats = ET.SubElement(el, "threats")
        for t in f.threat_classes:
            ET.SubElement(threats, "threat").text = t.value
    diags = ET.SubElement(root, "diagnostics")
    for d in report.diagnostics:
        ET.SubElement(diags, "diagnostic", {k: str(v) for k, v in _diag_dict(d).items()})
    counts = ET.SubElement(root, "counts")
    for smell_id, count in report.per_smell_counts.items():
        ET.SubElement(counts, "count", {"smell": smell_id}).text = str(count)
    ET.indent(root)
    return ET.tostring(root, encoding="utf-8", xml_declaration=True) + b"\n"


RENDERERS = {
    "text": lambda r: render_text(r).encode("utf-8"),
    "json": render_json,
    "xml": render_xml,
}
