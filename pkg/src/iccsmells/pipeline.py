"""Project in, report out."""

from __future__ import annotations

from typing import Optional

from iccsmells.detectors import DetectorConfig, run_all
from iccsmells.project import build_app_model
from iccsmells.reporting import Report


def analyze_project(project_root, config: Optional[DetectorConfig] = None) -> Report:
    app = build_app_model(project_root)
    extra: list = []
    findings = run_all(app, config or DetectorConfig(), extra)
    diags = sorted(set(app.all_diagnostics()) | set(extra),
                   key=lambda d: (d.file, d.line, d.column, d.kind, d.message))
    return Report(app.app_id, tuple(findings), tuple(diags))
