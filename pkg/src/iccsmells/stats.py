"""Corpus-level statistics over many reports."""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from iccsmells.reporting import Report
from iccsmells.smells import SMELL_IDS

ICC_TOTAL = "ICC"


class EmptyCorpus(ValueError):
    pass


class DegenerateInput(ValueError):
    pass


@dataclass(frozen=True)
class CorpusSummary:
    app_count: int
    prevalence: dict[str, float]
    # distinct smell categories per app -> number of apps
    distribution: dict[int, int]


@dataclass(frozen=True)
class AppStatsVector:
    app_id: str
    counts: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for k, v in self.counts.items():
            if v < 0:
                raise ValueError(f"{self.app_id}: negative count for {k}")

    def get(self, category: str) -> int:
        return self.counts.get(category, 0)


@dataclass(frozen=True)
class CorrelationMatrix:
    categories: tuple[str, ...]
    r: tuple[tuple[Optional[float], ...], ...]  # None where undefined

    def value(self, a: str, b: str) -> Optional[float]:
        return self.r[self.categories.index(a)][self.categories.index(b)]


@dataclass(frozen=True)
class MannWhitneyResult:
    u: float  # U of the first sample
    u_b: float
    z: float
    p_two_tailed: float


def aggregate(reports: Sequence[Report]) -> CorpusSummary:
    if not reports:
        raise EmptyCorpus("no reports to aggregate")
    n = len(reports)
    with_smell = Counter()
    dist: Counter[int] = Counter()
    for report in reports:
        counts = report.per_smell_counts
        for smell_id, c in counts.items():
            if c > 0:
                with_smell[smell_id] += 1
        dist[report.distinct_smell_categories] += 1
    prevalence = {s: with_smell[s] / n for s in SMELL_IDS}
    return CorpusSummary(n, prevalence, {k: dist[k] for k in range(len(SMELL_IDS) + 1)})


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values)


def pearson(x: Sequence[float], y: Sequence[float]) -> float:
    """Pearson product-moment correlation using centered two-pass sums."""
    if len(x) != len(y):
        raise DegenerateInput(f"length mismatch: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise DegenerateInput("need at least two observations")
    mx, my = _mean(x), _mean(y)
    dx = [v - mx for v in x]
    dy = [v - my for v in y]
    sxx = math.fsum(d * d for d in dx)
    syy = math.fsum(d * d for d in dy)
    if sxx == 0 or syy == 0 or len(set(x)) == 1 or len(set(y)) == 1:
        raise DegenerateInput("constant sequence has no correlation")
    sxy = math.fsum(a * b for a, b in zip(dx, dy))
    r = sxy / (math.sqrt(sxx) * math.sqrt(syy))
    return max(-1.0, min(1.0, r))


def _midranks_doubled(values: list[tuple[float, int]]) -> tuple[list[int], list[int]]:
    """Twice the midrank of each (value, sample) pair, plus tie group sizes."""
    order = sorted(range(len(values)), key=lambda i: values[i][0])
    ranks2 = [0] * len(values)
    ties = []
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]][0] == values[order[i]][0]:
            j += 1
        # ranks i+1 .. j+1, midrank = (i + j + 2) / 2
        for k in range(i, j + 1):
            ranks2[order[k]] = i + j + 2
        ties.append(j - i + 1)
        i = j + 1
    return ranks2, ties


def mann_whitney_u(a: Sequence[float], b: Sequence[float]) -> MannWhitneyResult:
    """Two-sided Mann-Whitney U with midranks, tie-corrected variance and continuity correction."""
    n1, n2 = len(a), len(b)
    if n1 < 1 or n2 < 1:
        raise DegenerateInput("both samples must be non-empty")
    pooled = [(float(v), 0) for v in a] + [(float(v), 1) for v in b]
    if any(math.isnan(v) for v, _ in pooled):
        raise DegenerateInput("NaN in sample")
    ranks2, ties = _midranks_doubled(pooled)
    r1_doubled = sum(r for r, (_, s) in zip(ranks2, pooled) if s == 0)
    u_a = Fraction(r1_doubled, 2) - Fraction(n1 * (n1 + 1), 2)
    u_b = n1 * n2 - u_a
    n = n1 + n2
    tie_term = sum(t ** 3 - t for t in ties)
    variance = Fraction(n1 * n2, 12) * ((n + 1) - Fraction(tie_term, n * (n - 1) if n > 1 else 1))
    if variance <= 0:
        return MannWhitneyResult(float(u_a), float(u_b), 0.0, 1.0)
    diff = u_a - Fraction(n1 * n2, 2)
    magnitude = max(abs(diff) - Fraction(1, 2), Fraction(0))
    z = math.copysign(float(magnitude) / math.sqrt(variance), float(diff)) if magnitude else 0.0
    p = math.erfc(abs(z) / math.sqrt(2))
    return MannWhitneyResult(float(u_a), float(u_b), z, min(1.0, p))


def stats_vector(report: Report, external: Optional[Mapping[str, int]] = None) -> AppStatsVector:
    counts = dict(report.per_smell_counts)
    counts[ICC_TOTAL] = len(report.findings)
    for category, value in (external or {}).items():
        counts[category] = value
    return AppStatsVector(report.app_id, counts)


def categories_of(vectors: Iterable[AppStatsVector]) -> list[str]:
    names = set(SMELL_IDS) | {ICC_TOTAL}
    for v in vectors:
        names.update(v.counts)
    return sorted(names)


def correlate_categories(vectors: Sequence[AppStatsVector],
                         categories: Optional[Iterable[str]] = None) -> CorrelationMatrix:
    if not vectors:
        raise EmptyCorpus("no app vectors to correlate")
    cats = sorted(set(categories)) if categories is not None else categories_of(vectors)
    columns = {c: [v.get(c) for v in vectors] for c in cats}
    rows = []
    for a in cats:
        row = []
        for b in cats:
            try:
                row.append(pearson(columns[a], columns[b]))
            except DegenerateInput:
                row.append(None)
        rows.append(tuple(row))
    return CorrelationMatrix(tuple(cats), tuple(rows))


def load_external_counts(text: str) -> dict[str, dict[str, int]]:
    """Parse ``app_id,category,count`` rows (header required) into app -> category -> count."""
    reader = csv.DictReader(io.StringIO(text))
    required = {"app_id", "category", "count"}
    if reader.fieldnames is None or not required <= set(reader.fieldnames):
        raise ValueError("external counts need the columns app_id, category, count")
    out: dict[str, dict[str, int]] = {}
    for lineno, row in enumerate(reader, 2):
        try:
            count = int(row["count"])
        except (TypeError, ValueError):
            raise ValueError(f"line {lineno}: count must be an integer") from None
        if count < 0:
            raise ValueError(f"line {lineno}: count must not be negative")
        cats = out.setdefault(row["app_id"], {})
        cats[row["category"]] = cats.get(row["category"], 0) + count
    return out


# -- CSV output ----------------------------------------------------------------------


def _fmt(value: Optional[float]) -> str:
    return "NA" if value is None else f"{value:.6f}"


def _csv(rows: list[list[str]]) -> bytes:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    return buf.getvalue().encode("utf-8")


def prevalence_csv(summary: CorpusSummary) -> bytes:
    rows = [["smell", "apps", "prevalence"]]
    for smell_id in sorted(summary.prevalence):
        p = summary.prevalence[smell_id]
        rows.append([smell_id, str(round(p * summary.app_count)), _fmt(p)])
    return _csv(rows)


def distribution_csv(summary: CorpusSummary) -> bytes:
    rows = [["distinct_categories", "apps", "fraction"]]
    for k in sorted(summary.distribution):
        rows.append([str(k), str(summary.distribution[k]), _fmt(summary.distribution[k] / summary.app_count)])
    return _csv(rows)


def correlation_csv(matrix: CorrelationMatrix) -> bytes:
    rows = [["category", *matrix.categories]]
    for name, row in zip(matrix.categories, matrix.r):
        rows.append([name, *(_fmt(v) for v in row)])
    return _csv(rows)


def emit_csv(obj) -> bytes:
    if isinstance(obj, CorrelationMatrix):
        return correlation_csv(obj)
    if isinstance(obj, CorpusSummary):
        return prevalence_csv(obj)
    raise TypeError(f"cannot emit {type(obj).__name__} as CSV")
