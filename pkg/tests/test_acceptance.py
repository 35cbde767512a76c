"""Acceptance criteria, one test each. Every test prints a single PASS/FAIL line."""

import json
import math
import os
import random
import shutil
import subprocess
import sys
import time
from pathlib import Path

import pytest

from conftest import manifest_xml, write_project
from oracles import TABLE_2, pearson_exact, u_pair_count
from iccsmells.cli import main
from iccsmells.fixtures import CORPUS_DIR, check_corpus, fixture_dirs, load_expected
from iccsmells.pipeline import analyze_project
from iccsmells.smells import SMELL_IDS, map_threats
from iccsmells.stats import DegenerateInput, aggregate, mann_whitney_u, pearson


@pytest.fixture
def verdict(capsys):
    def emit(name: str, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
        assert ok, detail
    return emit


def test_fixture_self_check(verdict):
    start = time.perf_counter()
    results = check_corpus()
    elapsed = time.perf_counter() - start
    failures = [r.describe() for r in results if not r.ok]
    focus_problems = []
    for smell in SMELL_IDS:
        for variant, want_hits in (("vulnerable", True), ("benign", False)):
            fixture = CORPUS_DIR / f"{smell.lower()}_{variant}"
            if not fixture.is_dir():
                focus_problems.append(f"missing {fixture.name}")
                continue
            hits = [k for k in load_expected(fixture) if k[0] == smell]
            if bool(hits) != want_hits:
                focus_problems.append(f"{fixture.name} has {len(hits)} {smell} findings")
    ok = not failures and not focus_problems and elapsed < 10 and len(results) >= 24
    verdict("fixture self-check", ok,
            f"{len(results) - len(failures)}/{len(results)} fixtures match in {elapsed:.2f}s"
            + (f"; {failures + focus_problems}" if failures or focus_problems else ""))


def test_table2_conformance(verdict):
    mismatches = []
    for smell in SMELL_IDS:
        expected = {threat for threat, row in TABLE_2.items() if smell in row}
        got = {t.value for t in map_threats(smell)}
        if got != expected:
            mismatches.append(f"{smell}: {sorted(got)} != {sorted(expected)}")
    verdict("Table 2 threat mapping", not mismatches,
            "12/12 smells match the embedded transcription" if not mismatches else "; ".join(mismatches))


def _sample_vector(rng: random.Random, n: int) -> list:
    style = rng.randrange(3)
    if style == 0:
        return [rng.uniform(-1000, 1000) for _ in range(n)]
    if style == 1:
        return [rng.randint(0, 20) for _ in range(n)]
    return [rng.gauss(0, 1) * 10 ** rng.randint(-3, 3) for _ in range(n)]


def test_pearson_oracle(verdict):
    rng = random.Random(20240601)
    worst = 0.0
    problems = []
    checked = 0
    while checked < 1000:
        n = rng.randint(5, 200)
        x = _sample_vector(rng, n)
        y = [a * rng.uniform(-2, 2) + v for a, v in zip(x, _sample_vector(rng, n))] if rng.random() < 0.5 \
            else _sample_vector(rng, n)
        try:
            r = pearson(x, y)
        except DegenerateInput:
            continue
        checked += 1
        worst = max(worst, abs(r - pearson_exact(x, y)))
        if abs(r) > 1 + 1e-12:
            problems.append(f"|r|>1 at sample {checked}")
        if abs(pearson(y, x) - r) > 1e-12:
            problems.append(f"asymmetric at sample {checked}")
        alpha = rng.choice([-1, 1]) * rng.uniform(0.5, 20)
        beta = rng.uniform(-50, 50)
        moved = [alpha * v + beta for v in x]
        if abs(pearson(moved, y) - math.copysign(1, alpha) * r) > 1e-12:
            problems.append(f"affine invariance off by {abs(pearson(moved, y) - math.copysign(1, alpha) * r):.2e}")
    ok = worst <= 1e-12 and not problems
    verdict("Pearson oracle", ok,
            f"1000 pairs, max |r - oracle| = {worst:.2e}" + (f"; {problems[:3]}" if problems else ""))


def test_mann_whitney_oracle(verdict):
    rng = random.Random(424242)
    problems = []
    for i in range(500):
        a = [rng.randint(0, 10) for _ in range(rng.randint(2, 50))]
        b = [rng.randint(0, 10) for _ in range(rng.randint(2, 50))]
        res = mann_whitney_u(a, b)
        if res.u != u_pair_count(a, b):
            problems.append(f"sample {i}: U {res.u} != pair count {u_pair_count(a, b)}")
        if res.u + res.u_b != len(a) * len(b):
            problems.append(f"sample {i}: U_a + U_b != n_a n_b")
        for transform in (lambda v: v ** 3 + 2 * v, lambda v: math.exp(v / 3) - 7):
            moved = mann_whitney_u([transform(v) for v in a], [transform(v) for v in b])
            if (moved.u, moved.u_b, moved.z, moved.p_two_tailed) != (res.u, res.u_b, res.z, res.p_two_tailed):
                problems.append(f"sample {i}: not invariant under a monotone transform")
    verdict("Mann-Whitney oracle", not problems,
            "500 pairs exact against pair counts, complement and monotone invariance hold"
            if not problems else "; ".join(problems[:3]))


def test_sm12_prevalence_direction(verdict, tmp_path):
    reports = []
    for i in range(50):
        attrs = ' android:taskAffinity=""' if i == 17 else ""
        root = write_project(tmp_path / f"app{i:02d}",
                             manifest_xml('<activity android:name=".Main"/>\n', app_attrs=attrs, pkg=f"com.synth.a{i}"))
        reports.append(analyze_project(root))
    prevalence = aggregate(reports).prevalence["SM12"]
    verdict("SM12 prevalence on 50 synthetic manifests", prevalence == 0.98, f"prevalence = {prevalence!r}")


def test_robustness_random_bytes(verdict, tmp_path):
    rng = random.Random(99)
    corpus = tmp_path / "corpus"
    shutil.copytree(CORPUS_DIR, corpus)
    good = sorted(corpus.rglob("*.java"))
    good = [p for p in good if p.read_bytes().isascii()]
    projects = fixture_dirs(corpus)
    n_bad = max(1, round(len(good) / 9))  # 10% of all source files after adding
    bad = []
    for k in range(n_bad):
        project = projects[k % len(projects)]
        target = next(project.rglob("java")) / f"Noise{k}.java"
        if k % 2:
            data = bytes(rng.randrange(256) for _ in range(rng.randint(50, 4000)))
        else:  # valid UTF-8 noise so the parser itself is exercised
            data = "".join(chr(rng.choice([rng.randrange(32, 127), rng.randrange(160, 4000), 10]))
                           for _ in range(rng.randint(50, 4000))).encode()
        target.write_bytes(data)
        bad.append(target)
    share = len(bad) / (len(bad) + len(good))
    codes, problems = [], []
    for project in projects:
        code = main(["analyze", str(project), "--format", "json", "--out", str(tmp_path / "r" / f"{project.name}.json")])
        codes.append(code)
        doc = json.loads((tmp_path / "r" / f"{project.name}.json").read_text())
        actual = sorted((f["smell"], f["file"], f["line"], f["column"], f["confidence"])
                        for f in doc["findings"] if "/Noise" not in f["file"])
        if actual != sorted(load_expected(project)):
            problems.append(f"{project.name}: findings in well-formed files changed")
        unread = [d["file"] for d in doc["diagnostics"] if d["kind"] == "unreadable_file" and "/Noise" not in d["file"]
                  and "Garbage" not in d["file"]]
        if unread:
            problems.append(f"{project.name}: well-formed files not analyzed: {unread}")
    ok = all(c in (0, 1) for c in codes) and not problems and share >= 0.09
    verdict("robustness with random-byte sources", ok,
            f"{len(bad)} noise files ({share:.0%} of sources), exit codes {sorted(set(codes))}"
            + (f"; {problems[:3]}" if problems else ""))


def _batch_and_stats(out: Path, seed: str) -> None:
    env = dict(os.environ, PYTHONHASHSEED=seed)
    projects = [str(p) for p in fixture_dirs()]
    subprocess.run([sys.executable, "-m", "iccsmells", "batch", *projects, "--out", str(out / "reports"),
                    "--jobs", "2"], check=True, env=env, capture_output=True)
    subprocess.run([sys.executable, "-m", "iccsmells", "stats", str(out / "reports"), "--out", str(out / "csv")],
                   check=True, env=env, capture_output=True)


def test_determinism(verdict, tmp_path):
    _batch_and_stats(tmp_path / "one", "1")
    _batch_and_stats(tmp_path / "two", "2")
    first = {p.relative_to(tmp_path / "one"): p.read_bytes() for p in (tmp_path / "one").rglob("*") if p.is_file()}
    second = {p.relative_to(tmp_path / "two"): p.read_bytes() for p in (tmp_path / "two").rglob("*") if p.is_file()}
    differing = sorted(str(k) for k in first if first[k] != second.get(k))
    ok = first.keys() == second.keys() and not differing and len(first) >= 27
    verdict("byte-identical batch and stats output", ok,
            f"{len(first)} files compared" + (f"; differing: {differing}" if differing else ""))
