"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Every comparison is exact; the only clock reading is an integer nanosecond count.
"""

from __future__ import annotations

import functools
import io
import json
import re
import time
import tokenize
from collections import Counter
from fractions import Fraction
from pathlib import Path

import pytest

from cubicplane.classify import Kind, Subcase, classify_map, classify_quartic
from cubicplane.cli import MapDocument, run
from cubicplane.core import (
    build_map,
    compose_left,
    compose_right,
    derive_form_table,
    determinants,
)
from cubicplane.normalize import (
    normalize_map,
    normalize_zero_case,
    refinement_report,
)
from cubicplane.numeric import sign
from cubicplane.oracles import (
    GeneratorConfig,
    coefficient_sites,
    left_composition_trials,
    matches_truth,
    published_table,
    random_cubic_map,
    random_factored_quartic,
    random_invertible_change,
    random_irrational_indefinite_map,
    random_realizable_quartic,
    random_zero_class_map,
    right_composition_trials,
    symbolic_expansion_check,
)

TESTS = Path(__file__).parent
DATA = TESTS / "data"
MAP_A = build_map({"F1": [1, 0, 0, 1], "F2": [0, 1, 1, 0]})
MAP_B = build_map({"F1": [1, 0, 0, 0], "F2": [0, 0, 0, 1]})
MAP_C = build_map({"F1": [1, 0, 0, 1], "F2": [2, 0, 0, 2]})
RESIDUAL = Fraction(1, 10**30)
FULL = "R1.2.3.4"


@pytest.fixture
def verdict(capsys):
    """Print one PASS/FAIL line straight to the terminal, then assert."""

    def emit(n: int, ok: bool, detail: str) -> None:
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
        assert ok, detail

    return emit


def multiplicities(cls) -> Counter:
    return Counter(r.multiplicity for r in cls.roots)


def reportable(cls) -> bool:
    return cls.kind is not Kind.ZERO and len(cls.roots) >= 2


# --------------------------------------------------------------------------
# cached workloads, shared with the never-full-combination check


@functools.lru_cache(maxsize=None)
def ground_truth_run():
    cfg = GeneratorConfig(seed=4, bound=5, count=500)
    wrong = [i for i, (q, truth) in enumerate(random_factored_quartic(cfg)) if not matches_truth(classify_quartic(q), truth)]
    kinds = Counter(truth.kind for _, truth in random_factored_quartic(cfg))
    # the realizable ones, lifted to maps, feed the refinement check
    reports = []
    for f, q, truth in random_realizable_quartic(cfg):
        cls = classify_map(f)
        if reportable(cls):
            reports.append(refinement_report(f))
    return wrong, kinds, reports


@functools.lru_cache(maxsize=None)
def invariance_run():
    cfg = GeneratorConfig(seed=5, bound=5, count=300)
    lifted = (f for f, _, _ in random_realizable_quartic(GeneratorConfig(seed=5, bound=5, count=10**6)))
    generic = random_cubic_map(cfg)
    lefts = random_invertible_change(GeneratorConfig(seed=6, bound=5, count=300))
    rights = random_invertible_change(GeneratorConfig(seed=7, bound=5, count=300))
    bad, kinds, reports = [], Counter(), []
    for i in range(300):
        # alternate generic maps, mostly indefinite, with lifted quartics of every kind
        f = next(generic) if i % 2 else next(lifted)
        s, t = next(lefts), next(rights)
        g = compose_left(s, compose_right(f, t))
        before, after = classify_map(f), classify_map(g)
        kinds[before.kind] += 1
        flip = sign(s.det * t.det) == -1
        expected_sign = -before.sign if flip else before.sign
        if (
            after.kind is not before.kind
            or multiplicities(after) != multiplicities(before)
            or after.sign != expected_sign
        ):
            bad.append(i)
        if reportable(after):
            reports.append(refinement_report(g))
    return bad, kinds, reports


@functools.lru_cache(maxsize=None)
def fixture_run():
    problems = []
    if determinants(MAP_A).as_tuple() != (1, 1, 0, 0, -1, -1):
        problems.append("MAP-A sextet")
    cls_a, res_a = normalize_map(MAP_A)
    if cls_a.kind is not Kind.INDEFINITE:
        problems.append("MAP-A kind")
    if res_a.right.T != ((1, -1), (1, 1)) or res_a.achieved.as_tuple() != (0, -16, 0, 0, 0, 0) or not res_a.exact:
        problems.append("MAP-A normalization")
    rep_a = refinement_report(MAP_A)
    if rep_a.verdict != "R2.3.4":
        problems.append("MAP-A verdict")
    cls_b = classify_map(MAP_B)
    if (cls_b.kind, cls_b.sign, cls_b.subcase) != (Kind.SEMIDEFINITE, 1, Subcase.TWO_DOUBLE_ROOTS):
        problems.append("MAP-B class")
    rep_b = refinement_report(MAP_B)
    if rep_b.verdict != "R1.3.4":
        problems.append("MAP-B verdict")
    if classify_map(MAP_C).kind is not Kind.ZERO:
        problems.append("MAP-C kind")
    res_c = normalize_zero_case(MAP_C)
    if res_c.left.T != ((1, 2), (-2, 1)) or any(res_c.normalized.F[1]):
        problems.append("MAP-C normal form")
    if compose_left(res_c.left, MAP_C) != res_c.normalized:
        problems.append("MAP-C witness")
    return problems, [rep_a, rep_b]


@functools.lru_cache(maxsize=None)
def zero_case_run():
    bad = []
    for i, f in enumerate(random_zero_class_map(GeneratorConfig(seed=8, bound=5, count=200))):
        try:
            if classify_map(f).kind is not Kind.ZERO:
                bad.append((i, "not zero class"))
                continue
            res = normalize_zero_case(f)
        except (ValueError, RuntimeError) as exc:
            bad.append((i, str(exc)))
            continue
        if any(res.normalized.F[1]) or compose_left(res.left, f) != res.normalized or res.left.det <= 0:
            bad.append((i, "normal form"))
    # zero-class maps have no roots, so they contribute no refinement reports
    return bad, []


@functools.lru_cache(maxsize=None)
def irrational_run():
    maps = list(random_irrational_indefinite_map(GeneratorConfig(seed=11, bound=5, count=50)))
    start = time.perf_counter_ns()
    results = [normalize_map(f, RESIDUAL) for f in maps]
    elapsed = time.perf_counter_ns() - start
    bad = []
    for i, (f, (cls, res)) in enumerate(zip(maps, results)):
        g = res.achieved
        if cls.kind is not Kind.INDEFINITE or res.exact:
            bad.append((i, "not an interval case"))
        elif not all(r.multiplicity == 1 and not r.is_exact for r in cls.roots):
            bad.append((i, "roots not simple and irrational"))
        elif max(abs(g.g1111), abs(g.g2222)) > RESIDUAL or res.residual > RESIDUAL:
            bad.append((i, "residual"))
        elif determinants(compose_right(f, res.right)) != g:
            bad.append((i, "achieved sextet not reproducible"))
    reports = [refinement_report(f) for f in maps]
    return maps, bad, elapsed, reports


# --------------------------------------------------------------------------


def test_criterion_1_right_composition_identity(verdict):
    summary = right_composition_trials(GeneratorConfig(seed=42, bound=5, count=1000))
    ok = summary.trials == 1000 and summary.singular >= 50 and summary.failures == 0
    verdict(1, ok, f"{summary.trials} trials, {summary.singular} singular, {summary.failures} failures")


def test_criterion_2_left_composition_identity(verdict):
    summary = left_composition_trials(GeneratorConfig(seed=42, bound=5, count=1000))
    ok = summary.trials == 1000 and summary.failures == 0
    verdict(2, ok, f"{summary.trials} invertible S, {summary.failures} failures")


def test_criterion_3_form_derivation(verdict):
    table = derive_form_table()
    printed = published_table()
    matching = [k for k in (1, 3, 6) if table.forms[k - 1] == printed[k]]
    sites = [(s.form, s.monomial) for s in coefficient_sites()]
    scan = symbolic_expansion_check(GeneratorConfig(seed=42, bound=5, count=300))
    flagged = sorted(k for k, n in scan.published_mismatches.items() if n)
    ok = (
        table.remainders_zero
        and matching == [1, 3, 6]
        and sites == [(2, "z2^3*z3"), (4, "z2^2*z4^2")]
        and scan.derived_ok
        and flagged == [2, 4]
    )
    verdict(
        3,
        ok,
        f"remainders zero={table.remainders_zero}, forms {matching} match, disagreement at {sites}, "
        f"{scan.cases} numeric cases with {scan.derived_mismatches} derived mismatches",
    )


def test_criterion_4_classification_ground_truth(verdict):
    wrong, kinds, reports = ground_truth_run()
    mix = ", ".join(f"{n} {k.value}" for k, n in sorted(kinds.items(), key=lambda kv: kv[0].value))
    ok = not wrong and sum(kinds.values()) == 500 and len(kinds) == 3
    verdict(4, ok, f"500 factored quartics ({mix}), {len(wrong)} misclassified")


def test_criterion_5_equivalence_invariance(verdict):
    bad, kinds, _ = invariance_run()
    mix = ", ".join(f"{n} {k.value}" for k, n in sorted(kinds.items(), key=lambda kv: kv[0].value))
    ok = not bad and len(kinds) == 3
    verdict(5, ok, f"300 triples ({mix}), {len(bad)} violations")


def test_criterion_6_fixtures(verdict):
    problems, _ = fixture_run()
    verdict(6, not problems, "MAP-A, MAP-B, MAP-C reproduce" if not problems else ", ".join(problems))


def test_criterion_7_zero_case_totality(verdict):
    bad, _ = zero_case_run()
    verdict(7, not bad, f"200 proportional-column maps, {len(bad)} failures")


def test_criterion_8_irrational_roots(verdict):
    maps, bad, elapsed, _ = irrational_run()
    within = elapsed <= 10 * 10**9
    ok = len(maps) == 50 and not bad and within
    verdict(8, ok, f"{len(maps)} maps, {len(bad)} failures, residual <= 1/10^30, {elapsed // 10**6} ms")


def test_criterion_9_full_combination_never_appears(verdict):
    reports = (
        ground_truth_run()[2]
        + invariance_run()[2]
        + fixture_run()[1]
        + zero_case_run()[1]
        + irrational_run()[3]
    )
    hits = sum(FULL in r.combinations for r in reports)
    ok = len(reports) > 0 and hits == 0
    verdict(9, ok, f"{len(reports)} refinement reports, {hits} contain {FULL}")


# --------------------------------------------------------------------------
# exactness hygiene

FLOAT_TOKEN = re.compile(r"(?<![\w.])\d+(\.\d+|[eE][+-]?\d+)|\b(nan|inf(inity)?)\b", re.IGNORECASE)
RATIONAL = re.compile(r"-?\d+(/\d+)?")
LABEL = re.compile(r"R\d(\.\d)*|z\d(\^\d)?(\*z\d(\^\d)?)*|-")
BANNED_NAMES = {"approx", "isclose", "allclose", "assert_almost_equal"}


def float_usage(path: Path) -> list[str]:
    """Float literals, float() calls and approximate comparisons in a Python source file."""
    found = []
    toks = list(tokenize.generate_tokens(io.StringIO(path.read_text()).readline))
    for tok, nxt in zip(toks, toks[1:] + [None]):
        if tok.type == tokenize.NUMBER and not tok.string.lower().startswith("0x"):
            if "." in tok.string or "e" in tok.string.lower() or "j" in tok.string.lower():
                found.append(f"{path.name}:{tok.start[0]} literal {tok.string}")
        elif tok.type == tokenize.NAME:
            if tok.string in BANNED_NAMES:
                found.append(f"{path.name}:{tok.start[0]} {tok.string}")
            elif tok.string == "float" and nxt is not None and nxt.string == "(":
                found.append(f"{path.name}:{tok.start[0]} float()")
    return found


def report_problems(text: str) -> list[str]:
    """Everything in a JSON report that is neither an exact rational nor a well-formed interval."""
    problems = []

    def walk(node, key=""):
        if isinstance(node, float):
            problems.append(f"float at {key}")
        elif isinstance(node, dict):
            for k, v in node.items():
                walk(v, k)
        elif isinstance(node, list):
            if key == "interval":
                lo, hi = node
                if not (RATIONAL.fullmatch(lo) and RATIONAL.fullmatch(hi) and Fraction(lo) < Fraction(hi)):
                    problems.append(f"bad interval {node}")
            for v in node:
                walk(v, key)
        elif isinstance(node, str) and any(ch.isdigit() for ch in node):
            if not (RATIONAL.fullmatch(node) or LABEL.fullmatch(node) or key in ("first_failure", "requested_residual")):
                problems.append(f"non-rational string {node!r} at {key}")

    def reject(token):
        problems.append(f"float literal {token}")

    walk(json.loads(text, parse_float=reject, parse_constant=reject))
    return problems


def test_criterion_10_exactness_hygiene(verdict, tmp_path):
    sources = sorted(TESTS.glob("*.py"))
    usage = [hit for path in sources for hit in float_usage(path)]

    irrational = tmp_path / "irrational.txt"
    irrational.write_text(MapDocument.from_map(irrational_run()[0][0]).serialize())
    commands = [["verify", "--trials", "20"]]
    for path in (*sorted(DATA.glob("*.txt")), irrational):
        commands += [["forms", str(path)], ["classify", str(path)], ["normalize", str(path)]]
    output_problems, intervals = [], 0
    for argv in commands:
        code, out, _ = run(["--json", *argv])
        if code != 0:
            output_problems.append(f"{argv} exit {code}")
        output_problems += report_problems(out)
        intervals += out.count('"interval"')
        text = run(argv)[1]
        output_problems += [f"{argv} text {m.group(0)}" for m in FLOAT_TOKEN.finditer(text)]
    ok = not usage and not output_problems and intervals > 0
    detail = f"{len(sources)} test files scanned, {len(commands)} reports with {intervals} intervals"
    verdict(10, ok, detail if ok else f"{detail}; " + "; ".join((usage + output_problems)[:5]))


def test_hygiene_scanner_catches_floats(tmp_path):
    bad = tmp_path / "sample.py"
    bad.write_text("x = 1" + ".5\ny = float" + "('2')\nz = pytest.approx(x)\nok = 0x1F + 10\n")
    assert [hit.split(" ", 1)[1] for hit in float_usage(bad)] == ["literal 1.5", "float()", "approx"]
    assert report_problems('{"a": "1/2", "interval": ["1", "2"]}') == []
    assert report_problems('{"a": 0.5}') == ["float literal 0.5"]
    assert report_problems('{"interval": ["2", "1"]}') == ["bad interval ['2', '1']"]
    assert report_problems('{"a": "1.5"}') == ["non-rational string '1.5' at a"]
    assert FLOAT_TOKEN.search("residual: 1e-30") and not FLOAT_TOKEN.search("refinement: R2.3.4")
