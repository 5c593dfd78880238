from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicplane.classify import Kind, Subcase, classify_map
from cubicplane.core import (
    AffineChange,
    CubicMap,
    build_map,
    compose_left,
    compose_right,
    derive_form_table,
    determinants,
    form_value,
)
from cubicplane.normalize import (
    ResidualBudgetExceeded,
    condition_label,
    normalize_map,
    normalize_semidefinite,
    normalize_two_roots,
    normalize_zero_case,
    pair_pattern,
    refinement_report,
)
from cubicplane.numeric import QuadExtScalar
from cubicplane.oracles import GeneratorConfig, random_irrational_indefinite_map

MAP_A = build_map({"F1": [1, 0, 0, 1], "F2": [0, 1, 1, 0]})
MAP_B = build_map({"F1": [1, 0, 0, 0], "F2": [0, 0, 0, 1]})
MAP_C = build_map({"F1": [1, 0, 0, 1], "F2": [2, 0, 0, 2]})
# quartic (u^2 - 2 v^2)^2
MAP_E = CubicMap(((1, 0, 2, 0), (0, 1, 0, 2)))


def test_zero_case_examples():
    res = normalize_zero_case(MAP_C)
    assert res.left.T == ((1, 2), (-2, 1))
    assert res.normalized.F == ((5, 0, 0, 5), (0, 0, 0, 0))
    only_last = CubicMap(((0, 0, 0, 0), (0, 0, 0, 1)))
    res = normalize_zero_case(only_last)
    assert res.left.T == ((0, 1), (-1, 0))
    assert res.normalized.F == ((0, 0, 0, 1), (0, 0, 0, 0))
    done = CubicMap(((1, 2, 3, 4), (0, 0, 0, 0)))
    res = normalize_zero_case(done)
    assert res.left == AffineChange.identity() and res.normalized == done
    with pytest.raises(ValueError):
        normalize_zero_case(MAP_A)


def test_two_roots_map_a():
    cls = classify_map(MAP_A)
    res = normalize_two_roots(MAP_A, cls.roots[0], cls.roots[1])
    assert res.right.T == ((1, -1), (1, 1))
    assert res.normalized.F == ((2, 0, 2, 0), (6, 0, -2, 0))
    assert res.achieved.as_tuple() == (0, -16, 0, 0, 0, 0)
    assert res.exact and res.residual == 0
    assert compose_right(MAP_A, res.right) == res.normalized
    with pytest.raises(ValueError):
        normalize_two_roots(MAP_A, cls.roots[0], cls.roots[0])


def test_semidefinite_examples():
    res = normalize_semidefinite(MAP_B)
    assert res.right == AffineChange.identity() and res.exact
    res = normalize_semidefinite(MAP_E)
    s2 = QuadExtScalar.sqrt(2)
    assert res.exact and res.right.T == ((s2, -s2), (1, 1))
    assert res.achieved.g1111 == 0 and res.achieved.g2222 == 0
    quad = CubicMap(((1, 0, 0, 0), (0, 1, 0, 0)))
    assert classify_map(quad).subcase is Subcase.QUADRUPLE_ROOT
    res = normalize_semidefinite(quad)
    assert res.partial and res.right.T == ((0, -1), (1, 0))
    assert res.achieved.g1111 == 0
    assert res.achieved.g2222 == determinants(quad).g1111
    with pytest.raises(ValueError):
        normalize_semidefinite(MAP_A)


def test_refinement_examples():
    rep = refinement_report(MAP_A)
    assert rep.verdict == "R2.3.4" and rep.verdict_determined
    first = rep.pairs[0]
    assert (first.first.representative, first.second.representative) == ((1, 1), (-1, 1))
    assert first.sextet.g1112 == -16 and first.vanishing == (False, True, True, True)
    assert refinement_report(MAP_B).verdict == "R1.3.4"
    assert refinement_report(MAP_B).pairs[0].sextet.as_tuple() == (0, 0, 1, 0, 0, 0)
    for f in (MAP_A, MAP_B, MAP_E):
        assert "R1.2.3.4" not in refinement_report(f).combinations
    with pytest.raises(ValueError):
        refinement_report(CubicMap(((1, 0, 0, 0), (0, 1, 0, 0))))


def test_condition_labels():
    assert condition_label((True, False, True, True)) == "R1.3.4"
    assert condition_label((False, None, False, False)) == "-"


lam = st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(lambda x: x != 0)


@settings(max_examples=40, deadline=None)
@given(lam, lam)
def test_pattern_ignores_representative_scaling(a, b):
    cls = classify_map(MAP_A)
    (u1, v1), (u2, v2) = cls.roots[0].representative, cls.roots[1].representative
    base, _ = pair_pattern(MAP_A, (u1, v1), (u2, v2))
    scaled, _ = pair_pattern(MAP_A, (a * u1, a * v1), (b * u2, b * v2))
    assert base == scaled


def test_interval_roots_reach_residual():
    f = next(random_irrational_indefinite_map(GeneratorConfig(seed=3, bound=5, count=1)))
    cls, res = normalize_map(f, Fraction(1, 10**30))
    assert cls.kind is Kind.INDEFINITE and not res.exact
    assert max(abs(res.achieved.g1111), abs(res.achieved.g2222)) <= Fraction(1, 10**30)
    assert compose_right(f, res.right) == res.normalized
    with pytest.raises(ResidualBudgetExceeded):
        normalize_two_roots(f, cls.roots[0], cls.roots[1], Fraction(1, 10**30), max_steps=5)


def test_normalize_map_dispatch():
    assert normalize_map(CubicMap(((1, 0, Fraction(1, 3), 0), (0, 1, 0, 3))))[1] is None
    cls, res = normalize_map(MAP_C)
    assert cls.kind is Kind.ZERO and not any(res.normalized.F[1])
    s = AffineChange(((2, 1), (1, 1)))
    cls, res = normalize_map(compose_left(s, MAP_A))
    assert res.achieved.g1111 == 0 == res.achieved.g2222


def test_halving_the_bound_never_raises_the_residual():
    f = next(random_irrational_indefinite_map(GeneratorConfig(seed=5, bound=5, count=1)))
    cls = classify_map(f)
    previous = None
    for k in range(4, 40, 6):
        res = normalize_two_roots(f, cls.roots[0], cls.roots[1], Fraction(1, 2**k))
        assert res.residual <= Fraction(1, 2**k)
        if previous is not None:
            assert res.residual <= previous
        previous = res.residual


def test_exact_normalizations_match_the_form_table():
    table = derive_form_table()
    for f in (MAP_A, MAP_B, MAP_E, compose_left(AffineChange(((2, 1), (1, 1))), MAP_A)):
        _, res = normalize_map(f)
        assert res.exact
        (t11, t12), (t21, t22) = res.right.T
        z = (t11, t21, t12, t22)
        g = determinants(f)
        recomputed = determinants(res.normalized)
        assert recomputed == res.achieved
        for k in range(1, 7):
            assert recomputed.as_tuple()[k - 1] == res.right.det * form_value(table, g, k, z)
