from __future__ import annotations

import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubicplane.classify import (
    Kind,
    Subcase,
    classify_map,
    classify_quartic,
    projective_real_roots,
    root_vanishes,
    stern_brocot_points,
)
from cubicplane.core import BinaryQuartic, NotCubicError, build_map
from cubicplane.numeric import QuadExtScalar, sign

MAP_A = build_map({"F1": [1, 0, 0, 1], "F2": [0, 1, 1, 0]})
MAP_B = build_map({"F1": [1, 0, 0, 0], "F2": [0, 0, 0, 1]})
MAP_C = build_map({"F1": [1, 0, 0, 1], "F2": [2, 0, 0, 2]})


def points(roots):
    return [(r.representative, r.multiplicity) for r in roots]


def test_projective_root_examples():
    q = BinaryQuartic((1, 2, 0, -2, -1))
    assert points(projective_real_roots(q)) == [((1, 1), 1), ((-1, 1), 3)]
    q = BinaryQuartic((0, 0, 1, 0, 0))
    assert points(projective_real_roots(q)) == [((1, 0), 2), ((0, 1), 2)]
    s2 = QuadExtScalar.sqrt(2)
    q = BinaryQuartic((1, 0, -4, 0, 4))
    assert points(projective_real_roots(q)) == [((s2, 1), 2), ((-s2, 1), 2)]
    with pytest.raises(ValueError):
        projective_real_roots(BinaryQuartic((0, 0, 0, 0, 0)))


def test_classify_quartic_examples():
    c = classify_quartic(BinaryQuartic((1, 2, 0, -2, -1)))
    assert c.kind is Kind.INDEFINITE and c.sign == 0
    c = classify_quartic(BinaryQuartic((0, 0, 1, 0, 0)))
    assert (c.kind, c.sign, c.subcase) == (Kind.SEMIDEFINITE, 1, Subcase.TWO_DOUBLE_ROOTS)
    c = classify_quartic(BinaryQuartic((1, 0, 1, 0, 1)))
    assert (c.kind, c.sign, c.roots) == (Kind.DEFINITE, 1, ())
    c = classify_quartic(BinaryQuartic((1, 0, 0, 0, 0)))
    assert (c.kind, c.sign, c.subcase) == (Kind.SEMIDEFINITE, 1, Subcase.QUADRUPLE_ROOT)
    assert points(c.roots) == [((0, 1), 4)]
    c = classify_quartic(BinaryQuartic((1, 0, 1, 0, 0)))
    assert (c.kind, c.sign, c.subcase) == (Kind.SEMIDEFINITE, 1, Subcase.ONE_DOUBLE_ROOT)
    assert points(c.roots) == [((0, 1), 2)]
    assert classify_quartic(BinaryQuartic((0,) * 5)).kind is Kind.ZERO
    c = classify_quartic(BinaryQuartic((-1, 0, -1, 0, -1)))
    assert (c.kind, c.sign, c.sign_label) == (Kind.DEFINITE, -1, "negative")


def test_classify_map_examples():
    assert classify_map(MAP_A).kind is Kind.INDEFINITE
    c = classify_map(MAP_B)
    assert (c.kind, c.sign, c.subcase) == (Kind.SEMIDEFINITE, 1, Subcase.TWO_DOUBLE_ROOTS)
    assert classify_map(MAP_C).kind is Kind.ZERO
    with pytest.raises(NotCubicError):
        classify_map(build_map({"L1": [1, 0], "L2": [0, 1]}))


def test_indefinite_witnesses_have_opposite_signs():
    c = classify_map(MAP_A)
    (p_pos, v_pos), (p_neg, v_neg) = c.witnesses
    assert v_pos > 0 > v_neg
    assert c.quartic(*p_pos) == v_pos and c.quartic(*p_neg) == v_neg


def test_exact_roots_annihilate():
    for coeffs in ((1, 2, 0, -2, -1), (0, 0, 1, 0, 0), (1, 0, -4, 0, 4), (0, 1, 0, -2, 0)):
        q = BinaryQuartic(coeffs)
        for r in projective_real_roots(q):
            assert root_vanishes(q, r)


def test_stern_brocot_enumeration():
    first = list(itertools.islice(stern_brocot_points(), 9))
    assert first[:3] == [(1, 0), (0, 1), (1, 1)]
    assert first[3:5] == [(2, 1), (1, 2)]
    assert first[5:9] == [(3, 1), (3, 2), (2, 3), (1, 3)]
    signed = list(itertools.islice(stern_brocot_points(signed=True), 4))
    assert signed[2:] == [(1, 1), (-1, 1)]


coeff = st.integers(-6, 6)


@settings(max_examples=150, deadline=None)
@given(st.tuples(coeff, coeff, coeff, coeff, coeff))
def test_kind_matches_root_structure(coeffs):
    q = BinaryQuartic(coeffs)
    c = classify_quartic(q)
    if q.is_zero():
        assert c.kind is Kind.ZERO
        return
    mults = [r.multiplicity for r in c.roots]
    assert sum(mults) in (0, 2, 4)
    if any(m % 2 for m in mults):
        assert c.kind is Kind.INDEFINITE
    elif mults:
        assert c.kind is Kind.SEMIDEFINITE
    else:
        assert c.kind is Kind.DEFINITE
    # the sign claim holds at a spread of exact sample points
    if c.kind in (Kind.DEFINITE, Kind.SEMIDEFINITE):
        for u, v in itertools.islice(stern_brocot_points(signed=True), 40):
            assert sign(q(u, v)) in (0, c.sign)


def test_scaled_representatives_are_the_same_root():
    q = BinaryQuartic((1, 2, 0, -2, -1))
    for r in projective_real_roots(q):
        u, v = r.representative
        for lam in (Fraction(-3), Fraction(1, 7)):
            assert q(lam * u, lam * v) == 0


def test_interval_roots_for_irreducible_quartic():
    # t^4 - 2t - 2 is irreducible with two real roots
    q = BinaryQuartic((1, 0, 0, -2, -2))
    c = classify_quartic(q)
    assert c.kind is Kind.INDEFINITE
    assert [r.is_exact for r in c.roots] == [False, False]
