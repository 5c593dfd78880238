"""Equivalent maps in normal position, and the refinement-condition report.

For a nonzero quartic the columns of an input-side change ``T`` can be put
on two distinct real projective zeros of the quartic; that makes the first
and last determinants of the composed map vanish.  Which of the four
middle determinants vanish as well is what the refinement conditions R1-R4
record (R1: G1112, R2: G1122, R3: G1212, R4: G1222).

When the quartic vanishes identically all coefficient columns are
proportional and a left change clears the second output's cubic part.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .classify import Classification, Kind, ProjectiveRoot, Subcase, classify_map
from .core import (
    AffineChange,
    CubicMap,
    DetSextet,
    InconsistencyError,
    compose_left,
    compose_right,
    derive_form_table,
    determinants,
    first_form,
    form_value,
)
from .numeric import Interval, simplify

DEFAULT_RESIDUAL = Fraction(1, 10**30)
DEFAULT_STEP_BUDGET = 4000
CONDITION_LABELS = ("R1", "R2", "R3", "R4")
# sextet positions of G1112, G1122, G1212, G1222
_MIDDLE = (1, 2, 3, 4)


class ResidualBudgetExceeded(RuntimeError):
    """Root refinement ran out of steps before the requested residual was met."""


@dataclass(frozen=True)
class NormalizationResult:
    left: AffineChange
    right: AffineChange
    normalized: CubicMap
    achieved: DetSextet
    exact: bool = True
    residual: Fraction = Fraction(0)
    partial: bool = False
    roots: tuple[ProjectiveRoot, ...] = ()
    steps: int = 0


def normalize_zero_case(f: CubicMap) -> NormalizationResult:
    """Left change making the second output's cubic part vanish, for maps whose quartic is zero."""
    if not f.is_cubic or not first_form(determinants(f)).is_zero():
        raise ValueError("map is not in the zero class")
    if not any(f.F[1]):
        return NormalizationResult(AffineChange.identity(), AffineChange.identity(), f, determinants(f))
    cols = f.columns()
    v = next(c for c in cols if any(c))
    for c in cols:
        if c[0] * v[1] - c[1] * v[0]:
            raise InconsistencyError("zero quartic with non-proportional coefficient columns")
    s = AffineChange(((v[0], v[1]), (-v[1], v[0])))
    g = compose_left(s, f)
    if any(g.F[1]):
        raise InconsistencyError("left change did not clear the second cubic row")
    return NormalizationResult(s, AffineChange.identity(), g, determinants(g))


def _residual(q, col1, col2) -> Fraction:
    """max(|G1111|, |G2222|) after composing with the columns, via the first-form identity."""
    det = col1[0] * col2[1] - col1[1] * col2[0]
    return max(abs(simplify(det * q(*col1))), abs(simplify(det * q(*col2))))


def normalize_two_roots(
    f: CubicMap,
    r1: ProjectiveRoot,
    r2: ProjectiveRoot,
    residual=DEFAULT_RESIDUAL,
    max_steps: int = DEFAULT_STEP_BUDGET,
) -> NormalizationResult:
    """Compose f on the right with T whose columns represent the two roots.

    Exact roots give exactly zero G1111 and G2222.  Interval roots are
    bisected in lockstep until both residuals are within ``residual``; the
    columns then hold the interval midpoints.
    """
    q = first_form(determinants(f))
    if q.is_zero():
        raise ValueError("the quartic of the map is zero")
    if r1.same_point(r2):
        raise ValueError("the two roots coincide")
    residual = Fraction(residual)
    steps = 0
    exact = r1.is_exact and r2.is_exact
    if not exact:
        while _residual(q, r1.approximate(), r2.approximate()) > residual:
            if steps >= max_steps:
                raise ResidualBudgetExceeded(
                    f"residual {residual} not reached after {max_steps} bisection steps"
                )
            r1, r2 = r1.refined(), r2.refined()
            steps += 1
            exact = r1.is_exact and r2.is_exact
            if exact:
                break
    cols = (r1.representative, r2.representative) if exact else (r1.approximate(), r2.approximate())
    t = AffineChange.from_columns(*cols)
    g = compose_right(f, t)
    achieved = determinants(g)
    got = max(abs(achieved.g1111), abs(achieved.g2222))
    if exact and got:
        raise InconsistencyError("exact root columns left G1111 or G2222 nonzero")
    if not exact and got > residual:
        raise InconsistencyError("recomputed residual exceeds the certified bound")
    return NormalizationResult(
        AffineChange.identity(), t, g, achieved, exact, Fraction(0) if exact else got, roots=(r1, r2), steps=steps
    )


def normalize_semidefinite(f: CubicMap, residual=DEFAULT_RESIDUAL) -> NormalizationResult:
    cls = classify_map(f)
    if cls.kind is not Kind.SEMIDEFINITE:
        raise ValueError(f"map is {cls.kind.value}, not semidefinite")
    if cls.subcase is Subcase.TWO_DOUBLE_ROOTS:
        return normalize_two_roots(f, cls.roots[0], cls.roots[1], residual)
    # single rational root: it fixes the first column only
    (root,) = cls.roots
    v1, v2 = root.representative
    t = AffineChange(((v1, -v2), (v2, v1)))
    g = compose_right(f, t)
    achieved = determinants(g)
    if achieved.g1111:
        raise InconsistencyError("root column left G1111 nonzero")
    return NormalizationResult(AffineChange.identity(), t, g, achieved, partial=True, roots=(root,))


def primary_pair(cls: Classification) -> tuple[ProjectiveRoot, ProjectiveRoot]:
    """Root pair used for normalization: the first exact ordered pair, else the first pair."""
    pairs = ordered_pairs(cls.roots)
    if not pairs:
        raise ValueError("fewer than two distinct roots")
    return next(((a, b) for a, b in pairs if a.is_exact and b.is_exact), pairs[0])


def ordered_pairs(roots) -> list[tuple[ProjectiveRoot, ProjectiveRoot]]:
    return [(a, b) for i, a in enumerate(roots) for j, b in enumerate(roots) if i != j]


def normalize_map(
    f: CubicMap, residual=DEFAULT_RESIDUAL, max_steps: int = DEFAULT_STEP_BUDGET
) -> tuple[Classification, NormalizationResult | None]:
    """Dispatch by class; definite maps have no normal form here and return None."""
    cls = classify_map(f)
    if cls.kind is Kind.ZERO:
        return cls, normalize_zero_case(f)
    if cls.kind is Kind.SEMIDEFINITE:
        return cls, normalize_semidefinite(f, residual)
    if cls.kind is Kind.INDEFINITE:
        return cls, normalize_two_roots(f, *primary_pair(cls), residual, max_steps)
    return cls, None


# --------------------------------------------------------------------------
# refinement conditions


def condition_label(vanishing) -> str:
    held = [str(k + 1) for k, v in enumerate(vanishing) if v is True]
    return "R" + ".".join(held) if held else "-"


@dataclass(frozen=True)
class PairPattern:
    first: ProjectiveRoot
    second: ProjectiveRoot
    # per condition R1..R4: True (vanishes), False (nonzero), None (undetermined)
    vanishing: tuple
    sextet: DetSextet | None = None

    @property
    def determined(self) -> bool:
        return all(v is not None for v in self.vanishing)

    @property
    def label(self) -> str:
        return condition_label(self.vanishing)


@dataclass(frozen=True)
class RefinementReport:
    pairs: tuple[PairPattern, ...]
    verdict: str
    verdict_determined: bool
    conditions: tuple[str, ...] = field(default_factory=tuple)
    combinations: tuple[str, ...] = field(default_factory=tuple)


def pair_pattern(f: CubicMap, col1, col2) -> tuple[tuple[bool, ...], DetSextet]:
    """Vanishing of G1112, G1122, G1212, G1222 after composing f with exact columns."""
    g = determinants(compose_right(f, AffineChange.from_columns(col1, col2)))
    return tuple(not g[k] for k in _MIDDLE), g


def _certified_pattern(f: CubicMap, r1: ProjectiveRoot, r2: ProjectiveRoot, max_steps: int = 200) -> tuple:
    """Interval evaluation of the middle determinants; only exclusions of zero are claimed."""
    table = derive_form_table()
    g = determinants(f)
    verdict = [None] * 4
    width = Fraction(1, 2**8)
    for _ in range(max_steps):
        (z1, z2), (z3, z4) = r1.enclosure(width), r2.enclosure(width)
        det = z1 * z4 - z2 * z3
        for i, k in enumerate(_MIDDLE):
            if verdict[i] is None:
                val = det * Interval.of(form_value(table, g, k + 1, (z1, z2, z3, z4)))
                if not val.contains_zero():
                    verdict[i] = False
        if all(v is not None for v in verdict):
            break
        width /= 2**8
    return tuple(verdict)


def refinement_report(f: CubicMap) -> RefinementReport:
    cls = classify_map(f)
    if cls.kind not in (Kind.INDEFINITE, Kind.SEMIDEFINITE) or len(cls.roots) < 2:
        raise ValueError("refinement conditions need at least two distinct real roots")
    patterns = []
    for a, b in ordered_pairs(cls.roots):
        if a.is_exact and b.is_exact:
            vanishing, sextet = pair_pattern(f, a.representative, b.representative)
            if all(vanishing):
                raise InconsistencyError("all six determinants vanish for a nonzero quartic")
            patterns.append(PairPattern(a, b, vanishing, sextet))
        else:
            patterns.append(PairPattern(a, b, _certified_pattern(f, a, b)))
    first, second = primary_pair(cls)
    primary = next(p for p in patterns if p.first is first and p.second is second)
    conditions = sorted(
        {CONDITION_LABELS[k] for p in patterns for k, v in enumerate(p.vanishing) if v is True}
    )
    combinations = sorted({p.label for p in patterns if p.determined})
    return RefinementReport(tuple(patterns), primary.label, primary.determined, tuple(conditions), tuple(combinations))
