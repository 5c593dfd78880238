"""Sign type and real projective roots of the binary quartic of a cubic map."""

from __future__ import annotations

import enum
import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .core import BinaryQuartic, CubicMap, NotCubicError, determinants, first_form
from .numeric import (
    Interval,
    IsolatedRoot,
    bisect_step,
    compare_roots,
    real_roots_with_multiplicity,
    sign,
)


class Kind(str, enum.Enum):
    ZERO = "zero"
    INDEFINITE = "indefinite"
    SEMIDEFINITE = "semidefinite"
    DEFINITE = "definite"


class Subcase(str, enum.Enum):
    TWO_DOUBLE_ROOTS = "two_double_roots"
    QUADRUPLE_ROOT = "quadruple_root"
    ONE_DOUBLE_ROOT = "one_double_root"


@dataclass(frozen=True)
class ProjectiveRoot:
    """A real zero [u : v] of a binary form.

    ``root`` is the affine coordinate t = u/v as an IsolatedRoot; ``None``
    stands for the point at infinity [1 : 0].
    """

    root: IsolatedRoot | None
    multiplicity: int

    @property
    def at_infinity(self) -> bool:
        return self.root is None

    @property
    def is_exact(self) -> bool:
        return self.root is None or self.root.is_exact

    @property
    def representative(self) -> tuple:
        """Canonical exact point (t, 1) or (1, 0)."""
        if self.root is None:
            return (Fraction(1), Fraction(0))
        if not self.root.is_exact:
            raise ValueError("root is only known by an isolating interval")
        return (self.root.exact, Fraction(1))

    def approximate(self) -> tuple:
        """Exact representative, or the interval midpoint for interval roots."""
        if self.is_exact:
            return self.representative
        return ((self.root.lo + self.root.hi) / 2, Fraction(1))

    def enclosure(self, width) -> tuple[Interval, Interval]:
        if self.root is None:
            return Interval.point(1), Interval.point(0)
        lo, hi = self.root.enclosure(width)
        return Interval(lo, hi), Interval.point(1)

    def refined(self) -> ProjectiveRoot:
        """One bisection step on an interval root."""
        if self.is_exact:
            return self
        return ProjectiveRoot(bisect_step(self.root), self.multiplicity)

    def same_point(self, other: ProjectiveRoot) -> bool:
        if self.root is None or other.root is None:
            return self.root is None and other.root is None
        return compare_roots(self.root, other.root) == 0

    def __str__(self):
        if self.root is None:
            return "[1 : 0]"
        if self.root.is_exact:
            return f"[{self.root} : 1]"
        return f"[t : 1], t {self.root}"


def _root_order(a: ProjectiveRoot, b: ProjectiveRoot) -> int:
    # infinity first, then decreasing affine coordinate
    if a.root is None:
        return 0 if b.root is None else -1
    if b.root is None:
        return 1
    return -compare_roots(a.root, b.root)


def sort_roots(roots) -> list[ProjectiveRoot]:
    return sorted(roots, key=functools.cmp_to_key(_root_order))


@dataclass(frozen=True)
class Classification:
    kind: Kind
    sign: int = 0
    roots: tuple[ProjectiveRoot, ...] = ()
    subcase: Subcase | None = None
    quartic: BinaryQuartic | None = None
    sign_point: tuple | None = None
    witnesses: tuple = ()

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(sorted(r.multiplicity for r in self.roots))

    @property
    def sign_label(self) -> str | None:
        if self.kind in (Kind.ZERO, Kind.INDEFINITE):
            return None
        return "positive" if self.sign > 0 else "negative"


def stern_brocot_points(signed: bool = False) -> Iterator[tuple[Fraction, Fraction]]:
    """(1,0), (0,1), then positive rationals p/q as (p, q), Stern-Brocot level by level, each level descending.

    With ``signed`` each positive point is followed by its mirror (-p, q).
    """
    yield Fraction(1), Fraction(0)
    yield Fraction(0), Fraction(1)
    seq = [(0, 1), (1, 0)]
    while True:
        level = [(a[0] + b[0], a[1] + b[1]) for a, b in zip(seq, seq[1:])]
        for p, q in reversed(level):
            yield Fraction(p), Fraction(q)
            if signed:
                yield Fraction(-p), Fraction(q)
        merged = []
        for a, m in zip(seq, level):
            merged.extend((a, m))
        merged.append(seq[-1])
        seq = merged


def projective_real_roots(q: BinaryQuartic) -> list[ProjectiveRoot]:
    """Distinct real zeros of q in RP^1 with multiplicities: infinity first, then decreasing t."""
    if q.is_zero():
        raise ValueError("the zero quartic vanishes everywhere")
    p = q.dehomogenize()
    roots = []
    if p.degree < 4:
        roots.append(ProjectiveRoot(None, 4 - p.degree))
    if p.degree > 0:
        roots.extend(ProjectiveRoot(r, m) for r, m in real_roots_with_multiplicity(p))
    return sort_roots(roots)


def _gap_points(roots: list[ProjectiveRoot]) -> list[Fraction]:
    """Rational t-values strictly between (and beyond) the finite roots."""
    finite = [r for r in roots if r.root is not None]
    if not finite:
        return [Fraction(0)]
    width = Fraction(1)
    while True:
        encl = sorted((r.root.enclosure(width) for r in finite), key=lambda iv: iv[0])
        if all(a[1] < b[0] for a, b in zip(encl, encl[1:])):
            break
        width /= 1024
    pts = [encl[0][0] - 1]
    pts += [(a[1] + b[0]) / 2 for a, b in zip(encl, encl[1:])]
    pts.append(encl[-1][1] + 1)
    return pts


def _sign_point(q: BinaryQuartic) -> tuple:
    for u, v in stern_brocot_points():
        if q(u, v):
            return (u, v)
    raise AssertionError("unreachable: a nonzero quartic has at most four projective zeros")


def classify_quartic(q: BinaryQuartic) -> Classification:
    if q.is_zero():
        return Classification(Kind.ZERO, quartic=q)
    roots = tuple(projective_real_roots(q))
    if any(r.multiplicity % 2 for r in roots):
        values = [(t, q(t, 1)) for t in _gap_points(list(roots))]
        pos = next((t, val) for t, val in values if val > 0)
        neg = next((t, val) for t, val in values if val < 0)
        witnesses = (((pos[0], Fraction(1)), pos[1]), ((neg[0], Fraction(1)), neg[1]))
        return Classification(Kind.INDEFINITE, 0, roots, quartic=q, witnesses=witnesses)
    point = _sign_point(q)
    s = sign(q(*point))
    if not roots:
        return Classification(Kind.DEFINITE, s, roots, quartic=q, sign_point=point)
    mults = sorted(r.multiplicity for r in roots)
    subcase = {
        (2, 2): Subcase.TWO_DOUBLE_ROOTS,
        (4,): Subcase.QUADRUPLE_ROOT,
        (2,): Subcase.ONE_DOUBLE_ROOT,
    }[tuple(mults)]
    return Classification(Kind.SEMIDEFINITE, s, roots, subcase, quartic=q, sign_point=point)


def classify_map(f: CubicMap) -> Classification:
    if not f.is_cubic:
        raise NotCubicError("the map has no cubic terms")
    return classify_quartic(first_form(determinants(f)))


def root_vanishes(q: BinaryQuartic, r: ProjectiveRoot) -> bool:
    """Substitute an exact representative back into q."""
    u, v = r.representative
    return not q(u, v)

