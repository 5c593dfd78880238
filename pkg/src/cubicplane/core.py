"""Cubic maps of the plane, affine compositions, and their determinant invariants.

A cubic map is stored through its symmetric tensor components: output ``i``
reads

    y^i = F^i_111 x1^3 + 3 F^i_112 x1^2 x2 + 3 F^i_122 x1 x2^2 + F^i_222 x2^3
          + Q^i_11 x1^2 + Q^i_12 x1 x2 + Q^i_22 x2^2
          + L^i_1 x1 + L^i_2 x2 + c^i

The six determinants of pairs of coefficient columns ``(F^1_X, F^2_X)`` are
the invariants everything else is built on.  Under a right composition with
a linear change ``T`` they turn into ``det T`` times the values of six
quartic forms of the entries of ``T``; :func:`derive_form_table` derives
those forms by exact symbolic expansion and division by ``det T``.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .numeric import UniPoly, parse_rational, scalar_to_str, simplify
from .polys import MPoly

# lower-index multisets of the cubic tensor, in column order
COLUMNS = ("111", "112", "122", "222")
# column index pairs defining the six determinants, in sextet order
SEXTET_NAMES = ("G1111", "G1112", "G1122", "G1212", "G1222", "G2222")
SEXTET_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
# polynomial weight of each tensor component
CUBIC_WEIGHTS = (1, 3, 3, 1)
CUBIC_MONOMIALS = ((3, 0), (2, 1), (1, 2), (0, 3))
QUAD_MONOMIALS = ((2, 0), (1, 1), (0, 2))
LINEAR_MONOMIALS = ((1, 0), (0, 1))


class NotCubicError(ValueError):
    """The map has no cubic part."""


class InconsistencyError(RuntimeError):
    """An identity that must hold by construction failed."""


def _vec(values, n: int, name: str) -> tuple:
    values = tuple(simplify(v) if not isinstance(v, str) else parse_rational(v) for v in values)
    if len(values) != n:
        raise ValueError(f"{name} needs {n} components, got {len(values)}")
    return values


@dataclass(frozen=True)
class CubicMap:
    F: tuple[tuple, tuple]
    Q: tuple[tuple, tuple] = ((0, 0, 0), (0, 0, 0))
    L: tuple[tuple, tuple] = ((0, 0), (0, 0))
    c: tuple = (0, 0)

    def __post_init__(self):
        object.__setattr__(self, "F", tuple(_vec(row, 4, "F row") for row in self.F))
        object.__setattr__(self, "Q", tuple(_vec(row, 3, "Q row") for row in self.Q))
        object.__setattr__(self, "L", tuple(_vec(row, 2, "L row") for row in self.L))
        object.__setattr__(self, "c", _vec(self.c, 2, "c"))
        if len(self.F) != 2 or len(self.Q) != 2 or len(self.L) != 2:
            raise ValueError("a plane map has two output rows")

    @property
    def is_cubic(self) -> bool:
        return any(x for row in self.F for x in row)

    def column(self, k: int) -> tuple:
        return (self.F[0][k], self.F[1][k])

    def columns(self) -> list[tuple]:
        return [self.column(k) for k in range(4)]

    def polynomials(self) -> list[dict[tuple[int, int], object]]:
        """Monomial coefficient dicts of the two outputs."""
        out = []
        for i in range(2):
            poly: dict[tuple[int, int], object] = {}
            for w, m, f in zip(CUBIC_WEIGHTS, CUBIC_MONOMIALS, self.F[i]):
                poly[m] = w * f
            for m, q in zip(QUAD_MONOMIALS, self.Q[i]):
                poly[m] = q
            for m, l in zip(LINEAR_MONOMIALS, self.L[i]):
                poly[m] = l
            poly[(0, 0)] = self.c[i]
            out.append(poly)
        return out

    @classmethod
    def from_polynomials(cls, polys: Sequence[Mapping[tuple[int, int], object]]) -> CubicMap:
        for p in polys:
            for m, v in p.items():
                if sum(m) > 3 and v:
                    raise ValueError(f"degree {sum(m)} term in a cubic map")
        F = tuple(
            tuple(simplify(p.get(m, 0)) / w for w, m in zip(CUBIC_WEIGHTS, CUBIC_MONOMIALS))
            for p in polys
        )
        Q = tuple(tuple(p.get(m, 0) for m in QUAD_MONOMIALS) for p in polys)
        L = tuple(tuple(p.get(m, 0) for m in LINEAR_MONOMIALS) for p in polys)
        c = tuple(p.get((0, 0), 0) for p in polys)
        return cls(F, Q, L, c)

    def __str__(self):
        lines = []
        names = {(3, 0): "x1^3", (2, 1): "x1^2*x2", (1, 2): "x1*x2^2", (0, 3): "x2^3",
                 (2, 0): "x1^2", (1, 1): "x1*x2", (0, 2): "x2^2", (1, 0): "x1", (0, 1): "x2", (0, 0): ""}
        for i, poly in enumerate(self.polynomials(), start=1):
            terms = []
            for m, name in names.items():
                v = poly.get(m, 0)
                if v:
                    s = scalar_to_str(v)
                    if " " in s:
                        s = f"({s})"
                    if name and s in ("1", "-1"):
                        terms.append(s[:-1] + name)
                    else:
                        terms.append(f"{s}*{name}" if name else s)
            lines.append(f"y{i} = " + (" + ".join(terms) if terms else "0"))
        return "\n".join(lines)


def build_map(raw: Mapping[str, Iterable], mode: str = "tensor") -> CubicMap:
    """Build a map from coefficient rows.

    ``raw`` may hold ``F1``, ``F2`` (4 entries each), ``Q1``, ``Q2`` (3 each),
    ``L1``, ``L2`` (2 each) and ``c`` (2); missing rows are zero.  In
    ``"poly"`` mode the F rows are plain monomial coefficients of
    ``x1^3, x1^2 x2, x1 x2^2, x2^3`` and the mixed ones are divided by 3.
    """
    if mode not in ("tensor", "poly"):
        raise ValueError(f"unknown mode {mode!r}")
    known = {"F1", "F2", "Q1", "Q2", "L1", "L2", "c"}
    extra = set(raw) - known
    if extra:
        raise ValueError(f"unknown coefficient rows: {sorted(extra)}")

    def row(key, n):
        vals = raw.get(key)
        if vals is None:
            return (Fraction(0),) * n
        vals = [parse_rational(v) if not isinstance(v, (Fraction,)) else v for v in vals]
        if len(vals) != n:
            raise ValueError(f"{key} needs {n} components, got {len(vals)}")
        return tuple(vals)

    F = [row("F1", 4), row("F2", 4)]
    if mode == "poly":
        F = [tuple(v / w for v, w in zip(r, CUBIC_WEIGHTS)) for r in F]
    return CubicMap(
        tuple(F),
        (row("Q1", 3), row("Q2", 3)),
        (row("L1", 2), row("L2", 2)),
        row("c", 2),
    )


@dataclass(frozen=True)
class AffineChange:
    """x -> T x + a, with T[i][m] the coefficient of x^m in output i."""

    T: tuple[tuple, tuple]
    a: tuple = (0, 0)

    def __post_init__(self):
        object.__setattr__(self, "T", tuple(tuple(simplify(v) for v in row) for row in self.T))
        object.__setattr__(self, "a", tuple(simplify(v) for v in self.a))

    @classmethod
    def identity(cls) -> AffineChange:
        return cls(((1, 0), (0, 1)))

    @classmethod
    def from_columns(cls, col1, col2) -> AffineChange:
        return cls(((col1[0], col2[0]), (col1[1], col2[1])))

    @property
    def det(self):
        (t11, t12), (t21, t22) = self.T
        return simplify(t11 * t22 - t12 * t21)

    @property
    def is_invertible(self) -> bool:
        return bool(self.det)

    @property
    def is_linear(self) -> bool:
        return not any(self.a)

    def __call__(self, x):
        return tuple(simplify(row[0] * x[0] + row[1] * x[1] + ai) for row, ai in zip(self.T, self.a))

    def inverse(self) -> AffineChange:
        d = self.det
        if not d:
            raise ValueError("singular change has no inverse")
        (t11, t12), (t21, t22) = self.T
        inv = ((t22 / d, -t12 / d), (-t21 / d, t11 / d))
        a = tuple(-(r[0] * self.a[0] + r[1] * self.a[1]) for r in inv)
        return AffineChange(inv, a)


def evaluate(f: CubicMap, x) -> tuple:
    x1, x2 = (parse_rational(v) if isinstance(v, str) else v for v in x)
    out = []
    for poly in f.polynomials():
        out.append(simplify(sum((c * x1**e1 * x2**e2 for (e1, e2), c in poly.items()), Fraction(0))))
    return tuple(out)


def compose_right(f: CubicMap, phi: AffineChange) -> CubicMap:
    """The map x -> f(phi(x)), by substituting phi into both output polynomials."""
    xs = [
        MPoly.var(2, 0, phi.T[m][0]) + MPoly.var(2, 1, phi.T[m][1]) + MPoly.const(2, phi.a[m])
        for m in range(2)
    ]
    powers = [[MPoly.const(2, 1)], [MPoly.const(2, 1)]]
    for m in range(2):
        for _ in range(3):
            powers[m].append(powers[m][-1] * xs[m])
    rows = []
    for poly in f.polynomials():
        acc = MPoly(2)
        for (e1, e2), c in poly.items():
            if c:
                acc = acc + powers[0][e1] * powers[1][e2] * c
        rows.append({m: simplify(v) for m, v in acc.terms.items()})
    return CubicMap.from_polynomials(rows)


def compose_left(s: AffineChange, f: CubicMap) -> CubicMap:
    """The map x -> s(f(x)): rows of f mixed by s.T, plus s.a on the constant term."""
    (s11, s12), (s21, s22) = s.T

    def mix(rows):
        return tuple(
            tuple(simplify(si1 * u + si2 * v) for u, v in zip(*rows)) for si1, si2 in ((s11, s12), (s21, s22))
        )

    c = (
        simplify(s11 * f.c[0] + s12 * f.c[1] + s.a[0]),
        simplify(s21 * f.c[0] + s22 * f.c[1] + s.a[1]),
    )
    return CubicMap(mix(f.F), mix(f.Q), mix(f.L), c)


# --------------------------------------------------------------------------
# determinants


@dataclass(frozen=True)
class DetSextet:
    g1111: object
    g1112: object
    g1122: object
    g1212: object
    g1222: object
    g2222: object

    def __post_init__(self):
        for name in self.__dataclass_fields__:
            object.__setattr__(self, name, simplify(getattr(self, name)))

    def as_tuple(self) -> tuple:
        return (self.g1111, self.g1112, self.g1122, self.g1212, self.g1222, self.g2222)

    def __iter__(self):
        return iter(self.as_tuple())

    def __getitem__(self, k: int):
        return self.as_tuple()[k]

    def scaled(self, factor) -> DetSextet:
        return DetSextet(*(factor * g for g in self.as_tuple()))

    def is_zero(self) -> bool:
        return not any(self.as_tuple())


def _det2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def determinants(f: CubicMap) -> DetSextet:
    cols = f.columns()
    return DetSextet(*(_det2(cols[i], cols[j]) for i, j in SEXTET_PAIRS))


# --------------------------------------------------------------------------
# quartic forms


@dataclass(frozen=True)
class BinaryQuartic:
    """a0 u^4 + a1 u^3 v + a2 u^2 v^2 + a3 u v^3 + a4 v^4."""

    coeffs: tuple

    def __post_init__(self):
        cs = tuple(simplify(parse_rational(c) if isinstance(c, str) else c) for c in self.coeffs)
        if len(cs) != 5:
            raise ValueError("a binary quartic has five coefficients")
        object.__setattr__(self, "coeffs", cs)

    def __call__(self, u, v):
        a0, a1, a2, a3, a4 = self.coeffs
        return simplify(a0 * u**4 + a1 * u**3 * v + a2 * u**2 * v**2 + a3 * u * v**3 + a4 * v**4)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def dehomogenize(self):
        """q(t, 1) as a UniPoly in t."""
        return UniPoly(reversed(self.coeffs))

    def __str__(self):
        return "(" + ", ".join(scalar_to_str(c) for c in self.coeffs) + ")"


def first_form(g: DetSextet) -> BinaryQuartic:
    """The binary quartic built from a sextet, i.e. the (u, v) form of the first column."""
    return BinaryQuartic((g.g1111, 2 * g.g1112, 3 * g.g1212 + g.g1122, 2 * g.g1222, g.g2222))


# z-variables are the entries of T: z1=T[0][0], z2=T[1][0], z3=T[0][1], z4=T[1][1]
_T_TO_Z = {(0, 0): 0, (1, 0): 1, (0, 1): 2, (1, 1): 3}


def _z_of(change: AffineChange) -> tuple:
    T = change.T
    return (T[0][0], T[1][0], T[0][1], T[1][1])


@dataclass(frozen=True)
class FormTable:
    """Six quartic forms in (z1..z4); each maps a monomial to integer weights of the six G symbols."""

    forms: tuple[dict[tuple[int, int, int, int], tuple[int, ...]], ...]
    remainders_zero: bool = True

    def coefficient(self, k: int, mono: tuple[int, int, int, int]) -> tuple[int, ...]:
        return self.forms[k - 1].get(tuple(mono), (0,) * 6)

    def monomials(self, k: int) -> list[tuple[int, int, int, int]]:
        return sorted(self.forms[k - 1], reverse=True)


def _column_polys() -> list[list[MPoly]]:
    """P[X][Y]: weight of the old component F~_Y in the new component F_X, as a polynomial in z."""
    z = [MPoly.var(4, i) for i in range(4)]
    out = []
    for X in COLUMNS:
        idx = [int(ch) - 1 for ch in X]
        row = [MPoly(4) for _ in range(4)]
        for abc in itertools.product((0, 1), repeat=3):
            term = MPoly.const(4, 1)
            for a, m in zip(abc, idx):
                term = term * z[_T_TO_Z[(a, m)]]
            row[sum(abc)] = row[sum(abc)] + term
        out.append(row)
    return out


@functools.lru_cache(maxsize=None)
def derive_form_table() -> FormTable:
    """Expand each determinant of the right-composed map symbolically and divide by det T.

    The new column ``X`` is ``sum_Y P[X][Y](z) * (F~^1_Y, F~^2_Y)``, so the
    determinant of columns ``X, W`` is ``sum_{Y<Y'} (P_XY P_WY' - P_XY' P_WY) G~_{YY'}``.
    Each of those six integer polynomials is divided by ``z1 z4 - z2 z3``;
    a nonzero remainder is an internal error.
    """
    P = _column_polys()
    det_t = MPoly(4, {(1, 0, 0, 1): 1, (0, 1, 1, 0): -1})
    forms = []
    for X, W in SEXTET_PAIRS:
        form: dict[tuple[int, ...], list[int]] = {}
        for j, (Y, Y2) in enumerate(SEXTET_PAIRS):
            num = P[X][Y] * P[W][Y2] - P[X][Y2] * P[W][Y]
            quot, rem = num.divmod_by(det_t)
            if rem:
                raise InconsistencyError(f"determinant {SEXTET_NAMES[SEXTET_PAIRS.index((X, W))]} is not divisible by det T")
            for mono, c in quot.terms.items():
                form.setdefault(mono, [0] * 6)[j] += c
        forms.append({m: tuple(v) for m, v in form.items() if any(v)})
    return FormTable(tuple(forms))


def form_value(table: FormTable, g: DetSextet, k: int, z) -> object:
    """Value of the k-th form (1..6) at z = (z1, z2, z3, z4) with the G symbols bound to g."""
    if not 1 <= k <= 6:
        raise ValueError("form index must be in 1..6")
    gs = g.as_tuple()
    total = Fraction(0)
    for mono, weights in table.forms[k - 1].items():
        coef = sum((w * gj for w, gj in zip(weights, gs) if w), Fraction(0))
        if not coef:
            continue
        term = coef
        for zi, e in zip(z, mono):
            if e:
                term = term * zi**e
        total = total + term
    return simplify(total)


# --------------------------------------------------------------------------
# composition identities


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: object
    rhs: object

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class IdentityReport:
    checks: tuple[IdentityCheck, ...] = field(default_factory=tuple)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[IdentityCheck]:
        return [c for c in self.checks if not c.ok]


def check_right_composition(f_tilde: CubicMap, phi: AffineChange) -> IdentityReport:
    """Compare determinants of f~ o phi with det T times the forms of f~ at the entries of T."""
    table = derive_form_table()
    g_new = determinants(compose_right(f_tilde, phi))
    g_old = determinants(f_tilde)
    z = _z_of(phi)
    det = phi.det
    checks = tuple(
        IdentityCheck(name, g_new[k - 1], simplify(det * form_value(table, g_old, k, z)))
        for k, name in enumerate(SEXTET_NAMES, start=1)
    )
    return IdentityReport(checks)


def check_left_composition(s: AffineChange, f_tilde: CubicMap) -> IdentityReport:
    """Compare determinants of s o f~ with det S times those of f~."""
    if not s.is_invertible:
        raise ValueError("left change must be invertible")
    g_new = determinants(compose_left(s, f_tilde))
    g_old = determinants(f_tilde)
    return IdentityReport(
        tuple(IdentityCheck(name, a, simplify(s.det * b)) for name, a, b in zip(SEXTET_NAMES, g_new, g_old))
    )
