"""Sparse multivariate polynomials over any exact ring (Fraction, int, QuadExtScalar)."""

from __future__ import annotations

from typing import Mapping


class MPoly:
    """Polynomial as a mapping from exponent tuples to nonzero coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], object] = {
            m: c for m, c in (terms or {}).items() if c
        }

    @classmethod
    def const(cls, nvars: int, c) -> MPoly:
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, c=1) -> MPoly:
        m = [0] * nvars
        m[i] = 1
        return cls(nvars, {tuple(m): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, MPoly):
            return NotImplemented
        return self.terms == other.terms

    def __repr__(self):
        return f"MPoly({self.nvars}, {self.terms!r})"

    def coeff(self, mono: tuple[int, ...]):
        return self.terms.get(mono, 0)

    def _lift(self, other) -> MPoly:
        if isinstance(other, MPoly):
            return other
        return MPoly.const(self.nvars, other)

    def __add__(self, other) -> MPoly:
        o = self._lift(other)
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out[m] + c if m in out else c
        return MPoly(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> MPoly:
        return MPoly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> MPoly:
        return self + (-self._lift(other))

    def __rsub__(self, other) -> MPoly:
        return self._lift(other) - self

    def __mul__(self, other) -> MPoly:
        if not isinstance(other, MPoly):
            return MPoly(self.nvars, {m: c * other for m, c in self.terms.items()})
        out: dict[tuple[int, ...], object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                v = c1 * c2
                out[m] = out[m] + v if m in out else v
        return MPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> MPoly:
        out = MPoly.const(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def __call__(self, *xs):
        total = 0
        for m, c in self.terms.items():
            v = c
            for x, e in zip(xs, m):
                if e:
                    v = v * x**e
            total = total + v
        return total

    def divmod_by(self, divisor: MPoly) -> tuple[MPoly, MPoly]:
        """Division by a single polynomial in lex order; divisor's leading coefficient must be +-1."""
        lead = max(divisor.terms)
        lc = divisor.terms[lead]
        if lc not in (1, -1):
            raise ValueError("leading coefficient must be a unit")
        p = MPoly(self.nvars, self.terms)
        quot: dict[tuple[int, ...], object] = {}
        rem: dict[tuple[int, ...], object] = {}
        while p:
            m = max(p.terms)
            c = p.terms[m]
            if all(a >= b for a, b in zip(m, lead)):
                qm = tuple(a - b for a, b in zip(m, lead))
                qc = c * lc
                quot[qm] = quot.get(qm, 0) + qc
                p = p - MPoly(self.nvars, {qm: qc}) * divisor
            else:
                rem[m] = c
                del p.terms[m]
        return MPoly(self.nvars, quot), MPoly(self.nvars, rem)
