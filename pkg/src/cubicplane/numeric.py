"""Exact scalars and univariate polynomials.

Everything here works over :class:`fractions.Fraction`.  Real algebraic
numbers that show up as roots of quartics are carried either exactly, as
:class:`QuadExtScalar` (sums of rational multiples of square roots), or as
an :class:`IsolatedRoot` holding a square-free polynomial and a rational
isolating interval that can be refined on demand.
"""

from __future__ import annotations

import functools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from sympy import factorint

_RATIONAL_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into a Fraction; anything else is an error."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, Fraction):
        return text
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational: {text!r}")
    num, den = m.group(1), m.group(2)
    if den is not None and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den is not None else 1)


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@functools.lru_cache(maxsize=4096)
def _split_square(n: int) -> tuple[int, int]:
    """Return (k, d) with n = k*k*d and d square-free (n > 0)."""
    k, d = 1, 1
    for prime, exp in factorint(n).items():
        k *= prime ** (exp // 2)
        if exp % 2:
            d *= prime
    return k, d


def sign(x) -> int:
    if isinstance(x, QuadExtScalar):
        return x.sign()
    return (x > 0) - (x < 0)


# --------------------------------------------------------------------------
# quadratic extensions


class QuadExtScalar:
    """Exact real number ``p + q*sqrt(d)``.

    Values with a single radicand are the common case, but products of
    values from different quadratic fields are closed here too: internally
    the number is a sum ``sum_k c_k * sqrt(d_k)`` over distinct square-free
    radicands (``d_k = 1`` for the rational part).  Square roots of distinct
    square-free integers are linearly independent over Q, so equality and
    zero tests are exact coefficient comparisons.
    """

    __slots__ = ("_terms",)

    def __init__(self, p=0, q=0, d: int = 0):
        p, q = Fraction(p), Fraction(q)
        d = int(d)
        if d < 0:
            raise ValueError("radicand must be non-negative")
        terms: dict[int, Fraction] = {}
        if p:
            terms[1] = p
        if q and d:
            k, sf = _split_square(d)
            terms[sf] = terms.get(sf, Fraction(0)) + q * k
        self._terms = _clean(terms)

    @classmethod
    def _from_terms(cls, terms: dict[int, Fraction]) -> QuadExtScalar:
        obj = cls.__new__(cls)
        obj._terms = _clean(terms)
        return obj

    @classmethod
    def sqrt(cls, x) -> QuadExtScalar:
        """Exact square root of a non-negative rational."""
        x = Fraction(x)
        if x < 0:
            raise ValueError("square root of a negative rational")
        if x == 0:
            return cls()
        # sqrt(n/m) = sqrt(n*m)/m
        return cls(0, Fraction(1, x.denominator), x.numerator * x.denominator)

    # -- accessors -------------------------------------------------------

    @property
    def terms(self) -> tuple[tuple[int, Fraction], ...]:
        return self._terms

    @property
    def p(self) -> Fraction:
        for d, c in self._terms:
            if d == 1:
                return c
        return Fraction(0)

    @property
    def radicals(self) -> tuple[tuple[int, Fraction], ...]:
        return tuple((d, c) for d, c in self._terms if d != 1)

    @property
    def d(self) -> int:
        rad = self.radicals
        if len(rad) > 1:
            raise ValueError("value involves several radicands")
        return rad[0][0] if rad else 0

    @property
    def q(self) -> Fraction:
        rad = self.radicals
        if len(rad) > 1:
            raise ValueError("value involves several radicands")
        return rad[0][1] if rad else Fraction(0)

    def is_rational(self) -> bool:
        return not self.radicals

    def to_fraction(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is irrational")
        return self.p

    # -- arithmetic ------------------------------------------------------

    @staticmethod
    def _coerce(other) -> QuadExtScalar | None:
        if isinstance(other, QuadExtScalar):
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return QuadExtScalar(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms = dict(self._terms)
        for d, c in o._terms:
            terms[d] = terms.get(d, Fraction(0)) + c
        return QuadExtScalar._from_terms(terms)

    __radd__ = __add__

    def __neg__(self):
        return QuadExtScalar._from_terms({d: -c for d, c in self._terms})

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        terms: dict[int, Fraction] = {}
        for d1, c1 in self._terms:
            for d2, c2 in o._terms:
                g = math.gcd(d1, d2)
                # sqrt(d1*d2) = g*sqrt(d1*d2/g^2), and d1*d2/g^2 is square-free
                d = (d1 // g) * (d2 // g)
                terms[d] = terms.get(d, Fraction(0)) + c1 * c2 * g
        return QuadExtScalar._from_terms(terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = QuadExtScalar(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> QuadExtScalar:
        if not self:
            raise ZeroDivisionError("inverse of zero")
        num = QuadExtScalar(1)
        den = self
        # multiply by conjugates prime by prime until the denominator is rational
        while not den.is_rational():
            d = next(d for d, _ in den.radicals)
            p = min(factorint(d))
            conj = QuadExtScalar._from_terms(
                {r: (-c if r % p == 0 else c) for r, c in den._terms}
            )
            num = num * conj
            den = den * conj
        return num * QuadExtScalar(1 / den.p)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    # -- comparisons -----------------------------------------------------

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self._terms == o._terms

    def __hash__(self):
        if self.is_rational():
            return hash(self.p)
        return hash(self._terms)

    def enclosure(self, width: Fraction = Fraction(1, 2**20)) -> tuple[Fraction, Fraction]:
        """Rational interval [lo, hi] containing the value with hi - lo <= width."""
        width = Fraction(width)
        if self.is_rational():
            return self.p, self.p
        rad = self.radicals
        total = sum(abs(c) for _, c in rad)
        # each sqrt(d) is bracketed within 2**-k
        k = 0
        while Fraction(total, 2**k) > width:
            k += 1
        lo = hi = self.p
        scale = 2**k
        for d, c in rad:
            r = math.isqrt(d * scale * scale)
            a, b = Fraction(r, scale), Fraction(r + 1, scale)
            if r * r == d * scale * scale:
                b = a
            if c > 0:
                lo, hi = lo + c * a, hi + c * b
            else:
                lo, hi = lo + c * b, hi + c * a
        return lo, hi

    def sign(self) -> int:
        if self.is_rational():
            return sign(self.p)
        rad = self.radicals
        if len(rad) == 1:
            (d, q), p = rad[0], self.p
            # compare p with -q*sqrt(d) by squares
            if p == 0:
                return sign(q)
            if sign(p) == sign(q):
                return sign(p)
            return sign(p) if p * p > q * q * d else -sign(p)
        width = Fraction(1)
        while True:
            lo, hi = self.enclosure(width)
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            width /= 2**16

    def __lt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- text ------------------------------------------------------------

    def __repr__(self):
        return f"QuadExtScalar({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for d, c in self._terms:
            if d == 1:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(f"sqrt({d})")
            elif c == -1:
                parts.append(f"-sqrt({d})")
            else:
                parts.append(f"{format_rational(c)}*sqrt({d})")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        rad = self.radicals
        if len(rad) <= 1:
            return {"p": format_rational(self.p), "q": format_rational(self.q), "d": self.d}
        return {
            "p": format_rational(self.p),
            "terms": [{"q": format_rational(c), "d": d} for d, c in rad],
        }

    @classmethod
    def from_json(cls, data: dict) -> QuadExtScalar:
        p = parse_rational(data["p"])
        if "terms" in data:
            terms = {1: p}
            for t in data["terms"]:
                terms[int(t["d"])] = parse_rational(t["q"])
            return cls._from_terms(terms)
        return cls(p, parse_rational(data["q"]), int(data["d"]))


def _clean(terms: dict[int, Fraction]) -> tuple[tuple[int, Fraction], ...]:
    return tuple(sorted((d, Fraction(c)) for d, c in terms.items() if c))


Scalar = Union[Fraction, QuadExtScalar]


def simplify(x):
    """Demote rational QuadExtScalar values to Fraction."""
    if isinstance(x, QuadExtScalar) and x.is_rational():
        return x.p
    if isinstance(x, int):
        return Fraction(x)
    return x


def scalar_to_json(x):
    x = simplify(x)
    if isinstance(x, QuadExtScalar):
        return x.to_json()
    return format_rational(x)


def scalar_to_str(x) -> str:
    x = simplify(x)
    if isinstance(x, QuadExtScalar):
        return str(x)
    return format_rational(x)


# --------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense univariate polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def from_roots(cls, roots: Iterable, lead=1) -> UniPoly:
        p = cls([lead])
        for r in roots:
            p = p * cls([-r, 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if not isinstance(other, UniPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"UniPoly({[format_rational(c) for c in self.coeffs]})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            mono = "" if k == 0 else ("t" if k == 1 else f"t^{k}")
            if mono and c == 1:
                parts.append(mono)
            elif mono and c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(format_rational(c) + (f"*{mono}" if mono else ""))
        return " + ".join(parts).replace("+ -", "- ")

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other) -> UniPoly:
        if not isinstance(other, UniPoly):
            other = UniPoly([other])
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return UniPoly(x + y for x, y in zip(a, b))

    def __neg__(self) -> UniPoly:
        return UniPoly(-c for c in self.coeffs)

    __radd__ = __add__

    def __sub__(self, other) -> UniPoly:
        return self + (-other)

    def __rsub__(self, other) -> UniPoly:
        return -self + other

    def __mul__(self, other) -> UniPoly:
        if not isinstance(other, UniPoly):
            return UniPoly(c * other for c in self.coeffs)
        if not self or not other:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> UniPoly:
        out = UniPoly([1])
        for _ in range(n):
            out = out * self
        return out

    def __divmod__(self, other: UniPoly) -> tuple[UniPoly, UniPoly]:
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = other.degree
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        inv = 1 / other.lead
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] * inv
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return UniPoly(quot), UniPoly(rem[:dq])

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return divmod(self, other)[1]

    def monic(self) -> UniPoly:
        if not self:
            return self
        return UniPoly(c / self.lead for c in self.coeffs)

    def derivative(self) -> UniPoly:
        return UniPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def primitive_integer(self) -> UniPoly:
        """Scale to integer coefficients with gcd 1 and positive leading term."""
        if not self:
            return self
        den = math.lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = math.gcd(*ints)
        if ints[-1] < 0:
            g = -g
        return UniPoly(Fraction(c, g) for c in ints)


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor (zero if both inputs are zero)."""
    while b:
        a, b = b, a % b
    return a.monic()


def square_free_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: monic pairwise-coprime square-free factors with multiplicities."""
    if not p:
        raise ValueError("square-free decomposition of the zero polynomial")
    if p.degree == 0:
        return []
    out = []
    dp = p.derivative()
    g = poly_gcd(p, dp)
    b = p // g
    c = dp // g
    d = c - b.derivative()
    k = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        if a.degree > 0:
            out.append((a.monic(), k))
        b = b // a
        c = d // a
        d = c - b.derivative()
        k += 1
    return out


def square_free_part(p: UniPoly) -> UniPoly:
    if p.degree <= 0:
        return UniPoly([1])
    return (p // poly_gcd(p, p.derivative())).monic()


# --------------------------------------------------------------------------
# Sturm sequences


class EndpointRootError(ValueError):
    """An interval endpoint is a root; the caller has to move it."""


@functools.lru_cache(maxsize=1024)
def sturm_sequence(p: UniPoly) -> tuple[UniPoly, ...]:
    seq = [p, p.derivative()]
    while seq[-1]:
        r = -(seq[-2] % seq[-1])
        if not r:
            break
        seq.append(r)
    return tuple(s for s in seq if s)


def _variations(values: Sequence) -> int:
    signs = [sign(v) for v in values if v]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def sturm_count(p: UniPoly, lo, hi) -> int:
    """Number of distinct real roots of the square-free ``p`` in the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    if lo >= hi:
        return 0
    if p(lo) == 0 or p(hi) == 0:
        raise EndpointRootError(f"endpoint is a root of {p}")
    seq = sturm_sequence(p)
    return _variations([s(lo) for s in seq]) - _variations([s(hi) for s in seq])


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every real root lies in (-B, B)."""
    lead = abs(p.lead)
    return 1 + max((abs(c) / lead for c in p.coeffs[:-1]), default=Fraction(0))


# --------------------------------------------------------------------------
# isolated roots


@dataclass(frozen=True)
class IsolatedRoot:
    """One real root of a square-free polynomial.

    Either ``exact`` holds the value (Fraction or QuadExtScalar) or the root
    is the unique root of ``poly`` in the closed interval [lo, hi], with
    ``poly(lo)`` and ``poly(hi)`` of opposite signs.
    """

    poly: UniPoly
    lo: Fraction
    hi: Fraction
    exact: Scalar | None = None

    @classmethod
    def exact_root(cls, poly: UniPoly, value) -> IsolatedRoot:
        value = simplify(value)
        lo, hi = value.enclosure() if isinstance(value, QuadExtScalar) else (value, value)
        return cls(poly, lo, hi, value)

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def enclosure(self, width=Fraction(1, 2**20)) -> tuple[Fraction, Fraction]:
        if isinstance(self.exact, QuadExtScalar):
            return self.exact.enclosure(width)
        if self.exact is not None:
            return self.exact, self.exact
        r = refine_root(self, width)
        return r.lo, r.hi

    def compare(self, x) -> int:
        """Sign of (root - x) for an exact scalar x."""
        if self.exact is not None:
            return sign(self.exact - x)
        if sign(x - self.lo) < 0:
            return 1
        if sign(x - self.hi) > 0:
            return -1
        v = self.poly(x)
        if v == 0:
            return 0
        # inside [lo, hi] the root sits where the sign flips
        return -1 if sign(v) != sign(self.poly(self.lo)) else 1

    def __str__(self):
        if self.exact is not None:
            return scalar_to_str(self.exact)
        return f"root of {self.poly} in [{format_rational(self.lo)}, {format_rational(self.hi)}]"


def refine_root(r: IsolatedRoot, width) -> IsolatedRoot:
    """Bisect until hi - lo <= width; exact roots pass through unchanged."""
    width = Fraction(width)
    if width <= 0:
        raise ValueError("width must be positive")
    if r.exact is not None:
        return r
    lo, hi = r.lo, r.hi
    s_lo = sign(r.poly(lo))
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = r.poly(mid)
        if v == 0:
            return IsolatedRoot.exact_root(r.poly, mid)
        if sign(v) == s_lo:
            lo = mid
        else:
            hi = mid
    return IsolatedRoot(r.poly, lo, hi)


def bisect_step(r: IsolatedRoot) -> IsolatedRoot:
    """One bisection step (exact roots unchanged)."""
    if r.exact is not None:
        return r
    return refine_root(r, r.width / 2)


def compare_roots(a: IsolatedRoot, b: IsolatedRoot) -> int:
    """Sign of (a - b); distinct roots are separated by refinement."""
    if a.exact is not None:
        return -b.compare(a.exact)
    if b.exact is not None:
        return a.compare(b.exact)
    if a.poly == b.poly and a.lo <= b.hi and b.lo <= a.hi:
        if sturm_count(a.poly, min(a.lo, b.lo), max(a.hi, b.hi)) == 1:
            return 0
    while True:
        if a.hi < b.lo:
            return -1
        if b.hi < a.lo:
            return 1
        a = bisect_step(a)
        b = bisect_step(b)
        if a.exact is not None or b.exact is not None:
            return compare_roots(a, b)


def _rational_roots(p: UniPoly, intervals: list[tuple[Fraction, Fraction]]) -> list[Fraction]:
    """Detect which isolating intervals hold a rational root.

    A rational root of the primitive integer polynomial has a denominator
    dividing the leading coefficient ``a``; two such fractions are at least
    1/a**2 apart, so once the interval is narrower than 1/(2a**2) the best
    approximation with denominator <= a is the only candidate.
    """
    prim = p.primitive_integer()
    a = int(prim.lead)
    target = Fraction(1, 4 * a * a)
    found = []
    for lo, hi in intervals:
        r = refine_root(IsolatedRoot(p, lo, hi), target)
        if r.exact is not None:
            found.append(r.exact)
            continue
        cand = ((r.lo + r.hi) / 2).limit_denominator(a)
        if r.lo <= cand <= r.hi and p(cand) == 0:
            found.append(cand)
    return found


def _isolate_intervals(p: UniPoly) -> list[tuple[Fraction, Fraction]]:
    """Isolating intervals for the real roots of square-free p (roots may hit endpoints)."""
    b = root_bound(p)
    out = []
    stack = [(-b, b)]
    while stack:
        lo, hi = stack.pop()
        n = sturm_count(p, lo, hi)
        if n == 0:
            continue
        if n == 1:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if p(mid) == 0:
            out.append((mid, mid))
            # shrink neighbours away from the exact root
            eps = (hi - lo) / 4
            while p(mid - eps) == 0 or p(mid + eps) == 0 or sturm_count(p, mid - eps, mid + eps) > 1:
                eps /= 2
            stack.append((lo, mid - eps))
            stack.append((mid + eps, hi))
        else:
            stack.append((lo, mid))
            stack.append((mid, hi))
    return sorted(out)


def _factor_roots(f: UniPoly) -> list[IsolatedRoot]:
    """Roots of one square-free factor."""
    if f.degree <= 0:
        return []
    if f.degree == 1:
        return [IsolatedRoot.exact_root(f, -f.coeffs[0] / f.coeffs[1])]
    if f.degree == 2:
        return _quadratic_roots(f)
    intervals = _isolate_intervals(f)
    exact_pts = [lo for lo, hi in intervals if lo == hi]
    open_iv = [(lo, hi) for lo, hi in intervals if lo != hi]
    rational = exact_pts + _rational_roots(f, open_iv)
    if rational:
        rest = f
        for r in rational:
            rest = rest // UniPoly([-r, 1])
        roots = [IsolatedRoot.exact_root(f, r) for r in rational]
        if rest.degree <= 2:
            roots += [IsolatedRoot.exact_root(f, r.exact) for r in _quadratic_roots(rest)] if rest.degree == 2 else []
            return roots
        return roots + [
            IsolatedRoot(f, lo, hi)
            for lo, hi in open_iv
            if not any(lo <= r <= hi for r in rational)
        ]
    return [IsolatedRoot(f, lo, hi) for lo, hi in open_iv]


def _quadratic_roots(f: UniPoly) -> list[IsolatedRoot]:
    c, b, a = f.coeffs
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    if disc == 0:
        return [IsolatedRoot.exact_root(f, -b / (2 * a))]
    s = QuadExtScalar.sqrt(disc)
    r1 = (QuadExtScalar(-b) - s) * QuadExtScalar(1 / (2 * a))
    r2 = (QuadExtScalar(-b) + s) * QuadExtScalar(1 / (2 * a))
    return [IsolatedRoot.exact_root(f, r1), IsolatedRoot.exact_root(f, r2)]


def real_roots_with_multiplicity(p: UniPoly) -> list[tuple[IsolatedRoot, int]]:
    """Distinct real roots of p in increasing order, each with its multiplicity."""
    if not p:
        raise ValueError("roots of the zero polynomial")
    tagged: list[tuple[IsolatedRoot, int]] = []
    for factor, mult in square_free_decomposition(p):
        tagged.extend((r, mult) for r in _factor_roots(factor))
    roots = _separate([r for r, _ in tagged])
    pairs = list(zip(roots, (m for _, m in tagged)))
    return sorted(pairs, key=functools.cmp_to_key(lambda a, b: compare_roots(a[0], b[0])))


def isolate_real_roots(p: UniPoly) -> list[IsolatedRoot]:
    """All distinct real roots of p in increasing order.

    Rational roots and roots of quadratic pieces come back exact; the
    rest get pairwise disjoint rational isolating intervals that also avoid
    every exact root.
    """
    return [r for r, _ in real_roots_with_multiplicity(p)]


def _separate(roots: list[IsolatedRoot]) -> list[IsolatedRoot]:
    """Refine interval roots until no interval meets another root's enclosure."""
    roots = list(roots)
    changed = True
    while changed:
        changed = False
        for i, r in enumerate(roots):
            if r.exact is not None:
                continue
            for j, s in enumerate(roots):
                if i == j:
                    continue
                lo, hi = s.enclosure(r.width / 4) if s.exact is not None else (s.lo, s.hi)
                if r.hi < lo or hi < r.lo:
                    continue
                roots[i] = r = bisect_step(r)
                if s.exact is None:
                    roots[j] = bisect_step(s)
                changed = True
    return roots


# --------------------------------------------------------------------------
# rational intervals


@dataclass(frozen=True)
class Interval:
    """Closed rational interval with outward-exact arithmetic."""

    lo: Fraction
    hi: Fraction

    @classmethod
    def point(cls, x) -> Interval:
        x = Fraction(x)
        return cls(x, x)

    @classmethod
    def of(cls, x) -> Interval:
        if isinstance(x, Interval):
            return x
        if isinstance(x, QuadExtScalar):
            return cls(*x.enclosure(Fraction(1, 2**64)))
        return cls.point(x)

    def __add__(self, other):
        o = Interval.of(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self):
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-Interval.of(other))

    def __rsub__(self, other):
        return Interval.of(other) + (-self)

    def __mul__(self, other):
        o = Interval.of(other)
        ps = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(ps), max(ps))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Interval.point(1)
        for _ in range(n):
            out = out * self
        return out

    def contains_zero(self) -> bool:
        return self.lo <= 0 <= self.hi
