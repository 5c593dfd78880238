"""Seeded generators and brute-force cross-checks.

Nothing here shares code paths with the quantities it checks beyond the
basic data types: compositions are recomputed by summing tensor
components directly, and the published quartic forms are kept as text
and parsed into coefficient tables so they can be compared term by term.
"""

from __future__ import annotations

import itertools
import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .classify import Kind, stern_brocot_points
from .core import (
    SEXTET_NAMES,
    AffineChange,
    BinaryQuartic,
    CubicMap,
    check_left_composition,
    check_right_composition,
    compose_right,
    derive_form_table,
)
from .numeric import QuadExtScalar, sign


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 0
    bound: int = 5
    count: int = 100

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.bound < 1 or self.count < 1:
            raise ValueError("bound and count must be positive")

    def rng(self, stream: str = "") -> random.Random:
        # each stream gets its own generator so interleaving never changes a sequence
        return random.Random(f"{self.seed}:{stream}")


def random_rational(rng: random.Random, bound: int, integer: bool = False) -> Fraction:
    num = rng.randint(-bound, bound)
    if integer:
        return Fraction(num)
    return Fraction(num, rng.randint(1, bound))


def random_cubic_map(cfg: GeneratorConfig, integer: bool = False, lower_terms: bool = True) -> Iterator[CubicMap]:
    rng = cfg.rng("cubic_map")
    made = 0
    while made < cfg.count:
        r = lambda: random_rational(rng, cfg.bound, integer)  # noqa: E731
        F = tuple(tuple(r() for _ in range(4)) for _ in range(2))
        if not any(x for row in F for x in row):
            continue
        if lower_terms:
            Q = tuple(tuple(r() for _ in range(3)) for _ in range(2))
            L = tuple(tuple(r() for _ in range(2)) for _ in range(2))
            c = (r(), r())
            yield CubicMap(F, Q, L, c)
        else:
            yield CubicMap(F)
        made += 1


def random_invertible_change(
    cfg: GeneratorConfig, translation: bool = True, integer: bool = False
) -> Iterator[AffineChange]:
    rng = cfg.rng("invertible_change")
    made = 0
    while made < cfg.count:
        T = tuple(tuple(random_rational(rng, cfg.bound, integer) for _ in range(2)) for _ in range(2))
        a = tuple(random_rational(rng, cfg.bound, integer) for _ in range(2)) if translation else (0, 0)
        phi = AffineChange(T, a)
        if not phi.is_invertible:
            continue
        yield phi
        made += 1


def random_singular_change(cfg: GeneratorConfig, translation: bool = True) -> Iterator[AffineChange]:
    """Rank <= 1 matrices u v^T."""
    rng = cfg.rng("singular_change")
    for _ in range(cfg.count):
        u = [random_rational(rng, cfg.bound) for _ in range(2)]
        v = [random_rational(rng, cfg.bound) for _ in range(2)]
        a = tuple(random_rational(rng, cfg.bound) for _ in range(2)) if translation else (0, 0)
        yield AffineChange(((u[0] * v[0], u[0] * v[1]), (u[1] * v[0], u[1] * v[1])), a)


def random_zero_class_map(cfg: GeneratorConfig) -> Iterator[CubicMap]:
    """Maps whose four coefficient columns are multiples of one vector."""
    rng = cfg.rng("zero_class")
    made = 0
    while made < cfg.count:
        v = (random_rational(rng, cfg.bound), random_rational(rng, cfg.bound))
        mult = [random_rational(rng, cfg.bound) if rng.randrange(10) < 7 else Fraction(0) for _ in range(4)]
        if not any(v) or not any(mult):
            continue
        F = tuple(tuple(m * v[i] for m in mult) for i in range(2))
        Q = tuple(tuple(random_rational(rng, cfg.bound) for _ in range(3)) for _ in range(2))
        yield CubicMap(F, Q)
        made += 1


# --------------------------------------------------------------------------
# independent recomputation


def tensor_compose(f: CubicMap, T) -> tuple[tuple, tuple]:
    """Cubic tensor of f o T by the defining triple sum."""
    comp = lambda i, abc: f.F[i][sum(abc)]  # noqa: E731  # symmetric: only the count of 2s matters
    out = []
    for i in range(2):
        row = []
        for mnp in ((0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 1, 1)):
            total = Fraction(0)
            for abc in itertools.product((0, 1), repeat=3):
                total += comp(i, abc) * T[abc[0]][mnp[0]] * T[abc[1]][mnp[1]] * T[abc[2]][mnp[2]]
            row.append(total)
        out.append(tuple(row))
    return tuple(out)


def brute_determinants(F) -> tuple:
    cols = [(F[0][k], F[1][k]) for k in range(4)]
    return tuple(
        cols[i][0] * cols[j][1] - cols[i][1] * cols[j][0]
        for i, j in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
    )


# --------------------------------------------------------------------------
# published forms, transcribed verbatim (two coefficients are known misprints)

PUBLISHED_FORMS = {
    1: "G1111*z1^4 + 2*G1112*z1^3*z2 + (3*G1212+G1122)*z1^2*z2^2 + 2*G1222*z1*z2^3 + G2222*z2^4",
    2: "2*G1111*z1^3*z3 + G1112*z1^3*z4 + 3*G1112*z1^2*z2*z3 + (3*G1212+G1122)*z1^2*z2*z4"
    " + (3*G1212+G1122)*z1*z2^2*z3 + 3*G1222*z1*z2^2*z4 + G2222*z2^3*z3 + 2*G2222*z2^3*z4",
    3: "3*G1111*z1^2*z3^2 + 3*G1112*z1^2*z3*z4 + G1122*z1^2*z4^2 + 3*G1112*z1*z2*z3^2"
    " + (9*G1212+G1122)*z1*z2*z3*z4 + 3*G1222*z1*z2*z4^2 + G1122*z2^2*z3^2"
    " + 3*G1222*z2^2*z3*z4 + 3*G2222*z2^2*z4^2",
    4: "G1111*z1^2*z3^2 + G1112*z1^2*z3*z4 + G1212*z1^2*z4^2 + G1112*z1*z2*z3^2"
    " + (G1212+G1122)*z1*z2*z3*z4 + G1222*z1*z2*z4^2 + G1212*z2^2*z3^2"
    " + G1222*z2^2*z3*z4 + G1222*z2^2*z4^2",
    5: "2*G1111*z1*z3^3 + G1112*z2*z3^3 + 3*G1112*z1*z3^2*z4 + (3*G1212+G1122)*z2*z3^2*z4"
    " + (3*G1212+G1122)*z1*z3*z4^2 + 3*G1222*z2*z3*z4^2 + G1222*z1*z4^3 + 2*G2222*z2*z4^3",
    6: "G1111*z3^4 + 2*G1112*z3^3*z4 + (3*G1212+G1122)*z3^2*z4^2 + 2*G1222*z3*z4^3 + G2222*z4^4",
}

_TERM_RE = re.compile(r"^(?:(\d+)\*)?(?:\((.+)\)|(G\d{4}))\*(.+)$")
_GTERM_RE = re.compile(r"^(?:(\d+)\*)?(G\d{4})$")


def _parse_monomial(text: str) -> tuple[int, int, int, int]:
    exps = [0, 0, 0, 0]
    for factor in text.split("*"):
        var, _, power = factor.partition("^")
        exps[int(var[1]) - 1] += int(power) if power else 1
    return tuple(exps)


def parse_form(text: str) -> dict[tuple[int, int, int, int], tuple[int, ...]]:
    """Parse ``c*G....*z..`` sums into monomial -> G-weight vectors."""
    out: dict[tuple[int, int, int, int], list[int]] = {}
    for term in (t.strip() for t in text.split(" + ")):
        m = _TERM_RE.match(term)
        if m is None:
            raise ValueError(f"cannot parse term {term!r}")
        outer = int(m.group(1) or 1)
        gpart = m.group(2) or m.group(3)
        weights = [0] * 6
        for g in gpart.split("+"):
            gm = _GTERM_RE.match(g.strip())
            weights[SEXTET_NAMES.index(gm.group(2))] += outer * int(gm.group(1) or 1)
        mono = _parse_monomial(m.group(4))
        acc = out.setdefault(mono, [0] * 6)
        for j, w in enumerate(weights):
            acc[j] += w
    return {m: tuple(v) for m, v in out.items()}


def published_table() -> dict[int, dict]:
    return {k: parse_form(text) for k, text in PUBLISHED_FORMS.items()}


def _eval_form(form: dict, g, z) -> Fraction:
    total = Fraction(0)
    for mono, weights in form.items():
        coef = sum(w * gj for w, gj in zip(weights, g))
        term = Fraction(coef)
        for zi, e in zip(z, mono):
            term *= Fraction(zi) ** e
        total += term
    return total


def _mono_name(mono) -> str:
    parts = []
    for i, e in enumerate(mono, start=1):
        if e:
            parts.append(f"z{i}" + (f"^{e}" if e > 1 else ""))
    return "*".join(parts) or "1"


@dataclass(frozen=True)
class ConformanceSite:
    form: int
    monomial: str
    published: tuple[int, ...]
    derived: tuple[int, ...]


@dataclass
class ConformanceReport:
    cases: int = 0
    derived_mismatches: int = 0
    published_mismatches: dict[int, int] = field(default_factory=dict)
    sites: list[ConformanceSite] = field(default_factory=list)

    @property
    def derived_ok(self) -> bool:
        return self.derived_mismatches == 0


def coefficient_sites() -> list[ConformanceSite]:
    """Term-by-term differences between the published and the derived forms."""
    table = derive_form_table()
    pub = published_table()
    sites = []
    for k in range(1, 7):
        derived = table.forms[k - 1]
        for mono in sorted(set(derived) | set(pub[k]), reverse=True):
            a, b = pub[k].get(mono, (0,) * 6), derived.get(mono, (0,) * 6)
            if a != b:
                sites.append(ConformanceSite(k, _mono_name(mono), a, b))
    return sites


def symbolic_expansion_check(cfg: GeneratorConfig) -> ConformanceReport:
    """Recompute the determinants of f~ o T from the tensor sum and compare with both tables."""
    rng = cfg.rng("conformance")
    table = derive_form_table()
    pub = published_table()
    report = ConformanceReport(published_mismatches={k: 0 for k in range(1, 7)})
    for _ in range(cfg.count):
        F = tuple(tuple(Fraction(rng.randint(-cfg.bound, cfg.bound)) for _ in range(4)) for _ in range(2))
        T = tuple(tuple(Fraction(rng.randint(-cfg.bound, cfg.bound)) for _ in range(2)) for _ in range(2))
        g_old = brute_determinants(F)
        g_new = brute_determinants(tensor_compose(CubicMap(F), T))
        z = (T[0][0], T[1][0], T[0][1], T[1][1])
        det = T[0][0] * T[1][1] - T[0][1] * T[1][0]
        derived_bad = False
        for k in range(1, 7):
            if g_new[k - 1] != det * _eval_form(table.forms[k - 1], g_old, z):
                derived_bad = True
            if g_new[k - 1] != det * _eval_form(pub[k], g_old, z):
                report.published_mismatches[k] += 1
        report.derived_mismatches += derived_bad
        report.cases += 1
    report.sites = coefficient_sites()
    return report


# --------------------------------------------------------------------------
# sign sampling


@dataclass(frozen=True)
class SignProfile:
    saw_positive: bool
    saw_negative: bool
    zero_points: tuple


def sign_profile(q: BinaryQuartic, n: int, cfg: GeneratorConfig | None = None) -> SignProfile:
    """Exact values of q at n enumerated points of RP^1, plus cfg.count random ones if cfg is given."""
    if n < 1:
        raise ValueError("need at least one sample point")
    pts = list(itertools.islice(stern_brocot_points(signed=True), n))
    if cfg is not None:
        rng = cfg.rng("sign_profile")
        while len(pts) < n + cfg.count:
            u, v = random_rational(rng, cfg.bound), random_rational(rng, cfg.bound)
            if u or v:
                pts.append((u, v))
    pos = neg = False
    zeros = []
    for u, v in pts:
        s = sign(q(u, v))
        pos |= s > 0
        neg |= s < 0
        if s == 0:
            zeros.append((u, v))
    return SignProfile(pos, neg, tuple(zeros))


# --------------------------------------------------------------------------
# quartics with known factorization


@dataclass(frozen=True)
class QuarticTruth:
    """What a quartic was built from.

    ``sign`` is 0 for indefinite quartics; ``roots`` pairs an exact affine
    coordinate (None for infinity) with its multiplicity.
    """

    kind: Kind
    sign: int
    roots: tuple


def _square_free_int(rng: random.Random, bound: int) -> int:
    while True:
        d = rng.randint(2, max(3, 4 * bound))
        if all(d % (k * k) for k in range(2, math.isqrt(d) + 1)):
            return d


def _linear_factor(rng: random.Random, bound: int) -> tuple:
    """a*u + b*v; a = 0 puts the root at infinity."""
    while True:
        a = random_rational(rng, bound) if rng.randrange(10) > 0 else Fraction(0)
        b = random_rational(rng, bound)
        if a or b:
            return (a, b)


def _quadratic_factor(rng: random.Random, bound: int, real: bool) -> tuple:
    """a*u^2 + b*u*v + c*v^2, irreducible over Q, with two real roots or none."""
    a = Fraction(rng.randint(1, bound) * rng.choice((1, -1)))
    b = random_rational(rng, bound)
    if real:
        disc = Fraction(_square_free_int(rng, bound) * rng.randint(1, bound) ** 2, rng.randint(1, bound) ** 2)
    else:
        disc = -Fraction(rng.randint(1, 4 * bound), rng.randint(1, bound))
    return (a, b, (b * b - disc) / (4 * a))


def _factor_roots(factor) -> list:
    if len(factor) == 2:
        a, b = factor
        return [None if a == 0 else -b / a]
    a, b, c = factor
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    r = QuadExtScalar.sqrt(disc)
    return [(-b + r) / (2 * a), (-b - r) / (2 * a)]


def _factor_value(factor, u, v):
    return sum(c * u ** (len(factor) - 1 - i) * v**i for i, c in enumerate(factor))


def _binary_product(factors, const) -> BinaryQuartic:
    coeffs = [Fraction(const)]
    for f in factors:
        out = [Fraction(0)] * (len(coeffs) + len(f) - 1)
        for i, x in enumerate(coeffs):
            for j, y in enumerate(f):
                out[i + j] += x * y
        coeffs = out
    return BinaryQuartic(tuple(coeffs))


def random_factored_quartic(cfg: GeneratorConfig) -> Iterator[tuple[BinaryQuartic, QuarticTruth]]:
    """Products of rational linear and Q-irreducible quadratic forms, with their ground truth."""
    rng = cfg.rng("factored_quartic")
    for _ in range(cfg.count):
        factors: list[tuple] = []
        room = 4
        while room:
            reusable = [f for f in factors if len(f) - 1 <= room]
            if reusable and rng.randrange(20) < 7:
                f = rng.choice(reusable)
            elif room >= 2 and rng.randrange(2):
                f = _quadratic_factor(rng, cfg.bound, real=rng.randrange(5) < 2)
            else:
                f = _linear_factor(rng, cfg.bound)
            factors.append(f)
            room -= len(f) - 1
        const = Fraction(rng.randint(1, cfg.bound), rng.randint(1, cfg.bound)) * rng.choice((1, -1))

        mult: dict = {}
        for f in factors:
            for r in _factor_roots(f):
                mult[r] = mult.get(r, 0) + 1
        if not mult:
            kind = Kind.DEFINITE
        elif any(m % 2 for m in mult.values()):
            kind = Kind.INDEFINITE
        else:
            kind = Kind.SEMIDEFINITE
        s = 0
        if kind is not Kind.INDEFINITE:
            # the sign of the product at any point where no factor vanishes
            t = next(Fraction(n) for n in itertools.count() if all(_factor_value(f, n, 1) for f in factors))
            s = sign(const)
            for f in factors:
                s *= sign(_factor_value(f, t, 1))
        yield _binary_product(factors, const), QuarticTruth(kind, s, tuple(mult.items()))


def matches_truth(cls, truth: QuarticTruth) -> bool:
    """Exact comparison of a Classification against constructed ground truth."""
    if cls.kind is not truth.kind or cls.sign != truth.sign or len(cls.roots) != len(truth.roots):
        return False
    unused = list(cls.roots)
    for value, m in truth.roots:
        hit = next(
            (
                r
                for r in unused
                if r.multiplicity == m
                and (r.root is None if value is None else r.root is not None and r.root.compare(value) == 0)
            ),
            None,
        )
        if hit is None:
            return False
        unused.remove(hit)
    return True


def realization_discriminant(q: BinaryQuartic) -> Fraction:
    """a2^2 - 3*a1*a3 + 12*a0*a4; a rational square exactly when q is the quartic of a rational map."""
    a0, a1, a2, a3, a4 = q.coeffs
    return a2 * a2 - 3 * a1 * a3 + 12 * a0 * a4


def _is_square(x: Fraction) -> bool:
    if x < 0:
        return False
    n, d = x.numerator, x.denominator
    return math.isqrt(n) ** 2 == n and math.isqrt(d) ** 2 == d


def _shear(q: BinaryQuartic, k) -> BinaryQuartic:
    """q(u, k*u + v)."""
    out = [Fraction(0)] * 5
    for i, a in enumerate(q.coeffs):
        # a * u^(4-i) * (k u + v)^i contributes to the u^(4-j) v^j slot
        for j in range(i + 1):
            out[j] += a * math.comb(i, j) * Fraction(k) ** (i - j)
    return BinaryQuartic(tuple(out))


def map_from_quartic(q: BinaryQuartic) -> CubicMap:
    """A pure cubic map whose quartic is q.

    Uses columns (1,0), (0,a0), (r,a1/2), (u,w): the quadratic relation
    among the six determinants fixes w up to the square root of
    :func:`realization_discriminant`.  A leading coefficient of zero is
    moved away by a unimodular shear first.
    """
    disc = realization_discriminant(q)
    if q.is_zero() or not _is_square(disc):
        raise ValueError("quartic is not the quartic of a rational cubic map")
    a0, a1, a2, a3, a4 = (Fraction(c) for c in q.coeffs)
    if a0 == 0:
        k = next(k for k in range(1, 6) if q(1, k))
        shear = AffineChange(((1, 0), (k, 1)))
        return compose_right(map_from_quartic(_shear(q, k)), shear.inverse())
    root = Fraction(math.isqrt(disc.numerator), math.isqrt(disc.denominator))
    w = (a2 + root) / 2
    return CubicMap(((1, 0, (w - a2) / (3 * a0), -a3 / (2 * a0)), (0, a0, a1 / 2, w)))


def random_realizable_quartic(cfg: GeneratorConfig) -> Iterator[tuple[CubicMap, BinaryQuartic, QuarticTruth]]:
    """Factored quartics that some rational map realizes, paired with such a map."""
    for q, truth in random_factored_quartic(cfg):
        if _is_square(realization_discriminant(q)):
            yield map_from_quartic(q), q, truth


def random_irrational_indefinite_map(cfg: GeneratorConfig) -> Iterator[CubicMap]:
    """Pure cubic maps with an indefinite quartic whose real roots are all simple and only
    known by isolating intervals (so normalization has to refine them)."""
    from .classify import classify_map

    source = random_cubic_map(GeneratorConfig(cfg.seed, cfg.bound, 2**62), integer=True, lower_terms=False)
    made = 0
    for f in source:
        if made == cfg.count:
            return
        cls = classify_map(f)
        if cls.kind is Kind.INDEFINITE and all(r.multiplicity == 1 for r in cls.roots) and not any(
            r.is_exact for r in cls.roots
        ):
            yield f
            made += 1


# --------------------------------------------------------------------------
# composition identity trials

SINGULAR_EVERY = 10


@dataclass
class TrialSummary:
    trials: int = 0
    singular: int = 0
    failures: int = 0
    first_failure: str | None = None

    def record(self, report, context: str) -> None:
        self.trials += 1
        if not report.ok:
            self.failures += 1
            if self.first_failure is None:
                names = ", ".join(c.name for c in report.failures())
                self.first_failure = f"{context}: {names}"

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "singular": self.singular,
            "failures": self.failures,
            "first_failure": self.first_failure,
        }


def right_composition_trials(cfg: GeneratorConfig) -> TrialSummary:
    """Random (f~, phi) pairs; every SINGULAR_EVERY-th change is forced singular."""
    summary = TrialSummary()
    maps = random_cubic_map(cfg)
    regular = random_invertible_change(cfg)
    singular = random_singular_change(GeneratorConfig(cfg.seed, cfg.bound, cfg.count // SINGULAR_EVERY + 1))
    for i, f in enumerate(maps):
        if i % SINGULAR_EVERY == SINGULAR_EVERY - 1:
            phi = next(singular)
            summary.singular += 1
        else:
            phi = next(regular)
        summary.record(check_right_composition(f, phi), f"trial {i}")
    return summary


def left_composition_trials(cfg: GeneratorConfig) -> TrialSummary:
    summary = TrialSummary()
    for i, (f, s) in enumerate(zip(random_cubic_map(cfg), random_invertible_change(cfg))):
        summary.record(check_left_composition(s, f), f"trial {i}")
    return summary
