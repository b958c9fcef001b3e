"""PBW normal-form arithmetic in the universal enveloping algebra.

Elements are sparse rational combinations of normal-ordered monomials
f^a h^b e^c, where the f-block runs through the positive roots in
descending base order, the h-block through the simple roots ascending,
and the e-block through the positive roots ascending.  Products are
rewritten into this order with the commutation relations; each rewriting
step strictly lowers (degree, position), so the process terminates and
the result is canonical.

The transpose map swaps e and f blocks; with the sign convention used by
the structure-constant table it is an anti-automorphism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .chevalley import Gen, StructureConstants
from .rootsys import Weight

# monomial: (f_exponents over pos roots, h_exponents over simple, e_exponents)
Monomial = tuple[tuple, tuple, tuple]


def vp(x: Fraction, p: int) -> int | float:
    """p-adic valuation of a rational, +inf for zero."""
    if x == 0:
        return math.inf
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


@dataclass(frozen=True)
class DeformationContext:
    """Odd prime p, deformation parameter n, and a degree truncation bound."""

    p: int
    n: int
    depth: int

    def __post_init__(self):
        if self.p < 3 or self.p % 2 == 0 or any(self.p % k == 0 for k in range(3, int(self.p ** 0.5) + 1, 2)):
            raise ValueError(f"p must be an odd prime, got {self.p}")
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        if self.depth < 1:
            raise ValueError("depth must be at least 1")


class EnvelopingAlgebra:
    """Rewriting engine for one root system's Chevalley basis."""

    def __init__(self, sc: StructureConstants):
        self.sc = sc
        self.rs = sc.rs
        self.npos = len(sc.base_order)
        self._memo: dict[tuple[Gen, Monomial], dict[Monomial, Fraction]] = {}

    # -- monomial plumbing ---------------------------------------------------

    def _gen_key(self, g: Gen) -> tuple[int, int]:
        kind, i = g
        if kind == "f":
            return (0, self.npos - 1 - i)
        if kind == "h":
            return (1, i)
        return (2, i)

    def word(self, m: Monomial) -> list[Gen]:
        """The monomial as a normal-ordered generator word."""
        f, h, e = m
        out: list[Gen] = []
        for i in range(self.npos - 1, -1, -1):
            out.extend([("f", i)] * f[i])
        for i in range(self.rs.rank):
            out.extend([("h", i)] * h[i])
        for i in range(self.npos):
            out.extend([("e", i)] * e[i])
        return out

    def mono_one(self) -> Monomial:
        return ((0,) * self.npos, (0,) * self.rs.rank, (0,) * self.npos)

    def mono_of_gen(self, g: Gen) -> Monomial:
        return self._prepend(g, self.mono_one())

    def _prepend(self, g: Gen, m: Monomial) -> Monomial:
        kind, i = g
        f, h, e = m
        if kind == "f":
            return (f[:i] + (f[i] + 1,) + f[i + 1:], h, e)
        if kind == "h":
            return (f, h[:i] + (h[i] + 1,) + h[i + 1:], e)
        return (f, h, e[:i] + (e[i] + 1,) + e[i + 1:])

    def _lead_and_rest(self, m: Monomial) -> tuple[Gen | None, Monomial]:
        f, h, e = m
        for i in range(self.npos - 1, -1, -1):
            if f[i]:
                return ("f", i), (f[:i] + (f[i] - 1,) + f[i + 1:], h, e)
        for i in range(self.rs.rank):
            if h[i]:
                return ("h", i), (f, h[:i] + (h[i] - 1,) + h[i + 1:], e)
        for i in range(self.npos):
            if e[i]:
                return ("e", i), (f, h, e[:i] + (e[i] - 1,) + e[i + 1:])
        return None, m

    @staticmethod
    def degree(m: Monomial) -> int:
        return sum(m[0]) + sum(m[1]) + sum(m[2])

    # -- rewriting -------------------------------------------------------------

    def gen_mul_mono(self, g: Gen, m: Monomial) -> dict[Monomial, Fraction]:
        """Normal form of generator * normal-ordered monomial."""
        cached = self._memo.get((g, m))
        if cached is not None:
            return cached
        lead, rest = self._lead_and_rest(m)
        if lead is None or self._gen_key(g) <= self._gen_key(lead):
            result = {self._prepend(g, m): Fraction(1)}
        else:
            # g m = lead (g rest) + [g, lead] rest
            result: dict[Monomial, Fraction] = {}
            for mono, c in self.gen_mul_mono(g, rest).items():
                for mm, cc in self.gen_mul_mono(lead, mono).items():
                    result[mm] = result.get(mm, Fraction(0)) + c * cc
            for gb, cb in self.sc.bracket(g, lead).items():
                for mm, cc in self.gen_mul_mono(gb, rest).items():
                    result[mm] = result.get(mm, Fraction(0)) + cb * cc
            result = {k: v for k, v in result.items() if v}
        self._memo[(g, m)] = result
        return result

    def mono_mul(self, m1: Monomial, m2: Monomial) -> dict[Monomial, Fraction]:
        result = {m2: Fraction(1)}
        for g in reversed(self.word(m1)):
            nxt: dict[Monomial, Fraction] = {}
            for mono, coeff in result.items():
                for mm, cc in self.gen_mul_mono(g, mono).items():
                    nxt[mm] = nxt.get(mm, Fraction(0)) + coeff * cc
            result = {k: v for k, v in nxt.items() if v}
        return result

    # -- element constructors ----------------------------------------------------

    def element(self, terms: dict[Monomial, Fraction]) -> "UEAElement":
        return UEAElement(self, terms)

    def zero(self) -> "UEAElement":
        return UEAElement(self, {})

    def one(self) -> "UEAElement":
        return UEAElement(self, {self.mono_one(): Fraction(1)})

    def gen(self, kind: str, i: int) -> "UEAElement":
        return UEAElement(self, {self.mono_of_gen((kind, i)): Fraction(1)})

    def divided_power(self, kind: str, i: int, s: int) -> "UEAElement":
        """x^s / s! for a single generator, stored expanded."""
        m = self.mono_one()
        for _ in range(s):
            m = self._prepend((kind, i), m)
        return UEAElement(self, {m: Fraction(1, math.factorial(s))})


class UEAElement:
    """Sparse rational combination of normal-ordered monomials."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg: EnvelopingAlgebra, terms: dict[Monomial, Fraction]):
        self.alg = alg
        self.terms = {m: Fraction(c) for m, c in terms.items() if c}

    def __eq__(self, other):
        return isinstance(other, UEAElement) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "UEAElement") -> "UEAElement":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return UEAElement(self.alg, out)

    def __neg__(self) -> "UEAElement":
        return UEAElement(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "UEAElement") -> "UEAElement":
        return self + (-other)

    def scale(self, c) -> "UEAElement":
        c = Fraction(c)
        return UEAElement(self.alg, {m: c * v for m, v in self.terms.items()})

    def __mul__(self, other: "UEAElement") -> "UEAElement":
        return multiply(self, other)

    def degree(self) -> int:
        return max((self.alg.degree(m) for m in self.terms), default=0)

    def truncate(self, depth: int) -> "UEAElement":
        return UEAElement(self.alg,
                          {m: c for m, c in self.terms.items()
                           if self.alg.degree(m) <= depth})

    def __repr__(self):
        return f"UEAElement({len(self.terms)} terms)"


def multiply(a: UEAElement, b: UEAElement,
             ctx: DeformationContext | None = None) -> UEAElement:
    """Normal-ordered product; truncated by total degree when ctx is given."""
    alg = a.alg
    out: dict[Monomial, Fraction] = {}
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            for mm, cc in alg.mono_mul(m1, m2).items():
                out[mm] = out.get(mm, Fraction(0)) + c1 * c2 * cc
    result = UEAElement(alg, out)
    if ctx is not None:
        result = result.truncate(ctx.depth)
    return result


def weight_of_monomial(alg: EnvelopingAlgebra, m: Monomial) -> Weight:
    """The ad-Cartan weight: sum of e-block roots minus f-block roots."""
    rs = alg.rs
    w = rs.zero_weight()
    for i, k in enumerate(m[2]):
        if k:
            w = w + rs.weight_of_root(alg.sc.base_order[i]).scale(k)
    for i, k in enumerate(m[0]):
        if k:
            w = w - rs.weight_of_root(alg.sc.base_order[i]).scale(k)
    return w


def weight_components(x: UEAElement) -> dict[Weight, UEAElement]:
    """Split into ad-weight components; the components sum back to x."""
    buckets: dict[Weight, dict[Monomial, Fraction]] = {}
    for m, c in x.terms.items():
        w = weight_of_monomial(x.alg, m)
        buckets.setdefault(w, {})[m] = c
    return {w: UEAElement(x.alg, t) for w, t in buckets.items()}


def tau(x: UEAElement) -> UEAElement:
    """Transpose anti-automorphism: e and f swap, h fixed, words reverse.

    On a normal-ordered monomial this is just the e/f exponent swap: the
    reversed, swapped word is already in normal order.
    """
    return UEAElement(x.alg, {(m[2], m[1], m[0]): c for m, c in x.terms.items()})


def gamma_level(x: UEAElement, ctx: DeformationContext) -> int | float:
    """Largest filtration level containing x: min over terms of
    v_p(coefficient) - n * (monomial degree).  +inf for zero."""
    if x.is_zero():
        return math.inf
    return min(vp(c, ctx.p) - ctx.n * x.alg.degree(m) for m, c in x.terms.items())


def exp_truncated(x: UEAElement, ctx: DeformationContext) -> UEAElement:
    """Sum of x^j / j! for j up to the context depth.

    Requires x to be concentrated in degree 1 with filtration level at
    least 1, so every truncation order stays p-integral.
    """
    if any(x.alg.degree(m) != 1 for m in x.terms):
        raise ValueError("exp_truncated needs a degree-1 argument")
    if not x.is_zero() and gamma_level(x, ctx) < 1:
        raise ValueError("filtration level below 1: truncated exponential not p-integral")
    acc = x.alg.one()
    power = x.alg.one()
    for j in range(1, ctx.depth + 1):
        power = multiply(power, x, ctx).scale(Fraction(1, j))
        if power.is_zero():
            break
        acc = acc + power
    return acc


def iwasawa_generator_monomial(s: tuple[int, ...], basis: list[UEAElement],
                               ctx: DeformationContext) -> UEAElement:
    """Product over i of (exp(p^(n+1) x_i) - 1)^(s_i), truncated.

    Its lowest-degree term is p^((n+1)|s|) x1^s1 ... xr^sr.
    """
    if sum(s) > ctx.depth:
        raise ValueError("multi-index degree exceeds the truncation depth")
    scalar = Fraction(ctx.p) ** (ctx.n + 1)
    alg = basis[0].alg if basis else None
    out = alg.one() if alg else None
    if out is None:
        raise ValueError("empty generator basis")
    one = alg.one()
    for x, si in zip(basis, s):
        factor = exp_truncated(x.scale(scalar), ctx) - one
        for _ in range(si):
            out = multiply(out, factor, ctx)
    return out


def element_to_json(x: UEAElement) -> list[dict]:
    """Stable JSON form: one record per monomial, coefficients as strings."""
    items = sorted(x.terms.items())
    return [{"f": list(m[0]), "h": list(m[1]), "e": list(m[2]), "coeff": str(c)}
            for m, c in items]
