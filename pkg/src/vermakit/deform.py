"""p-adic admissibility and the scalar-projection maps on Levi-induced modules.

A weight is admissible at (p, n) when every coordinate has p-adic valuation
at least -n, so the rescaled Cartan generators act integrally.  The map
phi_c collapses the free polynomial directions of a Levi-induced module to
scalars: f^s h^t v goes to (lam(h) - c)^t f^s v.  It is a surjective module
homomorphism onto the scalar-action variant of the same module, and it does
not lower p-adic filtration levels when the scalars c are admissible.

The vanishing test is the finite-degree stand-in for density arguments: a
polynomial of bounded total degree that vanishes on a full tensor grid of
distinct points is identically zero, by exact interpolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .rootsys import RootSystem, SimpleSubset, Weight
from .uea import UEAElement, vp
from .weightmod import LeviInducedModule, Vec, _clean, _vec_add


@dataclass(frozen=True)
class AdmissibilityReport:
    """Valuations of a weight on the Cartan generators, against a bound."""

    weight: Weight
    p: int
    n: int
    per_generator: tuple
    admissible: bool

    def to_json(self) -> dict:
        return {
            "weight": [str(x) for x in self.weight.coords],
            "p": self.p,
            "n": self.n,
            "valuations": [None if v == math.inf else v
                           for v in self.per_generator],
            "admissible": self.admissible,
        }


def weight_admissible(rs: RootSystem, lam: Weight, p: int, n: int
                      ) -> AdmissibilityReport:
    """Admissible iff v_p(lam(h_a)) >= -n for every simple root a."""
    if p < 3 or any(p % k == 0 for k in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"p must be an odd prime, got {p}")
    if n < 0:
        raise ValueError("n must be nonnegative")
    vals = tuple(vp(x, p) for x in lam.coords)
    return AdmissibilityReport(lam, p, n, vals,
                               all(v >= -n for v in vals))


def scalars_admissible(c: dict[int, Fraction], p: int, n: int) -> bool:
    return all(vp(Fraction(cj), p) >= -n for cj in c.values())


def phi_c_target(source: LeviInducedModule, c: dict) -> LeviInducedModule:
    """The scalar-action module the projection lands in."""
    if source.c is not None:
        raise ValueError("source already has scalar dual-Cartan action")
    return LeviInducedModule(source.alg, source.I, source.lam, source.depth,
                             c=c)


def phi_c(source: LeviInducedModule, vec: Vec, c: dict,
          target: LeviInducedModule | None = None
          ) -> tuple[LeviInducedModule, Vec]:
    """Project f^s h^t v to (lam(h) - c)^t f^s v."""
    if source.c is not None:
        raise ValueError("source already has scalar dual-Cartan action")
    if set(c) != set(source.outside):
        raise ValueError("c must be indexed by the simple roots outside I")
    if target is None:
        target = phi_c_target(source, c)
    if (target.depth != source.depth or target.I != source.I
            or target.lam != source.lam or target.c is None
            or any(target.c[j] != Fraction(c[j]) for j in source.outside)):
        raise ValueError("target module does not match the projection data")
    zero_t = (0,) * len(source.outside)
    out: Vec = {}
    for (s, t, b), coeff in vec.items():
        scalar = coeff
        for pos, j in enumerate(source.outside):
            scalar *= (source.lam_dual[j] - Fraction(c[j])) ** t[pos]
        if scalar:
            out[(s, zero_t, b)] = out.get((s, zero_t, b), Fraction(0)) + scalar
    return target, _clean(out)


def phi_c_homomorphism_check(source: LeviInducedModule, x: UEAElement,
                             vec: Vec, c: dict,
                             target: LeviInducedModule | None = None) -> bool:
    """phi_c(x . m) == x . phi_c(m), exactly.

    Needs headroom in the truncation: the polynomial directions of the
    source are cut at the module depth, and acting past that cut would
    discard terms the scalar target keeps.
    """
    if target is None:
        target = phi_c_target(source, c)
    t_max = max((sum(lab[1]) for lab in vec), default=0)
    if t_max + x.degree() > source.depth:
        raise ValueError("depth exhausted: the action overflows the "
                         "polynomial truncation")
    _, lhs = phi_c(source, source.apply_element(x, vec), c, target)
    rhs = target.apply_element(x, phi_c(source, vec, c, target)[1])
    return lhs == rhs


def phi_c_surjective(source: LeviInducedModule, c: dict,
                     target: LeviInducedModule | None = None) -> bool:
    """The projected source basis spans the whole target basis."""
    if target is None:
        target = phi_c_target(source, c)
    hit = set()
    for label in source.basis:
        _, img = phi_c(source, {label: Fraction(1)}, c, target)
        hit.update(img)
    return hit == set(target.basis)


def hw_scalar_check(source_or_target: LeviInducedModule, c: dict, i: int
                    ) -> bool:
    """On the scalar-action module, lam(h^a_i) - h^a_i acts on the
    generator by exactly c_i."""
    module = source_or_target
    if module.c is None:
        module = phi_c_target(module, c)
    v = {module.hw_label(): Fraction(1)}
    acted = module.act(("hd", i), v)
    lhs = _clean({lab: module.lam_dual[i] * co for lab, co in v.items()})
    _vec_add(lhs, acted, Fraction(-1))
    want = _clean({lab: Fraction(c[i]) * co for lab, co in v.items()})
    return _clean(lhs) == want


def phi_c_level_check(source: LeviInducedModule, vec: Vec, c: dict,
                      p: int, n: int) -> bool:
    """Filtration spot check: projecting never lowers the level
    v_p(coefficient) - n * (label degree) when the scalars are admissible."""
    if not scalars_admissible(c, p, n):
        raise ValueError("scalars are not admissible at this (p, n)")

    def level(module, v):
        if not v:
            return math.inf
        out = math.inf
        for (s, t, b), coeff in v.items():
            deg = module._label_height((s, t, b)) + sum(t)
            out = min(out, vp(coeff, p) - n * deg)
        return out

    target, img = phi_c(source, vec, c)
    return level(target, img) >= level(source, vec)


def vanishing_test(poly: dict[tuple, Fraction], degree: int,
                   samples: list[tuple]) -> bool:
    """Exact zero test for a multivariate polynomial of bounded total degree.

    poly maps exponent tuples to coefficients.  The sample set must contain
    a (degree+1)^r tensor grid of distinct values per variable; under that
    precondition, vanishing on the samples is equivalent to being the zero
    polynomial.
    """
    if not samples:
        raise ValueError("empty sample set")
    nvars = len(samples[0])
    for exps in poly:
        if len(exps) != nvars:
            raise ValueError("exponent arity does not match the samples")
        if sum(exps) > degree:
            raise ValueError(
                f"monomial degree {sum(exps)} exceeds the claimed bound {degree}")

    per_var = []
    for i in range(nvars):
        seen = []
        for pt in samples:
            if pt[i] not in seen:
                seen.append(pt[i])
        if len(seen) < degree + 1:
            raise ValueError(
                f"variable {i} takes only {len(seen)} distinct values; "
                f"{degree + 1} are needed for degree {degree}")
        per_var.append(seen[: degree + 1])

    sample_set = set(samples)
    grid = [()]
    for values in per_var:
        grid = [g + (v,) for g in grid for v in values]
    missing = next((pt for pt in grid if pt not in sample_set), None)
    if missing is not None:
        raise ValueError(f"sample set is missing the grid point {missing}")

    def evaluate(pt):
        total = Fraction(0)
        for exps, coeff in poly.items():
            term = coeff
            for x, e in zip(pt, exps):
                term *= Fraction(x) ** e
            total += term
        return total

    return all(evaluate(pt) == 0 for pt in samples)
