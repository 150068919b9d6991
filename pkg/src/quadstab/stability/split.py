"""Strictly semistable weights: locating them and splitting along the zero crease."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import sympy

from ..functional import CreaseFamily, family_basis
from ..polytope import BoundaryWeights, Quadrilateral, WeightedQuadrilateral
from .classify import Status, Verdict, classify


def tangential_weights(quad: Quadrilateral, fam: CreaseFamily, s, t) -> tuple[Fraction, ...] | None:
    """Positive weights whose family polynomial has a critical zero at ``(s, t)``.

    Solves ``φ = ∂φ/∂s = ∂φ/∂t = 0`` at the point, which is linear in the
    weights.  Returns ``None`` when the solution space is not a single ray or
    the ray leaves the positive orthant.
    """
    s, t = Fraction(s), Fraction(t)
    basis = family_basis(quad, fam)
    rows = [[b(s, t) for b in basis],
            [b.diff_s()(s, t) for b in basis],
            [b.diff_t()(s, t) for b in basis]]
    null = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in row] for row in rows]).nullspace()
    if len(null) != 1:
        return None
    w = [Fraction(int(x.p), int(x.q)) for x in null[0]]
    if all(x <= 0 for x in w):
        w = [-x for x in w]
    if any(x <= 0 for x in w):
        return None
    total = sum(w)
    return tuple(x / total for x in w)


def _along(ws, wu, lam):
    return tuple(a + lam * (b - a) for a, b in zip(ws, wu))


def bisect_boundary(quad: Quadrilateral, w_stable, w_unstable, steps: int = 40) -> tuple[Fraction, Fraction]:
    """Bracket ``[lo, hi]`` of the parameter where ``w_stable -> w_unstable`` stops being stable.

    The stable set is convex, so along a segment it is an initial interval.
    """
    ws = tuple(Fraction(x) for x in w_stable)
    wu = tuple(Fraction(x) for x in w_unstable)
    make = lambda lam: WeightedQuadrilateral(quad, BoundaryWeights(_along(ws, wu, lam)))  # noqa: E731
    if not classify(make(Fraction(0))).stable:
        raise ValueError("the starting weight is not stable")
    if classify(make(Fraction(1))).stable:
        raise ValueError("the end weight is stable")
    lo, hi = Fraction(0), Fraction(1)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if classify(make(mid)).stable:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _simple_rationals(lo: Fraction, hi: Fraction):
    """Rationals in ``[lo, hi]`` in order of increasing denominator bound."""
    mid = (lo + hi) / 2
    seen = set()
    den = 1
    while den <= hi.denominator:
        c = mid.limit_denominator(den)
        if lo <= c <= hi and c not in seen:
            seen.add(c)
            yield c
        den *= 2


@dataclass
class SemistableInstance:
    wq: WeightedQuadrilateral
    verdict: Verdict
    parameter: Fraction
    bracket: tuple[Fraction, Fraction]


def locate_semistable(quad: Quadrilateral, w_stable, w_unstable, steps: int = 40) -> SemistableInstance:
    """Bisect to the stability boundary and snap to a rational, strictly semistable weight."""
    lo, hi = bisect_boundary(quad, w_stable, w_unstable, steps)
    ws = tuple(Fraction(x) for x in w_stable)
    wu = tuple(Fraction(x) for x in w_unstable)
    for lam in _simple_rationals(lo, hi):
        wq = WeightedQuadrilateral(quad, BoundaryWeights(_along(ws, wu, lam)))
        v = classify(wq)
        if v.status is Status.STRICTLY_SEMISTABLE:
            return SemistableInstance(wq, v, lam, (lo, hi))
    raise ArithmeticError(f"no strictly semistable rational weight in [{float(lo)}, {float(hi)}]; "
                          "the boundary is probably irrational on this segment")


def _opposite_zero(weights: BoundaryWeights) -> bool:
    z = set(weights.zeros)
    return {1, 3} <= z or {2, 4} <= z


def semistable_split(wq: WeightedQuadrilateral, verdict: Verdict | None = None
                     ) -> tuple[WeightedQuadrilateral, WeightedQuadrilateral]:
    """Cut along the crease on which 𝓛 vanishes; the cut edge gets weight 0 in both pieces."""
    if _opposite_zero(wq.weights):
        raise ValueError("weights vanishing on two opposite edges are excluded from semistable splitting")
    verdict = verdict or classify(wq)
    if verdict.status is not Status.STRICTLY_SEMISTABLE:
        raise ValueError(f"input is {verdict.status.value}, not strictly semistable")
    if verdict.witness is None:
        raise ValueError("strictly semistable verdict carries no crease to split along")
    h = verdict.witness.h
    plus, minus = wq.polygon().split(h)
    if len(plus.polygon) != 4 or len(minus.polygon) != 4:
        raise ValueError("the zero crease does not join two opposite edges")
    return plus.to_weighted_quadrilateral(), minus.to_weighted_quadrilateral()
