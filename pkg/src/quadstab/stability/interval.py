"""The explicit stable interval for measures supported on two edges."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ..algebra.rational import Q, fmt
from ..algebra.roots import RealAlgebraic, all_real_roots, real_roots
from ..algebra.unipoly import UniPoly
from ..polytope import Quadrilateral, parallel_pairs
from .hessian import corner_family, hessian_entries


class PairCase(Enum):
    ADJACENT = "Adjacent"
    OPPOSITE = "Opposite"
    PARALLEL = "Parallel"


def pair_case(quad: Quadrilateral, i: int, j: int) -> PairCase:
    if i == j or not (1 <= i <= 4 and 1 <= j <= 4):
        raise ValueError("need two distinct edge indices in 1..4")
    if (i - j) % 4 == 2:
        return PairCase.PARALLEL if tuple(sorted((i, j))) in parallel_pairs(quad) else PairCase.OPPOSITE
    return PairCase.ADJACENT


def zero_corners(i: int, j: int) -> tuple[int, ...]:
    """Edges carrying zero weight when the measure lives on ``E_i`` and ``E_j``."""
    return tuple(m for m in range(1, 5) if m not in (i, j))


@dataclass
class StableInterval:
    case: PairCase
    i: int
    j: int
    r0: RealAlgebraic | None = None
    r1: RealAlgebraic | None = None
    include0: bool = False
    include1: bool = False
    roots: list = field(default_factory=list)
    note: str = ""

    @property
    def empty(self) -> bool:
        return self.r0 is None

    def contains(self, r) -> bool:
        if self.empty:
            return False
        r = Q(r)
        lo = self.r0 < r or (self.include0 and self.r0 == r)
        hi = r < self.r1 or (self.include1 and self.r1 == r)
        return lo and hi

    def to_json(self) -> dict:
        def num(x: RealAlgebraic | None):
            if x is None:
                return None
            v = x.rational_value()
            if v is not None:
                return {"exact": fmt(v), "approx": float(v)}
            return {"approx": float(x.copy()), "minimal_polynomial": [fmt(c) for c in x.poly.coeffs],
                    "isolating_interval": [fmt(x.lo), fmt(x.hi)]}

        return {
            "case": self.case.value,
            "edges": [self.i, self.j],
            "empty": self.empty,
            "r0": num(self.r0),
            "r1": num(self.r1),
            "include_r0": self.include0,
            "include_r1": self.include1,
            "defining_roots": [num(c) for c in self.roots],
            "note": self.note,
        }


Constraint = tuple[UniPoly, bool]  # (polynomial, strict)


def _satisfied_at_rational(cons: list[Constraint], r: Fraction) -> bool:
    return all(p(r) > 0 if strict else p(r) >= 0 for p, strict in cons)


def _satisfied_at(cons: list[Constraint], r: RealAlgebraic) -> bool:
    for p, strict in cons:
        s = r.sign_of(p)
        if s < 0 or (strict and s == 0):
            return False
    return True


def solve_sign_conditions(cons: list[Constraint]) -> list[tuple[RealAlgebraic, RealAlgebraic, bool, bool]]:
    """Components of ``{r in (0,1): all constraints hold}`` as ``(lo, hi, lo_in, hi_in)``."""
    points = [RealAlgebraic.rational(0), RealAlgebraic.rational(1)]
    for p, _ in cons:
        if p.degree >= 1:
            for root in real_roots(p, 0, 1):
                if not any(root == q for q in points):
                    points.append(root)
    points.sort()
    cells: list[tuple[str, object, bool]] = []
    for idx, a in enumerate(points):
        if 0 < idx < len(points) - 1:
            cells.append(("pt", a, _satisfied_at(cons, a.copy())))
        if idx + 1 < len(points):
            mid = a.copy().between_rational(points[idx + 1].copy())
            cells.append(("gap", (a, points[idx + 1]), _satisfied_at_rational(cons, mid)))
    comps = []
    current = None
    for kind, obj, ok in cells:
        if kind == "gap":
            lo, hi = obj
            if ok:
                if current is None:
                    current = [lo, hi, False, False]
                else:
                    current[1] = hi
                    current[3] = False
            elif current is not None:
                comps.append(tuple(current))
                current = None
        else:
            if ok:
                if current is None:
                    current = [obj, obj, True, True]
                else:
                    current[1] = obj
                    current[3] = True
            elif current is not None:
                comps.append(tuple(current))
                current = None
    if current is not None:
        comps.append(tuple(current))
    return comps


def opposite_constraints(quad: Quadrilateral, i: int, j: int) -> tuple[list[Constraint], UniPoly, int]:
    m = min(zero_corners(i, j))
    h11, h12, h22 = hessian_entries(quad, i, j, corner_family(quad, m))
    det = h11 * h22 - h12 * h12
    return [(det, True), (h11, True)], det, m


def adjacent_constraints(quad: Quadrilateral, i: int, j: int) -> tuple[list[Constraint], list[UniPoly]]:
    cons: list[Constraint] = []
    dets = []
    for m in zero_corners(i, j):
        h11, h12, h22 = hessian_entries(quad, i, j, corner_family(quad, m))
        det = h11 * h22 - h12 * h12
        dets.append(det)
        cons += [(det, False), (h11, False), (h22, False)]
    return cons, dets


def stable_interval(quad: Quadrilateral, i: int, j: int) -> StableInterval:
    """Stable weights ``(1 - r) E_i + r E_j`` for ``r`` in ``(0, 1)``."""
    case = pair_case(quad, i, j)
    if case is PairCase.PARALLEL:
        return StableInterval(case, i, j, note="parallel edges: unstable for all r in [0,1]")
    if case is PairCase.OPPOSITE:
        cons, det, _ = opposite_constraints(quad, i, j)
        roots = all_real_roots(det) if det.degree >= 1 else []
    else:
        cons, dets = adjacent_constraints(quad, i, j)
        roots = [c for d in dets for c in (all_real_roots(d) if d.degree >= 1 else [])]
    comps = solve_sign_conditions(cons)
    out = StableInterval(case, i, j, roots=roots)
    if not comps:
        out.note = "no stable weight on this edge pair"
        return out
    if len(comps) > 1:
        raise ArithmeticError("stable set on an edge pair is not an interval")
    out.r0, out.r1, out.include0, out.include1 = comps[0]
    return out
