"""Exact stability decision for weighted quadrilaterals."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from ..algebra.boxsign import SignKind, sign_on_box
from ..algebra.rational import fmt
from ..algebra.roots import RealAlgebraic
from ..algebra.sym2 import Definiteness, Sym2, definiteness
from ..functional import (CreaseFamily, L_simple, SimplePL, associated_affine, family_polynomial,
                          six_families)
from ..polytope import AffineFn, BoundaryWeights, Quadrilateral, WeightedQuadrilateral, parallel_pairs
from .hessian import corner_family, hessian_entries, pair_weights
from .interval import PairCase, pair_case, zero_corners


class Status(Enum):
    STABLE = "Stable"
    STRICTLY_SEMISTABLE = "StrictlySemistable"
    UNSTABLE = "Unstable"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Witness:
    """A simple PL function ``max(0, h)`` together with its exact 𝓛 value."""

    h: AffineFn
    value: Fraction
    family: str = ""
    params: tuple | None = None

    def to_json(self) -> dict:
        out = {"h": self.h.to_json(), "L": fmt(self.value)}
        if self.family:
            out["family"] = self.family
        if self.params is not None:
            out["s_t"] = [fmt(x) for x in self.params]
        return out


@dataclass
class Verdict:
    status: Status
    witness: Witness | None = None
    method: str = ""
    tags: list = field(default_factory=list)
    reason: str = ""

    @property
    def stable(self) -> bool:
        return self.status is Status.STABLE

    def to_json(self) -> dict:
        out = {"status": self.status.value, "method": self.method}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.tags:
            out["tags"] = list(self.tags)
        if self.reason:
            out["reason"] = self.reason
        return out


def _witness(wq: WeightedQuadrilateral, h: AffineFn, family: str = "", params=None) -> Witness:
    return Witness(h, L_simple(wq, SimplePL(h)), family, params)


def family_witness(wq: WeightedQuadrilateral, fam: CreaseFamily, s, t) -> Witness:
    return _witness(wq, fam.crease(s, t), fam.label, (Fraction(s), Fraction(t)))


# -- general search over the six crease families ----------------------------------------

def _scan_families(wq: WeightedQuadrilateral) -> Verdict:
    zero_found = None
    undecided = []
    for fam in six_families(wq.quad):
        fp = family_polynomial(wq, fam)
        if fam.kind == "opposite":
            res = sign_on_box(fp.reduced(), excluded_corners=[(0, 0), (1, 1)])
        else:
            red = fp.reduced()
            if red.is_zero():
                undecided.append(f"{fam.label}: family polynomial vanishes identically")
                continue
            res = sign_on_box(red, excluded_edges=[("s", 0), ("t", 0)])
        if res.kind is SignKind.HAS_NEGATIVE:
            w = family_witness(wq, fam, *res.witness)
            if w.value >= 0:
                raise ArithmeticError("negative family value did not reproduce")
            return Verdict(Status.UNSTABLE, w, "six-family search")
        if res.kind is SignKind.HAS_ZERO and zero_found is None:
            w = family_witness(wq, fam, *res.witness)
            if w.value != 0 or w.h.is_zero():
                raise ArithmeticError("zero family value did not reproduce")
            zero_found = w
        elif res.kind in (SignKind.UNDECIDED, SignKind.IDENTICALLY_ZERO):
            undecided.append(f"{fam.label}: {res.reason or res.kind.value}")
    if undecided:
        return Verdict(Status.UNKNOWN, zero_found, "six-family search", reason="; ".join(undecided))
    if zero_found is not None:
        return Verdict(Status.STRICTLY_SEMISTABLE, zero_found, "six-family search")
    return Verdict(Status.STABLE, None, "six-family search")


# -- two-edge support ---------------------------------------------------------------------------

def _descent_witness(wq: WeightedQuadrilateral, m: int, H: Sym2) -> Witness | None:
    """A negative value of the corner-``E_m`` family along a descent direction of ``H``."""
    fam = corner_family(wq.quad, m)
    fp = family_polynomial(wq, fam)
    candidates = []
    if H.h11 < 0:
        candidates.append((Fraction(1), Fraction(0)))
    if H.h22 < 0:
        candidates.append((Fraction(0), Fraction(1)))
    if H.h12 < 0 and H.h11 > 0:
        # minimiser of the form along t = 1 lies at s = -h12/h11
        candidates.append((-H.h12 / H.h11, Fraction(1)))
    for ds, dt in candidates:
        if ds < 0 or dt < 0 or H.quad(ds, dt) >= 0:
            continue
        scale = max(ds, dt)
        ds, dt = ds / scale, dt / scale
        for j in range(1, 80):
            eps = Fraction(1, 2**j)
            s, t = ds * eps, dt * eps
            if fp(s, t) < 0:
                w = family_witness(wq, fam, s, t)
                if w.value < 0:
                    return w
    return None


def _parallel_witness(wq: WeightedQuadrilateral, support: tuple[int, int]) -> Witness | None:
    """A crease with 𝓛 = 0 when the measure lives on two parallel edges."""
    quad = wq.quad
    zero = zero_corners(*support)
    edges = wq.edges
    l1, l2 = edges[zero[0] - 1].l, edges[zero[1] - 1].l
    # the pencil spanned by the two zero-edge lines: through their common point,
    # or parallel to both when they are parallel themselves
    for lam in (Fraction(1, 2), Fraction(1, 3), Fraction(2, 3)):
        h = l1 * (1 - lam) - l2 * lam
        if h.is_constant():
            continue
        vals = [h(v) for v in quad.vertices]
        if max(vals) <= 0 or min(vals) >= 0:
            continue
        w = _witness(wq, h, f"pencil of E{zero[0]},E{zero[1]}")
        if w.value == 0:
            return w
    return None


def _two_edge(wq: WeightedQuadrilateral, i: int, j: int) -> Verdict:
    quad = wq.quad
    case = pair_case(quad, i, j)
    total = wq.weights[i - 1] + wq.weights[j - 1]
    r = wq.weights[j - 1] / total
    if case is PairCase.PARALLEL:
        w = _parallel_witness(wq, (i, j))
        if w is not None:
            return Verdict(Status.STRICTLY_SEMISTABLE, w, "parallel support")
        fallback = _scan_families(wq)
        fallback.method = "parallel support; six-family search"
        return fallback
    if case is PairCase.OPPOSITE:
        m = min(zero_corners(i, j))
        H = Sym2(*(e(r) for e in hessian_entries(quad, i, j, corner_family(quad, m))))
        d = definiteness(H)
        if d is Definiteness.POSITIVE_DEFINITE:
            return Verdict(Status.STABLE, None, f"opposite-pair Hessian at corner E{m}")
        w = _descent_witness(wq, m, H)
        if w is not None:
            return Verdict(Status.UNSTABLE, w, f"opposite-pair Hessian at corner E{m}")
        res = _scan_families(wq)
        res.method = f"opposite-pair Hessian at corner E{m} ({d.value}); six-family search"
        if res.status is Status.STABLE:
            # the Hessian test rules stability out; all families nonnegative means a limit zero
            res.status = Status.STRICTLY_SEMISTABLE
            res.reason = "corner Hessian singular; no negative crease found"
        return res
    failing = None
    for m in zero_corners(i, j):
        H = Sym2(*(e(r) for e in hessian_entries(quad, i, j, corner_family(quad, m))))
        if not definiteness(H).is_psd:
            failing = (m, H)
            break
    if failing is None:
        return Verdict(Status.STABLE, None, "adjacent-pair corner Hessians")
    w = _descent_witness(wq, *failing)
    if w is not None:
        return Verdict(Status.UNSTABLE, w, f"adjacent-pair Hessian at corner E{failing[0]}")
    res = _scan_families(wq)
    res.method = f"adjacent-pair Hessian at corner E{failing[0]}; six-family search"
    if res.status is Status.STABLE:
        res.status = Status.UNKNOWN
        res.reason = "corner Hessian not semidefinite but no negative crease found"
    return res


def classify(wq: WeightedQuadrilateral) -> Verdict:
    """Stable / strictly semistable / unstable, with an exact witness where applicable."""
    wq = wq.with_weights(wq.weights.normalized())
    zeros = wq.weights.zeros
    support = tuple(i for i in range(1, 5) if i not in zeros)
    if len(support) == 2:
        return _two_edge(wq, *support)
    verdict = _scan_families(wq)
    if len(zeros) == 1:
        verdict.tags.append("derived criterion")
    return verdict


def classify_pair_at(quad: Quadrilateral, i: int, j: int, r: RealAlgebraic | Fraction) -> Verdict:
    """Classify ``(1 - r) E_i + r E_j`` for an algebraic ``r`` in (0, 1).

    Rational ``r`` goes through :func:`classify`.  For irrational ``r`` the
    corner Hessian criteria are evaluated exactly; no rational witness exists
    at such a weight.
    """
    if not isinstance(r, RealAlgebraic):
        return classify(WeightedQuadrilateral(quad, BoundaryWeights(pair_weights(i, j, Fraction(r)))))
    v = r.rational_value()
    if v is not None:
        return classify_pair_at(quad, i, j, v)
    case = pair_case(quad, i, j)
    if case is PairCase.PARALLEL:
        return Verdict(Status.STRICTLY_SEMISTABLE, None, "parallel support", reason="irrational weight")

    def signs(m):
        h11, h12, h22 = hessian_entries(quad, i, j, corner_family(quad, m))
        det = h11 * h22 - h12 * h12
        return r.copy().sign_of(h11), r.copy().sign_of(h22), r.copy().sign_of(det)

    if case is PairCase.OPPOSITE:
        m = min(zero_corners(i, j))
        a, c, d = signs(m)
        if d > 0 and a > 0:
            return Verdict(Status.STABLE, None, f"opposite-pair Hessian at corner E{m}")
        if d == 0 and (a >= 0 and c >= 0):
            return Verdict(Status.STRICTLY_SEMISTABLE, None, f"opposite-pair Hessian at corner E{m}",
                           reason="singular corner Hessian at a boundary weight of the stable interval")
        return Verdict(Status.UNSTABLE, None, f"opposite-pair Hessian at corner E{m}",
                       reason="corner Hessian not positive semidefinite")
    for m in zero_corners(i, j):
        a, c, d = signs(m)
        if d < 0 or a < 0 or c < 0:
            return Verdict(Status.UNSTABLE, None, f"adjacent-pair Hessian at corner E{m}",
                           reason="corner Hessian not positive semidefinite")
    return Verdict(Status.STABLE, None, "adjacent-pair corner Hessians")


def verify_witness(wq: WeightedQuadrilateral, verdict: Verdict) -> bool:
    """Re-evaluate the witness of a verdict exactly."""
    w = verdict.witness
    if w is None:
        return verdict.status in (Status.STABLE, Status.UNKNOWN) or verdict.reason != ""
    wqn = wq.with_weights(wq.weights.normalized())
    val = L_simple(wqn, SimplePL(w.h), associated_affine(wqn))
    if val != w.value:
        return False
    if verdict.status is Status.UNSTABLE:
        return val < 0
    if verdict.status is Status.STRICTLY_SEMISTABLE:
        return val == 0 and any(w.h(v) > 0 for v in wqn.quad.vertices) and any(w.h(v) < 0 for v in wqn.quad.vertices)
    return True


__all__ = ["Status", "Verdict", "Witness", "classify", "classify_pair_at", "verify_witness", "parallel_pairs"]
