"""Ambitoric data and the quartic boundary-value system ``A + B = q π``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra.linalg import solve_linear
from ..algebra.rational import Q, fmt
from ..algebra.roots import RootReport, isolate_roots, positivity_report
from ..algebra.unipoly import UniPoly

ENDPOINTS = ("alpha0", "alpha_inf", "beta0", "beta_inf")


@dataclass(frozen=True)
class AmbitoricData:
    """Box ``[α0, α∞] × [β0, β∞]``, the quadratic ``q`` and four endpoint weights.

    ``q(z) = q0 z² + 2 q1 z + q2`` with polarization
    ``q(x, y) = q0 x y + q1 (x + y) + q2``.  Weights are listed in the order
    of :data:`ENDPOINTS`.
    """

    alpha0: Fraction
    alpha_inf: Fraction
    beta0: Fraction
    beta_inf: Fraction
    q0: Fraction
    q1: Fraction
    q2: Fraction
    weights: tuple[Fraction, Fraction, Fraction, Fraction]
    kind: str = "positive"

    def __post_init__(self):
        for name in ("alpha0", "alpha_inf", "beta0", "beta_inf", "q0", "q1", "q2"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        w = tuple(Q(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if self.kind not in ("positive", "negative"):
            raise ValueError("kind must be 'positive' or 'negative'")
        if not self.alpha0 < self.alpha_inf < self.beta0 < self.beta_inf:
            raise ValueError("endpoints must satisfy alpha0 < alpha_inf < beta0 < beta_inf")
        if len(w) != 4 or any(x < 0 for x in w):
            raise ValueError("four nonnegative endpoint weights are required")
        if all(x == 0 for x in w):
            raise ValueError("weights must not all vanish")
        if self.q0 == self.q1 == self.q2 == 0:
            raise ValueError("q must not vanish identically")
        for x in (self.alpha0, self.alpha_inf):
            for y in (self.beta0, self.beta_inf):
                # q(x, y) is affine in each variable, so the corners decide positivity
                if self.q_xy(x, y) <= 0:
                    raise ValueError(f"q(x,y) must be positive on the box; q({fmt(x)},{fmt(y)}) = "
                                     f"{fmt(self.q_xy(x, y))}")

    @classmethod
    def make(cls, alpha, beta, q, weights, kind: str = "positive") -> "AmbitoricData":
        return cls(alpha[0], alpha[1], beta[0], beta[1], q[0], q[1], q[2], tuple(weights), kind)

    def q_xy(self, x, y):
        return self.q0 * x * y + self.q1 * (x + y) + self.q2

    @property
    def q_poly(self) -> UniPoly:
        return UniPoly([self.q2, 2 * self.q1, self.q0])

    def with_weights(self, weights) -> "AmbitoricData":
        return AmbitoricData(self.alpha0, self.alpha_inf, self.beta0, self.beta_inf,
                             self.q0, self.q1, self.q2, tuple(weights), self.kind)

    def to_json(self) -> dict:
        return {
            "type": self.kind,
            "alpha": [fmt(self.alpha0), fmt(self.alpha_inf)],
            "beta": [fmt(self.beta0), fmt(self.beta_inf)],
            "q": [fmt(self.q0), fmt(self.q1), fmt(self.q2)],
            "weights": [fmt(x) for x in self.weights],
        }


@dataclass(frozen=True)
class FormalSolution:
    A: UniPoly
    B: UniPoly
    pi: UniPoly

    def to_json(self) -> dict:
        return {name: [fmt(c) for c in getattr(self, name).coeffs] for name in ("A", "B", "pi")}


def _conditions(d: AmbitoricData):
    """Rows over the unknowns ``(a0..a4, b0..b4, π0..π2)`` and right-hand sides."""
    ra0, rai, rb0, rbi = d.weights
    rows, rhs = [], []

    def value(z, offset):
        row = [Fraction(0)] * 13
        for i in range(5):
            row[offset + i] = Fraction(z) ** i
        return row

    def slope(z, offset):
        row = [Fraction(0)] * 13
        for i in range(1, 5):
            row[offset + i] = i * Fraction(z) ** (i - 1)
        return row

    # signed convention: the derivative points into the interval at both ends
    for z, off, r in ((d.alpha0, 0, ra0), (d.alpha_inf, 0, -rai), (d.beta0, 5, rb0), (d.beta_inf, 5, -rbi)):
        rows.append(value(z, off))
        rhs.append(Fraction(0))
        rows.append(slope(z, off))
        rhs.append(r)
    qc = d.q_poly.coeffs + (Fraction(0),) * (3 - len(d.q_poly.coeffs))
    for n in range(5):
        row = [Fraction(0)] * 13
        row[n] += 1
        row[5 + n] += 1
        for j in range(3):
            if 0 <= n - j <= 2:
                row[10 + n - j] -= qc[j]
        rows.append(row)
        rhs.append(Fraction(0))
    return rows, rhs


def solve_boundary_system(d: AmbitoricData) -> FormalSolution:
    """The unique quartics ``A``, ``B`` and quadratic ``π`` with the endpoint conditions and ``A + B = q π``."""
    rows, rhs = _conditions(d)
    try:
        vals = solve_linear(rows, rhs)
    except ArithmeticError:
        raise ArithmeticError("the boundary system is singular for this data") from None
    fs = FormalSolution(UniPoly(vals[:5]), UniPoly(vals[5:10]), UniPoly(vals[10:]))
    for row, r in zip(rows, rhs):
        if sum(a * b for a, b in zip(row, vals)) != r:
            raise ArithmeticError("boundary system residual is not zero")
    return fs


def residuals(fs: FormalSolution, d: AmbitoricData) -> list[Fraction]:
    """The ten conditions as exact residuals (eight endpoint values, two from ``A + B - q π``)."""
    ra0, rai, rb0, rbi = d.weights
    dA, dB = fs.A.deriv(), fs.B.deriv()
    out = [fs.A(d.alpha0), dA(d.alpha0) - ra0, fs.A(d.alpha_inf), dA(d.alpha_inf) + rai,
           fs.B(d.beta0), dB(d.beta0) - rb0, fs.B(d.beta_inf), dB(d.beta_inf) + rbi]
    rem = fs.A + fs.B - d.q_poly * fs.pi
    out += [rem.coeff(i) for i in range(5)]
    return out


def pi_q_pairing(pi: UniPoly, q0, q1, q2) -> Fraction:
    """Polarized discriminant pairing of ``π`` with ``q0 z² + 2 q1 z + q2``."""
    p0, p1, p2 = pi.coeff(2), pi.coeff(1) / 2, pi.coeff(0)
    return p0 * q2 + p2 * q0 - 2 * p1 * q1


def tune_weight(d: AmbitoricData, index: int, condition) -> Fraction | None:
    """The weight at ``ENDPOINTS[index]`` making ``condition(solution)`` vanish, if it is nonnegative.

    ``condition`` must be linear in the solution; since the solution is linear
    in the weights, two solves determine the answer.
    """
    w0 = list(d.weights)
    w0[index] = Fraction(0)
    w1 = list(w0)
    w1[index] = Fraction(1)

    def value(w):
        if all(x == 0 for x in w):
            # the zero data has the zero solution
            return Fraction(0)
        return condition(solve_boundary_system(d.with_weights(w)))

    a, b = value(w0), value(w1)
    if a == b:
        return None
    r = a / (a - b)
    return r if r >= 0 else None


def extremal_weight(d: AmbitoricData, index: int = 3) -> Fraction | None:
    """The weight at ``ENDPOINTS[index]`` that makes ``π`` orthogonal to ``q``, if it is nonnegative."""
    return tune_weight(d, index, lambda fs: pi_q_pairing(fs.pi, d.q0, d.q1, d.q2))


@dataclass(frozen=True)
class PositivityCheck:
    A_positive: bool
    B_positive: bool
    A_identically_zero: bool
    B_identically_zero: bool
    A_roots: tuple[RootReport, ...]
    B_roots: tuple[RootReport, ...]

    @property
    def positive(self) -> bool:
        return self.A_positive and self.B_positive

    def to_json(self) -> dict:
        def roots(rs):
            return [{"interval": [fmt(r.lo), fmt(r.hi)], "multiplicity": r.multiplicity} for r in rs]

        return {"A_positive": self.A_positive, "B_positive": self.B_positive,
                "A_roots": roots(self.A_roots), "B_roots": roots(self.B_roots)}


def check_positive(fs: FormalSolution, d: AmbitoricData) -> PositivityCheck:
    a_pos, a_zero = positivity_report(fs.A, d.alpha0, d.alpha_inf)
    b_pos, b_zero = positivity_report(fs.B, d.beta0, d.beta_inf)
    a_roots = () if a_zero else tuple(isolate_roots(fs.A, d.alpha0, d.alpha_inf))
    b_roots = () if b_zero else tuple(isolate_roots(fs.B, d.beta0, d.beta_inf))
    return PositivityCheck(a_pos, b_pos, a_zero, b_zero, a_roots, b_roots)
