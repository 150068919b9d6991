"""Calabi-type trapezia: the image of a box under ``(x, y) -> (x, x y)``."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra.linalg import solve_linear
from ..algebra.rational import Q, fmt
from ..algebra.roots import positivity_report
from ..algebra.unipoly import UniPoly
from ..polytope import AffineFn, ConvexPolygon, WeightedPolygon
from .hfield import X, Y, BoxEdge, HField, kq, poly_k
from .forward import _edge_mass

EDGES = ("alpha1", "alpha2", "beta1", "beta2")


@dataclass(frozen=True)
class TrapeziumData:
    """Box ``[α1, α2] × [β1, β2]`` with ``0 < α1 < α2`` and ``0 <= β1 < β2``; weights in :data:`EDGES` order."""

    alpha1: Fraction
    alpha2: Fraction
    beta1: Fraction
    beta2: Fraction
    weights: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        for name in ("alpha1", "alpha2", "beta1", "beta2"):
            object.__setattr__(self, name, Q(getattr(self, name)))
        w = tuple(Q(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if not 0 < self.alpha1 < self.alpha2:
            raise ValueError("need 0 < alpha1 < alpha2")
        if not 0 <= self.beta1 < self.beta2:
            raise ValueError("need 0 <= beta1 < beta2")
        if len(w) != 4 or any(x < 0 for x in w):
            raise ValueError("four nonnegative edge weights are required")
        if all(x == 0 for x in w):
            raise ValueError("weights must not all vanish")

    @property
    def vertices(self):
        a1, a2, b1, b2 = self.alpha1, self.alpha2, self.beta1, self.beta2
        return ((a1, a1 * b1), (a2, a2 * b1), (a2, a2 * b2), (a1, a1 * b2))

    def edge_functions(self) -> dict[str, AffineFn]:
        """Defining functions of the four sides in ``(μ1, μ2) = (x, x y)``, nonnegative inside."""
        return {
            "alpha1": AffineFn(1, 0, -self.alpha1),
            "alpha2": AffineFn(-1, 0, self.alpha2),
            "beta1": AffineFn(-self.beta1, 1, 0),
            "beta2": AffineFn(self.beta2, -1, 0),
        }

    def polygon(self) -> WeightedPolygon:
        """The trapezium with boundary masses; sides in order β1, α2, β2, α1."""
        vs = self.vertices
        fns = self.edge_functions()
        w = dict(zip(EDGES, self.weights))
        order = ("beta1", "alpha2", "beta2", "alpha1")
        masses = tuple(_edge_mass(fns[n], vs[i], vs[(i + 1) % 4], w[n]) for i, n in enumerate(order))
        return WeightedPolygon(ConvexPolygon(vs), masses, order)

    def to_json(self) -> dict:
        return {"alpha": [fmt(self.alpha1), fmt(self.alpha2)], "beta": [fmt(self.beta1), fmt(self.beta2)],
                "weights": [fmt(x) for x in self.weights]}


class IncompatibleWeights(ValueError):
    pass


@dataclass(frozen=True)
class TrapeziumSolution:
    A: UniPoly
    B: UniPoly
    A_positive: bool
    B_positive: bool

    @property
    def positive(self) -> bool:
        return self.A_positive and self.B_positive

    def to_json(self) -> dict:
        return {"A": [fmt(c) for c in self.A.coeffs], "B": [fmt(c) for c in self.B.coeffs],
                "A_positive": self.A_positive, "B_positive": self.B_positive}


def legendre_trapezium_solve(t: TrapeziumData) -> TrapeziumSolution:
    """``A`` of degree at most 4 and ``B = -a2 (y - β1)(y - β2)``, ``a2`` the ``z²`` coefficient of ``A``.

    The weights on the two non-parallel sides must agree; they fix
    ``a2 = r_β / (β2 - β1)``.  Endpoint slopes of ``A`` are ``α r_α`` with the
    signed convention, so a zero weight gives a double root.
    """
    r1, r2, s1, s2 = t.weights
    if s1 != s2:
        raise IncompatibleWeights(
            f"weights on the sides y = beta1 and y = beta2 must agree (got {fmt(s1)} and {fmt(s2)}): "
            "B is a quadratic with leading coefficient -a2, so both slopes are a2 (beta2 - beta1)")
    a2 = s1 / (t.beta2 - t.beta1)

    def value(z):
        return [Fraction(z) ** i for i in range(5)]

    def slope(z):
        return [i * Fraction(z) ** (i - 1) if i else Fraction(0) for i in range(5)]

    rows = [value(t.alpha1), value(t.alpha2), slope(t.alpha1), slope(t.alpha2), [0, 0, 1, 0, 0]]
    rhs = [0, 0, t.alpha1 * r1, -t.alpha2 * r2, a2]
    A = UniPoly(solve_linear(rows, rhs))
    B = UniPoly.from_roots([t.beta1, t.beta2], lead=-a2)
    a_pos, _ = positivity_report(A, t.alpha1, t.alpha2)
    b_pos, _ = positivity_report(B, t.beta1, t.beta2) if a2 != 0 else (False, True)
    return TrapeziumSolution(A, B, a_pos, b_pos)


def legendre_H(t: TrapeziumData, sol: TrapeziumSolution) -> HField:
    """``H`` in the coordinates ``(μ1, μ2) = (x, x y)``."""
    A, B = poly_k(sol.A, X), poly_k(sol.B, Y)
    H = [[A / X, A * Y / X], [A * Y / X, A * Y**2 / X + X * B]]
    fns = t.edge_functions()
    edges = (BoxEdge("alpha1", "x", t.alpha1, fns["alpha1"]), BoxEdge("alpha2", "x", t.alpha2, fns["alpha2"]),
             BoxEdge("beta1", "y", t.beta1, fns["beta1"]), BoxEdge("beta2", "y", t.beta2, fns["beta2"]))
    return HField(t, sol, None, ("mu1", "mu2"), "", moment=H, chart=(X + kq(0), X * Y),
                  box=((t.alpha1, t.alpha2), (t.beta1, t.beta2)), edges=edges)
