"""Exact integration and the Donaldson-Futaki functional on simple PL functions."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .algebra.bipoly import BiPoly
from .algebra.rational import Q
from .polytope import (AffineFn, ConvexPolygon, Point, Quadrilateral, WeightedPolygon,
                       WeightedQuadrilateral, clip_polygon, cross, lerp, sub)

Weighted = Union[WeightedQuadrilateral, WeightedPolygon]


def _as_polygon(W: Weighted) -> WeightedPolygon:
    return W.polygon() if isinstance(W, WeightedQuadrilateral) else W


# -- integration ---------------------------------------------------------------------

@lru_cache(maxsize=None)
def _simplex_moment(i: int, j: int) -> Fraction:
    """``∫ u^i v^j`` over the standard triangle ``u, v >= 0, u + v <= 1``."""
    num = 1
    for n in range(2, i + 1):
        num *= n
    for n in range(2, j + 1):
        num *= n
    den = 1
    for n in range(2, i + j + 3):
        den *= n
    return Fraction(num, den)


def integrate_poly_over_triangle(a: Point, b: Point, c: Point, f: BiPoly) -> Fraction:
    e, g = sub(b, a), sub(c, a)
    jac = abs(cross(e, g))
    X = BiPoly({(0, 0): a[0], (1, 0): e[0], (0, 1): g[0]})
    Y = BiPoly({(0, 0): a[1], (1, 0): e[1], (0, 1): g[1]})
    xp, yp = {0: BiPoly.const(1)}, {0: BiPoly.const(1)}
    total = Fraction(0)
    for (i, j), coeff in f.terms.items():
        for n, cache, base in ((i, xp, X), (j, yp, Y)):
            while max(cache) < n:
                cache[max(cache) + 1] = cache[max(cache)] * base
        term = xp[i] * yp[j]
        total += coeff * sum((c2 * _simplex_moment(u, v) for (u, v), c2 in term.terms.items()), Fraction(0))
    return total * jac


def integrate_poly_over_polygon(P: ConvexPolygon, f: BiPoly) -> Fraction:
    """Exact ``∫_P f dλ`` with ``f`` a polynomial in ``(x, y)``."""
    return sum((integrate_poly_over_triangle(a, b, c, f) for a, b, c in P.triangles()), Fraction(0))


def _quadratic_over_fan(vs: list[Point], g) -> Fraction:
    """``∫ g`` over a convex fan for a callable ``g`` of degree <= 2 (edge-midpoint rule)."""
    total = Fraction(0)
    a = vs[0]
    for i in range(1, len(vs) - 1):
        b, c = vs[i], vs[i + 1]
        area = cross(sub(b, a), sub(c, a)) / 2
        if area == 0:
            continue
        m1 = ((a[0] + b[0]) / 2, (a[1] + b[1]) / 2)
        m2 = ((b[0] + c[0]) / 2, (b[1] + c[1]) / 2)
        m3 = ((a[0] + c[0]) / 2, (a[1] + c[1]) / 2)
        total += area * (g(m1) + g(m2) + g(m3)) / 3
    return total


def integrate_affine_over_boundary(W: Weighted, f: AffineFn, restriction: AffineFn | None = None) -> Fraction:
    return _as_polygon(W).boundary_integral(f, restriction)


def associated_affine(W: Weighted) -> AffineFn:
    """The affine ``ζ`` with ``∫∂ f dσ = ∫ ζ f dλ`` for ``f`` in ``{1, x, y}``."""
    poly = _as_polygon(W)
    if all(m == 0 for m in poly.masses):
        raise ValueError("weights must not all vanish")
    basis = [AffineFn(0, 0, 1), AffineFn(1, 0, 0), AffineFn(0, 1, 0)]
    vs = list(poly.polygon.vertices)
    # moment matrix M[f][g] = ∫ f g over the polygon, g ordered as (c, a, b) coefficients
    M = [[_quadratic_over_fan(vs, lambda p, f=f, g=g: f(p) * g(p)) for g in basis] for f in basis]
    rhs = [poly.boundary_integral(f) for f in basis]
    c, a, b = _solve3(M, rhs)
    return AffineFn(a, b, c)


def _solve3(M, rhs) -> list[Fraction]:
    A = [list(row) + [r] for row, r in zip(M, rhs)]
    n = 3
    for col in range(n):
        piv = next(r for r in range(col, n) if A[r][col] != 0)
        A[col], A[piv] = A[piv], A[col]
        for r in range(n):
            if r != col and A[r][col] != 0:
                fac = A[r][col] / A[col][col]
                A[r] = [x - fac * y for x, y in zip(A[r], A[col])]
    return [A[i][n] / A[i][i] for i in range(n)]


# -- the functional ---------------------------------------------------------------------

@dataclass(frozen=True)
class SimplePL:
    """``x -> max(0, h(x))``."""

    h: AffineFn

    def __post_init__(self):
        if self.h.is_zero():
            raise ValueError("the affine part of a simple PL function must not vanish identically")

    def __call__(self, x, y):
        return max(Fraction(0), self.h(x, y))


def L_affine(W: Weighted, f: AffineFn, zeta: AffineFn | None = None) -> Fraction:
    poly = _as_polygon(W)
    zeta = zeta or associated_affine(poly)
    return poly.boundary_integral(f) - _quadratic_over_fan(list(poly.polygon.vertices), lambda p: zeta(p) * f(p))


def L_simple(W: Weighted, f: SimplePL | AffineFn, zeta: AffineFn | None = None) -> Fraction:
    """Exact ``𝓛(max(0, h)) = ∫_{∂P ∩ {h>=0}} h dσ - ∫_{P ∩ {h>=0}} ζ h dλ``."""
    h = f.h if isinstance(f, SimplePL) else f
    poly = _as_polygon(W)
    if h.is_zero():
        return Fraction(0)
    zeta = zeta or associated_affine(poly)
    piece = clip_polygon(poly.polygon.vertices, h)
    if len(piece) < 3:
        return Fraction(0)
    return poly.boundary_integral(h, h) - _quadratic_over_fan(piece, lambda p: zeta(p) * h(p))


# -- crease families ------------------------------------------------------------------------

@dataclass(frozen=True)
class CreaseFamily:
    """Creases joining ``(1-s) P0 + s P1`` on edge ``ei`` to ``(1-t) Q0 + t Q1`` on edge ``ej``.

    ``kind`` is ``"opposite"`` or ``"adjacent"``.  For an opposite family
    ``corner_edge`` is the edge that the ``(0, 0)`` crease coincides with; the
    ``(1, 1)`` crease is the edge opposite to it.  For an adjacent family the
    whole box edges ``s = 0`` and ``t = 0`` give creases along edges of the
    quadrilateral.
    """

    kind: str
    ei: int
    ej: int
    P0: Point
    P1: Point
    Q0: Point
    Q1: Point
    corner_edge: int = 0

    @property
    def key(self) -> tuple:
        return (self.kind, self.ei, self.ej, self.corner_edge)

    def crease(self, s, t) -> AffineFn:
        return AffineFn.through(lerp(self.P0, self.P1, Q(s)), lerp(self.Q0, self.Q1, Q(t)))

    @property
    def affine_corners(self) -> tuple[tuple[int, int], ...]:
        if self.kind == "opposite":
            return ((0, 0), (1, 1))
        return ((0, 0), (1, 0), (0, 1))

    @property
    def label(self) -> str:
        if self.kind == "opposite":
            return f"opposite E{self.ei},E{self.ej} (corner E{self.corner_edge})"
        return f"adjacent E{self.ei},E{self.ej}"


def _vertex(quad: Quadrilateral, i: int) -> Point:
    return quad.vertices[(i - 1) % 4]


def _ix(i: int) -> int:
    return (i - 1) % 4 + 1


def opposite_family(quad: Quadrilateral, m: int) -> CreaseFamily:
    """Family on the edges adjacent to ``E_m`` with the ``(0, 0)`` crease equal to ``E_m``.

    ``s`` runs along ``E_{m+1}`` from ``v_{m+1}`` to ``v_{m+2}``; ``t`` runs
    along ``E_{m-1}`` from ``v_m`` to ``v_{m-1}``.
    """
    v = lambda i: _vertex(quad, i)  # noqa: E731
    return CreaseFamily("opposite", _ix(m + 1), _ix(m - 1), v(m + 1), v(m + 2), v(m), v(m - 1), _ix(m))


def adjacent_family(quad: Quadrilateral, i: int) -> CreaseFamily:
    """Family on ``E_i`` and ``E_{i+1}`` based at their common vertex ``v_{i+1}``."""
    v = lambda j: _vertex(quad, j)  # noqa: E731
    return CreaseFamily("adjacent", _ix(i), _ix(i + 1), v(i + 1), v(i), v(i + 1), v(i + 2))


def six_families(quad: Quadrilateral) -> list[CreaseFamily]:
    return [opposite_family(quad, 1), opposite_family(quad, 2)] + [adjacent_family(quad, i) for i in range(1, 5)]


@dataclass(frozen=True)
class FamilyPoly:
    poly: BiPoly
    family: CreaseFamily
    wq: WeightedQuadrilateral

    def __call__(self, s, t):
        return self.poly(s, t)

    def reduced(self) -> BiPoly:
        """For adjacent families, ``φ / (s t)``; otherwise ``φ`` itself."""
        if self.family.kind != "adjacent":
            return self.poly
        out = {}
        for (i, j), c in self.poly.terms.items():
            if i == 0 or j == 0:
                raise ArithmeticError("adjacent family polynomial is not divisible by s t")
            out[(i - 1, j - 1)] = c
        return BiPoly(out)


GRID = tuple(Fraction(i, 3) for i in range(4))


def _family_poly_exact(wq: WeightedQuadrilateral, fam: CreaseFamily, rng: random.Random | None = None) -> BiPoly:
    poly = wq.polygon()
    zeta = associated_affine(poly)
    values = [[L_simple(poly, fam.crease(s, t), zeta) for t in GRID] for s in GRID]
    phi = BiPoly.interpolate(GRID, GRID, values)
    rng = rng or random.Random(hash((wq.quad.pqk, fam.key)) & 0xFFFF)
    for _ in range(3):
        s = Fraction(rng.randint(1, 996), 997)
        t = Fraction(rng.randint(1, 990), 991)
        if phi(s, t) != L_simple(poly, fam.crease(s, t), zeta):
            raise ArithmeticError(f"family polynomial verification failed for {fam.label}")
    return phi


@lru_cache(maxsize=4096)
def _basis(pqk: tuple, kind: str, m: int) -> tuple[BiPoly, ...]:
    quad = Quadrilateral.from_pqk(*pqk)
    fam = opposite_family(quad, m) if kind == "opposite" else adjacent_family(quad, m)
    out = []
    for i in range(4):
        w = [0, 0, 0, 0]
        w[i] = 1
        out.append(_family_poly_exact(WeightedQuadrilateral.make(pqk, w), fam))
    return tuple(out)


def family_basis(quad: Quadrilateral, fam: CreaseFamily) -> tuple[BiPoly, ...]:
    m = fam.corner_edge if fam.kind == "opposite" else fam.ei
    return _basis(quad.pqk, fam.kind, m)


def family_polynomial(wq: WeightedQuadrilateral, fam: CreaseFamily) -> FamilyPoly:
    """``φ(s, t) = 𝓛(max(0, l_{s,t}))`` as an exact polynomial.

    𝓛 is linear in the weights, so ``φ`` is assembled from per-edge basis
    polynomials, each built by interpolation on the grid ``{0, 1/3, 2/3, 1}²``
    and checked at three further rational points.
    """
    basis = family_basis(wq.quad, fam)
    phi = BiPoly()
    for r, b in zip(wq.weights, basis):
        if r:
            phi = phi + b * r
    return FamilyPoly(phi, fam, wq)


def family_polynomial_direct(wq: WeightedQuadrilateral, fam: CreaseFamily) -> FamilyPoly:
    """Same as :func:`family_polynomial` but interpolated for these weights directly."""
    return FamilyPoly(_family_poly_exact(wq, fam), fam, wq)
