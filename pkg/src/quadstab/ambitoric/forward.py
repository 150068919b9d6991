"""From positive-type ambitoric data to a weighted quadrilateral in moment coordinates."""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from sympy import lambdify, symbols

from ..algebra.bipoly import BiPoly
from ..functional import L_simple, SimplePL, associated_affine
from ..polytope import AffineFn, ConvexPolygon, WeightedPolygon, WeightedQuadrilateral, cross, sub
from .boundary import AmbitoricData, solve_boundary_system
from .hfield import X, Y, HField, build_H, ev, extract_edge_weights, moment_affine, moment_map, scalar_S

# corners of the box in counterclockwise box order and the edge leaving each corner
_CORNERS = (("alpha0", "beta0"), ("alpha_inf", "beta0"), ("alpha_inf", "beta_inf"), ("alpha0", "beta_inf"))
_LEAVING = ("beta0", "alpha_inf", "beta_inf", "alpha0")


def _edge_mass(l: AffineFn, a, b, r: Fraction) -> Fraction:
    """Total mass of ``[a, b]`` for the measure with ``l ∧ dσ = r dλ``."""
    g = l.gradient
    return r * abs(cross(g, sub(b, a))) / (g[0] ** 2 + g[1] ** 2)


def forward_polygon(d: AmbitoricData, h: HField | None = None) -> WeightedPolygon:
    """The moment image of the box with the boundary masses induced by ``H``.

    Polygon labels name the box edge each side comes from.
    """
    if d.kind != "positive":
        raise NotImplementedError("forward_polytope is implemented for positive type only")
    h = h or build_H(solve_boundary_system(d), d)
    chi, eta = moment_map(d)
    corners = [(ev(chi, getattr(d, a), getattr(d, b)), ev(eta, getattr(d, a), getattr(d, b))) for a, b in _CORNERS]
    edges = {e.name: e for e in h.edges}
    for i, name in enumerate(_LEAVING):
        e = edges[name]
        _check_straight(d, h, e, corners[i], corners[(i + 1) % 4])
    weights = extract_edge_weights(h)
    masses = [_edge_mass(edges[n].function, corners[i], corners[(i + 1) % 4], weights[n])
              for i, n in enumerate(_LEAVING)]
    labels = _LEAVING
    area2 = sum(cross(corners[i], corners[(i + 1) % 4]) for i in range(4))
    if area2 < 0:
        corners = corners[::-1]
        masses = [masses[(2 - i) % 4] for i in range(4)]
        labels = tuple(labels[(2 - i) % 4] for i in range(4))
    vs = ConvexPolygon(tuple(corners))
    return WeightedPolygon(vs, tuple(masses), labels)


def _check_straight(d, h, e, a, b, samples: int = 5) -> None:
    """The image of a box edge must be the segment ``[a, b]``: test 5 interior samples exactly."""
    lo, hi = h.box[1] if e.var == "x" else h.box[0]
    for k in range(1, samples + 1):
        t = lo + (hi - lo) * Fraction(k, samples + 1)
        p = h.mu(e.value, t) if e.var == "x" else h.mu(t, e.value)
        if cross(sub(b, a), sub(p, a)) != 0:
            raise ArithmeticError(f"the image of the {e.name} edge is not straight; q is not valid for this construction")


def forward_polytope(d: AmbitoricData, h: HField | None = None) -> WeightedQuadrilateral:
    """The image quadrilateral, canonicalized for the stability module."""
    return forward_polygon(d, h).to_weighted_quadrilateral()


# -- creases along coordinate lines ------------------------------------------------------------

def coordinate_crease(d: AmbitoricData, var: str, value) -> AffineFn:
    """Affine function of ``(χ, η)`` whose zero set is the image of ``x = value`` (or ``y = value``).

    Oriented so that it is positive towards ``α0`` (resp. ``β∞``).
    """
    value = Fraction(value)
    lo, hi = (d.alpha0, d.alpha_inf) if var == "x" else (d.beta0, d.beta_inf)
    if not lo < value < hi:
        raise ValueError("the crease must lie strictly inside the box")
    l = moment_affine(d, value)
    return -l if var == "y" else l


def crease_functional(d: AmbitoricData, var: str, value, polygon: WeightedPolygon | None = None) -> Fraction:
    """Exact ``𝓛`` of the simple PL function creased along a coordinate line."""
    polygon = polygon or forward_polygon(d)
    return L_simple(polygon, SimplePL(coordinate_crease(d, var, value)))


# -- numerics --------------------------------------------------------------------------------

_x, _y = symbols("x y")


def _numeric(f):
    return lambdify((_x, _y), f.as_expr(), "numpy")


def _eval(fn, X, Y):
    return np.broadcast_to(np.asarray(fn(X, Y), dtype=float), np.shape(X))


def _bipoly_numeric(f: BiPoly):
    terms = f.float_coeffs()

    def ev_(s, t):
        out = np.zeros(np.shape(s))
        for i, j, c in terms:
            out = out + c * s**i * t**j
        return out

    return ev_


class QuadratureError(ArithmeticError):
    """Gauss-Legendre refinement did not settle."""


def _box_rule(box, n):
    (x0, x1), (y0, y1) = [(float(a), float(b)) for a, b in box]
    g, w = np.polynomial.legendre.leggauss(n)
    xs = (x1 - x0) / 2 * g + (x1 + x0) / 2
    ys = (y1 - y0) / 2 * g + (y1 + y0) / 2
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    W = np.outer(w, w) * (x1 - x0) * (y1 - y0) / 4
    return X, Y, W


def _adaptive(integrand, tol: float = 1e-12, orders=(16, 32, 64, 128)):
    history = []
    prev = None
    for n in orders:
        val = integrand(n)
        history.append((n, val))
        if prev is not None and np.all(np.abs(val - prev) <= tol * (1 + np.abs(val))):
            return val
        prev = val
    raise QuadratureError("quadrature did not converge: " +
                          ", ".join(f"n={n}: {np.array2string(np.atleast_1d(v), precision=16)}" for n, v in history))


def ibp_check(h: HField, zeta: AffineFn | None, weights: WeightedPolygon, f: BiPoly) -> float:
    """Relative residual of ``∫ H^{ij} f_ij = ∫ H^{ij}_{ij} f + ∫_∂ f dσ``.

    ``f`` is a polynomial in the moment coordinates.  With ``zeta`` given the
    interior term uses ``H^{ij}_{ij} = -ζ``; otherwise the exact scalar is used.
    """
    if f.total_degree > 4:
        raise ValueError("f must have total degree at most 4")
    chi, eta = h.chart
    J = [[chi.diff(X), chi.diff(Y)], [eta.diff(X), eta.diff(Y)]]
    det = _numeric(J[0][0] * J[1][1] - J[0][1] * J[1][0])
    mu = (_numeric(chi), _numeric(eta))
    Hn = [[_numeric(h.moment[i][j]) for j in range(2)] for i in range(2)]
    fss, fst, ftt = (_bipoly_numeric(g) for g in (f.diff_s().diff_s(), f.diff_s().diff_t(), f.diff_t().diff_t()))
    fv = _bipoly_numeric(f)
    S = (lambda s, t: -(float(zeta.a) * s + float(zeta.b) * t + float(zeta.c))) if zeta is not None else None
    Sn = _numeric(scalar_S(h)) if zeta is None else None

    def sides(n):
        X, Y, W = _box_rule(h.box, n)
        s, t = _eval(mu[0], X, Y), _eval(mu[1], X, Y)
        jac = np.abs(_eval(det, X, Y)) * W
        H = [[_eval(Hn[i][j], X, Y) for j in range(2)] for i in range(2)]
        lhs = np.sum((H[0][0] * fss(s, t) + 2 * H[0][1] * fst(s, t) + H[1][1] * ftt(s, t)) * jac)
        Sv = S(s, t) if S is not None else _eval(Sn, X, Y)
        interior = np.sum(Sv * fv(s, t) * jac)
        return np.array([lhs, interior])

    lhs, interior = _adaptive(sides)
    boundary = _boundary_integral(weights, fv)
    return float(abs(lhs - interior - boundary) / (1 + abs(lhs)))


def _boundary_integral(weights: WeightedPolygon, fv, n: int = 8) -> float:
    """``∫_∂ f dσ`` for a polynomial of degree ≤ 4 (exact with 8 Gauss nodes per edge)."""
    g, w = np.polynomial.legendre.leggauss(n)
    tt = (g + 1) / 2
    total = 0.0
    for i, m in enumerate(weights.masses):
        if m == 0:
            continue
        a, b = weights.polygon.edge(i)
        s = float(a[0]) + tt * float(b[0] - a[0])
        t = float(a[1]) + tt * float(b[1] - a[1])
        total += float(m) * np.sum(w * fv(s, t)) / 2
    return total


def crease_integral(h: HField, var: str, value) -> float:
    """``∫_I H(u, u) dν`` along the image of a coordinate line, ``u`` the crease conormal."""
    d = h.data
    l = coordinate_crease(d, var, value)
    u = np.array([float(l.a), float(l.b)])
    chi, eta = h.chart
    other = Y if var == "x" else X
    tangent = [_numeric(chi.diff(other)), _numeric(eta.diff(other))]
    mu_h = [[_numeric(h.moment[i][j]) for j in range(2)] for i in range(2)]
    lo, hi = h.box[1] if var == "x" else h.box[0]
    v = float(value)

    def integral(n):
        g, w = np.polynomial.legendre.leggauss(n)
        ts = (float(hi) - float(lo)) / 2 * g + (float(hi) + float(lo)) / 2
        X, Y = (np.full_like(ts, v), ts) if var == "x" else (ts, np.full_like(ts, v))
        Huu = sum(u[i] * u[j] * _eval(mu_h[i][j], X, Y) for i in range(2) for j in range(2))
        tx, ty = _eval(tangent[0], X, Y), _eval(tangent[1], X, Y)
        dens = np.abs(u[0] * ty - u[1] * tx) / (u @ u)
        return np.sum(w * Huu * dens) * (float(hi) - float(lo)) / 2

    return float(_adaptive(integral))


def induced_zeta(d: AmbitoricData) -> AffineFn:
    """Associated affine function of the forward polygon."""
    return associated_affine(forward_polygon(d))
