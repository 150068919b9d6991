"""Certified sign determination of a bivariate polynomial on a box.

The search works on Bernstein coefficients.  A patch whose coefficients are
all positive is certified; a patch with nonnegative coefficients is certified
up to zeros that can be read off the coefficient pattern.  Zeros that block
certification are handled exactly:

* a zero corner is blown up (``t = w s`` in two triangular charts) so that the
  leading form of the polynomial at that corner is exposed;
* rational tangential zeros on patch edges (double roots of the edge
  restriction) and in the interior (common rational zeros of f, f_s, f_t found
  through a resultant) become patch corners by splitting there.

Floating point is used only to propose candidate negative points, which are
then checked exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Callable, Iterable

from .bipoly import BiPoly
from .rational import Q
from .unipoly import UniPoly, squarefree_decomposition

HALF = Fraction(1, 2)


class SignKind(Enum):
    ALL_POSITIVE = "AllPositive"
    HAS_ZERO = "HasZero"
    HAS_NEGATIVE = "HasNegative"
    IDENTICALLY_ZERO = "IdenticallyZero"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class SignVerdict:
    kind: SignKind
    witness: tuple[Fraction, Fraction] | None = None
    value: Fraction | None = None
    reason: str = ""

    @property
    def positive(self) -> bool:
        return self.kind is SignKind.ALL_POSITIVE


# -- Bernstein basis on the unit square ------------------------------------------

def to_bernstein(f: BiPoly, m: int | None = None, n: int | None = None) -> list[list[Fraction]]:
    dm, dn = f.bidegree
    m = max(dm, 0) if m is None else m
    n = max(dn, 0) if n is None else n
    a = f.grid(m, n)
    # one direction at a time: b_i = sum_k C(i,k)/C(m,k) a_k
    rows = [[sum((Fraction(comb(i, k), comb(m, k)) * a[k][j] for k in range(i + 1)), Fraction(0))
             for j in range(n + 1)] for i in range(m + 1)]
    return [[sum((Fraction(comb(j, l), comb(n, l)) * rows[i][l] for l in range(j + 1)), Fraction(0))
             for j in range(n + 1)] for i in range(m + 1)]


def from_bernstein(b: list[list[Fraction]]) -> BiPoly:
    m, n = len(b) - 1, len(b[0]) - 1
    rows = [[sum((comb(m, k) * comb(k, i) * (-1) ** (k - i) * b[i][j] for i in range(k + 1)), Fraction(0))
             for j in range(n + 1)] for k in range(m + 1)]
    out = {}
    for k in range(m + 1):
        for l in range(n + 1):
            out[(k, l)] = sum((comb(n, l) * comb(l, j) * (-1) ** (l - j) * rows[k][j] for j in range(l + 1)),
                              Fraction(0))
    return BiPoly(out)


def _casteljau(coeffs: list, lam: Fraction) -> tuple[list, list]:
    work = list(coeffs)
    left, right = [work[0]], [work[-1]]
    n = len(work) - 1
    for r in range(1, n + 1):
        work = [(1 - lam) * work[i] + lam * work[i + 1] for i in range(n - r + 1)]
        left.append(work[0])
        right.append(work[-1])
    return left, right[::-1]


def _split_u(b, lam):
    cols = [_casteljau([row[j] for row in b], lam) for j in range(len(b[0]))]
    left = [[cols[j][0][i] for j in range(len(cols))] for i in range(len(b))]
    right = [[cols[j][1][i] for j in range(len(cols))] for i in range(len(b))]
    return left, right


def _split_v(b, mu):
    pairs = [_casteljau(row, mu) for row in b]
    return [p[0] for p in pairs], [p[1] for p in pairs]


# -- patches -------------------------------------------------------------------------

Map = Callable[[Fraction, Fraction], tuple[Fraction, Fraction]]
CORNERS = ((0, 0), (1, 0), (0, 1), (1, 1))
EDGES = ("u0", "u1", "v0", "v1")


def _corner_edges(c):
    return ("u0" if c[0] == 0 else "u1", "v0" if c[1] == 0 else "v1")


@dataclass
class _Patch:
    bern: list[list[Fraction]]
    to_orig: Map
    corner_ok: dict = field(default_factory=dict)
    edge_ok: dict = field(default_factory=dict)
    depth: int = 0
    since: int = 0
    blowups: int = 0
    _poly: BiPoly | None = None

    @property
    def poly(self) -> BiPoly:
        if self._poly is None:
            self._poly = from_bernstein(self.bern)
        return self._poly

    def corner_value(self, c) -> Fraction:
        return self.bern[-1 if c[0] else 0][-1 if c[1] else 0]

    def edge_coeffs(self, e) -> list[Fraction]:
        if e == "u0":
            return list(self.bern[0])
        if e == "u1":
            return list(self.bern[-1])
        if e == "v0":
            return [row[0] for row in self.bern]
        return [row[-1] for row in self.bern]

    def allowed(self, c) -> bool:
        return self.corner_ok.get(c, False) or any(self.edge_ok.get(e, False) for e in _corner_edges(c))


def _sub(parent: _Patch, bern, u0, u1, v0, v1, corner_ok, edge_ok, reset=False) -> _Patch:
    pm = parent.to_orig
    du, dv = u1 - u0, v1 - v0
    return _Patch(
        bern=bern,
        to_orig=lambda u, v: pm(u0 + du * u, v0 + dv * v),
        corner_ok=corner_ok,
        edge_ok=edge_ok,
        depth=parent.depth + 1,
        since=0 if reset else parent.since + 1,
        blowups=parent.blowups,
    )


def _split(patch: _Patch, lam=None, mu=None, mark=None) -> list[_Patch]:
    """Split at ``u = lam`` and/or ``v = mu``.

    New corners inherit the flags of the edge they lie on; ``mark`` is a local
    point whose zero has already been dealt with and is flagged as allowed.
    """
    out = []
    pieces = [(patch.bern, Fraction(0), Fraction(1))]
    if lam is not None:
        left, right = _split_u(patch.bern, lam)
        pieces = [(left, Fraction(0), lam), (right, lam, Fraction(1))]
    for bu, ua, ub in pieces:
        vpieces = [(bu, Fraction(0), Fraction(1))]
        if mu is not None:
            lo, hi = _split_v(bu, mu)
            vpieces = [(lo, Fraction(0), mu), (hi, mu, Fraction(1))]
        for bv, va, vb in vpieces:
            corner_ok = {}
            for c in CORNERS:
                pu = ub if c[0] else ua
                pv = vb if c[1] else va
                corner_ok[c] = (pu, pv) == mark or _flag_at(patch, pu, pv)
            edge_ok = {
                "u0": ua == 0 and patch.edge_ok.get("u0", False),
                "u1": ub == 1 and patch.edge_ok.get("u1", False),
                "v0": va == 0 and patch.edge_ok.get("v0", False),
                "v1": vb == 1 and patch.edge_ok.get("v1", False),
            }
            out.append(_sub(patch, bv, ua, ub, va, vb, corner_ok, edge_ok, reset=mark is not None))
    return out


def _flag_at(patch, pu, pv) -> bool:
    if pu in (0, 1) and pv in (0, 1):
        return patch.allowed((int(pu), int(pv)))
    on = [e for e, hit in (("u0", pu == 0), ("u1", pu == 1), ("v0", pv == 0), ("v1", pv == 1)) if hit]
    return any(patch.edge_ok.get(e, False) for e in on)


def _reflect_u(p: _Patch) -> _Patch:
    pm = p.to_orig
    return _Patch(
        bern=p.bern[::-1],
        to_orig=lambda u, v: pm(1 - u, v),
        corner_ok={(1 - a, b): ok for (a, b), ok in p.corner_ok.items()},
        edge_ok={"u0": p.edge_ok.get("u1", False), "u1": p.edge_ok.get("u0", False),
                 "v0": p.edge_ok.get("v0", False), "v1": p.edge_ok.get("v1", False)},
        depth=p.depth, since=p.since, blowups=p.blowups)


def _transpose(p: _Patch) -> _Patch:
    pm = p.to_orig
    return _Patch(
        bern=[list(col) for col in zip(*p.bern)],
        to_orig=lambda u, v: pm(v, u),
        corner_ok={(b, a): ok for (a, b), ok in p.corner_ok.items()},
        edge_ok={"u0": p.edge_ok.get("v0", False), "u1": p.edge_ok.get("v1", False),
                 "v0": p.edge_ok.get("u0", False), "v1": p.edge_ok.get("u1", False)},
        depth=p.depth, since=p.since, blowups=p.blowups)


def _to_origin(p: _Patch, c) -> _Patch:
    if c[0]:
        p = _reflect_u(p)
    if c[1]:
        p = _transpose(_reflect_u(_transpose(p)))
    return p


def _chart(p: _Patch) -> _Patch:
    """Blow up the origin of ``p``: ``(u, w) -> (u, w u)`` covers ``v <= u``."""
    g, _ = p.poly.blowup()
    m, n = g.bidegree
    pm = p.to_orig
    return _Patch(
        bern=to_bernstein(g, max(m, 0), max(n, 0)),
        to_orig=lambda u, w: pm(u, w * u),
        corner_ok={(0, 0): True, (0, 1): True,
                   (1, 0): p.allowed((1, 0)), (1, 1): p.allowed((1, 1))},
        edge_ok={"u0": True, "v0": p.edge_ok.get("v0", False),
                 "u1": p.edge_ok.get("u1", False), "v1": False},
        depth=p.depth + 1, since=0, blowups=p.blowups + 1)


def _blowup(p: _Patch, c) -> list[_Patch]:
    p0 = _to_origin(p, c)
    return [_chart(p0), _chart(_transpose(p0))]


# -- exact helpers for stuck patches ----------------------------------------------

def _edge_poly(p: _Patch, e) -> UniPoly:
    b = p.edge_coeffs(e)
    n = len(b) - 1
    out = UniPoly()
    for i, c in enumerate(b):
        if c:
            out = out + UniPoly.monomial(i) * UniPoly([1, -1]) ** (n - i) * (c * comb(n, i))
    return out


def _rational_double_roots(g: UniPoly) -> list[Fraction]:
    if g.degree <= 1:
        return []
    out = []
    for factor, mult in squarefree_decomposition(g):
        if mult >= 2 and factor.degree == 1:
            r = -factor.coeff(0) / factor.coeff(1)
            if 0 < r < 1:
                out.append(r)
    return out


def _rational_roots_in(g: UniPoly, lo=0, hi=1, strict=True) -> list[Fraction]:
    import sympy

    if g.is_zero() or g.degree < 1:
        return []
    z = sympy.Symbol("z")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * z**i for i, c in enumerate(g.coeffs))
    out = []
    for fac, _ in sympy.factor_list(expr, z)[1]:
        pf = sympy.Poly(fac, z)
        if pf.degree() == 1:
            a, b = pf.all_coeffs()
            r = Fraction(int(sympy.numer(-b / a)), int(sympy.denom(-b / a)))
            if (lo < r < hi) if strict else (lo <= r <= hi):
                out.append(r)
    return sorted(set(out))


def _interior_critical_zeros(g: BiPoly) -> list[tuple[Fraction, Fraction]]:
    """Rational points of the open unit square with g = g_u = g_v = 0."""
    import sympy

    u, v = sympy.symbols("u v")

    def expr(f: BiPoly):
        return sum(sympy.Rational(c.numerator, c.denominator) * u**i * v**j for (i, j), c in f.terms.items())

    gu, gv = g.diff_s(), g.diff_t()
    if gu.is_zero() or gv.is_zero():
        return []
    res = sympy.resultant(expr(gu), expr(gv), v)
    res = sympy.Poly(res, u)
    if res.is_zero:
        return []
    coeffs = res.all_coeffs()[::-1]
    uni = UniPoly(Fraction(int(sympy.numer(c)), int(sympy.denom(c))) for c in coeffs)
    out = []
    for u0 in _rational_roots_in(uni):
        for v0 in _rational_roots_in(g.at_s(u0)):
            if gu(u0, v0) == 0 and gv(u0, v0) == 0:
                out.append((u0, v0))
    return out


def _float_min_point(g: BiPoly, grid: int = 24):
    import numpy as np

    xs = np.linspace(0.0, 1.0, grid + 1)
    U, V = np.meshgrid(xs, xs, indexing="ij")
    val = np.zeros_like(U)
    for i, j, c in g.float_coeffs():
        val += c * U**i * V**j
    i, j = np.unravel_index(np.argmin(val), val.shape)
    return (int(i), int(j)), grid, float(val[i, j])


# -- driver ----------------------------------------------------------------------------

@dataclass
class _Search:
    f: BiPoly
    origin: Map
    excluded: set
    zero: tuple | None = None
    patches: int = 0
    undecided: str = ""

    def point(self, p: _Patch, u, v) -> tuple[Fraction, Fraction]:
        return self.origin(*p.to_orig(Q(u), Q(v)))

    def record_zero(self, pt):
        if pt in self.excluded:
            return
        if self.zero is None and self.f(*pt) == 0:
            self.zero = pt


MAX_PATCHES = 40000
MAX_DEPTH = 40
MAX_BLOWUPS = 8
STUCK = 5


def sign_on_box(f: BiPoly, box=((0, 1), (0, 1)), excluded_corners: Iterable = (),
                excluded_edges: Iterable = ()) -> SignVerdict:
    """Decide the sign of ``f`` on a closed box.

    ``excluded_corners`` are box corners where ``f`` may vanish without
    spoiling positivity; ``excluded_edges`` (pairs ``("s", s0)`` or
    ``("t", t0)``) are whole box edges with the same role.
    """
    (s0, s1), (t0, t1) = ((Q(box[0][0]), Q(box[0][1])), (Q(box[1][0]), Q(box[1][1])))
    if not (s0 < s1 and t0 < t1):
        raise ValueError("degenerate box")
    if f.is_zero():
        return SignVerdict(SignKind.IDENTICALLY_ZERO, (s0, t0), Fraction(0), "zero polynomial")
    ds, dt = s1 - s0, t1 - t0
    origin = lambda u, v: (s0 + ds * u, t0 + dt * v)  # noqa: E731
    excluded = set()
    corner_ok = {}
    for c in excluded_corners:
        c = (Q(c[0]), Q(c[1]))
        if c[0] not in (s0, s1) or c[1] not in (t0, t1):
            raise ValueError(f"excluded point {c} is not a box corner")
        excluded.add(c)
        corner_ok[(int(c[0] == s1), int(c[1] == t1))] = True
    edge_ok = {}
    edge_names = {("s", s0): "u0", ("s", s1): "u1", ("t", t0): "v0", ("t", t1): "v1"}
    for axis, val in excluded_edges:
        key = edge_names.get((axis, Q(val)))
        if key is None:
            raise ValueError(f"excluded edge {axis}={val} is not a box edge")
        edge_ok[key] = True
    g = f.compose_affine(s0, ds, t0, dt)
    m, n = g.bidegree
    root = _Patch(bern=to_bernstein(g, m, n), to_orig=lambda u, v: (u, v),
                  corner_ok=corner_ok, edge_ok=edge_ok)

    def on_excluded_edge(pt):
        return any((a == "s" and pt[0] == Q(x)) or (a == "t" and pt[1] == Q(x)) for a, x in excluded_edges)

    search = _Search(f, origin, excluded)
    stack = [root]
    while stack:
        p = stack.pop()
        search.patches += 1
        if search.patches > MAX_PATCHES:
            return SignVerdict(SignKind.UNDECIDED, reason="patch budget exhausted")
        out = _step(search, p, on_excluded_edge)
        if isinstance(out, SignVerdict):
            return out
        stack.extend(out)
    if search.undecided:
        return SignVerdict(SignKind.UNDECIDED, reason=search.undecided)
    if search.zero is not None:
        return SignVerdict(SignKind.HAS_ZERO, search.zero, Fraction(0))
    return SignVerdict(SignKind.ALL_POSITIVE)


def _negative(search: _Search, p: _Patch, u, v):
    pt = search.point(p, u, v)
    val = search.f(*pt)
    if val < 0:
        return SignVerdict(SignKind.HAS_NEGATIVE, pt, val)
    return None


def _step(search: _Search, p: _Patch, on_excluded_edge):
    b = p.bern
    lo = min(min(row) for row in b)
    if lo > 0:
        return []
    for c in CORNERS:
        if p.corner_value(c) < 0:
            if not p.allowed(c):
                hit = _negative(search, p, *c)
                if hit:
                    return hit
            # a negative limit value on an excluded set: walk towards the centre
            for j in range(1, 200):
                h = Fraction(1, 2**j)
                hit = _negative(search, p, c[0] + (HALF - c[0]) * h, c[1] + (HALF - c[1]) * h)
                if hit:
                    return hit
    if lo >= 0:
        _record_pattern_zeros(search, p, on_excluded_edge)
        return []
    hit = _negative(search, p, HALF, HALF)
    if hit:
        return hit
    for c in CORNERS:
        if p.corner_value(c) == 0:
            if not p.allowed(c):
                search.record_zero(search.point(p, *c))
            if p.blowups >= MAX_BLOWUPS:
                search.undecided = "blow-up budget exhausted"
                return []
            return _blowup(p, c)
    if p.since >= STUCK:
        out = _unstick(search, p)
        if out is not None:
            return out
    if p.depth >= MAX_DEPTH:
        search.undecided = "subdivision depth exhausted"
        return []
    return _split(p, HALF, HALF)


def _record_pattern_zeros(search: _Search, p: _Patch, on_excluded_edge):
    b = p.bern
    if all(x == 0 for row in b for x in row):
        search.record_zero(search.point(p, HALF, HALF))
        return
    for e in EDGES:
        if not p.edge_ok.get(e, False) and all(x == 0 for x in p.edge_coeffs(e)):
            mid = {"u0": (0, HALF), "u1": (1, HALF), "v0": (HALF, 0), "v1": (HALF, 1)}[e]
            search.record_zero(search.point(p, *mid))
    for c in CORNERS:
        if p.corner_value(c) == 0 and not p.allowed(c):
            pt = search.point(p, *c)
            if not on_excluded_edge(pt):
                search.record_zero(pt)


def _unstick(search: _Search, p: _Patch):
    """Exact handling of tangential zeros plus a float-guided negative probe."""
    p.since = 0
    g = p.poly
    idx, grid, val = _float_min_point(g)
    if val < 0:
        for du in (0, -1, 1):
            for dv in (0, -1, 1):
                i, j = idx[0] + du, idx[1] + dv
                if 0 < i < grid and 0 < j < grid:
                    hit = _negative(search, p, Fraction(i, grid), Fraction(j, grid))
                    if hit:
                        return hit
    for e in EDGES:
        roots = _rational_double_roots(_edge_poly(p, e))
        if roots:
            r = roots[0]
            ok = p.edge_ok.get(e, False)
            if e in ("u0", "u1"):
                pt = (Fraction(0 if e == "u0" else 1), r)
            else:
                pt = (r, Fraction(0 if e == "v0" else 1))
            if not ok:
                search.record_zero(search.point(p, *pt))
            if e in ("u0", "u1"):
                return _split(p, None, r, mark=pt)
            return _split(p, r, None, mark=pt)
    for z in _interior_critical_zeros(g):
        if g(*z) == 0:
            search.record_zero(search.point(p, *z))
            return _split(p, z[0], z[1], mark=z)
    return None
