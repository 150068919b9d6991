"""Canonical quadrilaterals, edge data, weighted polygons and exact splitting."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Sequence

from .algebra.rational import Q, fmt

Point = tuple[Fraction, Fraction]


def _pt(p) -> Point:
    return (Q(p[0]), Q(p[1]))


def cross(a: Point, b: Point) -> Fraction:
    return a[0] * b[1] - a[1] * b[0]


def sub(a: Point, b: Point) -> Point:
    return (a[0] - b[0], a[1] - b[1])


def lerp(a: Point, b: Point, s) -> Point:
    return (a[0] + (b[0] - a[0]) * s, a[1] + (b[1] - a[1]) * s)


@dataclass(frozen=True)
class AffineFn:
    """``a x + b y + c``."""

    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in "abc":
            object.__setattr__(self, name, Q(getattr(self, name)))

    def __call__(self, x, y=None):
        if y is None:
            x, y = x
        return self.a * x + self.b * y + self.c

    def __neg__(self) -> "AffineFn":
        return AffineFn(-self.a, -self.b, -self.c)

    def __add__(self, other: "AffineFn") -> "AffineFn":
        return AffineFn(self.a + other.a, self.b + other.b, self.c + other.c)

    def __sub__(self, other: "AffineFn") -> "AffineFn":
        return self + (-other)

    def __mul__(self, k) -> "AffineFn":
        k = Q(k)
        return AffineFn(self.a * k, self.b * k, self.c * k)

    __rmul__ = __mul__

    @property
    def gradient(self) -> Point:
        return (self.a, self.b)

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    def is_constant(self) -> bool:
        return self.a == 0 and self.b == 0

    @classmethod
    def through(cls, p: Point, q: Point) -> "AffineFn":
        """The crease function vanishing at ``p`` and ``q``."""
        a = q[1] - p[1]
        b = p[0] - q[0]
        return cls(a, b, -a * p[0] - b * p[1])

    def to_json(self) -> list[str]:
        return [fmt(self.a), fmt(self.b), fmt(self.c)]


# -- convex polygons ------------------------------------------------------------------

@dataclass(frozen=True)
class ConvexPolygon:
    """Strictly convex polygon with counterclockwise rational vertices."""

    vertices: tuple[Point, ...]

    def __post_init__(self):
        vs = tuple(_pt(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        n = len(vs)
        if n < 3:
            raise ValueError("a polygon needs at least three vertices")
        for i in range(n):
            turn = cross(sub(vs[(i + 1) % n], vs[i]), sub(vs[(i + 2) % n], vs[(i + 1) % n]))
            if turn <= 0:
                raise ValueError(f"vertices are not in strictly convex counterclockwise order at vertex {(i + 1) % n + 1}")

    def __len__(self) -> int:
        return len(self.vertices)

    def edge(self, i: int) -> tuple[Point, Point]:
        return self.vertices[i], self.vertices[(i + 1) % len(self.vertices)]

    @property
    def area(self) -> Fraction:
        vs = self.vertices
        return sum((cross(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))), Fraction(0)) / 2

    def triangles(self):
        v0 = self.vertices[0]
        for i in range(1, len(self.vertices) - 1):
            yield v0, self.vertices[i], self.vertices[i + 1]

    def contains(self, p: Point) -> bool:
        p = _pt(p)
        return all(cross(sub(b, a), sub(p, a)) >= 0 for a, b in (self.edge(i) for i in range(len(self))))


def clip_polygon(vertices: Sequence[Point], h: AffineFn) -> list[Point]:
    """Sutherland-Hodgman clip of a convex vertex cycle to ``h >= 0``."""
    out: list[Point] = []
    n = len(vertices)
    for i in range(n):
        a, b = vertices[i], vertices[(i + 1) % n]
        ha, hb = h(a), h(b)
        if ha >= 0:
            out.append(a)
        if (ha > 0 and hb < 0) or (ha < 0 and hb > 0):
            out.append(lerp(a, b, ha / (ha - hb)))
    # drop repeated points produced by vertices on the line
    clean: list[Point] = []
    for p in out:
        if not clean or clean[-1] != p:
            clean.append(p)
    if len(clean) > 1 and clean[0] == clean[-1]:
        clean.pop()
    return clean


def _strip_collinear(vs: list[Point]) -> list[Point]:
    changed = True
    while changed and len(vs) >= 3:
        changed = False
        for i in range(len(vs)):
            a, b, c = vs[i - 1], vs[i], vs[(i + 1) % len(vs)]
            if cross(sub(b, a), sub(c, b)) == 0:
                vs = vs[:i] + vs[i + 1:]
                changed = True
                break
    return vs


def split_by_line(P: ConvexPolygon, h: AffineFn) -> tuple[ConvexPolygon, ConvexPolygon]:
    """The closed pieces ``P ∩ {h >= 0}`` and ``P ∩ {h <= 0}``."""
    vals = [h(v) for v in P.vertices]
    if not (max(vals) > 0 and min(vals) < 0):
        raise ValueError("the line does not meet the interior of the polygon")
    plus = _strip_collinear(clip_polygon(P.vertices, h))
    minus = _strip_collinear(clip_polygon(P.vertices, -h))
    return ConvexPolygon(tuple(plus)), ConvexPolygon(tuple(minus))


# -- canonical quadrilateral -------------------------------------------------------------

def check_pqk(p, q, k) -> tuple[Fraction, Fraction, Fraction]:
    p, q, k = Q(p), Q(q), Q(k)
    if q <= 0:
        raise ValueError("q must be positive")
    if k <= 0:
        raise ValueError("k must be positive")
    if not (p > -1 and p * k > -q):
        raise ValueError(f"p must exceed max(-q/k, -1) = {fmt(max(-q / k, Fraction(-1)))}")
    return p, q, k


@dataclass(frozen=True)
class Edge:
    index: int
    start: Point
    end: Point
    l: AffineFn
    density_axis: str  # "dx" or "dy"
    density: Fraction  # canonical density is density * d(axis)

    @property
    def unit_mass(self) -> Fraction:
        """Boundary mass of the whole edge for unit weight."""
        along = abs(self.end[0] - self.start[0]) if self.density_axis == "dx" else abs(self.end[1] - self.start[1])
        return along * self.density


@dataclass(frozen=True)
class Quadrilateral:
    """Canonical quadrilateral ``(0,0), (1,0), (1+p,q), (0,k)``.

    ``matrix``/``shift`` send input coordinates to canonical ones
    (``x' = M x + b``); ``edge_map[i]`` is the input edge (0-based) that
    became canonical edge ``i+1``.
    """

    p: Fraction
    q: Fraction
    k: Fraction
    input_vertices: tuple[Point, ...] | None = None
    matrix: tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]] = ((Fraction(1), Fraction(0)),
                                                                          (Fraction(0), Fraction(1)))
    shift: Point = (Fraction(0), Fraction(0))
    edge_map: tuple[int, int, int, int] = (0, 1, 2, 3)

    def __post_init__(self):
        p, q, k = check_pqk(self.p, self.q, self.k)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "k", k)

    @classmethod
    def from_pqk(cls, p, q, k) -> "Quadrilateral":
        return cls(Q(p), Q(q), Q(k))

    @property
    def pqk(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.p, self.q, self.k)

    @property
    def vertices(self) -> tuple[Point, Point, Point, Point]:
        z = Fraction(0)
        return ((z, z), (Fraction(1), z), (1 + self.p, self.q), (z, self.k))

    @property
    def polygon(self) -> ConvexPolygon:
        return ConvexPolygon(self.vertices)

    @property
    def det(self) -> Fraction:
        (a, b), (c, d) = self.matrix
        return a * d - b * c

    def to_canonical(self, pt) -> Point:
        (a, b), (c, d) = self.matrix
        x, y = _pt(pt)
        return (a * x + b * y + self.shift[0], c * x + d * y + self.shift[1])

    def from_canonical(self, pt) -> Point:
        (a, b), (c, d) = self.matrix
        det = a * d - b * c
        x, y = _pt(pt)
        x, y = x - self.shift[0], y - self.shift[1]
        return ((d * x - b * y) / det, (-c * x + a * y) / det)

    def __repr__(self) -> str:
        return f"Quadrilateral(p={fmt(self.p)}, q={fmt(self.q)}, k={fmt(self.k)})"


def edge_data(Qd: Quadrilateral) -> list[Edge]:
    p, q, k = Qd.pqk
    v = Qd.vertices
    ls = [
        AffineFn(0, 1, 0),
        AffineFn(-q, p, q),
        AffineFn(q - k, -(1 + p), k * (1 + p)),
        AffineFn(1, 0, 0),
    ]
    dens = [("dx", Fraction(1)), ("dy", 1 / q), ("dx", 1 / (1 + p)), ("dy", Fraction(1))]
    return [Edge(i + 1, v[i], v[(i + 1) % 4], ls[i], *dens[i]) for i in range(4)]


def parallel_pairs(Qd: Quadrilateral) -> set[tuple[int, int]]:
    out = set()
    if Qd.p == 0:
        out.add((2, 4))
    if Qd.q == Qd.k:
        out.add((1, 3))
    return out


def _convex_cycle(pts: list[Point]) -> list[int] | None:
    """Indices of a counterclockwise strictly convex cycle starting at 0, if any."""
    for perm in permutations(range(1, 4)):
        order = [0, *perm]
        cyc = [pts[i] for i in order]
        if all(cross(sub(cyc[(i + 1) % 4], cyc[i]), sub(cyc[(i + 2) % 4], cyc[(i + 1) % 4])) > 0
               for i in range(4)):
            return order
    return None


def _diagnose(pts: list[Point]) -> str:
    for i in range(4):
        for j in range(i + 1, 4):
            if pts[i] == pts[j]:
                return f"vertices {i + 1} and {j + 1} coincide"
    for tri in ((0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)):
        a, b, c = (pts[i] for i in tri)
        if cross(sub(b, a), sub(c, a)) == 0:
            return "three vertices are collinear (degenerate quadrilateral)"
    return "one vertex lies inside the triangle of the other three (not convex)"


def _frame(cyc: list[Point], labeling: tuple[int, int, int, int]) -> Quadrilateral:
    w1, w2, w3, w4 = cyc
    e, f = sub(w2, w1), sub(w4, w1)
    k = cross(e, f)
    # M e = (1, 0), M f = (0, k): M = [[1,0],[0,k]] [e f]^{-1}
    inv = ((f[1] / k, -f[0] / k), (-e[1] / k, e[0] / k))
    M = ((inv[0][0], inv[0][1]), (k * inv[1][0], k * inv[1][1]))
    shift = (-(M[0][0] * w1[0] + M[0][1] * w1[1]), -(M[1][0] * w1[0] + M[1][1] * w1[1]))
    v3 = (M[0][0] * w3[0] + M[0][1] * w3[1] + shift[0], M[1][0] * w3[0] + M[1][1] * w3[1] + shift[1])
    return Quadrilateral(v3[0] - 1, v3[1], k, None, M, shift, labeling)


def canonicalize(vertices: Sequence, labeling: str = "input") -> Quadrilateral:
    """Bring four points to canonical position by an area-preserving affine map.

    ``labeling="input"`` keeps the given cyclic order (reversed if clockwise,
    keeping the first vertex as ``v1``); points not given in a convex cyclic
    order, or ``labeling="lexmin"``, use the lexicographically smallest
    ``(p, q, k)`` over the eight dihedral relabelings.
    """
    pts = [_pt(v) for v in vertices]
    if len(pts) != 4:
        raise ValueError("a quadrilateral needs exactly four vertices")
    order = _convex_cycle(pts)
    if order is None:
        raise ValueError(_diagnose(pts))
    turn = [cross(sub(pts[(i + 1) % 4], pts[i]), sub(pts[(i + 2) % 4], pts[(i + 1) % 4])) for i in range(4)]
    if labeling == "input":
        if all(t > 0 for t in turn):
            return _with_input(_labeled(pts, [0, 1, 2, 3]), pts)
        if all(t < 0 for t in turn):
            return _with_input(_labeled(pts, [0, 3, 2, 1]), pts)
    elif labeling != "lexmin":
        raise ValueError(f"unknown labeling {labeling!r}")
    best = None
    for r in range(4):
        for flip in (False, True):
            idx = [order[(r + j) % 4] for j in range(4)]
            if flip:
                idx = [idx[0], idx[3], idx[2], idx[1]]
            quad = _labeled(pts, idx)
            if best is None or quad.pqk < best.pqk:
                best = quad
    return _with_input(best, pts)


def _labeled(pts: list[Point], idx: list[int]) -> Quadrilateral:
    cyc = [pts[i] for i in idx]
    area2 = sum(cross(cyc[i], cyc[(i + 1) % 4]) for i in range(4))
    if area2 < 0:
        # clockwise relabelling: reflect x -> -x first so the frame is counterclockwise
        mirrored = [(-x, y) for x, y in cyc]
        quad = _frame(mirrored, ())
        (a, b), (c, d) = quad.matrix
        M = ((-a, b), (-c, d))
        quad = Quadrilateral(quad.p, quad.q, quad.k, None, M, quad.shift, ())
    else:
        quad = _frame(cyc, ())
    # canonical edge i joins cyc[i], cyc[i+1]; find the input edge with those endpoints
    emap = []
    for i in range(4):
        a, b = idx[i], idx[(i + 1) % 4]
        emap.append(next(e for e in range(4) if {e, (e + 1) % 4} == {a, b}) if _adjacent(a, b) else -1)
    return Quadrilateral(quad.p, quad.q, quad.k, None, quad.matrix, quad.shift, tuple(emap))


def _adjacent(a: int, b: int) -> bool:
    return (a - b) % 4 in (1, 3)


def _with_input(quad: Quadrilateral, pts: list[Point]) -> Quadrilateral:
    return Quadrilateral(quad.p, quad.q, quad.k, tuple(pts), quad.matrix, quad.shift, quad.edge_map)


# -- weights -------------------------------------------------------------------------------

@dataclass(frozen=True)
class BoundaryWeights:
    r: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        r = tuple(Q(x) for x in self.r)
        if len(r) != 4:
            raise ValueError("exactly four edge weights are required")
        if any(x < 0 for x in r):
            raise ValueError("edge weights must be nonnegative")
        if all(x == 0 for x in r):
            raise ValueError("weights must not all vanish")
        object.__setattr__(self, "r", r)

    def __iter__(self):
        return iter(self.r)

    def __getitem__(self, i: int) -> Fraction:
        return self.r[i]

    def scaled(self, c) -> "BoundaryWeights":
        return BoundaryWeights(tuple(Q(c) * x for x in self.r))

    def normalized(self) -> "BoundaryWeights":
        total = sum(self.r)
        return BoundaryWeights(tuple(x / total for x in self.r))

    @property
    def zeros(self) -> tuple[int, ...]:
        """1-based indices of the edges with zero weight."""
        return tuple(i + 1 for i, x in enumerate(self.r) if x == 0)


@dataclass(frozen=True)
class WeightedQuadrilateral:
    quad: Quadrilateral
    weights: BoundaryWeights

    @classmethod
    def make(cls, pqk, weights) -> "WeightedQuadrilateral":
        return cls(Quadrilateral.from_pqk(*pqk), BoundaryWeights(tuple(weights)))

    @property
    def edges(self) -> list[Edge]:
        return edge_data(self.quad)

    @property
    def masses(self) -> tuple[Fraction, ...]:
        return tuple(r * e.unit_mass for r, e in zip(self.weights, self.edges))

    def polygon(self) -> "WeightedPolygon":
        return WeightedPolygon(self.quad.polygon, self.masses)

    def with_weights(self, weights) -> "WeightedQuadrilateral":
        return WeightedQuadrilateral(self.quad, BoundaryWeights(tuple(weights)))


@dataclass(frozen=True)
class WeightedPolygon:
    """Convex polygon with a uniform boundary mass on each edge."""

    polygon: ConvexPolygon
    masses: tuple[Fraction, ...]
    labels: tuple = field(default=())

    def __post_init__(self):
        m = tuple(Q(x) for x in self.masses)
        if len(m) != len(self.polygon):
            raise ValueError("one mass per edge is required")
        object.__setattr__(self, "masses", m)

    def boundary_integral(self, f: AffineFn, restriction: AffineFn | None = None) -> Fraction:
        """Exact ``∫ f dσ`` over the boundary, optionally over ``restriction >= 0`` only."""
        total = Fraction(0)
        for i, mass in enumerate(self.masses):
            if mass == 0:
                continue
            a, b = self.polygon.edge(i)
            lo, hi = Fraction(0), Fraction(1)
            if restriction is not None:
                ha, hb = restriction(a), restriction(b)
                if ha <= 0 and hb <= 0 and not (ha == 0 and hb == 0):
                    continue
                if ha < 0 < hb:
                    lo = ha / (ha - hb)
                elif hb < 0 < ha:
                    hi = ha / (ha - hb)
            pa, pb = lerp(a, b, lo), lerp(a, b, hi)
            total += mass * (hi - lo) * (f(pa) + f(pb)) / 2
        return total

    def split(self, h: AffineFn) -> tuple["WeightedPolygon", "WeightedPolygon"]:
        """Split along ``h = 0``; pieces carry the restricted masses and 0 on the cut."""
        plus, minus = split_by_line(self.polygon, h)
        return self._restrict(plus, h), self._restrict(minus, -h)

    def _restrict(self, piece: ConvexPolygon, h: AffineFn) -> "WeightedPolygon":
        masses = []
        for j in range(len(piece)):
            a, b = piece.edge(j)
            if h(a) == 0 and h(b) == 0:
                masses.append(Fraction(0))
                continue
            masses.append(self._segment_mass(a, b))
        return WeightedPolygon(piece, tuple(masses))

    def _segment_mass(self, a: Point, b: Point) -> Fraction:
        for i, mass in enumerate(self.masses):
            u, v = self.polygon.edge(i)
            d = sub(v, u)
            if cross(d, sub(a, u)) == 0 and cross(d, sub(b, u)) == 0:
                axis = 0 if d[0] != 0 else 1
                ta = (a[axis] - u[axis]) / d[axis]
                tb = (b[axis] - u[axis]) / d[axis]
                return mass * abs(tb - ta)
        raise ValueError("segment does not lie on the polygon boundary")

    def to_weighted_quadrilateral(self) -> WeightedQuadrilateral:
        """Canonical form of a weighted 4-gon with its masses transported."""
        if len(self.polygon) != 4:
            raise ValueError("only quadrilaterals have a canonical form")
        quad = canonicalize(self.polygon.vertices)
        scale = abs(quad.det)
        units = [e.unit_mass for e in edge_data(quad)]
        weights = tuple(scale * self.masses[quad.edge_map[i]] / units[i] for i in range(4))
        return WeightedQuadrilateral(quad, BoundaryWeights(weights))
