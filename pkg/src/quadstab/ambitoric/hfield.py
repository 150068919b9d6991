"""The symmetric matrix field ``H_{A,B}`` on the ambitoric box and its moment-coordinate form.

Entries are elements of the rational function field ``QQ(x, y)``, so every
identity below (symmetry, boundary conditions, affinity of the scalar
``H^{ij}_{ij}``) is checked exactly rather than by sampling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from sympy import QQ
from sympy.polys.fields import field as rational_field

from ..algebra.linalg import solve_linear
from ..algebra.rational import fmt
from ..algebra.unipoly import UniPoly
from ..polytope import AffineFn
from .boundary import AmbitoricData, FormalSolution

K, X, Y = rational_field("x,y", QQ)

Matrix2 = list


def kq(c) -> "K.dtype":
    c = Fraction(c)
    return K(QQ(c.numerator, c.denominator))


def _frac(v) -> Fraction:
    return Fraction(int(v.numerator), int(v.denominator))


def ev(f, xv, yv) -> Fraction:
    """Exact value of a field element at a rational point."""
    num = f.numer(QQ(Fraction(xv).numerator, Fraction(xv).denominator),
                  QQ(Fraction(yv).numerator, Fraction(yv).denominator))
    den = f.denom(QQ(Fraction(xv).numerator, Fraction(xv).denominator),
                  QQ(Fraction(yv).numerator, Fraction(yv).denominator))
    if den == 0:
        raise ZeroDivisionError("rational function has a pole at this point")
    return _frac(num) / _frac(den)


def _qq(v):
    v = Fraction(v)
    return QQ(v.numerator, v.denominator)


def expr_tree(e) -> dict | str:
    """JSON tree of a sympy expression: ``{"op": ..., "args": [...]}`` with rational leaves as "num/den"."""
    if e.is_Rational:
        return fmt(Fraction(int(e.p), int(e.q)))
    if e.is_Symbol:
        return {"symbol": e.name}
    return {"op": type(e).__name__, "args": [expr_tree(a) for a in e.args]}


def poly_k(p: UniPoly, gen):
    return sum((kq(c) * gen**i for i, c in enumerate(p.coeffs)), K(0))


def qxy(d: AmbitoricData):
    return kq(d.q0) * X * Y + kq(d.q1) * (X + Y) + kq(d.q2)


# -- torus basis ---------------------------------------------------------------------------

def torus_basis(d: AmbitoricData) -> tuple[str, tuple[str, str]]:
    """Which τ is eliminated through ``2 q1 τ1 = q2 τ0 + q0 τ2``, and the remaining basis."""
    if d.q1 != 0:
        return "tau1", ("tau0", "tau2")
    if d.q0 != 0:
        return "tau2", ("tau0", "tau1")
    return "tau0", ("tau1", "tau2")


def restricted_form(d: AmbitoricData, z) -> list:
    """Coefficients of ``z² dτ0 + 2 z dτ1 + dτ2`` in the declared 2-dimensional basis."""
    q0, q1, q2 = kq(d.q0), kq(d.q1), kq(d.q2)
    gone, _ = torus_basis(d)
    if gone == "tau1":
        return [z**2 + z * q2 / q1, 1 + z * q0 / q1]
    if gone == "tau2":
        return [z**2 - q2 / q0, 2 * z]
    return [2 * z, K(1)]


def _outer(u, v) -> Matrix2:
    return [[u[i] * v[j] for j in range(2)] for i in range(2)]


def _madd(a: Matrix2, b: Matrix2) -> Matrix2:
    return [[a[i][j] + b[i][j] for j in range(2)] for i in range(2)]


def _mscale(c, a: Matrix2) -> Matrix2:
    return [[c * a[i][j] for j in range(2)] for i in range(2)]


def _congruent(M, a: Matrix2) -> Matrix2:
    """``M a M^T`` for a constant 2×2 ``M`` of Fractions."""
    return [[sum(kq(M[i][k]) * a[k][l] * kq(M[j][l]) for k in range(2) for l in range(2))
             for j in range(2)] for i in range(2)]


# -- moment coordinates ----------------------------------------------------------------------

def moment_map(d: AmbitoricData):
    """Positive-type symplectic coordinates ``(χ, η)``."""
    if d.kind != "positive":
        raise NotImplementedError("moment coordinates are implemented for positive type only")
    q = qxy(d)
    a0, b0 = kq(d.alpha0), kq(d.beta0)
    return (X - a0) * (Y - a0) / q, (b0 - X) * (Y - b0) / q


def jacobian(d: AmbitoricData) -> Matrix2:
    chi, eta = moment_map(d)
    return [[chi.diff(X), chi.diff(Y)], [eta.diff(X), eta.diff(Y)]]


def mu_derivatives(chart):
    """``d_mu(f, i)`` is ``∂f/∂μ_i`` for ``f`` in ``QQ(x, y)``, ``μ = chart``."""
    mu0, mu1 = chart
    J = [[mu0.diff(X), mu0.diff(Y)], [mu1.diff(X), mu1.diff(Y)]]
    D = J[0][0] * J[1][1] - J[0][1] * J[1][0]
    Ji = [[J[1][1] / D, -J[0][1] / D], [-J[1][0] / D, J[0][0] / D]]

    def d_mu(f, i):
        return Ji[0][i] * f.diff(X) + Ji[1][i] * f.diff(Y)

    return d_mu


def _frame_matrix(d: AmbitoricData) -> list[list[Fraction]]:
    """Constant M with ``q(x,y)² ∂μ/∂x = M w(y)``, ``w`` the restricted τ-form.

    ``q² ∂χ/∂x`` and ``q² ∂η/∂x`` are quadratics in ``y`` alone, as are the
    components of ``w``; M is fitted at three values of ``y`` and then
    confirmed as a polynomial identity.
    """
    q = qxy(d)
    chi, eta = moment_map(d)
    v = [chi.diff(X) * q**2, eta.diff(X) * q**2]
    w = restricted_form(d, Y)
    ys = (Fraction(0), Fraction(1), Fraction(-1))
    rows, rhs = [], []
    for yv in ys:
        wv = [ev(c, 0, yv) for c in w]
        for i in range(2):
            row = [Fraction(0)] * 4
            row[2 * i], row[2 * i + 1] = wv
            rows.append(row)
            rhs.append(ev(v[i], 0, yv))
    # six equations, four unknowns: solve the first four, check the rest
    m = solve_linear(rows[:4], rhs[:4])
    M = [[m[0], m[1]], [m[2], m[3]]]
    for i in range(2):
        if v[i] - (kq(M[i][0]) * w[0] + kq(M[i][1]) * w[1]) != 0:
            raise ArithmeticError("moment frame is not a constant change of torus basis")
    return M


# -- the field -------------------------------------------------------------------------------

@dataclass(frozen=True)
class BoxEdge:
    """An edge ``var = value`` of the coordinate box and its defining function in moment coordinates."""

    name: str
    var: str
    value: Fraction
    function: AffineFn


@dataclass
class HField:
    """``H_{A,B}`` in the declared torus basis and, for positive type, in moment coordinates.

    The orientation factor is ``((y - x) / q(x, y))^{±1}`` so that ``H`` is
    positive definite where ``A`` and ``B`` are positive (``x < y`` on the box).
    ``moment == frame · tau · frameᵀ`` exactly.
    """

    data: object
    solution: object
    tau: Matrix2 | None
    basis: tuple[str, str]
    eliminated: str
    moment: Matrix2 | None = None
    frame: list | None = None
    chart: tuple | None = None
    box: tuple | None = None
    edges: tuple[BoxEdge, ...] = ()
    _cache: dict = field(default_factory=dict, repr=False)

    def at(self, xv, yv, which: str = "moment") -> list[list[Fraction]]:
        m = self.moment if which == "moment" else self.tau
        return [[ev(m[i][j], xv, yv) for j in range(2)] for i in range(2)]

    def mu(self, xv, yv) -> tuple[Fraction, Fraction]:
        return ev(self.chart[0], xv, yv), ev(self.chart[1], xv, yv)

    def symmetric(self) -> bool:
        return all(m is None or m[0][1] == m[1][0] for m in (self.tau, self.moment))

    def to_json(self) -> dict:
        tree = lambda m: [[expr_tree(m[i][j].as_expr()) for j in range(2)] for i in range(2)]  # noqa: E731
        out = {"variables": ["x", "y"], "basis": list(self.basis), "eliminated": self.eliminated}
        if self.tau is not None:
            out["tau_matrix"] = tree(self.tau)
        if self.moment is not None:
            out["moment_coordinates"] = ["chi", "eta"]
            out["moment_map"] = [expr_tree(c.as_expr()) for c in self.chart]
            out["moment_matrix"] = tree(self.moment)
        if self.frame is not None:
            out["frame"] = [[fmt(c) for c in row] for row in self.frame]
        return out


def build_H(fs: FormalSolution, d: AmbitoricData) -> HField:
    q = qxy(d)
    A, B = poly_k(fs.A, X), poly_k(fs.B, Y)
    c = (Y - X) / q
    if d.kind == "negative":
        c = 1 / c
    pref = c / ((Y - X) ** 2 * q**2)
    wy, wx = restricted_form(d, Y), restricted_form(d, X)
    tau = _mscale(pref, _madd(_mscale(A, _outer(wy, wy)), _mscale(B, _outer(wx, wx))))
    gone, basis = torus_basis(d)
    h = HField(d, fs, tau, basis, gone)
    if d.kind == "positive":
        J = jacobian(d)
        jx, jy = [J[0][0], J[1][0]], [J[0][1], J[1][1]]
        moment = _madd(_mscale(A / c, _outer(jx, jx)), _mscale(B / c, _outer(jy, jy)))
        M = _frame_matrix(d)
        if _congruent(M, tau) != moment:
            raise ArithmeticError("moment and torus descriptions of H disagree")
        h.moment, h.frame, h.chart = moment, M, moment_map(d)
        h.box = ((d.alpha0, d.alpha_inf), (d.beta0, d.beta_inf))
        fns = edge_functions(d)
        h.edges = tuple(BoxEdge(name, EDGE_LINES[name][0], getattr(d, EDGE_LINES[name][1]), fns[name])
                        for name in ("alpha0", "alpha_inf", "beta0", "beta_inf"))
    return h


# -- affine functions of the moment coordinates -------------------------------------------

def moment_affine(d: AmbitoricData, z) -> AffineFn:
    """The affine function of ``(χ, η)`` equal to ``(x - z)(y - z) / q(x, y)``.

    Numerators live in the span of ``xy, x + y, 1``; ``χ q``, ``η q`` and ``q``
    form a basis of it.
    """
    z = Fraction(z)
    a0, b0 = d.alpha0, d.beta0
    cols = [(1, -a0, a0 * a0), (-1, b0, -b0 * b0), (d.q0, d.q1, d.q2)]
    target = (Fraction(1), -z, z * z)
    try:
        a, b, c = solve_linear([[cols[j][i] for j in range(3)] for i in range(3)], target)
    except ArithmeticError:
        raise ValueError("chi, eta and 1 are linearly dependent: the moment map collapses the box for this q") from None
    return AffineFn(a, b, c)


def edge_functions(d: AmbitoricData) -> dict[str, AffineFn]:
    """Defining functions, nonnegative on the image, of the four edges."""
    return {
        "alpha0": moment_affine(d, d.alpha0),
        "alpha_inf": -moment_affine(d, d.alpha_inf),
        "beta0": -moment_affine(d, d.beta0),
        "beta_inf": moment_affine(d, d.beta_inf),
    }


EDGE_LINES = {"alpha0": ("x", "alpha0"), "alpha_inf": ("x", "alpha_inf"),
              "beta0": ("y", "beta0"), "beta_inf": ("y", "beta_inf")}


def restrict(f, var: str, val):
    """``f`` restricted to ``x = val`` (or ``y = val``), as an element of ``QQ(x, y)``."""
    gen = f.numer.ring.gens[0 if var == "x" else 1]
    num = f.numer.subs(gen, _qq(val))
    den = f.denom.subs(gen, _qq(val))
    if den == 0:
        raise ZeroDivisionError("restriction hits a pole")
    return K(num) / K(den)


def _constant(f) -> Fraction | None:
    if f.numer.is_ground and f.denom.is_ground:
        return _frac(f.numer.LC) / _frac(f.denom.LC) if f.numer else Fraction(0)
    return None


def extract_edge_weights(h: HField, d=None) -> dict[str, Fraction]:
    """The scalar ``r`` with ``dH(u, u) = r u`` on each edge, ``u`` the edge conormal.

    Both the vanishing of ``H(u, ·)`` and the constancy of ``r`` are checked as
    identities along the whole edge.
    """
    if h.moment is None:
        raise NotImplementedError("edge weights need moment coordinates (positive type)")
    d_mu = mu_derivatives(h.chart)
    H = h.moment
    out = {}
    for e in h.edges:
        l = e.function
        u = [kq(l.a), kq(l.b)]
        Hu = [H[i][0] * u[0] + H[i][1] * u[1] for i in range(2)]
        if any(restrict(v, e.var, e.value) != 0 for v in Hu):
            raise ArithmeticError(f"H(u, .) does not vanish on the {e.name} edge")
        g = u[0] * Hu[0] + u[1] * Hu[1]
        grad = [restrict(d_mu(g, i), e.var, e.value) for i in range(2)]
        k = 0 if l.a != 0 else 1
        r = _constant(grad[k] / u[k])
        if r is None or any(grad[i] != kq(r) * u[i] for i in range(2)):
            raise ArithmeticError(f"dH(u,u) is not a constant multiple of u on the {e.name} edge")
        out[e.name] = r
    return out


@dataclass
class ExtremalCheck:
    """``S = Σ ∂²H^{ij}/∂μ_i∂μ_j``; ``affine`` is set exactly when ``S`` is affine in ``μ``."""

    S: object
    affine: AffineFn | None
    residual: object

    @property
    def extremal(self) -> bool:
        return self.affine is not None

    @property
    def zeta(self) -> AffineFn | None:
        """Associated affine function of the induced weighted polytope, ``-S``."""
        return None if self.affine is None else -self.affine

    def to_json(self) -> dict:
        out = {"extremal": self.extremal}
        if self.affine is not None:
            out["S"] = self.affine.to_json()
        else:
            out["residual"] = expr_tree(self.residual.as_expr())
        return out


def scalar_S(h: HField):
    if "S" not in h._cache:
        d_mu = mu_derivatives(h.chart)
        H = h.moment
        h._cache["S"] = sum((d_mu(d_mu(H[i][j], i), j) for i in range(2) for j in range(2)), K(0))
    return h._cache["S"]


def verify_extremal(h: HField, moment_map=None) -> ExtremalCheck:
    """Fit ``S`` by an affine function at three points, then check the fit as an identity."""
    if h.moment is None:
        raise NotImplementedError("the extremal check needs moment coordinates (positive type)")
    S = scalar_S(h)
    chi, eta = h.chart
    (x0, x1), (y0, y1) = h.box
    mx, my = (x0 + x1) / 2, (y0 + y1) / 2
    pts = [(mx, my), ((x0 + mx) / 2, my), (mx, (my + y1) / 2)]
    rows = [[ev(chi, *p), ev(eta, *p), Fraction(1)] for p in pts]
    a, b, c = solve_linear(rows, [ev(S, *p) for p in pts])
    residual = S - (kq(a) * chi + kq(b) * eta + kq(c))
    if residual == 0:
        return ExtremalCheck(S, AffineFn(a, b, c), residual)
    return ExtremalCheck(S, None, residual)
