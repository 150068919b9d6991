import random
from fractions import Fraction

import pytest

from quadstab.algebra import BiPoly, UniPoly
from quadstab.ambitoric import (AmbitoricData, Cone, CuspThreeHalves, IncompatibleWeights, PoincareType,
                                TrapeziumData, build_H, check_positive, classify_asymptotics, crease_functional,
                                crease_integral, extract_edge_weights, extremal_weight, forward_polygon,
                                forward_polytope, ibp_check, induced_zeta, legendre_H, legendre_trapezium_solve,
                                moment_affine, pi_q_pairing, residuals, solve_boundary_system, verify_extremal)
from quadstab.functional import associated_affine
from quadstab.stability import Status, classify

from .conftest import EXTREMAL, GOLDEN, NON_POSITIVE_EXTREMAL, random_extremal

F = Fraction
z = UniPoly([0, 1])


def data(case, kind="positive"):
    return AmbitoricData.make(*case, kind)


# -- boundary-value system -------------------------------------------------------------------------

def test_golden_solution():
    # A(-2) = A(-1) = 0 with slopes 1, -1 forces A = -(z+1)(z+2); likewise B = -(z-1)(z-2)
    # on [1, 2]; then A + B = -2z² - 4 = q π with q = 1.
    d = data(GOLDEN)
    fs = solve_boundary_system(d)
    assert fs.A == -((z + 1) * (z + 2))
    assert fs.B == -((z - 1) * (z - 2))
    assert fs.pi == UniPoly([-4, 0, -2])
    assert all(r == 0 for r in residuals(fs, d))
    assert check_positive(fs, d).positive


def test_solution_is_linear_in_weights():
    d = data(EXTREMAL)
    w2 = (F(1, 3), 5, 0, 2)
    mix = tuple(a + 2 * b for a, b in zip(d.weights, w2))
    s1, s2, s3 = (solve_boundary_system(d.with_weights(w)) for w in (d.weights, w2, mix))
    assert s3.A == s1.A + s2.A * 2 and s3.pi == s1.pi + s2.pi * 2


def test_negative_type_solves_the_same_system():
    fs = solve_boundary_system(data(GOLDEN, "negative"))
    assert fs.A == -((z + 1) * (z + 2))
    with pytest.raises(NotImplementedError):
        forward_polygon(data(GOLDEN, "negative"))


@pytest.mark.parametrize("bad", [
    ((-1, -2), (1, 2), (0, 0, 1), (1, 1, 1, 1)),
    ((-2, -1), (1, 2), (0, 0, 0), (1, 1, 1, 1)),
    ((-2, -1), (1, 2), (0, 0, 1), (0, 0, 0, 0)),
    ((-2, -1), (1, 2), (0, 0, -1), (1, 1, 1, 1)),
])
def test_invalid_data_rejected(bad):
    with pytest.raises(ValueError):
        data(bad)


def test_extremal_weight_makes_pi_orthogonal_to_q():
    d = data(EXTREMAL)
    r = extremal_weight(d.with_weights((1, 2, 1, 0)), 3)
    assert r == EXTREMAL[3][3]
    fs = solve_boundary_system(d)
    assert pi_q_pairing(fs.pi, d.q0, d.q1, d.q2) == 0


# -- H and the moment map ----------------------------------------------------------------------------

@pytest.mark.parametrize("case", [GOLDEN, EXTREMAL])
def test_edge_weights_recovered(case):
    d = data(case)
    h = build_H(solve_boundary_system(d), d)
    got = extract_edge_weights(h)
    assert tuple(got.values()) == d.weights


def test_H_is_symmetric():
    d = data(EXTREMAL)
    h = build_H(solve_boundary_system(d), d)
    assert h.symmetric()


def test_extremal_scalar_matches_associated_affine():
    d = data(EXTREMAL)
    h = build_H(solve_boundary_system(d), d)
    ext = verify_extremal(h)
    assert ext.extremal
    assert ext.zeta == associated_affine(forward_polygon(d, h)) == induced_zeta(d)


def test_golden_instance_is_not_extremal():
    d = data(GOLDEN)
    assert not verify_extremal(build_H(solve_boundary_system(d), d)).extremal


def test_forward_polygon_of_extremal_instance():
    P = forward_polygon(data(EXTREMAL))
    assert P.labels == ("beta0", "alpha_inf", "beta_inf", "alpha0")
    assert P.polygon.vertices == ((0, 0), (F(4, 3), 0), (F(15, 8), F(3, 8)), (0, 6))
    wq = forward_polytope(data(EXTREMAL))
    assert classify(wq).status is Status.STABLE


def test_crease_outside_box_rejected():
    with pytest.raises(ValueError):
        crease_functional(data(EXTREMAL), "x", 0)


def test_moment_affine_vanishes_on_the_crease_image():
    d = data(EXTREMAL)
    h = build_H(solve_boundary_system(d), d)
    a = F(-2)
    l = moment_affine(d, a)
    for y in (F(1), F(5, 4), F(7, 4), F(2)):
        assert l(h.mu(a, y)) == 0


# -- sign bridge and integration by parts -------------------------------------------------------------

def _bridge(d, samples=4):
    fs = solve_boundary_system(d)
    P = forward_polygon(d)
    for var, poly, lo, hi in (("x", fs.A, d.alpha0, d.alpha_inf), ("y", fs.B, d.beta0, d.beta_inf)):
        for k in range(1, samples + 1):
            v = lo + (hi - lo) * F(k, samples + 1)
            L = crease_functional(d, var, v, P)
            assert (L > 0) - (L < 0) == (poly(v) > 0) - (poly(v) < 0), (var, v)


def test_bridge_on_random_extremal_instances():
    rng = random.Random(3)
    for _ in range(3):
        _bridge(random_extremal(rng))


@pytest.mark.parametrize("case", NON_POSITIVE_EXTREMAL)
def test_bridge_on_non_positive_instances(case):
    d = data(case)
    fs = solve_boundary_system(d)
    assert pi_q_pairing(fs.pi, d.q0, d.q1, d.q2) == 0
    assert not check_positive(fs, d).positive
    _bridge(d)
    assert classify(forward_polytope(d)).status is Status.UNSTABLE


def test_crease_integral_equals_L():
    d = data(EXTREMAL)
    h = build_H(solve_boundary_system(d), d)
    P = forward_polygon(d, h)
    for var, v in (("x", F(-5, 2)), ("x", F(-3, 2)), ("y", F(5, 4)), ("y", F(3, 2))):
        exact = float(crease_functional(d, var, v, P))
        assert crease_integral(h, var, v) == pytest.approx(exact, rel=1e-10)


def test_integration_by_parts():
    d = data(EXTREMAL)
    h = build_H(solve_boundary_system(d), d)
    zeta = verify_extremal(h).zeta
    P = forward_polygon(d, h)
    s, t = BiPoly.s(), BiPoly.t()
    for f in (BiPoly.const(1), s, t, s * s, s * t, t * t, s * s * t):
        assert ibp_check(h, zeta, P, f) <= 1e-9
        assert ibp_check(h, None, P, f) <= 1e-9


def test_integration_by_parts_detects_wrong_measure():
    d = data(EXTREMAL)
    h = build_H(solve_boundary_system(d), d)
    P = forward_polygon(d, h)
    wrong = type(P)(P.polygon, tuple(m * 2 for m in P.masses))
    assert ibp_check(h, None, wrong, BiPoly.s() * BiPoly.s()) > 1e-3


# -- asymptotics ---------------------------------------------------------------------------------------

BOX = ((-2, -1), (1, 2), (0, 0, 1))


def test_simple_root_is_a_cone():
    d = AmbitoricData.make(*BOX, (F(1, 2), 1, 1, 1))
    out = classify_asymptotics(solve_boundary_system(d), d)
    assert out["alpha0"] == Cone(F(1, 2)) and out["beta_inf"] == Cone(1)


def test_double_root_is_poincare_type():
    d = AmbitoricData.make(*BOX, (0, 1, 1, 1))
    out = classify_asymptotics(solve_boundary_system(d), d)
    assert isinstance(out["alpha0"], PoincareType)


def test_triple_root_is_cusp():
    # weight 14 on beta0 also kills A''(alpha0)
    d = AmbitoricData.make(*BOX, (0, 1, 14, 1))
    fs = solve_boundary_system(d)
    assert fs.A.deriv(2)(d.alpha0) == 0
    out = classify_asymptotics(fs, d)
    assert isinstance(out["alpha0"], CuspThreeHalves)


def test_asymptotics_need_positivity():
    d = data(NON_POSITIVE_EXTREMAL[0])
    with pytest.raises(ValueError, match="not positive"):
        classify_asymptotics(solve_boundary_system(d), d)


# -- Calabi-type trapezia -------------------------------------------------------------------------------

def test_trapezium_solution_and_extremality():
    td = TrapeziumData(1, 2, 0, 1, (1, 1, 2, 2))
    sol = legendre_trapezium_solve(td)
    assert sol.B == UniPoly([0, 2, -2])
    assert sol.A(1) == sol.A(2) == 0
    assert sol.A.deriv()(1) == 1 and sol.A.deriv()(2) == -2
    assert sol.positive
    assert verify_extremal(legendre_H(td, sol)).extremal
    assert classify(td.polygon().to_weighted_quadrilateral()).status is Status.STABLE


def test_trapezium_needs_equal_slanted_weights():
    with pytest.raises(IncompatibleWeights):
        legendre_trapezium_solve(TrapeziumData(1, 2, 0, 1, (1, 1, 1, 2)))


def test_trapezium_positivity_matches_classify():
    rng = random.Random(11)
    for _ in range(8):
        a1 = F(rng.randint(1, 6), rng.randint(1, 3))
        a2 = a1 + F(rng.randint(1, 6), rng.randint(1, 3))
        b1 = F(rng.randint(0, 4), rng.randint(1, 3))
        b2 = b1 + F(rng.randint(1, 6), rng.randint(1, 3))
        rb = F(2) ** rng.randint(-4, 4)
        td = TrapeziumData(a1, a2, b1, b2, (F(2) ** rng.randint(-6, 6), F(2) ** rng.randint(-6, 6), rb, rb))
        sol = legendre_trapezium_solve(td)
        v = classify(td.polygon().to_weighted_quadrilateral())
        assert sol.positive == (v.status is Status.STABLE)
