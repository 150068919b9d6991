from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from quadstab.functional import family_polynomial, opposite_family, six_families
from quadstab.polytope import Quadrilateral, WeightedQuadrilateral
from quadstab.stability import (PairCase, Status, classify, classify_pair_at, det_quadratic, float_oracle,
                                hessian_at_corner, locate_semistable, pair_weights, scan_simplex,
                                semistable_split, stable_interval, verify_witness)
from quadstab.stability.scan import count_components, stable_segments_convex
from quadstab.stability.split import tangential_weights

from .conftest import just_above, just_below, pqks, random_pqk, random_weights

F = Fraction
GENERIC = Quadrilateral.from_pqk(F(1, 2), F(3, 2), 2)
TRAPEZIUM = Quadrilateral.from_pqk(0, 1, 2)
SQUARE = Quadrilateral.from_pqk(0, 1, 1)
SPLITTABLE = Quadrilateral.from_pqk(F(1, 2), F(2, 3), F(5, 4))


def wq_of(quad, w):
    return WeightedQuadrilateral(quad, WeightedQuadrilateral.make(quad.pqk, w).weights)


# -- corner Hessians ---------------------------------------------------------------------------

def test_corner_hessian_against_symbolic_derivatives(rng):
    s, t = sympy.symbols("s t")
    for _ in range(5):
        wq = WeightedQuadrilateral.make(random_pqk(rng), random_weights(rng))
        fam = six_families(wq.quad)[rng.randrange(6)]
        fp = family_polynomial(wq, fam)
        expr = sum(sympy.Rational(c.numerator, c.denominator) * s**i * t**j for (i, j), c in fp.poly.terms.items())
        for corner in ((0, 0), (1, 0), (0, 1), (1, 1)):
            H = hessian_at_corner(fp, corner)
            at = {s: corner[0], t: corner[1]}
            assert H.h11 == sympy.diff(expr, s, 2).subs(at)
            assert H.h12 == sympy.diff(expr, s, t).subs(at)
            assert H.h22 == sympy.diff(expr, t, 2).subs(at)


def test_corner_hessian_against_exact_differences():
    """Second differences of a bidegree (3, 3) polynomial, extrapolated to step 0 exactly."""
    wq = WeightedQuadrilateral.make(GENERIC.pqk, (1, 0, 2, 1))
    fp = family_polynomial(wq, opposite_family(GENERIC, 2))
    H = hessian_at_corner(fp, (0, 0))

    def d2(h):
        f = fp.poly
        return ((f(h, 0) - 2 * f(0, 0) + f(-h, 0)) / h**2,
                (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4 * h**2),
                (f(0, h) - 2 * f(0, 0) + f(0, -h)) / h**2)

    # the central differences are even polynomials of degree <= 4 in h; Richardson removes h² and h⁴
    a, b, c = d2(F(1, 7)), d2(F(2, 7)), d2(F(3, 7))
    rich = [(15 * x - 6 * y + z) / 10 for x, y, z in zip(a, b, c)]
    assert rich == [H.h11, H.h12, H.h22]


def test_corner_must_be_a_box_vertex():
    fp = family_polynomial(wq_of(GENERIC, (1, 1, 1, 1)), opposite_family(GENERIC, 1))
    with pytest.raises(ValueError):
        hessian_at_corner(fp, (F(1, 2), 0))


# -- determinant quadratics ------------------------------------------------------------------------

def _rho(p, q, k):
    r1 = k*k*p*p + 2*k*k*p + 2*k*p*q + k*k + 2*k*p + 2*k*q + q*q + 2*k
    r2 = k*k*p*p + 2*k*k*p*q + 2*k*k*p + 2*k*p*q + 2*k*q*q + k*k + 2*k*q + q*q
    return r1, r2


def critical_value_closed_form(p, q, k):
    r1, r2 = _rho(p, q, k)
    return p**2 * k**4 * q * (k*p + k + q)**2 / (4 * r1 * r2)


def derivative_certificate(p, q, k):
    return (k**4*p**4 + 4*k**4*p**3 + 4*k**3*p**3*q + 6*k**4*p**2 + 4*k**3*p**3 + 16*k**3*p**2*q
            + 6*k**2*p**2*q**2 + 4*k**4*p + 12*k**3*p**2 + 16*k**3*p*q + 8*k**2*p**2*q + 16*k**2*p*q**2
            + 4*k*p*q**3 + k**4 + 12*k**3*p + 4*k**3*q + 16*k**2*p*q + 10*k**2*q**2 + 4*k*p*q**2
            + 4*k*q**3 + q**4 + 4*k**3 + 8*k**2*q + 4*k*q**2)


@settings(max_examples=15)
@given(pqks(), st.sampled_from([(1, 2), (2, 3), (3, 4), (4, 1), (1, 3), (2, 4)]), st.integers(1, 4))
def test_det_is_quadratic_in_r(pqk, pair, m):
    quad = Quadrilateral.from_pqk(*pqk)
    assert det_quadratic(quad, *pair, opposite_family(quad, m)).degree <= 2


def test_det_quadratic_critical_value_closed_form(rng):
    for _ in range(5):
        p, q, k = random_pqk(rng)
        if p == 0:
            continue
        quad = Quadrilateral.from_pqk(p, q, k)
        d = det_quadratic(quad, 2, 4, opposite_family(quad, 1))
        rc = -d.coeff(1) / (2 * d.coeff(2))
        assert d(rc) == critical_value_closed_form(p, q, k)
        assert (d.coeff(1) > 0) == (derivative_certificate(p, q, k) > 0)


# -- stable intervals -----------------------------------------------------------------------------

def test_parallelogram_opposite_pair_is_empty():
    si = stable_interval(SQUARE, 1, 3)
    assert si.case is PairCase.PARALLEL and si.empty
    assert "unstable for all r" in si.note


def test_non_parallel_opposite_pair_is_open_and_nonempty():
    si = stable_interval(GENERIC, 2, 4)
    assert si.case is PairCase.OPPOSITE and not si.empty
    assert not si.include0 and not si.include1
    assert 0 <= si.r0 < si.r1 <= 1


@pytest.mark.parametrize("quad", [GENERIC, TRAPEZIUM, SQUARE])
@pytest.mark.parametrize("pair", [(1, 2), (2, 3), (3, 4), (4, 1)])
def test_adjacent_pairs_are_nonempty(quad, pair):
    si = stable_interval(quad, *pair)
    assert si.case is PairCase.ADJACENT and not si.empty


def test_interval_agrees_with_classify(rng):
    for _ in range(4):
        quad = Quadrilateral.from_pqk(*random_pqk(rng))
        for pair in ((1, 2), (2, 3), (1, 3), (2, 4)):
            si = stable_interval(quad, *pair)
            for n in range(1, 12):
                r = F(n, 12)
                v = classify(WeightedQuadrilateral(quad, WeightedQuadrilateral.make(quad.pqk, pair_weights(*pair, r)).weights))
                assert v.stable == si.contains(r), (quad, pair, r, v.status)


def test_closed_adjacent_interval_non_openness():
    si = stable_interval(GENERIC, 1, 2)
    assert si.include0 and si.include1 and 0 < si.r0 and si.r1 < 1
    assert classify_pair_at(GENERIC, 1, 2, si.r0.copy()).stable
    assert classify_pair_at(GENERIC, 1, 2, si.r1.copy()).stable
    assert classify_pair_at(GENERIC, 1, 2, just_below(si.r0.copy())).status is Status.UNSTABLE
    assert classify_pair_at(GENERIC, 1, 2, just_above(si.r1.copy())).status is Status.UNSTABLE


# -- classify -------------------------------------------------------------------------------------

def test_canonical_square_is_stable():
    v = classify(wq_of(SQUARE, (1, 1, 1, 1)))
    assert v.status is Status.STABLE


def test_trapezium_with_parallel_support_is_semistable():
    v = classify(wq_of(TRAPEZIUM, (0, 1, 0, 3)))
    assert v.status is Status.STRICTLY_SEMISTABLE
    assert verify_witness(wq_of(TRAPEZIUM, (0, 1, 0, 3)), v)


@pytest.mark.parametrize("edge", [1, 2, 3, 4])
def test_single_edge_support_is_unstable(edge):
    w = [int(i == edge - 1) for i in range(4)]
    v = classify(wq_of(GENERIC, w))
    assert v.status is Status.UNSTABLE
    assert v.witness.value < 0 and verify_witness(wq_of(GENERIC, w), v)


def test_square_opposite_support_is_semistable():
    v = classify(wq_of(SQUARE, (1, 0, 2, 0)))
    assert v.status is Status.STRICTLY_SEMISTABLE


def test_one_zero_edge_is_tagged():
    v = classify(wq_of(GENERIC, (1, 1, 1, 0)))
    assert "derived criterion" in v.tags


@settings(max_examples=12)
@given(pqks(), st.lists(st.integers(0, 6), min_size=4, max_size=4).filter(any), st.integers(1, 50),
       st.integers(1, 7))
def test_scale_invariance_and_witnesses(pqk, w, num, den):
    wq = WeightedQuadrilateral.make(pqk, w)
    v1 = classify(wq)
    v2 = classify(wq.with_weights([F(num, den) * r for r in w]))
    assert v1.status is v2.status
    assert verify_witness(wq, v1)
    if v1.status is Status.STABLE:
        assert not float_oracle(wq, samples=2000).refuted


def test_oracle_refutes_unstable_weights(rng):
    for _ in range(10):
        wq = WeightedQuadrilateral.make(random_pqk(rng), random_weights(rng))
        v = classify(wq)
        orc = float_oracle(wq, samples=10_000)
        if orc.refuted:
            assert v.status is Status.UNSTABLE
        if v.stable:
            assert not orc.refuted


# -- scans ----------------------------------------------------------------------------------------

def test_count_components_on_toy_sets():
    assert count_components(set(), 4) == 0
    assert count_components({(4, 0, 0, 0), (3, 1, 0, 0)}, 4) == 1
    assert count_components({(4, 0, 0, 0), (0, 4, 0, 0)}, 4) == 2


@pytest.mark.parametrize("quad, components", [(GENERIC, 4), (TRAPEZIUM, 3), (SQUARE, 2)])
def test_scan_components(quad, components):
    res = scan_simplex(quad, 8)
    assert res.components == components
    assert stable_segments_convex(res)
    for pt, v in res.verdicts.items():
        if v.status is not Status.STABLE:
            assert verify_witness(WeightedQuadrilateral(quad, WeightedQuadrilateral.make(quad.pqk, res.weights(pt)).weights), v)


def test_parallelogram_scan_is_the_opposite_edges():
    res = scan_simplex(SQUARE, 6)
    expected = {pt for pt in res.verdicts if (pt[0] == pt[2] == 0) or (pt[1] == pt[3] == 0)}
    assert res.unstable == expected


def test_scan_rejects_coarse_grid():
    with pytest.raises(ValueError):
        scan_simplex(GENERIC, 3)


def test_parallel_scan_matches_serial():
    serial = scan_simplex(GENERIC, 5, workers=1)
    parallel = scan_simplex(GENERIC, 5, workers=2)
    assert {pt: v.status for pt, v in serial.verdicts.items()} == \
        {pt: v.status for pt, v in parallel.verdicts.items()}


# -- semistable splitting ---------------------------------------------------------------------------

def _segment(quad):
    """A stable weight and an unstable one on the far side of a strictly semistable weight."""
    fam = opposite_family(quad, 2)
    w = tangential_weights(quad, fam, F(1, 4), F(1, 2))
    ws = (F(1, 4),) * 4
    c = F(2)
    while any(a + c * (a - b) <= 0 for a, b in zip(w, ws)):
        c /= 2
    return ws, tuple(a + c * (a - b) for a, b in zip(w, ws))


@pytest.mark.slow
def test_split_located_instance():
    ws, wu = _segment(SPLITTABLE)
    inst = locate_semistable(SPLITTABLE, ws, wu)
    assert inst.verdict.status is Status.STRICTLY_SEMISTABLE
    assert inst.bracket[0] <= inst.parameter <= inst.bracket[1]
    pieces = semistable_split(inst.wq, inst.verdict)
    for piece in pieces:
        assert 0 in tuple(piece.weights)
        assert classify(piece).status is Status.STABLE


def test_split_rejects_opposite_zero_weights():
    wq = wq_of(SQUARE, (1, 0, 2, 0))
    with pytest.raises(ValueError, match="opposite"):
        semistable_split(wq)


def test_split_rejects_stable_input():
    with pytest.raises(ValueError, match="Stable"):
        semistable_split(wq_of(GENERIC, (1, 1, 1, 1)))
