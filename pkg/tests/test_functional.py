import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from quadstab.algebra import BiPoly
from quadstab.functional import (L_affine, L_simple, SimplePL, adjacent_family, associated_affine,
                                 family_polynomial, family_polynomial_direct, integrate_affine_over_boundary,
                                 integrate_poly_over_polygon, opposite_family, six_families)
from quadstab.kernels import L_batch
from quadstab.polytope import AffineFn, ConvexPolygon, WeightedPolygon, WeightedQuadrilateral

from .conftest import pqks, random_pqk, random_weights, rationals, unit_rationals

F = Fraction
x, y = BiPoly.s(), BiPoly.t()
UNIT = ConvexPolygon(((0, 0), (1, 0), (1, 1), (0, 1)))
SQUARE = WeightedQuadrilateral.make((0, 1, 1), (1, 1, 1, 1))

weights = st.lists(st.integers(0, 12), min_size=4, max_size=4).filter(any).map(lambda w: [F(v) for v in w])


# -- integration -------------------------------------------------------------------------

def test_polygon_integrals():
    assert integrate_poly_over_polygon(UNIT, BiPoly.const(1)) == 1
    assert integrate_poly_over_polygon(UNIT, x) == F(1, 2)
    tri = ConvexPolygon(((0, 0), (1, 0), (0, 1)))
    assert integrate_poly_over_polygon(tri, x) == F(1, 6)
    assert integrate_poly_over_polygon(UNIT, x * x * y) == F(1, 6)


def test_boundary_integral_of_x_on_unit_square():
    assert integrate_affine_over_boundary(SQUARE, AffineFn(1, 0, 0)) == 2


def test_boundary_integral_edge_contributions():
    f = AffineFn(1, 0, 0)
    parts = [integrate_affine_over_boundary(SQUARE.with_weights([int(i == j) for j in range(4)]), f)
             for i in range(4)]
    assert parts == [F(1, 2), 1, F(1, 2), 0]


@given(pqks(), weights, st.integers(1, 30), rationals(), rationals(), rationals())
def test_boundary_integral_scales_with_weights(pqk, w, c, a, b, d):
    wq = WeightedQuadrilateral.make(pqk, w)
    f = AffineFn(a, b, d)
    assert integrate_affine_over_boundary(wq.with_weights([c * r for r in w]), f) == \
        c * integrate_affine_over_boundary(wq, f)


def test_restricted_boundary_integral():
    half = AffineFn(1, 0, F(-1, 2))
    # right half: 1/2 of E1 and E3 at mean x 3/4, all of E2 at x = 1
    assert integrate_affine_over_boundary(SQUARE, AffineFn(1, 0, 0), half) == F(3, 8) * 2 + 1


# -- associated affine function ------------------------------------------------------------

def test_unit_square_zeta_is_constant():
    assert associated_affine(SQUARE) == AffineFn(0, 0, 4)


def test_triangle_zeta_closed_form():
    # triangle with base on the diagonal y = 0 and measure r_i dy on the slanted sides
    c, r1, r2 = F(5, 2), F(2), F(1, 3)
    tri = ConvexPolygon(((-1, 0), (1, 0), (0, c)))
    zeta = associated_affine(WeightedPolygon(tri, (0, r1 * c, r2 * c)))
    assert zeta == AffineFn(3 * (r1 - r2), 3 * (r1 + r2) / c, 0)


@given(pqks(), weights, st.integers(1, 20))
def test_zeta_is_linear_and_exact(pqk, w, c):
    wq = WeightedQuadrilateral.make(pqk, w)
    zeta = associated_affine(wq)
    for f in (AffineFn(1, 0, 0), AffineFn(0, 1, 0), AffineFn(0, 0, 1)):
        assert L_affine(wq, f, zeta) == 0
    assert associated_affine(wq.with_weights([c * r for r in w])) == zeta * c


# -- 𝓛 on simple PL functions -------------------------------------------------------------------

def test_half_square_value():
    assert L_simple(SQUARE, SimplePL(AffineFn(1, 0, F(-1, 2)))) == F(1, 4)


def test_affine_and_outside_creases_vanish():
    assert L_simple(SQUARE, SimplePL(AffineFn(1, 0, 3))) == 0
    assert L_simple(SQUARE, SimplePL(AffineFn(1, 0, -3))) == 0
    assert L_simple(SQUARE, SimplePL(AffineFn(1, 1, 0))) == 0


def test_zero_affine_part_rejected():
    with pytest.raises(ValueError):
        SimplePL(AffineFn(0, 0, 0))


@given(pqks(), weights, rationals(), rationals(), rationals())
def test_both_sides_of_a_crease_agree(pqk, w, a, b, c):
    assume(a or b)
    wq = WeightedQuadrilateral.make(pqk, w)
    h = AffineFn(a, b, c)
    assert L_simple(wq, SimplePL(h)) == L_simple(wq, SimplePL(-h))


@given(pqks(), weights, weights, st.integers(0, 10), rationals(), rationals(), rationals())
def test_linear_in_the_weights(pqk, w0, w1, tn, a, b, c):
    assume(a or b)
    t = F(tn, 10)
    wt = [(1 - t) * u + t * v for u, v in zip(w0, w1)]
    h = SimplePL(AffineFn(a, b, c))
    L = lambda w: L_simple(WeightedQuadrilateral.make(pqk, w), h)  # noqa: E731
    assert L(wt) == (1 - t) * L(w0) + t * L(w1)


def test_L_kills_affine_functions_on_random_instances(rng):
    for _ in range(100):
        wq = WeightedQuadrilateral.make(random_pqk(rng), random_weights(rng))
        zeta = associated_affine(wq)
        f = AffineFn(*(F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(3)))
        assert L_affine(wq, f, zeta) == 0
        # a crease missing the interior makes max(0, h) affine on Q
        big = AffineFn(f.a, f.b, f.c + 10 ** 6) if f.a or f.b else AffineFn(0, 0, 1)
        assert L_simple(wq, big, zeta) == L_affine(wq, big, zeta) == 0


@given(pqks(), weights, st.lists(st.tuples(rationals(), rationals(), rationals()), min_size=1, max_size=8))
def test_exact_values_match_float_kernel(pqk, w, hs):
    hs = [h for h in hs if h[0] or h[1]]
    assume(hs)
    wq = WeightedQuadrilateral.make(pqk, w)
    poly = wq.polygon()
    zeta = associated_affine(poly)
    exact = [float(L_simple(poly, AffineFn(*h), zeta)) for h in hs]
    V = np.array([[float(a), float(b)] for a, b in poly.polygon.vertices])
    got = L_batch(V, [float(m) for m in poly.masses], [float(zeta.a), float(zeta.b), float(zeta.c)],
                  np.array([[float(c) for c in h] for h in hs]))
    scale = 1 + max(abs(e) for e in exact)
    assert np.allclose(got, exact, rtol=0, atol=1e-9 * scale)


# -- family polynomials --------------------------------------------------------------------------

@given(pqks(), weights, st.integers(0, 5), unit_rationals(13), unit_rationals(11))
def test_family_polynomial_interpolates_L(pqk, w, idx, s, t):
    wq = WeightedQuadrilateral.make(pqk, w)
    fam = six_families(wq.quad)[idx]
    fp = family_polynomial(wq, fam)
    assert fp(s, t) == L_simple(wq, fam.crease(s, t))
    assert fp.poly.bidegree[0] <= 3 and fp.poly.bidegree[1] <= 3 and fp.poly.total_degree <= 5


def test_basis_assembly_matches_direct_interpolation(rng):
    for _ in range(5):
        wq = WeightedQuadrilateral.make(random_pqk(rng), random_weights(rng))
        for fam in six_families(wq.quad):
            assert family_polynomial(wq, fam).poly == family_polynomial_direct(wq, fam).poly


def test_opposite_corners_are_affine(rng):
    for _ in range(10):
        wq = WeightedQuadrilateral.make(random_pqk(rng), random_weights(rng))
        for m in (1, 2, 3, 4):
            fp = family_polynomial(wq, opposite_family(wq.quad, m))
            assert fp(0, 0) == 0 and fp(1, 1) == 0


def test_adjacent_family_vanishes_on_box_edges(rng):
    wq = WeightedQuadrilateral.make(random_pqk(rng), random_weights(rng))
    for i in range(1, 5):
        fp = family_polynomial(wq, adjacent_family(wq.quad, i))
        assert fp.poly.at_s(0).is_zero() and fp.poly.at_t(0).is_zero()
        assert fp.reduced() * BiPoly({(1, 1): 1}) == fp.poly


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_zero_weight_corner_is_critical(m):
    rng = random.Random(m)
    for _ in range(10):
        w = random_weights(rng, zeros=[m - 1])
        wq = WeightedQuadrilateral.make(random_pqk(rng), w)
        fp = family_polynomial(wq, opposite_family(wq.quad, m))
        assert fp.poly.gradient(0, 0) == (0, 0)


def test_positive_weight_corner_is_not_critical():
    wq = WeightedQuadrilateral.make((F(1, 2), F(3, 2), 2), (1, 1, 1, 1))
    fp = family_polynomial(wq, opposite_family(wq.quad, 1))
    assert fp.poly.gradient(0, 0) != (0, 0)
