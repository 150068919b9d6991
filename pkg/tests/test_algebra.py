from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from quadstab.algebra import (BiPoly, Definiteness, SignKind, Sym2, UniPoly, count_roots, definiteness,
                              isolate_roots, positive_on_open_interval, positivity_report, real_roots,
                              sign_on_box, squarefree_decomposition)
from quadstab.algebra.rational import Q, fmt

from .conftest import rationals

z = UniPoly([0, 1])
F = Fraction


# -- rationals ---------------------------------------------------------------

def test_rational_parsing_round_trip():
    assert Q("3/4") == F(3, 4)
    assert Q(" -2 ") == -2
    assert fmt(F(-6, 4)) == "-3/2"
    assert fmt(F(5)) == "5"
    with pytest.raises(TypeError):
        Q(0.5)
    with pytest.raises(ValueError):
        Q("1/0")


# -- univariate positivity -------------------------------------------------------

def test_positive_with_roots_at_endpoints():
    assert positive_on_open_interval(z * (1 - z), 0, 1)


def test_negative_in_the_middle():
    assert not positive_on_open_interval((z - F(1, 2)) * (z - F(1, 2)) - 1, 0, 1)


def test_negated_quadratic_between_its_roots():
    p = -((z + 1) * (z + 2))
    assert p(F(-3, 2)) == F(1, 4)
    assert positive_on_open_interval(p, -2, -1)


def test_zero_polynomial_is_flagged():
    assert positivity_report(UniPoly(), 0, 1) == (False, True)
    assert not positive_on_open_interval(UniPoly(), 0, 1)


def test_interior_double_root_is_not_positive():
    assert not positive_on_open_interval((z - F(1, 3)) ** 2, 0, 1)


# -- root isolation ----------------------------------------------------------------

def test_double_roots_at_both_ends():
    p = z * z * (1 - z) * (1 - z)
    roots = isolate_roots(p, 0, 1)
    assert [(r.lo, r.hi, r.multiplicity) for r in roots] == [(0, 0, 2), (1, 1, 2)]


def test_two_simple_roots():
    roots = isolate_roots((z - F(1, 2)) * (z - F(1, 3)), 0, 1)
    assert len(roots) == 2 and all(r.multiplicity == 1 for r in roots)
    assert roots[0].lo <= F(1, 3) <= roots[0].hi < roots[1].lo <= F(1, 2) <= roots[1].hi


def test_negated_quadratic_roots():
    roots = isolate_roots(-((z + 1) * (z + 2)), -3, 0)
    assert [r.multiplicity for r in roots] == [1, 1]
    assert roots[0].lo <= -2 <= roots[0].hi and roots[1].lo <= -1 <= roots[1].hi


def test_irrational_roots_are_isolated():
    roots = isolate_roots(z * z - 2, -2, 2)
    assert len(roots) == 2
    for r in roots:
        assert r.lo < r.hi
        assert r.factor(r.lo) * r.factor(r.hi) < 0


def test_isolating_zero_polynomial_is_an_error():
    with pytest.raises(ValueError):
        isolate_roots(UniPoly(), 0, 1)


def test_squarefree_decomposition_multiplicities():
    p = (z - 1) ** 3 * (z + 2) ** 2 * (z - 5)
    mults = sorted(m for _, m in squarefree_decomposition(p))
    assert mults == [1, 2, 3]


# -- definiteness -----------------------------------------------------------------

@pytest.mark.parametrize("m, expected", [
    (Sym2(2, 0, 3), Definiteness.POSITIVE_DEFINITE),
    (Sym2(1, 1, 1), Definiteness.POSITIVE_SEMIDEFINITE),
    (Sym2(1, 2, 1), Definiteness.INDEFINITE),
    (Sym2(0, 1, 0), Definiteness.INDEFINITE),
    (Sym2(-1, 0, -4), Definiteness.NEGATIVE_DEFINITE),
    (Sym2(0, 0, -1), Definiteness.NEGATIVE_SEMIDEFINITE),
    (Sym2(0, 0, 0), Definiteness.POSITIVE_SEMIDEFINITE),
])
def test_definiteness_examples(m, expected):
    assert definiteness(m) is expected


# -- sign on a box ----------------------------------------------------------------

s, t = BiPoly.s(), BiPoly.t()


def test_sum_of_squares_positive_off_excluded_corner():
    assert sign_on_box(s * s + t * t, excluded_corners=[(0, 0)]).kind is SignKind.ALL_POSITIVE


def test_sum_of_squares_has_zero_at_origin():
    v = sign_on_box(s * s + t * t)
    assert v.kind is SignKind.HAS_ZERO and v.witness == (0, 0)


def test_negative_witness():
    v = sign_on_box(s * t - BiPoly.const(F(1, 2)))
    assert v.kind is SignKind.HAS_NEGATIVE
    assert v.value < 0 and (s * t)(*v.witness) - F(1, 2) == v.value


def test_interior_zero_found_exactly():
    f = (s - F(1, 3)) ** 2 + (t - F(2, 5)) ** 2
    v = sign_on_box(f)
    assert v.kind is SignKind.HAS_ZERO and v.witness == (F(1, 3), F(2, 5))


def test_identically_zero_flagged():
    assert sign_on_box(BiPoly()).kind is SignKind.IDENTICALLY_ZERO


def test_degenerate_box_rejected():
    with pytest.raises(ValueError):
        sign_on_box(s, box=((0, 0), (0, 1)))


# -- properties ----------------------------------------------------------------------

unipolys = st.lists(rationals(-5, 5, 6), min_size=1, max_size=6).map(UniPoly)


@given(unipolys, rationals(-3, 3), rationals(0, 3))
def test_positivity_agrees_with_sampling(p, a, width):
    b = a + width + F(1, 7)
    claimed = positive_on_open_interval(p, a, b)
    samples = [a + (b - a) * F(i, 1000) for i in range(1, 1000)]
    if any(p(x) <= 0 for x in samples):
        assert not claimed


@given(unipolys, rationals(-3, 3), rationals(0, 3))
def test_isolation_is_sound(p, a, width):
    b = a + width
    if p.is_zero():
        return
    roots = isolate_roots(p, a, b)
    assert sum(r.multiplicity for r in roots) <= p.degree
    for r in roots:
        if r.exact:
            assert r.factor(r.lo) == 0
        else:
            assert r.factor(r.lo) * r.factor(r.hi) < 0
            assert count_roots(r.factor, r.lo, r.hi) == 1
    for r1, r2 in zip(roots, roots[1:]):
        assert r1.hi < r2.lo or (r1.exact and r2.exact and r1.lo < r2.lo)
    assert len(real_roots(p, a, b)) == len(roots)


@given(rationals(), rationals(), rationals(),
       st.tuples(rationals(), rationals(), rationals(), rationals()))
def test_definiteness_class_is_congruence_invariant(a, b, c, m):
    if m[0] * m[3] - m[1] * m[2] == 0:
        return
    S = Sym2(a, b, c)

    def cls(x):
        d = definiteness(x)
        if d in (Definiteness.POSITIVE_DEFINITE, Definiteness.NEGATIVE_DEFINITE):
            return "definite"
        if d is Definiteness.INDEFINITE:
            return "indefinite"
        return "semidefinite"

    assert cls(S.congruent(*m)) == cls(S)


small_bipolys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)), rationals(-4, 4, 5),
                                max_size=6).map(BiPoly)


@given(small_bipolys, st.integers(1, 50), st.integers(1, 9))
def test_sign_on_box_is_scale_invariant(f, num, den):
    c = F(num, den)
    v1, v2 = sign_on_box(f), sign_on_box(f * c)
    assert v1.kind is v2.kind
    if v1.witness is not None and v1.kind is not SignKind.IDENTICALLY_ZERO:
        value = f(*v1.witness) * c
        if v1.kind is SignKind.HAS_NEGATIVE:
            assert value < 0
        elif v1.kind is SignKind.HAS_ZERO:
            assert value == 0


@given(small_bipolys)
def test_sign_on_box_against_grid(f):
    v = sign_on_box(f)
    grid = [f(F(i, 20), F(j, 20)) for i in range(21) for j in range(21)]
    if v.kind is SignKind.ALL_POSITIVE:
        assert min(grid) > 0
    if v.kind is SignKind.HAS_ZERO:
        assert min(grid) >= 0 and f(*v.witness) == 0
    if min(grid) < 0:
        assert v.kind is SignKind.HAS_NEGATIVE
