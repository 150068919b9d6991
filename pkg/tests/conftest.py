import random
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def rationals(lo=-8, hi=8, max_den=12):
    return st.builds(lambda n, d: Fraction(n, d), st.integers(lo * max_den, hi * max_den),
                     st.integers(1, max_den))


@st.composite
def pqks(draw):
    """Random canonical parameters satisfying the convexity condition."""
    q = Fraction(draw(st.integers(1, 40)), draw(st.integers(1, 8)))
    k = Fraction(draw(st.integers(1, 40)), draw(st.integers(1, 8)))
    lower = max(-q / k, Fraction(-1))
    p = lower + Fraction(draw(st.integers(1, 60)), draw(st.integers(1, 12)))
    return p, q, k


def random_pqk(rng: random.Random):
    q = Fraction(rng.randint(1, 40), rng.randint(1, 8))
    k = Fraction(rng.randint(1, 40), rng.randint(1, 8))
    p = max(-q / k, Fraction(-1)) + Fraction(rng.randint(1, 60), rng.randint(1, 12))
    return p, q, k


def random_weights(rng: random.Random, zeros=()):
    w = [Fraction(rng.randint(1, 30), rng.randint(1, 10)) for _ in range(4)]
    for i in zeros:
        w[i] = Fraction(0)
    return w


@pytest.fixture
def rng():
    return random.Random(20240611)


def unit_rationals(max_den=13):
    """Rationals in [0, 1]."""
    return st.integers(1, max_den).flatmap(lambda d: st.integers(0, d).map(lambda n: Fraction(n, d)))


def just_below(r, eps=Fraction(1, 10**8)):
    """A rational strictly below the real algebraic ``r`` and within ``eps`` of it."""
    v = r.rational_value()
    if v is not None:
        return v - eps
    r.refine_to(eps)
    return r.lo


def just_above(r, eps=Fraction(1, 10**8)):
    v = r.rational_value()
    if v is not None:
        return v + eps
    r.refine_to(eps)
    return r.hi


# -- ambitoric fixtures --------------------------------------------------------------------------

def random_extremal(rng: random.Random):
    """Random positive-type data with one weight tuned so that the solution is extremal."""
    from quadstab.ambitoric import AmbitoricData, extremal_weight, forward_polygon

    while True:
        a0 = Fraction(rng.randint(-12, -2), rng.randint(1, 2))
        ai = a0 + Fraction(rng.randint(1, 8), rng.randint(1, 3))
        b0 = ai + Fraction(rng.randint(1, 8), rng.randint(1, 3))
        bi = b0 + Fraction(rng.randint(1, 8), rng.randint(1, 3))
        q = (Fraction(rng.randint(-3, 3), rng.randint(1, 3)), Fraction(rng.randint(-3, 3), rng.randint(1, 3)),
             Fraction(rng.randint(-10, 10), rng.randint(1, 3)))
        w = [Fraction(2) ** rng.randint(-8, 8) for _ in range(3)] + [Fraction(0)]
        idx = rng.randrange(4)
        w[3], w[idx] = w[idx], w[3]
        try:
            d = AmbitoricData.make((a0, ai), (b0, bi), q, w)
            r = extremal_weight(d, idx)
            if r is None:
                continue
            w[idx] = r
            d = d.with_weights(w)
            forward_polygon(d)
        except (ValueError, ArithmeticError):
            # degenerate q: singular moment map or a crooked edge image
            continue
        return d


# extremal instances whose formal solution is not positive (found by random search)
NON_POSITIVE_EXTREMAL = [
    ((-7, -1), (3, Fraction(21, 2)), (-1, Fraction(-1, 3), 19), (Fraction(1, 16), 0, 8, Fraction(236426829, 1649408))),
    ((-28, -17), (-9, -1), (8, 0, Fraction(-37, 3)), (0, 0, 2, Fraction(99856378382, 4046699570231))),
    ((Fraction(-1, 3), 1), (10, 20), (Fraction(-5, 3), 9, Fraction(-4, 3)),
     (Fraction(18764297733724, 406993173075), 256, 0, Fraction(1, 4))),
    ((-15, 1), (2, 7), (Fraction(-5, 3), 0, 43), (2, Fraction(1, 16), Fraction(33972848978091, 67473821696), 256)),
]

EXTREMAL = ((-3, -1), (1, 2), (1, Fraction(1, 3), 7), (1, 2, 1, Fraction(230681, 168148)))
GOLDEN = ((-2, -1), (1, 2), (0, 0, 1), (1, 1, 1, 1))
