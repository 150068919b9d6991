"""Real root isolation, exact sign decisions and real algebraic numbers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Sequence

from .rational import Q, sign
from .unipoly import UniPoly, gcd, squarefree_decomposition, squarefree_part


def sturm_sequence(p: UniPoly) -> list[UniPoly]:
    seq = [p, p.deriv()]
    while not seq[-1].is_zero():
        seq.append(-(seq[-2] % seq[-1]))
    return seq[:-1]


def _variations(seq: Sequence[UniPoly], x) -> int:
    signs = [s for s in (sign(f(x)) for f in seq) if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: UniPoly, a, b, seq=None) -> int:
    """Number of distinct real roots of ``p`` in the half-open ``(a, b]``."""
    if p.degree <= 0:
        return 0
    seq = seq or sturm_sequence(squarefree_part(p))
    return _variations(seq, a) - _variations(seq, b)


def count_roots_open(p: UniPoly, a, b) -> int:
    """Distinct real roots in the open interval ``(a, b)``."""
    n = count_roots(p, a, b)
    return n - 1 if p(b) == 0 else n


@dataclass(frozen=True)
class RootReport:
    """Isolating interval ``[lo, hi]`` (``lo == hi`` for an exact rational root)."""

    lo: Fraction
    hi: Fraction
    multiplicity: int
    factor: UniPoly

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def algebraic(self) -> "RealAlgebraic":
        if self.exact:
            return RealAlgebraic.rational(self.lo)
        return RealAlgebraic(self.factor, self.lo, self.hi)


def _isolate_squarefree(f: UniPoly, a: Fraction, b: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Isolate the roots of square-free ``f`` in the closed ``[a, b]``."""
    seq = sturm_sequence(f)
    out: list[tuple[Fraction, Fraction]] = []
    if f(a) == 0:
        out.append((a, a))
    stack = [(a, b)]
    while stack:
        lo, hi = stack.pop()
        n = _variations(seq, lo) - _variations(seq, hi)
        if n == 0:
            continue
        if n == 1 and f(hi) == 0:
            out.append((hi, hi))
            continue
        # a root at lo belongs to another bracket; keep bisecting until f changes sign strictly
        if n == 1 and f(lo) != 0:
            out.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        stack.append((lo, mid))
        stack.append((mid, hi))
    # a root exactly at a split point is reported by the left half as (mid, mid)
    return sorted(set(out))


def isolate_roots(p: UniPoly, a, b) -> list[RootReport]:
    """All real roots of ``p`` in ``[a, b]`` with exact multiplicities."""
    a, b = Q(a), Q(b)
    if p.is_zero():
        raise ValueError("cannot isolate the roots of the zero polynomial")
    if a > b:
        raise ValueError("empty interval")
    out: list[RootReport] = []
    for factor, mult in squarefree_decomposition(p):
        for lo, hi in _isolate_squarefree(factor, a, b):
            out.append(RootReport(lo, hi, mult, factor))
    return _separate(out)


def _halve(r: RootReport) -> RootReport:
    f, lo, hi = r.factor, r.lo, r.hi
    mid = (lo + hi) / 2
    fm = f(mid)
    if fm == 0:
        return RootReport(mid, mid, r.multiplicity, f)
    if (f(lo) > 0) != (fm > 0):
        return RootReport(lo, mid, r.multiplicity, f)
    return RootReport(mid, hi, r.multiplicity, f)


def _separate(roots: list[RootReport]) -> list[RootReport]:
    """Refine brackets until consecutive reports are disjoint closed intervals."""
    roots = sorted(roots, key=lambda r: (r.lo, r.hi))
    while True:
        for k in range(len(roots) - 1):
            r1, r2 = roots[k], roots[k + 1]
            if r1.hi >= r2.lo and not (r1.exact and r2.exact):
                wider = k if r1.hi - r1.lo >= r2.hi - r2.lo else k + 1
                roots[wider] = _halve(roots[wider])
                roots.sort(key=lambda r: (r.lo, r.hi))
                break
        else:
            return roots


def positive_on_open_interval(p: UniPoly, a, b) -> bool:
    """True iff ``p(z) > 0`` for every ``z`` in the open ``(a, b)``.

    The zero polynomial is reported as not positive; use
    :func:`positivity_report` to see the "identically zero" flag.
    """
    return positivity_report(p, a, b)[0]


def positivity_report(p: UniPoly, a, b) -> tuple[bool, bool]:
    """``(positive, identically_zero)`` for ``p`` on the open ``(a, b)``."""
    a, b = Q(a), Q(b)
    if not a < b:
        raise ValueError("need a < b")
    if p.is_zero():
        return False, True
    if count_roots_open(p, a, b) > 0:
        return False, False
    return p((a + b) / 2) > 0, False


@total_ordering
class RealAlgebraic:
    """A real root of a square-free rational polynomial, kept as an isolating
    interval ``(lo, hi]`` that is refined on demand.

    Rationals are represented by a degree-one defining polynomial and a
    degenerate interval, so every comparison stays exact.
    """

    __slots__ = ("poly", "lo", "hi", "_seq")

    def __init__(self, poly: UniPoly, lo, hi):
        self.poly = squarefree_part(poly)
        self.lo, self.hi = Q(lo), Q(hi)
        self._seq = None
        if self.lo != self.hi and count_roots(self.poly, self.lo, self.hi) != 1:
            raise ValueError("interval does not isolate exactly one root")
        if self.lo == self.hi and self.poly(self.lo) != 0:
            raise ValueError("rational value is not a root")

    @classmethod
    def rational(cls, value) -> "RealAlgebraic":
        v = Q(value)
        return cls(UniPoly([-v, 1]), v, v)

    @property
    def is_rational(self) -> bool:
        return self.lo == self.hi

    def rational_value(self) -> Fraction | None:
        if self.lo == self.hi:
            return self.lo
        if self.poly.degree == 1:
            v = -self.poly.coeff(0) / self.poly.coeff(1)
            self.lo = self.hi = v
            return v
        return None

    def _sturm(self):
        if self._seq is None:
            self._seq = sturm_sequence(self.poly)
        return self._seq

    def refine(self, steps: int = 1) -> None:
        for _ in range(steps):
            if self.lo == self.hi:
                return
            mid = (self.lo + self.hi) / 2
            if self.poly(mid) == 0:
                self.lo = self.hi = mid
                return
            if _variations(self._sturm(), self.lo) - _variations(self._sturm(), mid) == 1:
                self.hi = mid
            else:
                self.lo = mid

    def refine_to(self, width: Fraction) -> None:
        while self.hi - self.lo > width:
            self.refine()

    def copy(self) -> "RealAlgebraic":
        out = RealAlgebraic.__new__(RealAlgebraic)
        out.poly, out.lo, out.hi, out._seq = self.poly, self.lo, self.hi, self._seq
        return out

    def __float__(self) -> float:
        self.refine_to(Fraction(1, 2**60))
        return float((self.lo + self.hi) / 2)

    def sign_of(self, g: UniPoly) -> int:
        """Exact sign of ``g`` evaluated at this number."""
        if g.is_zero():
            return 0
        v = self.rational_value()
        if v is not None:
            return sign(g(v))
        common = gcd(self.poly, g)
        if common.degree > 0 and count_roots(common, self.lo, self.hi) == 1:
            return 0
        while count_roots(g, self.lo, self.hi) > 0 or g(self.hi) == 0:
            self.refine()
            if self.lo == self.hi:
                return sign(g(self.lo))
        return sign(g((self.lo + self.hi) / 2))

    def _cmp(self, other) -> int:
        if not isinstance(other, RealAlgebraic):
            other = RealAlgebraic.rational(other)
        a, b = self.rational_value(), other.rational_value()
        if a is not None and b is not None:
            return sign(a - b)
        if b is not None:
            return self.sign_of(UniPoly([-b, 1]))
        if a is not None:
            return -other.sign_of(UniPoly([-a, 1]))
        common = gcd(self.poly, other.poly)
        if common.degree > 0:
            lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
            if lo < hi and count_roots(common, lo, hi) == 1 and \
                    count_roots(common, self.lo, self.hi) == 1 and \
                    count_roots(common, other.lo, other.hi) == 1:
                return 0
        while True:
            if self.hi <= other.lo:
                return -1
            if other.hi <= self.lo:
                return 1
            self.refine()
            other.refine()
            if self.is_rational or other.is_rational:
                return self._cmp(other)

    def __eq__(self, other) -> bool:
        return self._cmp(other) == 0

    def __lt__(self, other) -> bool:
        return self._cmp(other) < 0

    def __hash__(self):  # pragma: no cover - mutable refinement state
        raise TypeError("RealAlgebraic is unhashable")

    def __repr__(self) -> str:
        v = self.rational_value()
        if v is not None:
            return f"RealAlgebraic({v})"
        return f"RealAlgebraic(root of {self.poly} in ({self.lo}, {self.hi}], ~{float(self.copy()):.12g})"

    def between_rational(self, other: "RealAlgebraic") -> Fraction:
        """A rational strictly between ``self < other``."""
        if not self < other:
            raise ValueError("need self < other")
        while True:
            lo_hi = self.hi
            hi_lo = other.lo
            if lo_hi < hi_lo:
                return (lo_hi + hi_lo) / 2
            if self.is_rational and other.is_rational:
                return (self.lo + other.lo) / 2
            if self.is_rational and lo_hi == hi_lo:
                # other.lo == self value; other is irrational and above it
                other.refine()
                continue
            self.refine()
            other.refine()


def real_roots(p: UniPoly, a, b) -> list[RealAlgebraic]:
    """Distinct real roots in ``[a, b]`` as algebraic numbers (sorted)."""
    return [r.algebraic() for r in isolate_roots(p, a, b)]


def root_bound(p: UniPoly) -> Fraction:
    """Cauchy bound: every real root lies in ``[-B, B]``."""
    if p.degree < 1:
        return Fraction(1)
    return 1 + max(abs(c / p.lead) for c in p.coeffs[:-1])


def all_real_roots(p: UniPoly) -> list[RealAlgebraic]:
    if p.degree < 1:
        return []
    b = root_bound(p)
    return real_roots(p, -b, b)
