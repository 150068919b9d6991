"""Symmetric 2x2 matrices over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .rational import Q, sign


class Definiteness(Enum):
    POSITIVE_DEFINITE = "PositiveDefinite"
    POSITIVE_SEMIDEFINITE = "PositiveSemidefinite"
    INDEFINITE = "Indefinite"
    NEGATIVE_SEMIDEFINITE = "NegativeSemidefinite"
    NEGATIVE_DEFINITE = "NegativeDefinite"

    @property
    def is_psd(self) -> bool:
        return self in (Definiteness.POSITIVE_DEFINITE, Definiteness.POSITIVE_SEMIDEFINITE)


@dataclass(frozen=True)
class Sym2:
    h11: Fraction
    h12: Fraction
    h22: Fraction

    def __post_init__(self):
        for name in ("h11", "h12", "h22"):
            object.__setattr__(self, name, Q(getattr(self, name)))

    @property
    def det(self) -> Fraction:
        return self.h11 * self.h22 - self.h12 * self.h12

    @property
    def trace(self) -> Fraction:
        return self.h11 + self.h22

    def quad(self, u, v):
        return self.h11 * u * u + 2 * self.h12 * u * v + self.h22 * v * v

    def congruent(self, a, b, c, d) -> "Sym2":
        """``M^T S M`` for ``M = [[a, b], [c, d]]``."""
        h11 = self.quad(a, c)
        h22 = self.quad(b, d)
        h12 = self.h11 * a * b + self.h12 * (a * d + b * c) + self.h22 * c * d
        return Sym2(h11, h12, h22)

    def rows(self) -> list[list[Fraction]]:
        return [[self.h11, self.h12], [self.h12, self.h22]]


def definiteness(m: Sym2) -> Definiteness:
    d = sign(m.det)
    a, c = sign(m.h11), sign(m.h22)
    if d < 0:
        return Definiteness.INDEFINITE
    if d > 0:
        return Definiteness.POSITIVE_DEFINITE if a > 0 else Definiteness.NEGATIVE_DEFINITE
    # singular: the nonzero diagonal entries share a sign (h11*h22 = h12^2)
    if a > 0 or c > 0:
        return Definiteness.POSITIVE_SEMIDEFINITE
    if a < 0 or c < 0:
        return Definiteness.NEGATIVE_SEMIDEFINITE
    # h11 = h22 = 0 forces h12 = 0
    return Definiteness.POSITIVE_SEMIDEFINITE
