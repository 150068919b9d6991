"""Corner Hessians of family polynomials and their determinant quadratics."""

from __future__ import annotations

from fractions import Fraction

from ..algebra.sym2 import Sym2
from ..algebra.unipoly import UniPoly, interpolate
from ..functional import CreaseFamily, FamilyPoly, family_basis, opposite_family
from ..polytope import Quadrilateral

R_NODES = (Fraction(0), Fraction(1, 2), Fraction(1))


def hessian_at_corner(fp: FamilyPoly, corner) -> Sym2:
    if tuple(corner) not in ((0, 0), (1, 0), (0, 1), (1, 1)):
        raise ValueError("corner must be a vertex of the unit square")
    return fp.poly.hessian(Fraction(corner[0]), Fraction(corner[1]))


def pair_weights(i: int, j: int, r) -> tuple:
    """Weights ``(1 - r) E_i + r E_j``."""
    w = [Fraction(0)] * 4
    w[i - 1] += 1 - r
    w[j - 1] += r
    return tuple(w)


def hessian_entries(quad: Quadrilateral, i: int, j: int, fam: CreaseFamily, corner=(0, 0)) -> tuple[UniPoly, ...]:
    """``h11, h12, h22`` of the corner Hessian along ``(1 - r) E_i + r E_j``; each is affine in r."""
    basis = family_basis(quad, fam)
    hi = basis[i - 1].hessian(*corner)
    hj = basis[j - 1].hessian(*corner)
    return tuple(UniPoly([a, b - a]) for a, b in ((hi.h11, hj.h11), (hi.h12, hj.h12), (hi.h22, hj.h22)))


def det_quadratic(quad: Quadrilateral, i: int, j: int, fam: CreaseFamily, corner=(0, 0)) -> UniPoly:
    """``det Hess φ_r`` at ``corner`` as an exact polynomial of degree <= 2 in r."""
    from ..functional import family_polynomial
    from ..polytope import BoundaryWeights, WeightedQuadrilateral

    def det_at(r):
        fp = family_polynomial(WeightedQuadrilateral(quad, BoundaryWeights(pair_weights(i, j, r))), fam)
        return hessian_at_corner(fp, corner).det

    poly = interpolate(R_NODES, [det_at(r) for r in R_NODES])
    if poly(Fraction(1, 3)) != det_at(Fraction(1, 3)):
        raise ArithmeticError("determinant is not quadratic in r")
    return poly


def corner_family(quad: Quadrilateral, m: int) -> CreaseFamily:
    """The opposite-pair family whose ``(0, 0)`` crease is ``E_m``."""
    return opposite_family(quad, m)
