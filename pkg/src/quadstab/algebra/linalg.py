"""Gaussian elimination over the rationals."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _rref(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    A = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return A, pivots


def solve_linear(M: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """The unique solution of ``M v = rhs``; raises if ``M`` is singular."""
    n = len(M)
    rows = [[Fraction(v) for v in row] + [Fraction(b)] for row, b in zip(M, rhs)]
    A, pivots = _rref(rows, len(M[0]))
    if len(pivots) < len(M[0]) or len(M[0]) != n:
        raise ArithmeticError("singular linear system")
    return [A[i][-1] for i in range(n)]


def nullspace(M: Sequence[Sequence]) -> list[list[Fraction]]:
    """A basis of ``{v : M v = 0}``."""
    ncols = len(M[0])
    A, pivots = _rref([[Fraction(v) for v in row] for row in M], ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -A[i][f]
        basis.append(v)
    return basis
