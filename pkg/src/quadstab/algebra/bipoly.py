"""Sparse bivariate polynomials in (s, t) with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .rational import Q, fmt
from .unipoly import UniPoly, interpolate


class BiPoly:
    """Immutable polynomial ``sum c[i, j] s^i t^j`` stored as ``{(i, j): c}``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None):
        clean: dict[tuple[int, int], Fraction] = {}
        for (i, j), c in (terms or {}).items():
            c = Q(c)
            if c != 0:
                clean[(int(i), int(j))] = c
        self.terms = clean

    @classmethod
    def const(cls, c) -> "BiPoly":
        return cls({(0, 0): c})

    @classmethod
    def s(cls) -> "BiPoly":
        return cls({(1, 0): 1})

    @classmethod
    def t(cls) -> "BiPoly":
        return cls({(0, 1): 1})

    @classmethod
    def from_grid(cls, grid: Sequence[Sequence]) -> "BiPoly":
        """From a dense coefficient grid ``grid[i][j]`` of ``s^i t^j``."""
        return cls({(i, j): c for i, row in enumerate(grid) for j, c in enumerate(row)})

    @classmethod
    def interpolate(cls, ss: Sequence, ts: Sequence, values) -> "BiPoly":
        """Tensor-product interpolation: ``values[a][b]`` is the value at ``(ss[a], ts[b])``."""
        rows = [interpolate(ts, values[a]) for a in range(len(ss))]
        out: dict[tuple[int, int], Fraction] = {}
        for j in range(len(ts)):
            col = interpolate(ss, [r.coeff(j) for r in rows])
            for i, c in enumerate(col.coeffs):
                out[(i, j)] = c
        return cls(out)

    # -- structure ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def bidegree(self) -> tuple[int, int]:
        if not self.terms:
            return (-1, -1)
        return (max(i for i, _ in self.terms), max(j for _, j in self.terms))

    @property
    def total_degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def coeff(self, i: int, j: int) -> Fraction:
        return self.terms.get((i, j), Fraction(0))

    def grid(self, m: int | None = None, n: int | None = None) -> list[list[Fraction]]:
        dm, dn = self.bidegree
        m = dm if m is None else m
        n = dn if n is None else n
        return [[self.coeff(i, j) for j in range(n + 1)] for i in range(m + 1)]

    def __call__(self, s, t):
        dm, dn = self.bidegree
        acc = 0
        for i in range(dm, -1, -1):
            row = 0
            for j in range(dn, -1, -1):
                row = row * t + self.terms.get((i, j), 0)
            acc = acc * s + row
        return acc

    def __eq__(self, other) -> bool:
        if not isinstance(other, BiPoly):
            other = BiPoly.const(other)
        return self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        if not self.terms:
            return "BiPoly(0)"
        parts = []
        for (i, j) in sorted(self.terms):
            mono = "".join(x for x in (f"*s^{i}" if i else "", f"*t^{j}" if j else ""))
            parts.append(fmt(self.terms[(i, j)]) + mono)
        return "BiPoly(" + " + ".join(parts) + ")"

    # -- arithmetic -------------------------------------------------------------
    @staticmethod
    def _lift(other) -> "BiPoly":
        return other if isinstance(other, BiPoly) else BiPoly.const(other)

    def __add__(self, other) -> "BiPoly":
        other = self._lift(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "BiPoly":
        return BiPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other) -> "BiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "BiPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "BiPoly":
        if not isinstance(other, BiPoly):
            c = Q(other)
            return BiPoly({k: c * v for k, v in self.terms.items()})
        out: dict[tuple[int, int], Fraction] = {}
        for (i, j), a in self.terms.items():
            for (k, l), b in other.terms.items():
                key = (i + k, j + l)
                out[key] = out.get(key, 0) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "BiPoly":
        out = BiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def diff_s(self) -> "BiPoly":
        return BiPoly({(i - 1, j): i * c for (i, j), c in self.terms.items() if i})

    def diff_t(self) -> "BiPoly":
        return BiPoly({(i, j - 1): j * c for (i, j), c in self.terms.items() if j})

    def gradient(self, s, t) -> tuple[Fraction, Fraction]:
        return self.diff_s()(s, t), self.diff_t()(s, t)

    def transpose(self) -> "BiPoly":
        return BiPoly({(j, i): c for (i, j), c in self.terms.items()})

    # -- substitutions ----------------------------------------------------------
    def at_s(self, s0) -> UniPoly:
        """Restriction ``t -> f(s0, t)``."""
        n = self.bidegree[1]
        return UniPoly(sum(c * s0**i for (i, jj), c in self.terms.items() if jj == j)
                       for j in range(n + 1))

    def at_t(self, t0) -> UniPoly:
        """Restriction ``s -> f(s, t0)``."""
        return self.transpose().at_s(t0)

    def compose_affine(self, a, b, c, d) -> "BiPoly":
        """Return ``f(a + b s, c + d t)``."""
        m, n = self.bidegree
        if m < 0:
            return self
        grid = self.grid()
        # substitute in t row by row, then in s
        rows = [UniPoly(row).compose_linear(c, d) for row in grid]
        out: dict[tuple[int, int], Fraction] = {}
        for j in range(n + 1):
            col = UniPoly(r.coeff(j) for r in rows).compose_linear(a, b)
            for i, v in enumerate(col.coeffs):
                out[(i, j)] = v
        return BiPoly(out)

    def along_line(self, s0, ds, t0, dt) -> UniPoly:
        """Restriction to the line ``(s0 + ds z, t0 + dt z)`` as a polynomial in z."""
        zs = UniPoly([s0, ds])
        zt = UniPoly([t0, dt])
        out = UniPoly()
        for (i, j), c in self.terms.items():
            out = out + (zs**i) * (zt**j) * c
        return out

    def order_at_origin(self) -> int:
        return min((i + j for i, j in self.terms), default=-1)

    def blowup(self) -> tuple["BiPoly", int]:
        """Substitute ``t = w s`` and divide by the largest power of ``s``.

        Returns ``(G, k)`` with ``f(s, w s) = s^k G(s, w)``.
        """
        k = self.order_at_origin()
        return BiPoly({(i + j - k, j): c for (i, j), c in self.terms.items()}), k

    def hessian(self, s, t):
        from .sym2 import Sym2
        fs, ft = self.diff_s(), self.diff_t()
        return Sym2(fs.diff_s()(s, t), fs.diff_t()(s, t), ft.diff_t()(s, t))

    def float_coeffs(self) -> list[tuple[int, int, float]]:
        return [(i, j, float(c)) for (i, j), c in self.terms.items()]


def monomials(terms: Iterable[tuple[int, int]]) -> BiPoly:
    return BiPoly({k: 1 for k in terms})
