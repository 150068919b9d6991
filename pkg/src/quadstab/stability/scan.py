"""Classification over a barycentric grid of the weight simplex."""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from ..polytope import BoundaryWeights, Quadrilateral, WeightedQuadrilateral
from .classify import Status, Verdict, classify

GridPoint = tuple[int, int, int, int]


def simplex_grid(N: int) -> list[GridPoint]:
    """Integer points ``(a, b, c, d)`` with ``a + b + c + d = N``."""
    return [(a, b, c, N - a - b - c)
            for a in range(N + 1) for b in range(N + 1 - a) for c in range(N + 1 - a - b)]


def neighbours(pt: GridPoint, N: int):
    """Lattice neighbours at L1 distance 2/N (one unit moved between two coordinates)."""
    for i in range(4):
        if pt[i] == 0:
            continue
        for j in range(4):
            if i != j:
                q = list(pt)
                q[i] -= 1
                q[j] += 1
                yield tuple(q)


def count_components(points: set[GridPoint], N: int) -> int:
    seen: set[GridPoint] = set()
    count = 0
    for start in sorted(points):
        if start in seen:
            continue
        count += 1
        stack = [start]
        seen.add(start)
        while stack:
            cur = stack.pop()
            for nb in neighbours(cur, N):
                if nb in points and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
    return count


@dataclass
class ScanResult:
    quad: Quadrilateral
    N: int
    verdicts: dict = field(default_factory=dict)
    components: int = 0

    @property
    def unstable(self) -> set[GridPoint]:
        return {pt for pt, v in self.verdicts.items() if v.status is not Status.STABLE}

    def weights(self, pt: GridPoint) -> tuple[Fraction, ...]:
        return tuple(Fraction(x, self.N) for x in pt)

    def counts(self) -> dict[str, int]:
        out: dict[str, int] = {}
        for v in self.verdicts.values():
            out[v.status.value] = out.get(v.status.value, 0) + 1
        return dict(sorted(out.items()))


def _classify_point(args) -> tuple[GridPoint, Verdict]:
    pqk, N, pt = args
    wq = WeightedQuadrilateral(Quadrilateral.from_pqk(*pqk), BoundaryWeights(tuple(Fraction(x, N) for x in pt)))
    return pt, classify(wq)


def worker_count() -> int:
    env = os.environ.get("QUADSTAB_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ValueError("QUADSTAB_THREADS must be a positive integer") from None
    return 1


def scan_simplex(quad: Quadrilateral, N: int, workers: int | None = None) -> ScanResult:
    """Classify every grid weight with denominators ``N`` and count unstable components."""
    if N < 4:
        raise ValueError("resolution N must be at least 4")
    pts = [pt for pt in simplex_grid(N) if any(pt)]
    workers = worker_count() if workers is None else workers
    jobs = [(quad.pqk, N, pt) for pt in pts]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_classify_point, jobs, chunksize=32))
    else:
        results = [_classify_point(j) for j in jobs]
    out = ScanResult(quad, N)
    for pt, v in sorted(results):
        out.verdicts[pt] = v
    out.components = count_components(out.unstable, N)
    return out


def stable_segments_convex(result: ScanResult) -> bool:
    """Every grid point on a lattice segment between two stable grid points is stable."""
    from math import gcd

    stable = [pt for pt, v in result.verdicts.items() if v.status is Status.STABLE]
    stable_set = set(stable)
    for a_idx, a in enumerate(stable):
        for b in stable[a_idx + 1:]:
            diff = [y - x for x, y in zip(a, b)]
            g = 0
            for d in diff:
                g = gcd(g, abs(d))
            for k in range(1, g):
                pt = tuple(x + d * k // g for x, d in zip(a, diff))
                if pt not in stable_set:
                    return False
    return True
