"""Compare the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--samples 100000] [--repeat 5]
"""

import argparse
import time

import numpy as np

from quadstab import _kernels_py
from quadstab.functional import associated_affine
from quadstab.polytope import WeightedQuadrilateral
from quadstab.stability.oracle import random_creases

try:
    from quadstab import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=100_000)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    wq = WeightedQuadrilateral.make(("1/2", "3/2", "2"), ("1", "1/3", "2", "1/5"))
    poly = wq.polygon()
    z = associated_affine(poly)
    V = np.array([[float(a), float(b)] for a, b in poly.polygon.vertices])
    m = np.array([float(x) for x in poly.masses])
    zeta = [float(z.a), float(z.b), float(z.c)]
    H = random_creases(V, args.samples, np.random.default_rng(0))

    s = np.linspace(0, 1, 200)
    phi = [(i, j, (-1.0) ** (i + j) / (1 + i + j)) for i in range(4) for j in range(4)]
    ei, ej, c = (np.array(col) for col in zip(*phi))

    backends = [("numpy", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])
    ref = None
    for name, mod in backends:
        t_l, vals = best_of(lambda: mod.L_batch(V, m, zeta, H), args.repeat)
        t_g, grid = best_of(lambda: mod.bipoly_grid(ei, ej, c, s, s), args.repeat)
        if ref is None:
            ref = (vals, grid)
        err = max(np.max(np.abs(vals - ref[0])), np.max(np.abs(grid - ref[1])))
        print(f"{name:7s} L_batch {args.samples} creases: {t_l * 1e3:8.2f} ms   "
              f"bipoly_grid 200x200: {t_g * 1e3:7.2f} ms   max diff vs numpy: {err:.1e}")
    if _kernels is None:
        print("compiled kernels not available (build with: pip install -e . --no-build-isolation)")


if __name__ == "__main__":
    main()
