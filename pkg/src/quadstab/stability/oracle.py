"""Float refutation oracle: random simple PL functions evaluated in batch."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..functional import associated_affine
from ..kernels import L_batch
from ..polytope import WeightedPolygon, WeightedQuadrilateral


def random_creases(vertices: np.ndarray, n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` affine functions whose zero lines join two uniform random boundary points.

    Rows are scaled so that ``max |h|`` over the vertices is 1; signs are random.
    """
    V = np.asarray(vertices, dtype=float)
    m = len(V)
    seg = np.roll(V, -1, axis=0) - V
    lengths = np.hypot(seg[:, 0], seg[:, 1])
    cum = np.concatenate([[0.0], np.cumsum(lengths)])

    def points(u):
        pos = u * cum[-1]
        idx = np.clip(np.searchsorted(cum, pos, side="right") - 1, 0, m - 1)
        frac = (pos - cum[idx]) / lengths[idx]
        return V[idx] + frac[:, None] * seg[idx], idx

    p, ip = points(rng.random(n))
    q, iq = points(rng.random(n))
    # both ends on one edge give the edge line itself; move the second end one edge on
    same = ip == iq
    q[same] = V[(ip[same] + 2) % m]
    d = q - p
    H = np.stack([-d[:, 1], d[:, 0], d[:, 1] * p[:, 0] - d[:, 0] * p[:, 1]], axis=1)
    H *= rng.choice([-1.0, 1.0], size=n)[:, None]
    scale = np.max(np.abs(V @ H[:, :2].T + H[:, 2]), axis=0)
    return H / scale[:, None]


@dataclass(frozen=True)
class OracleResult:
    samples: int
    min_value: float
    argmin: tuple[float, float, float]
    violators: int
    tolerance: float

    @property
    def refuted(self) -> bool:
        return self.violators > 0

    def to_json(self) -> dict:
        return {"samples": self.samples, "min_L": self.min_value, "argmin_h": list(self.argmin),
                "violators": self.violators, "tolerance": self.tolerance}


def float_oracle(W: WeightedQuadrilateral | WeightedPolygon, samples: int = 10_000, seed: int = 0,
                 rel_tol: float = 1e-9) -> OracleResult:
    """Search for ``𝓛(max(0, h)) < 0`` among random creases in floating point.

    A sample counts as a violator only below ``-rel_tol`` times the total boundary mass.
    """
    poly = W.polygon() if isinstance(W, WeightedQuadrilateral) else W
    zeta = associated_affine(poly)
    V = np.array([[float(a), float(b)] for a, b in poly.polygon.vertices])
    masses = np.array([float(x) for x in poly.masses])
    H = random_creases(V, samples, np.random.default_rng(seed))
    vals = L_batch(V, masses, [float(zeta.a), float(zeta.b), float(zeta.c)], H)
    tol = rel_tol * float(masses.sum())
    k = int(np.argmin(vals))
    return OracleResult(samples, float(vals[k]), tuple(float(x) for x in H[k]), int(np.sum(vals < -tol)), tol)
