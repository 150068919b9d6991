"""Numpy implementations of the float kernels, used when the compiled extension is missing."""

from __future__ import annotations

import numpy as np


def _tri_gh(px, py, qx, qy, g, h):
    """Signed ``∫ g h`` over the triangle ``(0, p, q)`` for affine ``g = (a, b, c)`` and ``h`` (columns)."""
    area = (px * qy - py * qx) / 2
    g0, gp, gq = g[2], g[0] * px + g[1] * py + g[2], g[0] * qx + g[1] * qy + g[2]
    h0 = h[:, 2]
    hp = h[:, 0] * px + h[:, 1] * py + h[:, 2]
    hq = h[:, 0] * qx + h[:, 1] * qy + h[:, 2]
    return area / 12 * (g0 * h0 + gp * hp + gq * hq + (g0 + gp + gq) * (h0 + hp + hq))


def L_batch(vertices, masses, zeta, H):
    """``𝓛(max(0, h))`` for every row ``h = (a, b, c)`` of ``H``.

    ``vertices`` is a counterclockwise convex polygon, ``masses[i]`` the
    boundary mass of the edge leaving vertex ``i``.  The clipped region is
    integrated as a fan from the origin over its boundary: the kept part of
    each edge, then the crease from the exit point back to the entry point.
    """
    V = np.asarray(vertices, dtype=float)
    m = np.asarray(masses, dtype=float)
    g = np.asarray(zeta, dtype=float)
    H = np.atleast_2d(np.asarray(H, dtype=float))
    n, k = len(V), len(H)
    hv = V @ H[:, :2].T + H[:, 2]  # (n, k): h at each vertex
    interior = np.zeros(k)
    boundary = np.zeros(k)
    exit_pt = np.zeros((k, 2))
    entry_pt = np.zeros((k, 2))
    crossed = np.zeros(k, dtype=bool)
    for i in range(n):
        a, b = V[i], V[(i + 1) % n]
        ha, hb = hv[i], hv[(i + 1) % n]
        with np.errstate(divide="ignore", invalid="ignore"):
            tcut = np.where(ha != hb, ha / (ha - hb), 0.0)
        lo = np.where((ha < 0) & (hb >= 0), tcut, 0.0)
        hi = np.where((ha >= 0) & (hb < 0), tcut, 1.0)
        # an edge lying on the crease bounds the region only if something is positive
        keep = ((hi > lo) & ~((ha <= 0) & (hb <= 0))) | ((ha == 0) & (hb == 0) & (hv.max(axis=0) > 0))
        px, py = a[0] + lo * (b[0] - a[0]), a[1] + lo * (b[1] - a[1])
        qx, qy = a[0] + hi * (b[0] - a[0]), a[1] + hi * (b[1] - a[1])
        hp, hq = ha + lo * (hb - ha), ha + hi * (hb - ha)
        boundary += np.where(keep, m[i] * (hi - lo) * (hp + hq) / 2, 0.0)
        interior += np.where(keep, _tri_gh(px, py, qx, qy, g, H), 0.0)
        leaving = (ha >= 0) & (hb < 0)
        entering = (ha < 0) & (hb >= 0)
        exit_pt[leaving] = np.stack([qx, qy], axis=1)[leaving]
        entry_pt[entering] = np.stack([px, py], axis=1)[entering]
        crossed |= leaving
    crease = _tri_gh(exit_pt[:, 0], exit_pt[:, 1], entry_pt[:, 0], entry_pt[:, 1], g, H)
    interior += np.where(crossed, crease, 0.0)
    return boundary - interior


def bipoly_grid(exps_i, exps_j, coeffs, s, t):
    """Values of ``Σ c s^i t^j`` on the tensor grid ``s × t``."""
    s = np.asarray(s, dtype=float)
    t = np.asarray(t, dtype=float)
    out = np.zeros((len(s), len(t)))
    for i, j, c in zip(exps_i, exps_j, coeffs):
        out += c * np.outer(s ** int(i), t ** int(j))
    return out
