# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled float kernels; same signatures and results as ``_kernels_py``."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


cdef inline double _tri_gh(double px, double py, double qx, double qy,
                           double ga, double gb, double gc,
                           double ha, double hb, double hc) nogil:
    cdef double area = (px * qy - py * qx) / 2
    cdef double g0 = gc, gp = ga * px + gb * py + gc, gq = ga * qx + gb * qy + gc
    cdef double h0 = hc, hp = ha * px + hb * py + hc, hq = ha * qx + hb * qy + hc
    return area / 12 * (g0 * h0 + gp * hp + gq * hq + (g0 + gp + gq) * (h0 + hp + hq))


def L_batch(vertices, masses, zeta, H):
    cdef cnp.ndarray[cnp.float64_t, ndim=2] V = np.ascontiguousarray(vertices, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] m = np.ascontiguousarray(masses, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] g = np.ascontiguousarray(zeta, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] Hm = np.ascontiguousarray(np.atleast_2d(H), dtype=np.float64)
    cdef Py_ssize_t n = V.shape[0], k = Hm.shape[0], r, i, j
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(k, dtype=np.float64)
    cdef double hv[64]
    cdef double ha, hb, lo, hi, t, px, py, qx, qy, hp, hq, total, hmax
    cdef double ex, ey, nx, ny
    cdef bint crossed, keep
    if n > 64:
        raise ValueError("at most 64 vertices")
    with nogil:
        for r in range(k):
            hmax = -1e308
            for i in range(n):
                hv[i] = Hm[r, 0] * V[i, 0] + Hm[r, 1] * V[i, 1] + Hm[r, 2]
                if hv[i] > hmax:
                    hmax = hv[i]
            total = 0
            crossed = False
            ex = ey = nx = ny = 0
            for i in range(n):
                j = (i + 1) % n
                ha = hv[i]
                hb = hv[j]
                t = ha / (ha - hb) if ha != hb else 0
                lo = t if (ha < 0 and hb >= 0) else 0
                hi = t if (ha >= 0 and hb < 0) else 1
                keep = (hi > lo and not (ha <= 0 and hb <= 0)) or (ha == 0 and hb == 0 and hmax > 0)
                px = V[i, 0] + lo * (V[j, 0] - V[i, 0])
                py = V[i, 1] + lo * (V[j, 1] - V[i, 1])
                qx = V[i, 0] + hi * (V[j, 0] - V[i, 0])
                qy = V[i, 1] + hi * (V[j, 1] - V[i, 1])
                if keep:
                    hp = ha + lo * (hb - ha)
                    hq = ha + hi * (hb - ha)
                    total += m[i] * (hi - lo) * (hp + hq) / 2
                    total -= _tri_gh(px, py, qx, qy, g[0], g[1], g[2], Hm[r, 0], Hm[r, 1], Hm[r, 2])
                if ha >= 0 and hb < 0:
                    ex = qx
                    ey = qy
                    crossed = True
                if ha < 0 and hb >= 0:
                    nx = px
                    ny = py
            if crossed:
                total -= _tri_gh(ex, ey, nx, ny, g[0], g[1], g[2], Hm[r, 0], Hm[r, 1], Hm[r, 2])
            out[r] = total
    return out


def bipoly_grid(exps_i, exps_j, coeffs, s, t):
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ei = np.ascontiguousarray(exps_i, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ej = np.ascontiguousarray(exps_j, dtype=np.int64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] S = np.ascontiguousarray(s, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] T = np.ascontiguousarray(t, dtype=np.float64)
    cdef Py_ssize_t a, b, q, e, na = S.shape[0], nb = T.shape[0], nt = c.shape[0]
    cdef Py_ssize_t di = (ei.max() if nt else 0) + 1, dj = (ej.max() if nt else 0) + 1
    cdef cnp.ndarray[cnp.float64_t, ndim=2] out = np.zeros((na, nb), dtype=np.float64)
    # power tables, then one row of coefficients in t per s-value
    cdef cnp.ndarray[cnp.float64_t, ndim=2] Sp = np.ones((na, di), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] Tp = np.ones((nb, dj), dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] row = np.zeros(dj, dtype=np.float64)
    cdef double acc
    with nogil:
        for a in range(na):
            for e in range(1, di):
                Sp[a, e] = Sp[a, e - 1] * S[a]
        for b in range(nb):
            for e in range(1, dj):
                Tp[b, e] = Tp[b, e - 1] * T[b]
        for a in range(na):
            for e in range(dj):
                row[e] = 0
            for q in range(nt):
                row[ej[q]] += c[q] * Sp[a, ei[q]]
            for b in range(nb):
                acc = 0
                for e in range(dj):
                    acc += row[e] * Tp[b, e]
                out[a, b] = acc
    return out
