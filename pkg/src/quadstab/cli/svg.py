"""Deterministic SVG plots of simplex scans and family-polynomial signs."""

from __future__ import annotations

from xml.sax.saxutils import escape

import numpy as np

from ..functional import FamilyPoly
from ..kernels import bipoly_grid
from ..stability.scan import ScanResult

COLORS = {"Stable": "#3b7dd8", "StrictlySemistable": "#e0a526", "Unstable": "#d8453b", "Unknown": "#888888"}

# images of the four simplex vertices; no three are collinear so every face stays visible
_CORNERS = np.array([[40.0, 360.0], [380.0, 380.0], [300.0, 40.0], [120.0, 150.0]])


def _doc(width: int, height: int, body: list[str]) -> str:
    head = (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}">')
    return "\n".join([head, f'<rect width="{width}" height="{height}" fill="white"/>', *body, "</svg>"]) + "\n"


def _legend(x: float, y: float, entries: list[tuple[str, str]]) -> list[str]:
    out = []
    for k, (label, color) in enumerate(entries):
        yy = y + 18 * k
        out.append(f'<rect x="{x:.1f}" y="{yy:.1f}" width="12" height="12" fill="{color}"/>')
        out.append(f'<text x="{x + 18:.1f}" y="{yy + 10:.1f}" font-family="sans-serif" font-size="12">'
                   f'{escape(label)}</text>')
    return out


def render_scan(res: ScanResult) -> str:
    """Grid weights in barycentric projection, coloured by verdict; non-stable points drawn last."""
    body = []
    for a in range(4):
        for b in range(a + 1, 4):
            p, q = _CORNERS[a], _CORNERS[b]
            body.append(f'<line x1="{p[0]:.1f}" y1="{p[1]:.1f}" x2="{q[0]:.1f}" y2="{q[1]:.1f}" '
                        'stroke="#bbbbbb" stroke-width="1"/>')
    for k, p in enumerate(_CORNERS):
        body.append(f'<text x="{p[0] + 6:.1f}" y="{p[1] - 6:.1f}" font-family="sans-serif" font-size="13">E{k + 1}</text>')
    pts = sorted(res.verdicts.items(), key=lambda kv: (kv[1].status.value != "Stable", kv[0]))
    r = max(1.5, 120.0 / res.N)
    for pt, v in pts:
        xy = (np.array(pt, dtype=float) / res.N) @ _CORNERS
        body.append(f'<circle cx="{xy[0]:.2f}" cy="{xy[1]:.2f}" r="{r:.2f}" '
                    f'fill="{COLORS[v.status.value]}" fill-opacity="0.8"/>')
    title = (f"p={res.quad.p} q={res.quad.q} k={res.quad.k}, N={res.N}, "
             f"unstable components: {res.components}")
    body.append(f'<text x="10" y="20" font-family="sans-serif" font-size="13">{escape(title)}</text>')
    body += _legend(420, 60, [(name, COLORS[name]) for name in ("Stable", "StrictlySemistable", "Unstable")])
    return _doc(580, 420, body)


def render_family(fp: FamilyPoly, cells: int = 40) -> str:
    """Sign of ``φ`` at the centres of a ``cells × cells`` grid on ``[0, 1]²``."""
    centers = (np.arange(cells) + 0.5) / cells
    terms = fp.poly.float_coeffs()
    if terms:
        ei, ej, c = (np.array(col) for col in zip(*terms))
        vals = bipoly_grid(ei, ej, c, centers, centers)
    else:
        vals = np.zeros((cells, cells))
    scale = float(np.max(np.abs(vals))) if vals.size else 0.0
    tol = 1e-12 * scale
    size, pad = 400.0, 40.0
    w = size / cells
    body = []
    for a in range(cells):
        for b in range(cells):
            v = vals[a, b]
            color = "#3b7dd8" if v > tol else "#d8453b" if v < -tol else "#e0a526"
            # s to the right, t upwards
            x, y = pad + a * w, pad + size - (b + 1) * w
            body.append(f'<rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{w:.2f}" fill="{color}"/>')
    body.append(f'<rect x="{pad}" y="{pad}" width="{size}" height="{size}" fill="none" stroke="black"/>')
    body.append(f'<text x="{pad}" y="25" font-family="sans-serif" font-size="13">'
                f'{escape("sign of phi, " + fp.family.label)}</text>')
    body.append(f'<text x="{pad + size / 2:.1f}" y="{pad + size + 25:.1f}" font-family="sans-serif" font-size="12">s</text>')
    body.append(f'<text x="15" y="{pad + size / 2:.1f}" font-family="sans-serif" font-size="12">t</text>')
    body += _legend(pad + size + 20, pad, [("phi > 0", "#3b7dd8"), ("phi = 0", "#e0a526"), ("phi < 0", "#d8453b")])
    return _doc(int(pad + size + 120), int(pad * 2 + size), body)


def render_svg(result: ScanResult | FamilyPoly) -> str:
    if isinstance(result, ScanResult):
        return render_scan(result)
    if isinstance(result, FamilyPoly):
        return render_family(result)
    raise TypeError(f"cannot render {type(result).__name__}")
