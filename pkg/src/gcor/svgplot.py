"""Self-contained SVG heatmaps for dependence surfaces.

One rectangle per grid cell, a symmetric blue-white-red scale anchored at
-1, 0 and +1, axis tick labels and a colour legend.  Output is plain
string building with fixed number formatting, so identical surfaces give
byte-identical files.
"""

from __future__ import annotations

import numpy as np

from .grids import DependenceSurface

__all__ = ["diverging_color", "heatmap_svg"]

_NEG = (33, 102, 172)  # blue at -1
_MID = (247, 247, 247)  # white at 0
_POS = (178, 24, 43)  # red at +1
_DEGENERATE = "#bdbdbd"

_PLOT = 560.0
_LEFT, _TOP, _BOTTOM = 62.0, 28.0, 46.0
_LEGEND_W, _LEGEND_GAP = 18.0, 34.0
_RIGHT = 58.0


def _blend(a, b, t: float) -> str:
    rgb = tuple(round(ai + (bi - ai) * t) for ai, bi in zip(a, b))
    return "#%02x%02x%02x" % rgb


def diverging_color(value: float, degenerate: bool = False) -> str:
    """Colour for a correlation value in [-1, 1]."""
    if degenerate:
        return _DEGENERATE
    v = min(max(float(value), -1.0), 1.0)
    if v < 0.0:
        return _blend(_MID, _NEG, -v)
    return _blend(_MID, _POS, v)


def _ticks(axis: np.ndarray, max_ticks: int = 6) -> list[int]:
    if axis.size <= max_ticks:
        return list(range(axis.size))
    idx = np.linspace(0, axis.size - 1, max_ticks)
    return sorted(set(int(round(i)) for i in idx))


def heatmap_svg(surface: DependenceSurface, title: str | None = None) -> str:
    """Render the surface as an SVG heatmap string."""
    gx, gy = surface.shape
    cw = _PLOT / gx
    ch = _PLOT / gy
    width = _LEFT + _PLOT + _LEGEND_GAP + _LEGEND_W + _RIGHT
    height = _TOP + _PLOT + _BOTTOM
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0f}" height="{height:.0f}" '
        f'viewBox="0 0 {width:.0f} {height:.0f}">',
        f'<rect x="0" y="0" width="{width:.0f}" height="{height:.0f}" fill="#ffffff"/>',
    ]
    if title:
        out.append(
            f'<text x="{_LEFT + _PLOT / 2:.1f}" y="18" font-family="sans-serif" font-size="13" '
            f'text-anchor="middle">{title}</text>'
        )

    # cells: x index runs right, y index runs up
    out.append('<g id="cells">')
    for i in range(gx):
        x0 = _LEFT + i * cw
        for j in range(gy):
            y0 = _TOP + _PLOT - (j + 1) * ch
            color = diverging_color(surface.values[i, j], bool(surface.degenerate[i, j]))
            out.append(
                f'<rect x="{x0:.2f}" y="{y0:.2f}" width="{cw:.2f}" height="{ch:.2f}" fill="{color}"/>'
            )
    out.append("</g>")

    out.append('<g id="axes" font-family="sans-serif" font-size="10" fill="#000000">')
    out.append(
        f'<rect x="{_LEFT:.2f}" y="{_TOP:.2f}" width="{_PLOT:.2f}" height="{_PLOT:.2f}" '
        'fill="none" stroke="#000000" stroke-width="0.8"/>'
    )
    for i in _ticks(surface.axis_x):
        cx = _LEFT + (i + 0.5) * cw
        out.append(
            f'<line x1="{cx:.2f}" y1="{_TOP + _PLOT:.2f}" x2="{cx:.2f}" y2="{_TOP + _PLOT + 4:.2f}" '
            'stroke="#000000" stroke-width="0.8"/>'
        )
        out.append(
            f'<text x="{cx:.2f}" y="{_TOP + _PLOT + 16:.2f}" text-anchor="middle">'
            f"{surface.axis_x[i]:.4g}</text>"
        )
    for j in _ticks(surface.axis_y):
        cy = _TOP + _PLOT - (j + 0.5) * ch
        out.append(
            f'<line x1="{_LEFT - 4:.2f}" y1="{cy:.2f}" x2="{_LEFT:.2f}" y2="{cy:.2f}" '
            'stroke="#000000" stroke-width="0.8"/>'
        )
        out.append(
            f'<text x="{_LEFT - 7:.2f}" y="{cy + 3:.2f}" text-anchor="end">'
            f"{surface.axis_y[j]:.4g}</text>"
        )
    out.append("</g>")

    # legend: vertical gradient from -1 (bottom) to +1 (top)
    steps = 100
    lx = _LEFT + _PLOT + _LEGEND_GAP
    sh = _PLOT / steps
    out.append('<g id="legend" font-family="sans-serif" font-size="10" fill="#000000">')
    for k in range(steps):
        v = -1.0 + (k + 0.5) * 2.0 / steps
        y0 = _TOP + _PLOT - (k + 1) * sh
        out.append(
            f'<rect x="{lx:.2f}" y="{y0:.2f}" width="{_LEGEND_W:.2f}" height="{sh + 0.5:.2f}" '
            f'fill="{diverging_color(v)}"/>'
        )
    out.append(
        f'<rect x="{lx:.2f}" y="{_TOP:.2f}" width="{_LEGEND_W:.2f}" height="{_PLOT:.2f}" '
        'fill="none" stroke="#000000" stroke-width="0.8"/>'
    )
    for label, v in (("1", 1.0), ("0", 0.0), ("-1", -1.0)):
        cy = _TOP + _PLOT * (1.0 - (v + 1.0) / 2.0)
        out.append(
            f'<text x="{lx + _LEGEND_W + 5:.2f}" y="{cy + 3:.2f}" text-anchor="start">{label}</text>'
        )
    out.append(f'<text x="{lx + _LEGEND_W / 2:.2f}" y="{_TOP - 8:.2f}" text-anchor="middle">'
               f"{surface.measure}</text>")
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
