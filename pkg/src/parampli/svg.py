"""Bare-bones SVG line plots for quick inspection of CLI output."""
from __future__ import annotations

import math
from xml.sax.saxutils import escape

WIDTH, HEIGHT, PAD = 640, 400, 48
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")
DASHES = ("", "6,4", "2,3", "8,3,2,3", "1,1")


def polyline_svg(series: dict[str, tuple[list[float], list[float]]], xlabel: str = "",
                 ylabel: str = "") -> str:
    """One polyline per labelled ``(x, y)`` series on shared autoscaled axes.

    Non-finite points are dropped.
    """
    pts = {k: [(x, y) for x, y in zip(*v) if math.isfinite(x) and math.isfinite(y)]
           for k, v in series.items()}
    xs = [p[0] for v in pts.values() for p in v] or [0.0, 1.0]
    ys = [p[1] for v in pts.values() for p in v] or [0.0, 1.0]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    if x1 == x0:
        x1 = x0 + 1.0
    if y1 == y0:
        y1 = y0 + 1.0

    def sx(x):
        return PAD + (x - x0) / (x1 - x0) * (WIDTH - 2 * PAD)

    def sy(y):
        return HEIGHT - PAD - (y - y0) / (y1 - y0) * (HEIGHT - 2 * PAD)

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
           f'viewBox="0 0 {WIDTH} {HEIGHT}">',
           '<rect width="100%" height="100%" fill="white"/>',
           f'<rect x="{PAD}" y="{PAD}" width="{WIDTH - 2 * PAD}" height="{HEIGHT - 2 * PAD}" '
           'fill="none" stroke="black"/>',
           f'<text x="{PAD}" y="{HEIGHT - 12}" font-size="11">{x0:.4g}</text>',
           f'<text x="{WIDTH - PAD}" y="{HEIGHT - 12}" font-size="11" text-anchor="end">{x1:.4g}</text>',
           f'<text x="4" y="{HEIGHT - PAD}" font-size="11">{y0:.4g}</text>',
           f'<text x="4" y="{PAD}" font-size="11">{y1:.4g}</text>',
           f'<text x="{WIDTH / 2}" y="{HEIGHT - 12}" font-size="12" text-anchor="middle">{escape(xlabel)}</text>',
           f'<text x="12" y="{HEIGHT / 2}" font-size="12" transform="rotate(-90 12 {HEIGHT / 2})" '
           f'text-anchor="middle">{escape(ylabel)}</text>']
    for i, (label, p) in enumerate(pts.items()):
        color = COLORS[i % len(COLORS)]
        dash = DASHES[i % len(DASHES)]
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in p)
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5"{dash_attr} points="{coords}"/>')
        out.append(f'<text x="{WIDTH - PAD - 4}" y="{PAD + 16 + 14 * i}" font-size="11" '
                   f'text-anchor="end" fill="{color}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
