"""Minimal log-log SVG line plots (diagnostic only)."""

from __future__ import annotations

import math
from typing import Sequence

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd")
_W, _H, _PAD = 640, 420, 60


def _log_span(values: Sequence[float]) -> tuple[float, float]:
    logs = [math.log10(v) for v in values if v > 0 and math.isfinite(v)]
    if not logs:
        return 0.0, 1.0
    lo, hi = min(logs), max(logs)
    if hi - lo < 1e-12:
        lo, hi = lo - 0.5, hi + 0.5
    return lo, hi


def loglog_svg(x: Sequence[float], series: dict[str, Sequence[float]], title: str = "", xlabel: str = "") -> str:
    """One polyline per series on shared log axes; nonpositive points are skipped."""
    xlo, xhi = _log_span(x)
    ylo, yhi = _log_span([v for ys in series.values() for v in ys])

    def px(v):
        return _PAD + (math.log10(v) - xlo) / (xhi - xlo) * (_W - 2 * _PAD)

    def py(v):
        return _H - _PAD - (math.log10(v) - ylo) / (yhi - ylo) * (_H - 2 * _PAD)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" font-family="sans-serif" font-size="12">',
        f'<rect x="{_PAD}" y="{_PAD}" width="{_W - 2 * _PAD}" height="{_H - 2 * _PAD}" fill="none" stroke="black"/>',
        f'<text x="{_W / 2}" y="{_PAD / 2}" text-anchor="middle">{title}</text>',
        f'<text x="{_W / 2}" y="{_H - 15}" text-anchor="middle">{xlabel}</text>',
    ]
    for decade in range(math.ceil(xlo), math.floor(xhi) + 1):
        xp = px(10.0**decade)
        out.append(f'<text x="{xp:.1f}" y="{_H - _PAD + 16}" text-anchor="middle">1e{decade}</text>')
    for decade in range(math.ceil(ylo), math.floor(yhi) + 1):
        yp = py(10.0**decade)
        out.append(f'<text x="{_PAD - 6}" y="{yp:.1f}" text-anchor="end">1e{decade}</text>')
    for i, (name, ys) in enumerate(series.items()):
        color = _COLORS[i % len(_COLORS)]
        pts = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, ys) if a > 0 and b > 0 and math.isfinite(b))
        out.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>')
        out.append(f'<text x="{_W - _PAD + 4}" y="{_PAD + 16 * (i + 1)}" fill="{color}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
