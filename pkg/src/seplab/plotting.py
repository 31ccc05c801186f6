"""Minimal deterministic SVG emission: cut against witness size with the
fitted growth curve overlaid.  Pure text output, no interactivity.
"""

from __future__ import annotations

import math
from typing import Optional

from .profile import GrowthFit, ProfileCurve

_W, _H = 640, 480
_MARGIN = 56


def _model_value(fit: GrowthFit, curve: ProfileCurve, n: float) -> Optional[float]:
    """Evaluate the fitted class with constants re-estimated from the curve."""
    import numpy as np

    ns = np.array([p.n for p in curve.points], dtype=float)
    cuts = np.array([p.cut for p in curve.points], dtype=float)
    logn = np.log(ns)
    if fit.name == "bounded":
        return float(cuts.mean())
    if fit.name == "logarithmic":
        a = np.vstack([logn, np.ones_like(logn)]).T
        coef, *_ = np.linalg.lstsq(a, cuts, rcond=None)
        return float(coef[0] * math.log(n) + coef[1])
    if fit.name == "linear":
        a = np.vstack([ns, np.ones_like(ns)]).T
        coef, *_ = np.linalg.lstsq(a, cuts, rcond=None)
        return float(coef[0] * n + coef[1])
    if fit.name == "n_over_log":
        y = cuts * logn
        slope = float(np.dot(y, ns) / np.dot(ns, ns))
        return slope * n / math.log(n) if n > 1 else None
    logc = np.log(cuts)
    if fit.name == "power":
        a = np.vstack([logn, np.ones_like(logn)]).T
        coef, *_ = np.linalg.lstsq(a, logc, rcond=None)
        return float(math.exp(coef[1]) * n ** coef[0])
    if fit.name == "power_times_log":
        y = logc - np.log(logn)
        a = np.vstack([logn, np.ones_like(logn)]).T
        coef, *_ = np.linalg.lstsq(a, y, rcond=None)
        return float(math.exp(coef[1]) * n ** coef[0] * math.log(n))
    return None


def render_profile_svg(curve: ProfileCurve, fit: Optional[GrowthFit] = None) -> str:
    """Scatter of (n, cut) with an optional fitted polyline, as SVG text."""
    ns = [p.n for p in curve.points]
    cuts = [p.cut for p in curve.points]
    xmax = max(ns) * 1.05
    ymax = max(max(cuts), 1) * 1.15

    def sx(x):
        return _MARGIN + (x / xmax) * (_W - 2 * _MARGIN)

    def sy(y):
        return _H - _MARGIN - (y / ymax) * (_H - 2 * _MARGIN)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<line x1="{_MARGIN}" y1="{_H-_MARGIN}" x2="{_W-_MARGIN}" y2="{_H-_MARGIN}" '
        'stroke="black"/>',
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" y2="{_H-_MARGIN}" '
        'stroke="black"/>',
        f'<text x="{_W//2}" y="{_H-12}" text-anchor="middle" font-size="13">'
        "witness size n</text>",
        f'<text x="14" y="{_H//2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 14 {_H//2})">cut</text>',
        f'<text x="{_W//2}" y="24" text-anchor="middle" font-size="14">'
        f"{curve.family}</text>",
    ]
    if fit is not None:
        steps = 128
        lo, hi = min(ns), max(ns)
        pts = []
        for i in range(steps + 1):
            n = lo + (hi - lo) * i / steps
            y = _model_value(fit, curve, n)
            if y is not None and y > 0:
                pts.append(f"{sx(n):.2f},{sy(min(y, ymax)):.2f}")
        if pts:
            parts.append(
                f'<polyline points="{" ".join(pts)}" fill="none" stroke="#c0392b" '
                'stroke-width="1.5"/>'
            )
        label = fit.name if fit.alpha is None else f"{fit.name}(alpha={fit.alpha:.3f})"
        parts.append(
            f'<text x="{_W-_MARGIN}" y="40" text-anchor="end" font-size="12" '
            f'fill="#c0392b">fit: {label}</text>'
        )
    for n, cut in zip(ns, cuts):
        parts.append(
            f'<circle cx="{sx(n):.2f}" cy="{sy(cut):.2f}" r="3.5" fill="#2e6da4"/>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
