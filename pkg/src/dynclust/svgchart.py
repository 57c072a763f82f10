"""Hand-rolled SVG output for time series and phase portraits.

No plotting dependency: charts are built from strings so that identical
inputs produce byte-identical files, which keeps golden-file tests honest.
"""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

WIDTH = 800
HEIGHT = 500
MARGIN_L = 64
MARGIN_R = 20
MARGIN_T = 40
MARGIN_B = 46

PALETTE = [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#9467bd",
    "#ff7f0e",
    "#17becf",
    "#8c564b",
    "#7f7f7f",
]


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def _ticks(lo: float, hi: float, target: int = 6) -> list[float]:
    if hi <= lo:
        return [lo]
    raw = (hi - lo) / target
    mag = 10.0 ** math.floor(math.log10(raw))
    for mult in (1.0, 2.0, 5.0, 10.0):
        step = mult * mag
        if (hi - lo) / step <= target:
            break
    first = math.ceil(lo / step) * step
    ticks = []
    v = first
    while v <= hi + 1e-9 * step:
        ticks.append(0.0 if abs(v) < 1e-12 * step else v)
        v += step
    return ticks


def _fmt(v: float) -> str:
    return f"{v:.6g}"


class _Frame:
    """Maps data coordinates into the plot rectangle."""

    def __init__(self, xlo: float, xhi: float, ylo: float, yhi: float):
        if xhi <= xlo:
            xlo, xhi = xlo - 1.0, xlo + 1.0
        if yhi <= ylo:
            ylo, yhi = ylo - 1.0, ylo + 1.0
        self.xlo, self.xhi, self.ylo, self.yhi = xlo, xhi, ylo, yhi

    def x(self, v: float) -> float:
        span = WIDTH - MARGIN_L - MARGIN_R
        return MARGIN_L + (v - self.xlo) / (self.xhi - self.xlo) * span

    def y(self, v: float) -> float:
        span = HEIGHT - MARGIN_T - MARGIN_B
        return HEIGHT - MARGIN_B - (v - self.ylo) / (self.yhi - self.ylo) * span


def _polyline(points: np.ndarray, frame: _Frame, color: str) -> str:
    coords = " ".join(f"{frame.x(p[0]):.2f},{frame.y(p[1]):.2f}" for p in points)
    return f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{coords}"/>'


def _chart(
    series: Sequence[tuple[str, np.ndarray]],
    title: str,
    x_label: str,
    y_label: str,
    start_markers: bool,
) -> str:
    if not series:
        raise ValueError("nothing to plot")
    arrays = [np.asarray(xy, dtype=float) for _, xy in series]
    if any(a.ndim != 2 or a.shape[1] != 2 or len(a) == 0 for a in arrays):
        raise ValueError("each series must be a nonempty (rows, 2) array")
    xlo = min(float(a[:, 0].min()) for a in arrays)
    xhi = max(float(a[:, 0].max()) for a in arrays)
    ylo = min(float(a[:, 1].min()) for a in arrays)
    yhi = max(float(a[:, 1].max()) for a in arrays)
    frame = _Frame(xlo, xhi, ylo, yhi)

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}"'
        f' font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        parts.append(
            f'<text x="{WIDTH / 2:.0f}" y="22" text-anchor="middle" font-size="15">'
            f"{_escape(title)}</text>"
        )
    x0, x1 = frame.x(frame.xlo), frame.x(frame.xhi)
    y0, y1 = frame.y(frame.ylo), frame.y(frame.yhi)
    parts.append(
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x1:.2f}" y2="{y0:.2f}" stroke="black"/>'
    )
    parts.append(
        f'<line x1="{x0:.2f}" y1="{y0:.2f}" x2="{x0:.2f}" y2="{y1:.2f}" stroke="black"/>'
    )
    for v in _ticks(frame.xlo, frame.xhi):
        px = frame.x(v)
        parts.append(
            f'<line x1="{px:.2f}" y1="{y0:.2f}" x2="{px:.2f}" y2="{y0 + 5:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{px:.2f}" y="{y0 + 18:.2f}" text-anchor="middle">{_fmt(v)}</text>'
        )
    for v in _ticks(frame.ylo, frame.yhi):
        py = frame.y(v)
        parts.append(
            f'<line x1="{x0 - 5:.2f}" y1="{py:.2f}" x2="{x0:.2f}" y2="{py:.2f}" stroke="black"/>'
        )
        parts.append(
            f'<text x="{x0 - 8:.2f}" y="{py + 4:.2f}" text-anchor="end">{_fmt(v)}</text>'
        )
    parts.append(
        f'<text x="{(x0 + x1) / 2:.2f}" y="{HEIGHT - 8}" text-anchor="middle">'
        f"{_escape(x_label)}</text>"
    )
    parts.append(
        f'<text x="16" y="{(y0 + y1) / 2:.2f}" text-anchor="middle"'
        f' transform="rotate(-90 16 {(y0 + y1) / 2:.2f})">{_escape(y_label)}</text>'
    )
    for idx, (label, xy) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        parts.append(_polyline(np.asarray(xy, dtype=float), frame, color))
        if start_markers:
            p = np.asarray(xy, dtype=float)[0]
            parts.append(
                f'<circle cx="{frame.x(p[0]):.2f}" cy="{frame.y(p[1]):.2f}" r="4"'
                f' fill="{color}"/>'
            )
    for idx, (label, _) in enumerate(series):
        color = PALETTE[idx % len(PALETTE)]
        ly = MARGIN_T + 14 * idx
        parts.append(
            f'<rect x="{WIDTH - MARGIN_R - 110}" y="{ly - 9}" width="10" height="10"'
            f' fill="{color}"/>'
        )
        parts.append(
            f'<text x="{WIDTH - MARGIN_R - 96}" y="{ly}">{_escape(label)}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def line_chart(
    series: Sequence[tuple[str, np.ndarray]],
    title: str = "",
    x_label: str = "t",
    y_label: str = "value",
) -> str:
    """Polyline chart of (t, value) series; deterministic output."""
    return _chart(series, title, x_label, y_label, start_markers=False)


def phase_chart(
    tracks: Sequence[tuple[str, np.ndarray]],
    title: str = "",
    x_label: str = "coordinate 1",
    y_label: str = "coordinate 2",
) -> str:
    """State-space tracks with a filled dot at each starting position."""
    return _chart(tracks, title, x_label, y_label, start_markers=True)
