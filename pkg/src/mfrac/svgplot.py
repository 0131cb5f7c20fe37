"""Dependency-free SVG line charts and heatmaps for CLI output."""

from __future__ import annotations

import numpy as np

_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def _ticks(lo: float, hi: float, n: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    raw = np.linspace(lo, hi, n)
    return [float(v) for v in raw]


def line_chart(
    curves: list[tuple[np.ndarray, np.ndarray, str]],
    width: int = 720,
    height: int = 420,
    title: str = "",
    x_label: str = "t",
    y_label: str = "",
) -> str:
    """Render (x, y, label) curves as a single-axis SVG line chart."""
    pad_l, pad_r, pad_t, pad_b = 56, 16, 28, 40
    xs = np.concatenate([np.asarray(c[0], dtype=float) for c in curves])
    ys = np.concatenate([np.asarray(c[1], dtype=float) for c in curves])
    x_lo, x_hi = float(xs.min()), float(xs.max())
    y_lo, y_hi = float(ys.min()), float(ys.max())
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0
    span_y = y_hi - y_lo
    y_lo -= 0.05 * span_y
    y_hi += 0.05 * span_y

    iw = width - pad_l - pad_r
    ih = height - pad_t - pad_b

    def sx(v):
        return pad_l + (v - x_lo) / (x_hi - x_lo) * iw

    def sy(v):
        return pad_t + (y_hi - v) / (y_hi - y_lo) * ih

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{width / 2:.1f}" y="16" text-anchor="middle">{title}</text>')
    # axes
    parts.append(
        f'<rect x="{pad_l}" y="{pad_t}" width="{iw}" height="{ih}" fill="none" stroke="#333"/>'
    )
    for tv in _ticks(x_lo, x_hi):
        parts.append(
            f'<line x1="{sx(tv):.1f}" y1="{pad_t + ih}" x2="{sx(tv):.1f}" '
            f'y2="{pad_t + ih + 4}" stroke="#333"/>'
            f'<text x="{sx(tv):.1f}" y="{pad_t + ih + 16}" text-anchor="middle">{tv:.4g}</text>'
        )
    for tv in _ticks(y_lo, y_hi):
        parts.append(
            f'<line x1="{pad_l - 4}" y1="{sy(tv):.1f}" x2="{pad_l}" y2="{sy(tv):.1f}" stroke="#333"/>'
            f'<text x="{pad_l - 6}" y="{sy(tv) + 3:.1f}" text-anchor="end">{tv:.4g}</text>'
        )
    if x_label:
        parts.append(
            f'<text x="{pad_l + iw / 2:.1f}" y="{height - 6}" text-anchor="middle">{x_label}</text>'
        )
    for idx, (cx, cy, label) in enumerate(curves):
        color = _COLORS[idx % len(_COLORS)]
        pts = " ".join(
            f"{sx(float(px)):.2f},{sy(float(py)):.2f}" for px, py in zip(cx, cy)
        )
        parts.append(f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.2"/>')
        if label:
            ly = pad_t + 14 + 14 * idx
            parts.append(
                f'<line x1="{pad_l + 8}" y1="{ly - 4}" x2="{pad_l + 28}" y2="{ly - 4}" '
                f'stroke="{color}" stroke-width="2"/>'
                f'<text x="{pad_l + 32}" y="{ly}">{label}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts)


def heatmap(grid: np.ndarray, entries: np.ndarray, width: int = 560, title: str = "") -> str:
    """Render a symmetric matrix as a blue-white-red SVG heatmap."""
    n = len(grid)
    pad, legend = 40, 24
    cell = max(1.0, (width - 2 * pad) / n)
    size = int(2 * pad + cell * n)
    vmax = float(np.max(np.abs(entries))) or 1.0

    def color(v: float) -> str:
        z = max(-1.0, min(1.0, v / vmax))
        if z >= 0:
            r, g, b = 255, int(255 * (1 - z)), int(255 * (1 - z))
        else:
            r, g, b = int(255 * (1 + z)), int(255 * (1 + z)), 255
        return f"rgb({r},{g},{b})"

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size + legend}" '
        f'font-family="sans-serif" font-size="11">',
        f'<rect width="{size}" height="{size + legend}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{size / 2:.1f}" y="16" text-anchor="middle">{title}</text>')
    for i in range(n):
        for j in range(n):
            x = pad + j * cell
            y = pad + (n - 1 - i) * cell
            parts.append(
                f'<rect x="{x:.2f}" y="{y:.2f}" width="{cell:.2f}" height="{cell:.2f}" '
                f'fill="{color(float(entries[i, j]))}"/>'
            )
    parts.append(
        f'<text x="{pad}" y="{size + legend - 8}">range ±{vmax:.4g}, '
        f"t in [{grid[0]:.4g}, {grid[-1]:.4g}]</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts)
