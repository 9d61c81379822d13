"""Rendering: hand-emitted SVG scatter of the fit, and report figures.

The SVG writer has no charting dependency so its output is deterministic
and element counts are stable (one ``circle`` per country, one
``polyline`` for the curve).  The report figures use matplotlib.
"""

from __future__ import annotations

import numpy as np

VIEW_W = 800
VIEW_H = 600
MARGIN = 0.05


def _scale(points: np.ndarray, nodes: np.ndarray):
    both = np.vstack([points, nodes])
    lo = both.min(axis=0)
    hi = both.max(axis=0)
    span = np.where(hi > lo, hi - lo, 1.0)
    x0, y0 = MARGIN * VIEW_W, MARGIN * VIEW_H
    w, h = VIEW_W * (1 - 2 * MARGIN), VIEW_H * (1 - 2 * MARGIN)

    def to_px(xy: np.ndarray) -> np.ndarray:
        unit = (xy - lo) / span
        px = x0 + unit[:, 0] * w
        py = y0 + (1.0 - unit[:, 1]) * h  # SVG y grows downward
        return np.column_stack([px, py])

    return to_px


def scatter_svg(points: np.ndarray, nodes: np.ndarray,
                x_label: str, y_label: str) -> str:
    """Standalone SVG: data as circles, the chain as a red polyline."""
    points = np.asarray(points, dtype=float)
    nodes = np.asarray(nodes, dtype=float)
    to_px = _scale(points, nodes)
    pts_px = to_px(points)
    nodes_px = to_px(nodes)

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {VIEW_W} {VIEW_H}">',
        f'<rect x="0" y="0" width="{VIEW_W}" height="{VIEW_H}" fill="white"/>',
    ]
    for x, y in pts_px:
        out.append(f'<circle cx="{x:.2f}" cy="{y:.2f}" r="3" fill="#4878a8" fill-opacity="0.7"/>')
    path = " ".join(f"{x:.2f},{y:.2f}" for x, y in nodes_px)
    out.append(f'<polyline points="{path}" fill="none" stroke="red" stroke-width="2"/>')
    out.append(f'<text x="{VIEW_W / 2:.0f}" y="{VIEW_H - 6}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="14">{x_label}</text>')
    out.append(f'<text x="14" y="{VIEW_H / 2:.0f}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="14" '
               f'transform="rotate(-90 14 {VIEW_H / 2:.0f})">{y_label}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def axis_label(component: int, variance_ratio: float) -> str:
    return "PC%d (%.1f%%)" % (component, 100.0 * variance_ratio)


def write_report_figures(table, points: np.ndarray, nodes: np.ndarray,
                         x_label: str, y_label: str, out_dir) -> list[str]:
    """Save the rank-comparison and curve figures as PNG; returns the paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    written = []

    fig, ax = plt.subplots(figsize=(6, 6))
    linear = [r.linear_rank for r in table.rows]
    nonlinear = [r.nql_rank for r in table.rows]
    n = len(table.rows)
    ax.plot([1, n], [1, n], color="0.6", linewidth=1)
    ax.scatter(linear, nonlinear, s=14, color="#4878a8", alpha=0.8)
    ax.set_xlabel("linear rank (PC1)")
    ax.set_ylabel("nonlinear rank (curve)")
    ax.set_title("Linear vs nonlinear ranking")
    path = str(out_dir / "rank_comparison.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    fig, ax = plt.subplots(figsize=(7, 5))
    ax.scatter(points[:, 0], points[:, 1], s=14, color="#4878a8", alpha=0.7)
    ax.plot(nodes[:, 0], nodes[:, 1], color="red", linewidth=2)
    ax.set_xlabel(x_label)
    ax.set_ylabel(y_label)
    ax.set_title("Data and principal curve")
    path = str(out_dir / "curve_projection.png")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    written.append(path)

    return written
