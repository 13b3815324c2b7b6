"""Minimal hand-written SVG line plots and heatmaps."""

from __future__ import annotations

from typing import Sequence

WIDTH, HEIGHT = 640, 440
MARGIN = 60
PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"]
# viridis-like stops
_STOPS = [(0.0, (68, 1, 84)), (0.25, (59, 82, 139)), (0.5, (33, 145, 140)), (0.75, (94, 201, 98)), (1.0, (253, 231, 37))]


def _color(u: float) -> str:
    u = min(max(u, 0.0), 1.0)
    for (u0, c0), (u1, c1) in zip(_STOPS, _STOPS[1:]):
        if u <= u1:
            s = (u - u0) / (u1 - u0)
            rgb = [round(a + s * (b - a)) for a, b in zip(c0, c1)]
            return "#{:02x}{:02x}{:02x}".format(*rgb)
    return "#fde725"


def _span(values: Sequence[float]) -> tuple[float, float]:
    lo, hi = min(values), max(values)
    if hi == lo:
        hi = lo + 1.0
    return lo, hi


def _frame(title: str, xlabel: str, ylabel: str, xr: tuple[float, float], yr: tuple[float, float]) -> list[str]:
    x0, y0, x1, y1 = MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN // 2, MARGIN // 2
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
        f'<text x="{WIDTH / 2:.1f}" y="18" text-anchor="middle" font-size="14">{title}</text>',
        f'<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>',
        f'<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>',
        f'<text x="{(x0 + x1) / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">{xlabel}</text>',
        f'<text x="15" y="{(y0 + y1) / 2:.1f}" text-anchor="middle" transform="rotate(-90 15 {(y0 + y1) / 2:.1f})">{ylabel}</text>',
    ]
    for i in range(5):
        fx = xr[0] + i * (xr[1] - xr[0]) / 4
        fy = yr[0] + i * (yr[1] - yr[0]) / 4
        px = x0 + i * (x1 - x0) / 4
        py = y0 - i * (y0 - y1) / 4
        out.append(f'<text x="{px:.1f}" y="{y0 + 16}" text-anchor="middle">{fx:.3g}</text>')
        out.append(f'<text x="{x0 - 6}" y="{py + 4:.1f}" text-anchor="end">{fy:.3g}</text>')
    return out


def line_plot(
    xs: Sequence[float],
    series: dict[str, Sequence[float]],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
) -> str:
    xr = _span(xs)
    yr = _span([y for ys in series.values() for y in ys])
    out = _frame(title, xlabel, ylabel, xr, yr)
    x0, y0, x1, y1 = MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN // 2, MARGIN // 2

    def px(x: float) -> float:
        return x0 + (x - xr[0]) / (xr[1] - xr[0]) * (x1 - x0)

    def py(y: float) -> float:
        return y0 - (y - yr[0]) / (yr[1] - yr[0]) * (y0 - y1)

    for k, (name, ys) in enumerate(series.items()):
        color = PALETTE[k % len(PALETTE)]
        pts = " ".join(f"{px(x):.2f},{py(y):.2f}" for x, y in zip(xs, ys))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>')
        out.append(f'<text x="{x1 - 4}" y="{y1 + 14 * (k + 1)}" text-anchor="end" fill="{color}">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def heatmap(
    xs: Sequence[float],
    ys: Sequence[float],
    values: Sequence[Sequence[float]],
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
) -> str:
    """Color-mapped grid; ``values[i][j]`` belongs to ``(xs[i], ys[j])``."""
    flat = [v for row in values for v in row]
    vr = _span(flat)
    out = _frame(title, xlabel, ylabel, _span(xs), _span(ys))
    x0, y0, x1, y1 = MARGIN, HEIGHT - MARGIN, WIDTH - MARGIN // 2, MARGIN // 2
    cw = (x1 - x0) / len(xs)
    ch = (y0 - y1) / len(ys)
    for i, row in enumerate(values):
        for j, v in enumerate(row):
            u = (v - vr[0]) / (vr[1] - vr[0])
            out.append(
                f'<rect x="{x0 + i * cw:.2f}" y="{y0 - (j + 1) * ch:.2f}" width="{cw + 0.05:.2f}" '
                f'height="{ch + 0.05:.2f}" fill="{_color(u)}"/>'
            )
    out.append(f'<text x="{x1}" y="{y1 - 8}" text-anchor="end">range {vr[0]:.3g} .. {vr[1]:.3g}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
