"""Minimal deterministic SVG rendering of CSV series (lines and heatmaps).

Hand-rolled on purpose: the emitted bytes must be identical across reruns and
worker counts, which rules out plotting libraries that embed ids or dates.
"""

from __future__ import annotations

import math

_WIDTH = 640
_HEIGHT = 440
_MARGIN_L = 70
_MARGIN_R = 20
_MARGIN_T = 40
_MARGIN_B = 50

_SERIES_COLORS = [
    "#1f77b4",
    "#d62728",
    "#2ca02c",
    "#ff7f0e",
    "#9467bd",
    "#8c564b",
    "#17becf",
    "#e377c2",
    "#7f7f7f",
]


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def _scale(vmin: float, vmax: float):
    if vmax - vmin < 1e-12:
        vmin -= 1.0
        vmax += 1.0
    return vmin, vmax


def line_chart(series: dict, title: str, x_label: str, y_label: str) -> str:
    """Render named (x, y) series as polylines with a simple legend."""
    xs = [x for pts in series.values() for x, _ in pts]
    ys = [y for pts in series.values() for _, y in pts]
    if not xs:
        raise ValueError("line_chart needs at least one point")
    x0, x1 = _scale(min(xs), max(xs))
    y0, y1 = _scale(min(ys), max(ys))
    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B

    def px(x):
        return _MARGIN_L + (x - x0) / (x1 - x0) * plot_w

    def py(y):
        return _MARGIN_T + (1.0 - (y - y0) / (y1 - y0)) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH // 2}" y="24" text-anchor="middle" font-size="15">{title}</text>',
    ]
    # Axes and ticks.
    out.append(
        f'<rect x="{_MARGIN_L}" y="{_MARGIN_T}" width="{plot_w}" height="{plot_h}" '
        'fill="none" stroke="black"/>'
    )
    for i in range(5):
        fx = x0 + (x1 - x0) * i / 4
        fy = y0 + (y1 - y0) * i / 4
        out.append(
            f'<text x="{_fmt(px(fx))}" y="{_HEIGHT - _MARGIN_B + 18}" text-anchor="middle" '
            f'font-size="11">{_fmt(fx)}</text>'
        )
        out.append(
            f'<text x="{_MARGIN_L - 8}" y="{_fmt(py(fy) + 4)}" text-anchor="end" '
            f'font-size="11">{_fmt(fy)}</text>'
        )
    out.append(
        f'<text x="{_WIDTH // 2}" y="{_HEIGHT - 12}" text-anchor="middle" '
        f'font-size="12">{x_label}</text>'
    )
    out.append(
        f'<text x="16" y="{_HEIGHT // 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {_HEIGHT // 2})">{y_label}</text>'
    )
    for idx, (name, pts) in enumerate(series.items()):
        color = _SERIES_COLORS[idx % len(_SERIES_COLORS)]
        path = " ".join(f"{_fmt(px(x))},{_fmt(py(y))}" for x, y in pts)
        out.append(
            f'<polyline points="{path}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        ly = _MARGIN_T + 14 + 16 * idx
        out.append(
            f'<line x1="{_WIDTH - 170}" y1="{ly - 4}" x2="{_WIDTH - 146}" y2="{ly - 4}" '
            f'stroke="{color}" stroke-width="2"/>'
        )
        out.append(f'<text x="{_WIDTH - 140}" y="{ly}" font-size="11">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _heat_color(frac: float) -> str:
    """Blue -> yellow -> red ramp."""
    frac = min(1.0, max(0.0, frac))
    if frac < 0.5:
        t = frac / 0.5
        r, g, b = int(40 + 215 * t), int(60 + 195 * t), int(200 - 140 * t)
    else:
        t = (frac - 0.5) / 0.5
        r, g, b = 255, int(255 - 215 * t), int(60 - 40 * t)
    return f"#{r:02x}{g:02x}{b:02x}"


def heatmap(
    values: list[list[float]],
    x_labels: list,
    y_labels: list,
    title: str,
    x_label: str,
    y_label: str,
) -> str:
    """Render a dense grid (rows follow y_labels) as colored cells."""
    flat = [v for row in values for v in row if math.isfinite(v)]
    if not flat:
        raise ValueError("heatmap needs at least one finite value")
    vmin, vmax = _scale(min(flat), max(flat))
    rows = len(values)
    cols = len(values[0])
    plot_w = _WIDTH - _MARGIN_L - _MARGIN_R - 60
    plot_h = _HEIGHT - _MARGIN_T - _MARGIN_B
    cw = plot_w / cols
    ch = plot_h / rows

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH // 2}" y="24" text-anchor="middle" font-size="15">{title}</text>',
    ]
    for r, row in enumerate(values):
        for c, v in enumerate(row):
            frac = (v - vmin) / (vmax - vmin) if math.isfinite(v) else 0.0
            out.append(
                f'<rect x="{_fmt(_MARGIN_L + c * cw)}" y="{_fmt(_MARGIN_T + r * ch)}" '
                f'width="{_fmt(cw + 0.5)}" height="{_fmt(ch + 0.5)}" '
                f'fill="{_heat_color(frac)}"/>'
            )
    step_c = max(1, cols // 6)
    for c in range(0, cols, step_c):
        out.append(
            f'<text x="{_fmt(_MARGIN_L + (c + 0.5) * cw)}" y="{_HEIGHT - _MARGIN_B + 16}" '
            f'text-anchor="middle" font-size="10">{x_labels[c]}</text>'
        )
    step_r = max(1, rows // 6)
    for r in range(0, rows, step_r):
        out.append(
            f'<text x="{_MARGIN_L - 6}" y="{_fmt(_MARGIN_T + (r + 0.5) * ch + 3)}" '
            f'text-anchor="end" font-size="10">{y_labels[r]}</text>'
        )
    out.append(
        f'<text x="{_MARGIN_L + plot_w / 2:.0f}" y="{_HEIGHT - 12}" text-anchor="middle" '
        f'font-size="12">{x_label}</text>'
    )
    out.append(
        f'<text x="16" y="{_HEIGHT // 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 16 {_HEIGHT // 2})">{y_label}</text>'
    )
    # Color scale.
    bar_x = _WIDTH - 52
    for i in range(40):
        out.append(
            f'<rect x="{bar_x}" y="{_fmt(_MARGIN_T + plot_h * (39 - i) / 40)}" width="14" '
            f'height="{_fmt(plot_h / 40 + 0.5)}" fill="{_heat_color(i / 39)}"/>'
        )
    out.append(
        f'<text x="{bar_x + 18}" y="{_MARGIN_T + 8}" font-size="10">{_fmt(vmax)}</text>'
    )
    out.append(
        f'<text x="{bar_x + 18}" y="{_MARGIN_T + plot_h}" font-size="10">{_fmt(vmin)}</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
