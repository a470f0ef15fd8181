"""Minimal deterministic SVG line plots.

No graphics dependency: plots are hand-assembled polylines with fixed
number formatting, so identical data yields byte-identical files and
every curve is regenerable from the CSV outputs alone.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

__all__ = ["Series", "line_plot"]

_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 58.0, 16.0, 30.0, 44.0


@dataclass(frozen=True)
class Series:
    x: tuple[float, ...]
    y: tuple[float, ...]
    label: str = ""


def _fmt(v: float) -> str:
    return format(v, ".3f")


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        return [lo]
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def line_plot(
    path: str,
    series: list[Series],
    *,
    title: str = "",
    xlabel: str = "",
    ylabel: str = "",
    shaded_x_spans: list[tuple[float, float]] | None = None,
    width: int = 640,
    height: int = 440,
    aspect_equal: bool = False,
) -> None:
    """Write a polyline plot of the given series to an SVG file."""
    xs = [v for s in series for v in s.x if math.isfinite(v)]
    ys = [v for s in series for v in s.y if math.isfinite(v)]
    if not xs or not ys:
        xs, ys = [0.0, 1.0], [0.0, 1.0]
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    if y_hi == y_lo:
        y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
    pad_x = 0.05 * (x_hi - x_lo)
    pad_y = 0.05 * (y_hi - y_lo)
    x_lo, x_hi = x_lo - pad_x, x_hi + pad_x
    y_lo, y_hi = y_lo - pad_y, y_hi + pad_y

    view_w = width - _MARGIN_L - _MARGIN_R
    view_h = height - _MARGIN_T - _MARGIN_B
    if aspect_equal:
        scale = min(view_w / (x_hi - x_lo), view_h / (y_hi - y_lo))
        cx, cy = 0.5 * (x_lo + x_hi), 0.5 * (y_lo + y_hi)
        x_lo, x_hi = cx - 0.5 * view_w / scale, cx + 0.5 * view_w / scale
        y_lo, y_hi = cy - 0.5 * view_h / scale, cy + 0.5 * view_h / scale

    def px(x: float) -> float:
        return _MARGIN_L + (x - x_lo) / (x_hi - x_lo) * view_w

    def py(y: float) -> float:
        return _MARGIN_T + (y_hi - y) / (y_hi - y_lo) * view_h

    out: list[str] = []
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    )
    out.append('<rect width="100%" height="100%" fill="white"/>')
    for x0, x1 in shaded_x_spans or []:
        a, b = max(x0, x_lo), min(x1, x_hi)
        if b > a:
            out.append(
                f'<rect x="{_fmt(px(a))}" y="{_fmt(_MARGIN_T)}" '
                f'width="{_fmt(px(b) - px(a))}" height="{_fmt(view_h)}" '
                f'fill="#f2c2c2" fill-opacity="0.5"/>'
            )
    out.append(
        f'<rect x="{_fmt(_MARGIN_L)}" y="{_fmt(_MARGIN_T)}" width="{_fmt(view_w)}" '
        f'height="{_fmt(view_h)}" fill="none" stroke="black" stroke-width="1"/>'
    )
    for tx in _ticks(x_lo, x_hi):
        out.append(
            f'<line x1="{_fmt(px(tx))}" y1="{_fmt(_MARGIN_T + view_h)}" '
            f'x2="{_fmt(px(tx))}" y2="{_fmt(_MARGIN_T + view_h + 4)}" stroke="black"/>'
        )
        out.append(
            f'<text x="{_fmt(px(tx))}" y="{_fmt(_MARGIN_T + view_h + 16)}" '
            f'font-size="10" text-anchor="middle">{format(tx, ".4g")}</text>'
        )
    for ty in _ticks(y_lo, y_hi):
        out.append(
            f'<line x1="{_fmt(_MARGIN_L - 4)}" y1="{_fmt(py(ty))}" '
            f'x2="{_fmt(_MARGIN_L)}" y2="{_fmt(py(ty))}" stroke="black"/>'
        )
        out.append(
            f'<text x="{_fmt(_MARGIN_L - 6)}" y="{_fmt(py(ty) + 3)}" '
            f'font-size="10" text-anchor="end">{format(ty, ".4g")}</text>'
        )
    for i, s in enumerate(series):
        color = _PALETTE[i % len(_PALETTE)]
        pts = " ".join(
            f"{_fmt(px(x))},{_fmt(py(y))}"
            for x, y in zip(s.x, s.y)
            if math.isfinite(x) and math.isfinite(y)
        )
        out.append(
            f'<polyline points="{pts}" fill="none" stroke="{color}" stroke-width="1.5"/>'
        )
        if s.label:
            ly = _MARGIN_T + 14 + 14 * i
            out.append(
                f'<line x1="{_fmt(_MARGIN_L + view_w - 120)}" y1="{_fmt(ly - 3)}" '
                f'x2="{_fmt(_MARGIN_L + view_w - 100)}" y2="{_fmt(ly - 3)}" '
                f'stroke="{color}" stroke-width="1.5"/>'
            )
            out.append(
                f'<text x="{_fmt(_MARGIN_L + view_w - 96)}" y="{_fmt(ly)}" '
                f'font-size="10">{s.label}</text>'
            )
    if title:
        out.append(
            f'<text x="{_fmt(width / 2)}" y="18" font-size="13" '
            f'text-anchor="middle">{title}</text>'
        )
    if xlabel:
        out.append(
            f'<text x="{_fmt(_MARGIN_L + view_w / 2)}" y="{_fmt(height - 10)}" '
            f'font-size="11" text-anchor="middle">{xlabel}</text>'
        )
    if ylabel:
        out.append(
            f'<text x="14" y="{_fmt(_MARGIN_T + view_h / 2)}" font-size="11" '
            f'text-anchor="middle" transform="rotate(-90 14 {_fmt(_MARGIN_T + view_h / 2)})">'
            f"{ylabel}</text>"
        )
    out.append("</svg>")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(out) + "\n")
