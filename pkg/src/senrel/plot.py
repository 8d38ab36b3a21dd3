"""Minimal SVG line charts for probability-vs-time curves."""

from __future__ import annotations

import csv
import math
from pathlib import Path
from xml.sax.saxutils import escape

WIDTH, HEIGHT = 720, 440
MARGIN = dict(left=80, right=170, top=40, bottom=60)
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#17becf"]


class CurveFileError(ValueError):
    pass


def read_curve_csv(path) -> list[tuple[float, float]]:
    """Read ``t,value`` or ``t,p_hat,stderr`` rows; the second column is plotted."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows:
        raise CurveFileError(f"{path}: empty CSV")
    header, body = rows[0], rows[1:]
    if len(header) < 2 or header[0].strip() != "t":
        raise CurveFileError(f"{path}: expected a header starting with 't', got {','.join(header)!r}")
    points = []
    for lineno, row in enumerate(body, start=2):
        if not row:
            continue
        try:
            t, value = float(row[0]), float(row[1])
        except (IndexError, ValueError):
            raise CurveFileError(f"{path}:{lineno}: malformed row {','.join(row)!r}") from None
        if not (math.isfinite(t) and math.isfinite(value)):
            raise CurveFileError(f"{path}:{lineno}: non-finite value")
        points.append((t, value))
    if len(points) < 2:
        raise CurveFileError(f"{path}: a series needs at least 2 points, found {len(points)}")
    if any(b[0] <= a[0] for a, b in zip(points, points[1:])):
        raise CurveFileError(f"{path}: times must be strictly increasing")
    return points


def _nice_ceiling(x: float) -> float:
    if x <= 0:
        return 1.0
    exp = math.floor(math.log10(x))
    for step in (1, 2, 2.5, 5, 10):
        if step * 10**exp >= x:
            return step * 10**exp
    return 10 ** (exp + 1)


def _fmt(x: float) -> str:
    return f"{x:.4g}"


def render_svg(series: list[tuple[str, list[tuple[float, float]]]], title: str = "", y_label: str = "probability") -> str:
    if not series:
        raise CurveFileError("nothing to plot")
    ts = [t for _, pts in series for t, _ in pts]
    vs = [v for _, pts in series for _, v in pts]
    x0, x1 = min(ts), max(ts)
    y0, y1 = min(0.0, min(vs)), _nice_ceiling(max(vs))
    plot_w = WIDTH - MARGIN["left"] - MARGIN["right"]
    plot_h = HEIGHT - MARGIN["top"] - MARGIN["bottom"]

    def sx(t):
        return MARGIN["left"] + (t - x0) / (x1 - x0) * plot_w

    def sy(v):
        return MARGIN["top"] + (1 - (v - y0) / (y1 - y0)) * plot_h

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="22" text-anchor="middle" font-size="14">{escape(title)}</text>')
    left, bottom = MARGIN["left"], MARGIN["top"] + plot_h
    out.append(f'<line class="axis" x1="{left}" y1="{bottom}" x2="{left + plot_w}" y2="{bottom}" stroke="black"/>')
    out.append(f'<line class="axis" x1="{left}" y1="{MARGIN["top"]}" x2="{left}" y2="{bottom}" stroke="black"/>')
    for i in range(6):
        t = x0 + (x1 - x0) * i / 5
        v = y0 + (y1 - y0) * i / 5
        out.append(f'<line x1="{sx(t):.2f}" y1="{bottom}" x2="{sx(t):.2f}" y2="{bottom + 5}" stroke="black"/>')
        out.append(f'<text x="{sx(t):.2f}" y="{bottom + 18}" text-anchor="middle">{_fmt(t)}</text>')
        out.append(f'<line x1="{left - 5}" y1="{sy(v):.2f}" x2="{left}" y2="{sy(v):.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{sy(v) + 4:.2f}" text-anchor="end">{_fmt(v)}</text>')
    out.append(f'<text x="{left + plot_w / 2:.1f}" y="{HEIGHT - 15}" text-anchor="middle">t (hours)</text>')
    out.append(
        f'<text x="18" y="{MARGIN["top"] + plot_h / 2:.1f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {MARGIN["top"] + plot_h / 2:.1f})">{escape(y_label)}</text>'
    )
    for k, (label, pts) in enumerate(series):
        color = COLORS[k % len(COLORS)]
        coords = " ".join(f"{sx(t):.3f},{sy(v):.3f}" for t, v in pts)
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" data-label="{escape(label)}" points="{coords}"/>')
        ly = MARGIN["top"] + 10 + 20 * k
        lx = left + plot_w + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 25}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 32}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def plot_files(paths, labels=None, title: str = "") -> str:
    labels = list(labels or [])
    if len(labels) > len(paths):
        raise CurveFileError("more labels than input files")
    labels += [Path(p).stem for p in paths[len(labels):]]
    return render_svg([(label, read_curve_csv(p)) for label, p in zip(labels, paths)], title=title)
