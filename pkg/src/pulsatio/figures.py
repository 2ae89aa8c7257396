"""Dependency-free SVG figure emission.

Every figure is a standalone SVG; data traces are <polyline> elements (one per
series or waterfall row) and scatter points are <circle> elements, which keeps
the files trivially checkable in tests.  Coordinates are written with fixed
two-decimal formatting so identical data produce byte-identical files.
"""

import numpy as np

from .errors import EmptyData, InvalidParameter, IoError

WIDTH = 800
HEIGHT = 500
MARGIN = 65
PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


def emit_figure(data, kind, path, title="", x_label="", y_label=""):
    """Render one figure.

    kind "line": data is a list of (x, y) series.
    kind "waterfall_ridges": data is a 2-D matrix; row 0 (earliest) is drawn
    at the bottom and later rows are offset upward.
    kind "scatter": data is one (x, y) pair of arrays.
    """
    if kind == "line":
        body = _line_body(data)
    elif kind == "waterfall_ridges":
        body = _waterfall_body(data)
    elif kind == "scatter":
        body = _scatter_body(data)
    else:
        raise InvalidParameter(f"unknown figure kind {kind!r}")
    svg = _document(body, title, x_label, y_label)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from None


def _as_series(data):
    series = []
    for entry in data:
        x, y = entry
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        if x.size == 0 or x.size != y.size:
            raise EmptyData("series must be non-empty and equally sized")
        series.append((x, y))
    if not series:
        raise EmptyData("no series to draw")
    return series


class _Mapper:
    """Data -> viewport transform with a 4% visual pad; flat ranges are centered."""

    def __init__(self, series):
        self.x_min = min(float(x.min()) for x, _ in series)
        self.x_max = max(float(x.max()) for x, _ in series)
        self.y_min = min(float(y.min()) for _, y in series)
        self.y_max = max(float(y.max()) for _, y in series)
        self._x_span = (self.x_max - self.x_min) or 1.0
        self._y_span = (self.y_max - self.y_min) or 1.0
        pad_x = 0.04 * self._x_span
        pad_y = 0.04 * self._y_span
        self._x0 = self.x_min - pad_x
        self._sx = (WIDTH - 2 * MARGIN) / (self._x_span + 2 * pad_x)
        self._y0 = self.y_min - pad_y
        self._sy = (HEIGHT - 2 * MARGIN) / (self._y_span + 2 * pad_y)

    def px(self, x):
        return MARGIN + (x - self._x0) * self._sx

    def py(self, y):
        return HEIGHT - MARGIN - (y - self._y0) * self._sy

    def polyline(self, x, y, color):
        pts = " ".join(f"{self.px(a):.2f},{self.py(b):.2f}" for a, b in zip(x, y))
        return (f'<polyline fill="none" stroke="{color}" stroke-width="1.5" '
                f'points="{pts}" />')


def _line_body(data):
    series = _as_series(data)
    mapper = _Mapper(series)
    lines = [mapper.polyline(x, y, PALETTE[i % len(PALETTE)])
             for i, (x, y) in enumerate(series)]
    return lines, mapper


def _waterfall_body(matrix):
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.size == 0:
        raise EmptyData("waterfall needs a non-empty 2-D matrix")
    amplitude = np.abs(matrix).max() or 1.0
    step = 1.25 * amplitude
    x = np.arange(matrix.shape[1], dtype=np.float64)
    series = [(x, row + i * step) for i, row in enumerate(matrix)]
    mapper = _Mapper(series)
    lines = [mapper.polyline(x, y, PALETTE[0]) for x, y in series]
    return lines, mapper


def _scatter_body(data):
    series = _as_series([data])
    mapper = _Mapper(series)
    x, y = series[0]
    dots = [f'<circle cx="{mapper.px(a):.2f}" cy="{mapper.py(b):.2f}" r="3.5" '
            f'fill="{PALETTE[1]}" />' for a, b in zip(x, y)]
    return dots, mapper


def _axis_text(mapper):
    left, right, bottom, top = MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN
    parts = [
        f'<rect x="{left}" y="{top}" width="{right - left}" height="{bottom - top}" '
        'fill="none" stroke="#444444" stroke-width="1" />'
    ]
    for frac in (0.0, 0.5, 1.0):
        xv = mapper.x_min + frac * (mapper.x_max - mapper.x_min)
        yv = mapper.y_min + frac * (mapper.y_max - mapper.y_min)
        xp = left + frac * (right - left)
        yp = bottom - frac * (bottom - top)
        parts.append(f'<line x1="{xp:.2f}" y1="{bottom}" x2="{xp:.2f}" y2="{bottom + 5}" '
                     'stroke="#444444" stroke-width="1" />')
        parts.append(f'<text x="{xp:.2f}" y="{bottom + 20}" font-size="12" '
                     f'text-anchor="middle" fill="#333333">{xv:.3g}</text>')
        parts.append(f'<line x1="{left - 5}" y1="{yp:.2f}" x2="{left}" y2="{yp:.2f}" '
                     'stroke="#444444" stroke-width="1" />')
        parts.append(f'<text x="{left - 9}" y="{yp + 4:.2f}" font-size="12" '
                     f'text-anchor="end" fill="#333333">{yv:.3g}</text>')
    return parts


def _document(body, title, x_label, y_label):
    elements, mapper = body
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">',
        f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff" />',
    ]
    parts.extend(_axis_text(mapper))
    if title:
        parts.append(f'<text x="{WIDTH // 2}" y="30" font-size="16" text-anchor="middle" '
                     f'fill="#111111">{title}</text>')
    if x_label:
        parts.append(f'<text x="{WIDTH // 2}" y="{HEIGHT - 12}" font-size="13" '
                     f'text-anchor="middle" fill="#333333">{x_label}</text>')
    if y_label:
        parts.append(f'<text x="18" y="{HEIGHT // 2}" font-size="13" text-anchor="middle" '
                     f'transform="rotate(-90 18 {HEIGHT // 2})" fill="#333333">{y_label}</text>')
    parts.extend(elements)
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
