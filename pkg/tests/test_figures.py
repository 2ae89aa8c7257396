import re

import numpy as np
import pytest

from pulsatio.errors import EmptyData, InvalidParameter
from pulsatio.figures import emit_figure


def polylines(svg_text):
    return re.findall(r"<polyline[^>]*points=\"([^\"]*)\"", svg_text)


def mean_y(points_attr):
    ys = [float(pair.split(",")[1]) for pair in points_attr.split()]
    return np.mean(ys)


class TestLineFigures:
    def test_flat_line_single_polyline(self, tmp_path):
        path = tmp_path / "f.svg"
        x = np.arange(10.0)
        emit_figure([(x, np.zeros(10))], "line", path, title="flat")
        text = path.read_text()
        assert text.startswith("<?xml")
        assert text.rstrip().endswith("</svg>")
        assert len(polylines(text)) == 1

    def test_two_series_two_polylines(self, tmp_path):
        path = tmp_path / "f.svg"
        x = np.arange(20.0)
        emit_figure([(x, np.sin(x)), (x, np.cos(x))], "line", path)
        assert len(polylines(path.read_text())) == 2

    def test_deterministic_bytes(self, tmp_path):
        x = np.linspace(0, 1, 50)
        y = np.sin(7 * x)
        p1, p2 = tmp_path / "a.svg", tmp_path / "b.svg"
        emit_figure([(x, y)], "line", p1, title="t")
        emit_figure([(x, y)], "line", p2, title="t")
        assert p1.read_bytes() == p2.read_bytes()

    def test_empty_rejected(self, tmp_path):
        with pytest.raises(EmptyData):
            emit_figure([], "line", tmp_path / "f.svg")
        with pytest.raises(EmptyData):
            emit_figure([(np.array([]), np.array([]))], "line", tmp_path / "f.svg")


class TestWaterfall:
    def test_rows_become_offset_polylines(self, tmp_path, rng):
        path = tmp_path / "w.svg"
        matrix = rng.normal(size=(10, 40))
        emit_figure(matrix, "waterfall_ridges", path)
        lines = polylines(path.read_text())
        assert len(lines) == 10
        # earliest row at the bottom: larger SVG y for row 0, monotone upward
        offsets = [mean_y(p) for p in lines]
        assert all(a > b for a, b in zip(offsets, offsets[1:]))

    def test_empty_matrix(self, tmp_path):
        with pytest.raises(EmptyData):
            emit_figure(np.empty((0, 0)), "waterfall_ridges", tmp_path / "w.svg")


class TestScatter:
    def test_circle_count(self, tmp_path):
        path = tmp_path / "s.svg"
        emit_figure((np.arange(8.0), np.arange(8.0) ** 2), "scatter", path)
        assert path.read_text().count("<circle") == 8

    def test_unknown_kind(self, tmp_path):
        with pytest.raises(InvalidParameter):
            emit_figure([(np.arange(3.0), np.arange(3.0))], "pie", tmp_path / "p.svg")
