import numpy as np
import pytest

from pulsatio import AnalysisConfig, Signal, detrend, load_signal, read_table, write_table
from pulsatio.errors import (
    EmptySignal,
    InvalidParameter,
    LengthMismatch,
    MissingFile,
    ParseError,
    RaggedRows,
)


class TestSignal:
    def test_basic_fields(self):
        s = Signal([1.0, 2.0, 3.0], 100.0, label="x")
        assert len(s) == 3
        assert s.duration_s == pytest.approx(0.03)
        assert np.allclose(s.times(), [0.0, 0.01, 0.02])

    def test_rejects_bad_rate(self):
        with pytest.raises(InvalidParameter):
            Signal([1.0], 0.0)

    def test_rejects_nan(self):
        with pytest.raises(InvalidParameter):
            Signal([1.0, np.nan], 100.0)

    def test_rejects_empty(self):
        with pytest.raises(EmptySignal):
            Signal([], 100.0)


class TestLoadSignal:
    def test_plain_rows(self, tmp_path):
        p = tmp_path / "sig.csv"
        p.write_text("1.0\n2.0\n3.0\n")
        s = load_signal(p, 100.0)
        assert np.array_equal(s.samples, [1.0, 2.0, 3.0])
        assert s.sample_rate_hz == 100.0

    def test_header_skipped(self, tmp_path):
        p = tmp_path / "sig.csv"
        p.write_text("acc\n0.5\n")
        s = load_signal(p, 500.0)
        assert np.array_equal(s.samples, [0.5])

    def test_crlf_accepted(self, tmp_path):
        p = tmp_path / "sig.csv"
        p.write_bytes(b"acc\r\n0.5\r\n1.5\r\n")
        assert np.array_equal(load_signal(p, 500.0).samples, [0.5, 1.5])

    def test_malformed_row_reports_position(self, tmp_path):
        p = tmp_path / "sig.csv"
        p.write_text("1.0\nabc\n")
        with pytest.raises(ParseError) as err:
            load_signal(p, 100.0)
        assert err.value.row == 2

    def test_missing_file(self, tmp_path):
        with pytest.raises(MissingFile):
            load_signal(tmp_path / "nope.csv", 100.0)

    def test_header_only_is_empty(self, tmp_path):
        p = tmp_path / "sig.csv"
        p.write_text("acc\n")
        with pytest.raises(EmptySignal):
            load_signal(p, 100.0)


class TestWriteTable:
    def test_identity_matrix(self, tmp_path):
        p = tmp_path / "t.csv"
        write_table(p, [[1.0, 0.0], [0.0, 1.0]], ["a", "b"])
        assert p.read_text() == "a,b\n1.0,0.0\n0.0,1.0\n"

    def test_round_trip_exact(self, tmp_path, rng):
        p = tmp_path / "t.csv"
        matrix = rng.normal(size=(7, 4)) * 10.0 ** rng.integers(-8, 8, size=(7, 4))
        write_table(p, matrix, [f"c{i}" for i in range(4)])
        labels, back = read_table(p)
        assert labels == ["c0", "c1", "c2", "c3"]
        # repr formatting round-trips bit-for-bit, far inside the 1e-9 contract
        assert np.array_equal(back, matrix)

    def test_single_column_round_trips_through_load(self, tmp_path, rng):
        p = tmp_path / "t.csv"
        col = rng.normal(size=50)
        write_table(p, [[v] for v in col], ["acc"])
        s = load_signal(p, 250.0)
        assert np.array_equal(s.samples, col)

    def test_ragged_rows(self, tmp_path):
        with pytest.raises(RaggedRows):
            write_table(tmp_path / "t.csv", [[1.0], [1.0, 2.0]], ["a"])

    def test_label_count_mismatch(self, tmp_path):
        with pytest.raises(LengthMismatch):
            write_table(tmp_path / "t.csv", [[1.0, 2.0]], ["a"])


class TestDetrend:
    def test_constant_mean(self):
        s = Signal([1.0, 1.0, 1.0, 1.0], 10.0)
        assert np.allclose(detrend(s, "mean").samples, 0.0, atol=1e-15)

    def test_exact_line(self):
        s = Signal([0.0, 1.0, 2.0, 3.0], 10.0)
        assert np.allclose(detrend(s, "linear").samples, 0.0, atol=1e-12)

    def test_mean_mode_zeroes_mean(self, rng):
        s = Signal(rng.normal(size=4096), 10.0)
        out = detrend(s, "mean")
        rms = np.sqrt(np.mean(s.samples**2))
        assert abs(out.samples.mean()) < 1e-12 * rms

    def test_idempotent(self, rng):
        s = Signal(rng.normal(size=512), 10.0)
        once = detrend(s, "mean")
        twice = detrend(once, "mean")
        assert np.allclose(once.samples, twice.samples, atol=1e-12)

    def test_linear_needs_two_samples(self):
        with pytest.raises(EmptySignal):
            detrend(Signal([1.0], 10.0), "linear")


class TestAnalysisConfig:
    def test_defaults_valid(self):
        cfg = AnalysisConfig()
        assert cfg.modwpt_level == 4
        assert 0.0 in cfg.q_grid

    def test_q_grid_must_contain_zero(self):
        with pytest.raises(InvalidParameter):
            AnalysisConfig(q_grid=(0.5, 1.0, 1.5, 2.0))

    def test_q_grid_must_increase(self):
        with pytest.raises(InvalidParameter):
            AnalysisConfig(q_grid=(1.0, 0.0, -1.0))

    def test_scale_range_validation(self):
        with pytest.raises(InvalidParameter):
            AnalysisConfig(scale_range=(1, 5))

    def test_json_round_trip(self, tmp_path):
        cfg = AnalysisConfig(ar_order=6, scg_band_hz=(2.0, 30.0))
        p = tmp_path / "cfg.json"
        import json

        p.write_text(json.dumps(cfg.to_dict()))
        back = AnalysisConfig.from_json_file(p)
        assert back.ar_order == 6
        assert back.scg_band_hz == (2.0, 30.0)
        assert tuple(back.q_grid) == tuple(cfg.q_grid)
