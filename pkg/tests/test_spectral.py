import numpy as np
import pytest

from pulsatio import Signal, dominant_frequency, spectrogram, welch_psd
from pulsatio.errors import EmptyBand, InvalidParameter, SignalTooShort

FS = 500.0


def tone(freq, duration, amp=1.0, fs=FS):
    t = np.arange(int(duration * fs)) / fs
    return Signal(amp * np.sin(2 * np.pi * freq * t), fs)


class TestWelchPsd:
    def test_peak_location(self):
        ps = welch_psd(tone(20.0, 10.0), segment_s=2.0)
        peak = ps.freqs_hz[np.argmax(ps.power)]
        assert abs(peak - 20.0) <= ps.resolution_hz

    def test_parseval_on_noise(self, rng):
        s = Signal(rng.normal(size=int(60 * FS)), FS)
        ps = welch_psd(s, 2.0, 0.5)
        integral = np.trapezoid(ps.power, ps.freqs_hz)
        assert integral == pytest.approx(s.samples.var(), rel=0.10)

    def test_zero_signal(self):
        ps = welch_psd(Signal(np.zeros(4096), FS))
        assert np.allclose(ps.power, 0.0)

    def test_non_negative_and_grid(self, rng):
        ps = welch_psd(Signal(rng.normal(size=4096), FS))
        assert np.all(ps.power >= 0)
        assert ps.freqs_hz[0] == 0.0
        assert ps.freqs_hz[-1] == pytest.approx(FS / 2)
        assert np.all(np.diff(ps.freqs_hz) > 0)

    def test_too_short(self):
        with pytest.raises(SignalTooShort):
            welch_psd(Signal(np.ones(8), FS), segment_s=0.01)


class TestSpectrogram:
    def test_stationary_tone_columns_equal(self):
        sg = spectrogram(tone(20.0, 10.0), 1.0, 0.5)
        ref = sg.power[:, sg.power.shape[1] // 2]
        for col in range(1, sg.power.shape[1] - 1):  # edge columns see the taper
            assert np.allclose(sg.power[:, col], ref, rtol=0.01, atol=1e-12 * ref.max())

    def test_switching_tone(self):
        fs = FS
        t = np.arange(int(10 * fs)) / fs
        x = np.where(t < 5.0, np.sin(2 * np.pi * 10 * t), np.sin(2 * np.pi * 30 * t))
        sg = spectrogram(Signal(x, fs), 1.0, 0.5)
        cols = sg.power.shape[1]
        early = sg.freqs_hz[np.argmax(sg.power[:, cols // 4])]
        late = sg.freqs_hz[np.argmax(sg.power[:, 3 * cols // 4])]
        assert early == pytest.approx(10.0, abs=1.5)
        assert late == pytest.approx(30.0, abs=1.5)

    def test_column_count(self):
        sg = spectrogram(tone(5.0, 10.0), 1.0, 0.5)
        assert sg.power.shape[1] == 19

    def test_time_shift_shifts_columns(self, rng):
        x = rng.normal(size=int(10 * FS))
        hop = int(0.5 * FS)
        base = spectrogram(Signal(x, FS), 1.0, 0.5)
        moved = spectrogram(Signal(np.roll(x, hop), FS), 1.0, 0.5)
        # one hop of delay moves every interior column one slot later
        assert np.allclose(moved.power[:, 2:-2], base.power[:, 1:-3], rtol=1e-10)

    def test_bad_hop(self):
        with pytest.raises(InvalidParameter):
            spectrogram(tone(5.0, 10.0), 0.5, 1.0)


class TestDominantFrequency:
    def test_pure_tone(self):
        ps = welch_psd(tone(20.0, 10.0), 2.0)
        f = dominant_frequency(ps, (1.0, 40.0))
        assert abs(f - 20.0) <= ps.resolution_hz

    def test_tie_break_toward_lower(self):
        t = np.arange(int(20 * FS)) / FS
        x = Signal(np.sin(2 * np.pi * 10 * t) + np.sin(2 * np.pi * 30 * t), FS)
        ps = welch_psd(x, 2.0)
        f = dominant_frequency(ps, (1.0, 40.0))
        assert f == pytest.approx(10.0, abs=2 * ps.resolution_hz)

    def test_empty_band(self):
        s = tone(20.0, 10.0, fs=100.0)
        ps = welch_psd(s, 2.0)
        with pytest.raises(EmptyBand):
            dominant_frequency(ps, (100.0, 200.0))
