"""Zero-phase band-limiting and low-frequency gross-acceleration analysis."""

from dataclasses import dataclass

import numpy as np
from scipy import signal as sps

from .core import Signal
from .errors import (
    InvalidCutoff,
    InvalidParameter,
    NoPeakInBand,
    SignalTooShort,
    WindowTooShort,
)

RESPIRATION_BAND_HZ = (0.1, 0.5)
RESPIRATION_MIN_PEAK_RATIO = 10.0


@dataclass(frozen=True)
class FilterSpec:
    """Recursive filter description: Butterworth of ``order`` poles per pass."""

    kind: str
    cutoffs_hz: tuple
    order: int = 4

    def __post_init__(self):
        if self.kind not in ("lowpass", "bandpass"):
            raise InvalidParameter(f"unknown filter kind {self.kind!r}")
        cut = tuple(float(c) for c in self.cutoffs_hz)
        expected = 1 if self.kind == "lowpass" else 2
        if len(cut) != expected:
            raise InvalidCutoff(f"{self.kind} needs {expected} cutoff(s), got {cut}")
        if self.order < 1:
            raise InvalidParameter("filter order must be positive")
        object.__setattr__(self, "cutoffs_hz", cut)

    def validate_for(self, sample_rate_hz):
        nyquist = sample_rate_hz / 2.0
        for c in self.cutoffs_hz:
            if not (0 < c < nyquist):
                raise InvalidCutoff(f"cutoff {c} Hz outside (0, {nyquist}) Hz")
        if self.kind == "bandpass" and not (self.cutoffs_hz[0] < self.cutoffs_hz[1]):
            raise InvalidCutoff(f"bandpass cutoffs must increase, got {self.cutoffs_hz}")

    def sos(self, sample_rate_hz):
        self.validate_for(sample_rate_hz)
        cutoffs = self.cutoffs_hz if self.kind == "bandpass" else self.cutoffs_hz[0]
        return sps.butter(self.order, cutoffs, btype=self.kind, fs=sample_rate_hz,
                          output="sos")


def zero_phase_filter(signal, spec):
    """Forward-backward (zero net phase) recursive filtering.

    The input is odd-reflection padded before the two passes (scipy's
    sosfiltfilt default), which suppresses the startup transients; output
    length equals input length.
    """
    if len(signal) <= 3 * spec.order:
        raise SignalTooShort(f"need more than {3 * spec.order} samples, got {len(signal)}")
    sos = spec.sos(signal.sample_rate_hz)
    pad = 3 * (2 * sos.shape[0] + 1)
    if len(signal) <= pad:
        raise SignalTooShort(f"need more than {pad} samples for edge padding, got {len(signal)}")
    filtered = sps.sosfiltfilt(sos, signal.samples, padtype="odd", padlen=pad)
    return signal.with_samples(filtered)


def gross_acceleration(signal, cutoff_hz=3.0):
    """Low-pass component of the raw signal (respiration / posture / activity band)."""
    spec = FilterSpec("lowpass", (cutoff_hz,), order=4)
    out = zero_phase_filter(signal, spec)
    return Signal(out.samples, out.sample_rate_hz, out.start_time_s,
                  label=(signal.label + "/gross").lstrip("/"))


def respiration_rate(gross, band_hz=RESPIRATION_BAND_HZ,
                     min_peak_ratio=RESPIRATION_MIN_PEAK_RATIO):
    """Breathing rate (breaths/min) from the dominant spectral peak in band.

    The peak must stand out from the in-band median power by
    ``min_peak_ratio``, otherwise NoPeakInBand is raised (flat/noise input).
    Peak location is refined by quadratic interpolation of adjacent bins.
    """
    fs = gross.sample_rate_hz
    if len(gross) < 30 * fs:
        raise SignalTooShort("respiration estimate needs at least 30 s of signal")
    nperseg = int(min(len(gross), round(30 * fs)))
    freqs, power = sps.welch(gross.samples, fs=fs, window="hann", nperseg=nperseg,
                             noverlap=nperseg // 2, detrend="constant")
    lo, hi = band_hz
    mask = (freqs >= lo) & (freqs <= hi)
    if not np.any(mask):
        raise NoPeakInBand(f"band {band_hz} Hz holds no spectral bins")
    band_power = power[mask]
    band_freqs = freqs[mask]
    peak = int(np.argmax(band_power))
    median = np.median(band_power)
    if median <= 0 or band_power[peak] < min_peak_ratio * median:
        raise NoPeakInBand("no sufficiently prominent respiratory peak")
    freq = _interpolate_peak(band_freqs, band_power, peak)
    return 60.0 * freq


def _interpolate_peak(freqs, power, index):
    if index == 0 or index == power.size - 1:
        return freqs[index]
    y0, y1, y2 = power[index - 1 : index + 2]
    denom = y0 - 2 * y1 + y2
    if denom == 0:
        return freqs[index]
    shift = 0.5 * (y0 - y2) / denom
    shift = float(np.clip(shift, -0.5, 0.5))
    return freqs[index] + shift * (freqs[1] - freqs[0])


def activity_index(gross, window_s):
    """RMS per non-overlapping window; a trailing partial window is dropped."""
    fs = gross.sample_rate_hz
    window = int(round(window_s * fs))
    if window < 2:
        raise WindowTooShort(f"window of {window} samples is too short")
    count = len(gross) // window
    if count == 0:
        return np.empty(0)
    trimmed = gross.samples[: count * window].reshape(count, window)
    return np.sqrt(np.mean(trimmed**2, axis=1))
