"""Averaged-periodogram PSD, spectrogram, and dominant-frequency extraction."""

from dataclasses import dataclass

import numpy as np
from scipy import signal as sps

from .errors import EmptyBand, InvalidParameter, SignalTooShort


@dataclass(frozen=True)
class PowerSpectrum:
    freqs_hz: np.ndarray
    power: np.ndarray  # units^2 / Hz, one-sided
    resolution_hz: float
    window_name: str = "hann"


@dataclass(frozen=True)
class Spectrogram:
    freqs_hz: np.ndarray
    times_s: np.ndarray
    power: np.ndarray  # shape (freq, time); each column is one windowed spectrum


def welch_psd(signal, segment_s=2.0, overlap_fraction=0.5):
    """One-sided Hann-windowed averaged periodogram (density scaling).

    No per-segment detrending is applied, so the integral of the PSD tracks
    the signal's mean power (Parseval within windowing bias).
    """
    if not (0 <= overlap_fraction < 1):
        raise InvalidParameter("overlap fraction must lie in [0, 1)")
    fs = signal.sample_rate_hz
    nperseg = int(round(segment_s * fs))
    nperseg -= nperseg % 2  # even segment => frequency grid ends exactly at fs/2
    if nperseg < 16:
        raise SignalTooShort("Welch segments must hold at least 16 samples")
    if nperseg > len(signal):
        raise SignalTooShort(f"segment of {nperseg} samples exceeds signal length {len(signal)}")
    freqs, power = sps.welch(signal.samples, fs=fs, window="hann", nperseg=nperseg,
                             noverlap=int(nperseg * overlap_fraction),
                             detrend=False, scaling="density")
    return PowerSpectrum(freqs, power, resolution_hz=freqs[1] - freqs[0])


def spectrogram(signal, window_s, hop_s):
    """Short-time one-sided power spectra at hop intervals.

    Column count is floor((N - window) / hop) + 1; no boundary padding.
    """
    if hop_s <= 0 or window_s < hop_s:
        raise InvalidParameter("need window_s >= hop_s > 0")
    fs = signal.sample_rate_hz
    nwin = int(round(window_s * fs))
    nhop = int(round(hop_s * fs))
    nwin -= nwin % 2
    if nwin < 16:
        raise SignalTooShort("spectrogram window must hold at least 16 samples")
    if nwin > len(signal):
        raise SignalTooShort(f"window of {nwin} samples exceeds signal length {len(signal)}")
    freqs, times, power = sps.spectrogram(signal.samples, fs=fs, window="hann",
                                          nperseg=nwin, noverlap=nwin - nhop,
                                          detrend=False, scaling="density",
                                          mode="psd")
    return Spectrogram(freqs, times, power)


def dominant_frequency(ps, band_hz):
    """Frequency of maximum power within a band; ties resolve to the lower frequency."""
    lo, hi = band_hz
    mask = (ps.freqs_hz >= lo) & (ps.freqs_hz <= hi)
    if not np.any(mask):
        raise EmptyBand(f"band {band_hz} Hz does not intersect the spectrum")
    freqs = ps.freqs_hz[mask]
    power = ps.power[mask]
    top = power.max()
    # treat near-exact ties as ties so the lower-frequency rule is stable
    candidates = power >= top - 1e-9 * max(top, 1e-300)
    return float(freqs[candidates][0])
