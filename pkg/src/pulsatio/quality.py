"""Signal-quality indices for non-sinusoidal biosignals."""

from dataclasses import dataclass

import numpy as np
from scipy import signal as sps

from .beats import pearson
from .errors import ConstantInput, InvalidParameter, LengthMismatch, SignalTooShort


def template_correlation_sqi(beat, template):
    """Pearson correlation of a window against the template beat."""
    beat = np.asarray(beat, dtype=np.float64)
    template = np.asarray(template, dtype=np.float64)
    if beat.size != template.size:
        raise LengthMismatch(f"window length {beat.size} != template length {template.size}")
    if np.ptp(beat) == 0 or np.ptp(template) == 0:
        raise ConstantInput("correlation is undefined for constant inputs")
    return pearson(beat, template)


def kurtosis_sqi(window):
    """Excess kurtosis (fourth standardized moment minus 3), population moments."""
    window = np.asarray(window, dtype=np.float64)
    if window.size < 4:
        raise InvalidParameter("kurtosis needs at least 4 samples")
    centered = window - window.mean()
    m2 = np.mean(centered**2)
    if m2 == 0.0:
        raise ConstantInput("kurtosis is undefined for constant inputs")
    return float(np.mean(centered**4) / m2**2 - 3.0)


def spectral_entropy_sqi(window, sample_rate_hz):
    """Shannon entropy of the normalized Welch PSD, scaled to [0, 1] by ln(bins)."""
    window = np.asarray(window, dtype=np.float64)
    if window.size < 64:
        raise SignalTooShort("spectral entropy needs at least 64 samples")
    nperseg = min(256, window.size)
    freqs, power = sps.welch(window, fs=sample_rate_hz, window="hann", nperseg=nperseg,
                             noverlap=nperseg // 2, detrend=False)
    total = power.sum()
    if total == 0.0:
        raise ConstantInput("spectral entropy is undefined for an all-zero PSD")
    p = power / total
    p = p[p > 0.0]
    return float(-np.sum(p * np.log(p)) / np.log(power.size))


def composite_sqi(template_correlation, spectral_entropy, kurtosis):
    """Mean of three clamped sub-indices; higher means cleaner.

    Terms: max(correlation, 0); 1 - spectral entropy clamped to [0, 1];
    excess kurtosis / 10 clamped to [0, 1].
    """
    terms = (
        max(float(template_correlation), 0.0),
        float(np.clip(1.0 - spectral_entropy, 0.0, 1.0)),
        float(np.clip(kurtosis / 10.0, 0.0, 1.0)),
    )
    return sum(terms) / 3.0


@dataclass(frozen=True)
class QualityReport:
    window_index: int
    template_correlation_sqi: float
    kurtosis_sqi: float
    spectral_entropy_sqi: float
    composite: float


def assess_window(window, template, sample_rate_hz, window_index=0):
    corr = template_correlation_sqi(window, template)
    kurt = kurtosis_sqi(window)
    entropy = spectral_entropy_sqi(window, sample_rate_hz)
    return QualityReport(window_index, corr, kurt, entropy,
                         composite_sqi(corr, entropy, kurt))


def assess_signal(signal, template):
    """Quality report per contiguous non-overlapping template-length window."""
    template = np.asarray(template, dtype=np.float64)
    width = template.size
    if width < 64:
        raise SignalTooShort("template must hold at least 64 samples")
    count = len(signal) // width
    reports = []
    for i in range(count):
        window = signal.samples[i * width : (i + 1) * width]
        try:
            reports.append(assess_window(window, template, signal.sample_rate_hz, i))
        except ConstantInput:
            continue  # silent stretches carry no quality information
    return reports
