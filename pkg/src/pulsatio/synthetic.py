"""Deterministic synthetic test signals: SCG-like beats, fBm, binomial cascades."""

import numpy as np

from .core import DEFAULT_SAMPLE_RATE_HZ, Signal
from .errors import InvalidParameter

# morphology of one synthetic beat: a strong early vibration burst and a
# weaker late one.  The late burst sits 0.15 s after the anchor so that it
# falls inside the detector's 0.3 s refractory window and cannot spawn a
# second fiducial.
SYSTOLIC_FREQ_HZ = 25.0
SYSTOLIC_SIGMA_S = 0.022
DIASTOLIC_FREQ_HZ = 15.0
DIASTOLIC_SIGMA_S = 0.035
DIASTOLIC_DELAY_S = 0.15
DIASTOLIC_RELATIVE_AMP = 0.4
DRIFT_AMPLITUDE = 0.1
BEAT_AMPLITUDE_MODULATION = 0.3


def synthesize_scg(duration_s, heart_rate_bpm, resp_rate_bpm, noise_std, seed,
                   sample_rate_hz=DEFAULT_SAMPLE_RATE_HZ):
    """Generate an SCG-like accelerometry trace.

    Each beat is a pair of Gaussian-windowed tone bursts whose amplitude is
    modulated by a respiratory sinusoid; a low-frequency respiratory drift and
    white noise of the given standard deviation are added.  The output is a
    pure function of the arguments.
    """
    if duration_s <= 0 or heart_rate_bpm <= 0 or resp_rate_bpm <= 0:
        raise InvalidParameter("duration and rates must be positive")
    if noise_std < 0:
        raise InvalidParameter("noise_std must be non-negative")
    if sample_rate_hz <= 0:
        raise InvalidParameter("sample rate must be positive")

    fs = float(sample_rate_hz)
    n = int(round(duration_s * fs))
    t = np.arange(n) / fs
    resp_hz = resp_rate_bpm / 60.0
    x = DRIFT_AMPLITUDE * np.sin(2 * np.pi * resp_hz * t)

    period = 60.0 / heart_rate_bpm
    k = 0
    while True:
        center = (k + 0.5) * period
        if center >= duration_s:
            break
        amp = 1.0 + BEAT_AMPLITUDE_MODULATION * np.sin(2 * np.pi * resp_hz * center)
        _add_burst(x, t, center, amp, SYSTOLIC_FREQ_HZ, SYSTOLIC_SIGMA_S, fs)
        _add_burst(x, t, center + DIASTOLIC_DELAY_S, amp * DIASTOLIC_RELATIVE_AMP,
                   DIASTOLIC_FREQ_HZ, DIASTOLIC_SIGMA_S, fs)
        k += 1

    if noise_std > 0:
        rng = np.random.default_rng(seed)
        x += rng.normal(0.0, noise_std, n)
    return Signal(x, fs, label=f"synthetic-scg(hr={heart_rate_bpm},seed={seed})")


def _add_burst(x, t, center, amplitude, freq_hz, sigma_s, fs):
    lo = max(0, int((center - 5 * sigma_s) * fs))
    hi = min(t.size, int((center + 5 * sigma_s) * fs) + 1)
    if lo >= hi:
        return
    tt = t[lo:hi] - center
    x[lo:hi] += amplitude * np.exp(-0.5 * (tt / sigma_s) ** 2) * np.sin(2 * np.pi * freq_hz * tt)


def fractional_brownian_motion(n, hurst, seed):
    """Sample an fBm path of length n by circulant embedding (Davies-Harte).

    The returned path starts at 0 and has unit-variance increments.
    """
    if not (0 < hurst < 1):
        raise InvalidParameter("hurst must lie in (0, 1)")
    if n < 2:
        raise InvalidParameter("need at least two samples")
    # fGn autocovariance gamma(k), embedded in a length-2n circulant
    k = np.arange(n + 1, dtype=np.float64)
    gamma = 0.5 * ((k + 1) ** (2 * hurst) - 2 * k ** (2 * hurst)
                   + np.abs(k - 1) ** (2 * hurst))
    row = np.concatenate([gamma, gamma[-2:0:-1]])
    eigenvalues = np.fft.fft(row).real
    # the embedding is non-negative definite for 0 < H < 1; clip rounding dust
    eigenvalues = np.maximum(eigenvalues, 0.0)

    rng = np.random.default_rng(seed)
    m = 2 * n
    z = rng.normal(size=m) + 1j * rng.normal(size=m)
    spectrum = np.sqrt(eigenvalues / (2 * m)) * z
    fgn = np.fft.fft(spectrum).real[:n] * np.sqrt(2.0)
    return np.concatenate([[0.0], np.cumsum(fgn)])[:n]


def binomial_cascade(levels, weight_low=0.3, seed=0):
    """Binomial multiplicative cascade measure on 2**levels dyadic intervals.

    Every interval splits its mass between its two children with weights
    (weight_low, 1 - weight_low) in an order drawn uniformly per split.
    Returns the per-interval masses (summing to 1); cumulative-sum the result
    to obtain the cascade distribution path.
    """
    if not (0 < weight_low < 1):
        raise InvalidParameter("weight_low must lie in (0, 1)")
    if levels < 1:
        raise InvalidParameter("levels must be positive")
    rng = np.random.default_rng(seed)
    mass = np.array([1.0])
    w0, w1 = weight_low, 1.0 - weight_low
    for _ in range(levels):
        flips = rng.integers(0, 2, mass.size)
        left = np.where(flips == 0, w0, w1)
        children = np.empty(2 * mass.size)
        children[0::2] = mass * left
        children[1::2] = mass * (1.0 - left)
        mass = children
    return mass
