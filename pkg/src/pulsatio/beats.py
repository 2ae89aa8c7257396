"""Beat detection, segmentation, rejection, ensembling, and waterfall matrices."""

from dataclasses import dataclass, replace

import numpy as np
from scipy import signal as sps

from .core import load_signal
from .errors import (
    AllBeatsRejected,
    InvalidParameter,
    LengthMismatch,
    NoBeatsFound,
    NoCompleteBeats,
    NoEligibleBeats,
)

ENVELOPE_WINDOW_S = 0.1
REFRACTORY_S = 0.3
MAD_MULTIPLIER = 1.5
# With sparse bursts the envelope is baseline-dominated, so median + 1.5 MAD
# sits barely above the noise floor (and at exactly 0 for noise-free input).
# The floor, a fraction of the near-peak envelope level, rejects noise bumps
# and edge transients while staying far below any plausible beat.
ENVELOPE_FLOOR_FRACTION = 0.2
ENVELOPE_PEAK_PERCENTILE = 99.5


@dataclass(frozen=True)
class FiducialSeries:
    indices: np.ndarray
    anchor_kind: str = "internal_envelope"

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64)
        if idx.size and np.any(np.diff(idx) <= 0):
            raise InvalidParameter("fiducial indices must strictly increase")
        object.__setattr__(self, "indices", idx)

    def __len__(self):
        return self.indices.size


@dataclass(frozen=True)
class BeatMatrix:
    """Time-aligned per-beat segments: rows = beats, columns = samples."""

    beats: np.ndarray
    fs: float
    window: tuple  # (pre_s, post_s) around the anchor
    anchor_indices: np.ndarray
    accepted: np.ndarray

    @property
    def n_beats(self):
        return self.beats.shape[0]

    @property
    def n_samples(self):
        return self.beats.shape[1]

    def times(self):
        """Column times relative to the anchor, in seconds."""
        pre, _post = self.window
        return np.arange(self.n_samples) / self.fs - pre


@dataclass(frozen=True)
class TemplateReport:
    template: np.ndarray
    per_beat_correlation: np.ndarray
    per_beat_rms_residual: np.ndarray


def detect_fiducials(filtered, config):
    """Anchor beats at peaks of the smoothed rectified envelope.

    Expects a band-limited input.  Peaks must clear median + 1.5*MAD of the
    envelope and respect a 0.3 s refractory interval.
    """
    fs = filtered.sample_rate_hz
    window = max(1, int(round(ENVELOPE_WINDOW_S * fs)))
    envelope = np.convolve(np.abs(filtered.samples), np.ones(window) / window, mode="same")
    median = np.median(envelope)
    mad = np.median(np.abs(envelope - median))
    threshold = max(median + MAD_MULTIPLIER * mad,
                    ENVELOPE_FLOOR_FRACTION * np.percentile(envelope, ENVELOPE_PEAK_PERCENTILE))
    distance = max(1, int(round(REFRACTORY_S * fs)))
    peaks, _ = sps.find_peaks(envelope, height=threshold, distance=distance)
    if peaks.size == 0:
        raise NoBeatsFound("no envelope peaks above the adaptive threshold")
    return FiducialSeries(peaks, anchor_kind="internal_envelope")


def read_fiducials(path):
    """External anchors from a single-column CSV of sample indices."""
    raw = load_signal(path, sample_rate_hz=1.0)
    indices = np.asarray(np.round(raw.samples), dtype=np.int64)
    return FiducialSeries(indices, anchor_kind="external")


def segment_beats(signal, fiducials, pre_s, post_s):
    """Cut a window around each anchor; windows crossing the bounds are dropped."""
    if pre_s < 0 or post_s < 0 or pre_s + post_s <= 0:
        raise InvalidParameter("window must satisfy pre, post >= 0 and pre + post > 0")
    fs = signal.sample_rate_hz
    offset = int(round(pre_s * fs))
    length = int(round((pre_s + post_s) * fs))
    n = len(signal)
    rows = []
    kept_anchors = []
    for anchor in np.asarray(fiducials.indices):
        start = int(anchor) - offset
        if start < 0 or start + length > n:
            continue
        rows.append(signal.samples[start : start + length])
        kept_anchors.append(int(anchor))
    if not rows:
        raise NoCompleteBeats("every beat window crossed the signal bounds")
    beats = np.vstack(rows)
    return BeatMatrix(beats, fs, (pre_s, post_s), np.asarray(kept_anchors, dtype=np.int64),
                      np.ones(len(rows), dtype=bool))


def _column_mean(rows):
    """Column mean anchored on the first row.

    Mathematically identical to rows.mean(axis=0) but exact when all rows are
    equal (the deviations are exactly zero), which the template and ensemble
    contracts rely on.
    """
    anchor = rows[0]
    return anchor + (rows - anchor).mean(axis=0)


def pearson(a, b):
    """Pearson correlation; 0 by convention when either input is constant."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    da = a - a.mean()
    db = b - b.mean()
    na = np.sqrt(da @ da)
    nb = np.sqrt(db @ db)
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float((da @ db) / (na * nb))


def make_template(beats, threshold):
    """Two-pass template: mean of all rows, then mean of rows correlating with it.

    The report carries every row's correlation and RMS residual against the
    final template, row-aligned with the input matrix.
    """
    rows = beats.beats
    provisional = _column_mean(rows)
    first_pass = np.array([pearson(row, provisional) for row in rows])
    passing = first_pass >= threshold
    if not np.any(passing):
        raise AllBeatsRejected(f"no beat reached correlation {threshold} with the provisional template")
    template = _column_mean(rows[passing])
    correlation = np.array([pearson(row, template) for row in rows])
    residual = np.sqrt(np.mean((rows - template) ** 2, axis=1))
    return TemplateReport(template, correlation, residual)


def reject_noisy(beats, template, threshold):
    """Flag rows whose correlation with the template falls below threshold.

    Rows are retained either way; only the accepted flags change.  This is the
    accept/reject labeling stage.
    """
    template = np.asarray(template, dtype=np.float64)
    if template.size != beats.n_samples:
        raise LengthMismatch(f"template length {template.size} != beat length {beats.n_samples}")
    accepted = np.array([pearson(row, template) >= threshold for row in beats.beats])
    return replace(beats, accepted=accepted)


def ensemble_average(beats, use_accepted_only=True):
    """Column-wise arithmetic mean over the eligible rows."""
    if use_accepted_only:
        rows = beats.beats[beats.accepted]
    else:
        rows = beats.beats
    if rows.shape[0] == 0:
        raise NoEligibleBeats("no rows eligible for ensemble averaging")
    return _column_mean(rows)


def waterfall(beats):
    """Chronological beat matrix with each row scaled to peak magnitude 1.

    All-zero rows are left untouched.  Intended for ridge-line rendering.
    """
    rows = beats.beats.copy()
    for i in range(rows.shape[0]):
        peak = np.abs(rows[i]).max()
        if peak > 0:
            rows[i] /= peak
    return rows
