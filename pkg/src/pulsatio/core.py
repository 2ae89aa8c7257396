"""Core waveform type, analysis configuration, CSV I/O, and detrending."""

import json
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (
    EmptySignal,
    InvalidParameter,
    IoError,
    LengthMismatch,
    MissingFile,
    ParseError,
    RaggedRows,
)

DEFAULT_SAMPLE_RATE_HZ = 500.0


@dataclass(frozen=True)
class Signal:
    """A uniformly sampled real-valued waveform.

    Parameters
    ----------
    samples : array
        Sample values; must be finite and non-empty.
    sample_rate_hz : float
        Sampling rate, > 0.
    start_time_s : float
        Time of the first sample.
    label : str
        Free-form channel label.
    """

    samples: np.ndarray
    sample_rate_hz: float
    start_time_s: float = 0.0
    label: str = ""

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.float64)
        if samples.ndim != 1 or samples.size < 1:
            raise EmptySignal("signal must hold at least one sample")
        if not np.all(np.isfinite(samples)):
            raise InvalidParameter("signal contains non-finite samples")
        if not (self.sample_rate_hz > 0):
            raise InvalidParameter(f"sample rate must be positive, got {self.sample_rate_hz}")
        object.__setattr__(self, "samples", samples)
        object.__setattr__(self, "sample_rate_hz", float(self.sample_rate_hz))

    def __len__(self):
        return self.samples.size

    @property
    def duration_s(self):
        return self.samples.size / self.sample_rate_hz

    def times(self):
        """Sample times in seconds."""
        return self.start_time_s + np.arange(self.samples.size) / self.sample_rate_hz

    def with_samples(self, samples, label=None):
        return replace(self, samples=np.asarray(samples, dtype=np.float64),
                       label=self.label if label is None else label)


def _default_q_grid():
    return tuple(np.round(np.arange(-5.0, 5.0 + 0.25, 0.5), 10))


@dataclass
class AnalysisConfig:
    """Tunable parameters shared by the pipeline stages.

    ``scale_range`` of None means "choose from the decomposition depth"
    (see multifractal.analyze).  ``entropy_log_base`` of None selects the
    natural logarithm.
    """

    scg_band_hz: tuple = (1.0, 40.0)
    acc_cutoff_hz: float = 3.0
    beat_window_s: tuple = (0.1, 0.5)
    rejection_threshold: float = 0.7
    ar_order: int = 4
    dwt_levels: int = 5
    modwpt_level: int = 4
    q_grid: tuple = field(default_factory=_default_q_grid)
    scale_range: tuple = None
    rng_seed: int = 0
    detail_wavelet: str = "db4"
    leader_wavelet: str = "db3"
    entropy_log_base: float = None

    def __post_init__(self):
        self.validate()

    def validate(self):
        low, high = self.scg_band_hz
        if not (0 < low < high):
            raise InvalidParameter(f"invalid SCG band {self.scg_band_hz}")
        pre, post = self.beat_window_s
        if pre < 0 or post < 0 or pre + post <= 0:
            raise InvalidParameter(f"invalid beat window {self.beat_window_s}")
        if not (-1.0 <= self.rejection_threshold <= 1.0):
            raise InvalidParameter("rejection threshold must lie in [-1, 1]")
        if self.ar_order < 1 or self.dwt_levels < 1 or self.modwpt_level < 1:
            raise InvalidParameter("orders and levels must be positive")
        q = np.asarray(self.q_grid, dtype=np.float64)
        if q.size < 2 or not np.all(np.diff(q) > 0):
            raise InvalidParameter("q_grid must be strictly increasing")
        if not np.any(q == 0.0):
            raise InvalidParameter("q_grid must contain 0")
        if self.scale_range is not None:
            j_min, j_max = self.scale_range
            if j_min < 2 or j_max <= j_min:
                raise InvalidParameter(f"invalid scale range {self.scale_range}")

    def q_array(self):
        return np.asarray(self.q_grid, dtype=np.float64)

    def to_dict(self):
        out = {}
        for name in ("scg_band_hz", "beat_window_s", "q_grid", "scale_range"):
            value = getattr(self, name)
            out[name] = None if value is None else list(value)
        for name in ("acc_cutoff_hz", "rejection_threshold", "ar_order", "dwt_levels",
                     "modwpt_level", "rng_seed", "detail_wavelet", "leader_wavelet",
                     "entropy_log_base"):
            out[name] = getattr(self, name)
        return out

    @classmethod
    def from_dict(cls, data):
        kwargs = dict(data)
        for name in ("scg_band_hz", "beat_window_s", "q_grid", "scale_range"):
            if kwargs.get(name) is not None:
                kwargs[name] = tuple(kwargs[name])
        return cls(**kwargs)

    @classmethod
    def from_json_file(cls, path):
        try:
            with open(path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except FileNotFoundError:
            raise MissingFile(f"config file not found: {path}") from None
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, f"invalid JSON config: {exc}") from None
        return cls.from_dict(data)


def load_signal(path, sample_rate_hz, label=""):
    """Load a single-column CSV of samples (optional one-line header).

    Raises MissingFile, ParseError (1-based row of the first bad value), or
    EmptySignal when no numeric rows are present.
    """
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except FileNotFoundError:
        raise MissingFile(f"no such file: {path}") from None
    except OSError as exc:
        raise MissingFile(f"cannot read {path}: {exc}") from None

    values = []
    seen_rows = 0
    for row_number, raw in enumerate(lines, start=1):
        text = raw.strip()
        if not text:
            continue
        seen_rows += 1
        try:
            value = float(text)
        except ValueError:
            if seen_rows == 1:
                continue  # a single leading header row is allowed
            raise ParseError(row_number) from None
        values.append(value)
    if not values:
        raise EmptySignal(f"{path} holds no numeric samples")
    return Signal(np.asarray(values), sample_rate_hz, label=label or str(path))


def write_table(path, matrix, column_labels):
    """Write a rectangular table as CSV with one header row.

    Values are formatted with shortest round-trip repr, so a write/read cycle
    reproduces them exactly.
    """
    rows = [list(map(float, row)) for row in matrix]
    if not rows:
        raise EmptySignal("refusing to write an empty table")
    width = len(rows[0])
    if any(len(row) != width for row in rows):
        raise RaggedRows("rows have differing lengths")
    labels = [str(c) for c in column_labels]
    if len(labels) != width:
        raise LengthMismatch(f"{len(labels)} labels for {width} columns")
    lines = [",".join(labels)]
    lines.extend(",".join(repr(v) for v in row) for row in rows)
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write("\n".join(lines) + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from None


def read_table(path):
    """Inverse of write_table: returns (column_labels, matrix)."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = [ln for ln in fh.read().splitlines() if ln.strip()]
    except FileNotFoundError:
        raise MissingFile(f"no such file: {path}") from None
    if not lines:
        raise EmptySignal(f"{path} is empty")
    labels = lines[0].split(",")
    rows = []
    for row_number, line in enumerate(lines[1:], start=2):
        cells = line.split(",")
        if len(cells) != len(labels):
            raise RaggedRows(f"row {row_number} has {len(cells)} cells, header has {len(labels)}")
        try:
            rows.append([float(c) for c in cells])
        except ValueError:
            raise ParseError(row_number) from None
    return labels, np.asarray(rows, dtype=np.float64)


def detrend(signal, mode="mean"):
    """Remove the mean or the least-squares line from a signal."""
    x = signal.samples
    if mode == "mean":
        fitted = np.mean(x)
    elif mode == "linear":
        if x.size < 2:
            raise EmptySignal("linear detrend needs at least two samples")
        t = np.arange(x.size, dtype=np.float64)
        t -= t.mean()
        slope = (t @ x) / (t @ t)
        fitted = x.mean() + slope * t
    else:
        raise InvalidParameter(f"unknown detrend mode {mode!r}")
    return signal.with_samples(x - fitted)
