"""Per-beat feature engine: Burg reflection coefficients, wavelet detail
statistics, packet-entropy vector, and multifractal descriptors."""

import json
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .core import write_table
from .errors import DegenerateInput, InvalidParameter, OrderTooHigh, PulsatioError
from .multifractal import analyze
from .wavelets import dwt, max_dwt_levels, modwpt


def burg_reflection(x, order):
    """Reflection coefficients k_1..k_order of the Burg lattice recursion.

    All coefficients satisfy |k| <= 1 (Cauchy-Schwarz on the update formula).
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    if order < 1:
        raise InvalidParameter("order must be >= 1")
    if x.size < order + 1:
        raise OrderTooHigh(f"order {order} needs at least {order + 1} samples, got {x.size}")
    if not np.any(x):
        raise DegenerateInput("input is identically zero")
    try:
        return kernels.burg_reflection(x, order)
    except ValueError as exc:
        raise DegenerateInput(str(exc)) from None


def shannon_entropy(energies):
    """Entropy of a non-negative energy sequence's probability distribution.

    0 * log 0 counts as 0; an all-zero sequence reports 0.
    """
    energies = np.asarray(energies, dtype=np.float64)
    total = energies.sum()
    if total == 0.0:
        return 0.0
    p = energies / total
    p = p[p > 0.0]
    return float(-np.sum(p * np.log(p)))


def modwpt_shannon_entropy(beat, level=4, wavelet="fk18", log_base=None):
    """Shannon entropy of each terminal node's energy distribution.

    Energies are the squared packet coefficients per node.  ``log_base`` of
    None means natural log; entropies then lie in [0, ln(node length)].
    """
    table = modwpt(beat, wavelet=wavelet, level=level)
    entropy = np.array([shannon_entropy(node**2) for node in table.nodes])
    if log_base is not None:
        entropy /= np.log(log_base)
    return entropy


def detail_statistics(beat, wavelet="db4", levels=None):
    """(variance, mean absolute value) of the detail coefficients per level."""
    pyramid = dwt(beat, wavelet=wavelet, levels=levels)
    return np.array([(np.var(d), np.mean(np.abs(d))) for d in pyramid.details])


@dataclass
class FeatureVector:
    """One beat's features; fixed length for a fixed configuration."""

    beat_index: int
    ar_reflection: np.ndarray
    detail_stats: np.ndarray  # shape (levels, 2)
    entropy: np.ndarray  # length 2**modwpt_level
    cumulants: tuple
    spread_delta_h: float
    diagnostics: dict

    def as_row(self):
        return np.concatenate([
            [float(self.beat_index)],
            self.ar_reflection,
            self.detail_stats.ravel(),
            self.entropy,
            list(self.cumulants),
            [self.spread_delta_h],
        ])


def feature_names(config):
    """Stable CSV header for feature matrices under this configuration."""
    names = ["beat_index"]
    names += [f"ar_k{i + 1}" for i in range(config.ar_order)]
    for level in range(1, config.dwt_levels + 1):
        names += [f"{config.detail_wavelet}_l{level}_variance",
                  f"{config.detail_wavelet}_l{level}_meanabs"]
    names += [f"se_node{i:02d}" for i in range(2**config.modwpt_level)]
    names += ["mf_c1", "mf_c2", "mf_c3", "mf_spread_h"]
    return names


def _category(name, fn):
    try:
        return fn()
    except PulsatioError as exc:
        raise type(exc)(f"{name}: {exc}") from exc


def beat_features(beat, config, beat_index=0):
    """All five feature families for a single beat.

    Sub-operation failures are re-raised with the failing category named.
    The multifractal descriptors run the leader pipeline on the single beat
    with scale range [2, J-1] (beats are short, so only the coarsest scale is
    dropped; beats under 256 samples keep scale J as well to retain three
    regression scales).
    """
    beat = np.ascontiguousarray(beat, dtype=np.float64)
    ar = _category("ar reflection", lambda: burg_reflection(beat, config.ar_order))
    details = _category("wavelet detail statistics",
                        lambda: detail_statistics(beat, config.detail_wavelet, config.dwt_levels))
    entropy = _category("packet entropy",
                        lambda: modwpt_shannon_entropy(beat, config.modwpt_level,
                                                       log_base=config.entropy_log_base))

    def _mf():
        levels = max_dwt_levels(beat.size)
        return analyze(beat, wavelet=config.leader_wavelet, q_grid=config.q_array(),
                       levels=levels, scale_range=(2, max(4, levels - 1)))

    summary = _category("multifractal descriptors", _mf)
    diagnostics = {
        "mf_min_r2": float(np.min(summary.regression_r2_per_q)),
        "mf_scales_used": list(summary.scales_used),
        "entropy_log_base": "e" if config.entropy_log_base is None else config.entropy_log_base,
    }
    return FeatureVector(beat_index, ar, details, entropy, summary.cumulants,
                         summary.spread_delta_h, diagnostics)


def feature_matrix(beats, config, accepted_only=True):
    """FeatureVector per (accepted) beat row, in chronological order."""
    vectors = []
    for index in range(beats.n_beats):
        if accepted_only and not beats.accepted[index]:
            continue
        vectors.append(beat_features(beats.beats[index], config, beat_index=index))
    return vectors


def features_to_csv(path, vectors, config):
    write_table(path, [v.as_row() for v in vectors], feature_names(config))


def features_to_json(path, vectors, config):
    payload = {
        "feature_names": feature_names(config),
        "beats": [
            {
                "beat_index": v.beat_index,
                "values": [float(x) for x in v.as_row()[1:]],
                "diagnostics": v.diagnostics,
            }
            for v in vectors
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
