"""Periodic discrete wavelet transform and the non-decimated packet transform."""

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .errors import InconsistentPyramid, InvalidParameter, SignalTooShort, TooManyLevels
from .wavelet_filters import filter_pair


def _as_samples(x):
    samples = getattr(x, "samples", x)
    return np.ascontiguousarray(samples, dtype=np.float64)


@dataclass
class DwtPyramid:
    """Detail coefficients per level (index 0 = level 1, finest) plus the coarse rest.

    ``level_lengths`` records the input length of each analysis step so the
    inverse can crop the periodic padding inserted at odd lengths.
    """

    details: list
    approximation: np.ndarray
    wavelet_name: str
    original_length: int
    level_lengths: list

    @property
    def levels(self):
        return len(self.details)


def max_dwt_levels(n):
    """Deepest decomposition allowed for a length-n signal."""
    return max(0, int(math.floor(math.log2(n))) - 2)


def dwt(x, wavelet="db4", levels=None):
    """Periodic-boundary pyramid decomposition.

    levels defaults to the deepest allowed, floor(log2 n) - 2.
    """
    samples = _as_samples(x)
    lo, hi = filter_pair(wavelet)
    if samples.size < lo.size:
        raise SignalTooShort(f"signal of {samples.size} samples is shorter than the {lo.size}-tap filter")
    allowed = max_dwt_levels(samples.size)
    if levels is None:
        levels = allowed
    if levels < 1:
        raise InvalidParameter("levels must be >= 1")
    if levels > allowed:
        raise TooManyLevels(f"{levels} levels requested, {allowed} allowed for length {samples.size}")

    details = []
    lengths = []
    approx = samples
    for _ in range(levels):
        lengths.append(approx.size)
        if approx.size % 2:
            approx = np.append(approx, approx[0])  # periodic pad to even length
        approx, detail = kernels.dwt_analysis_step(approx, lo, hi)
        details.append(detail)
    return DwtPyramid(details, approx, wavelet, samples.size, lengths)


def idwt(pyramid):
    """Invert dwt; exact reconstruction up to float rounding."""
    lo, hi = filter_pair(pyramid.wavelet_name)
    if len(pyramid.details) != len(pyramid.level_lengths) or not pyramid.details:
        raise InconsistentPyramid("level bookkeeping does not match the detail list")
    approx = np.ascontiguousarray(pyramid.approximation, dtype=np.float64)
    for detail, length in zip(pyramid.details[::-1], pyramid.level_lengths[::-1]):
        detail = np.ascontiguousarray(detail, dtype=np.float64)
        if detail.size != approx.size:
            raise InconsistentPyramid(
                f"detail length {detail.size} != approximation length {approx.size}")
        approx = kernels.dwt_synthesis_step(approx, detail, lo, hi)
        approx = approx[:length]
    if approx.size != pyramid.original_length:
        raise InconsistentPyramid("reconstruction does not match the recorded original length")
    return approx


@dataclass
class PacketTable:
    """Non-decimated packet coefficients: 2**level nodes of the signal's length.

    Nodes are in natural (Paley) order: child 2i comes from the scaling
    filter, child 2i+1 from the wavelet filter of parent i.
    """

    nodes: np.ndarray  # shape (2**level, n)
    level: int
    wavelet_name: str

    @property
    def n_nodes(self):
        return self.nodes.shape[0]


def modwpt(x, wavelet="fk18", level=4):
    """Maximal-overlap (undecimated) wavelet packet transform.

    Filters are rescaled by 1/sqrt(2) at every level and applied as circular
    convolutions with stride-upsampled taps, so the node energies sum exactly
    to the signal energy.
    """
    samples = _as_samples(x)
    if level < 1:
        raise InvalidParameter("level must be >= 1")
    if samples.size < 2**level:
        raise SignalTooShort(f"need at least {2**level} samples for level {level}")
    lo, hi = filter_pair(wavelet)
    lo = lo / np.sqrt(2.0)
    hi = hi / np.sqrt(2.0)

    nodes = [samples]
    for j in range(1, level + 1):
        stride = 2 ** (j - 1)
        next_nodes = []
        for parent in nodes:
            next_nodes.append(kernels.modwpt_step(parent, lo, stride))
            next_nodes.append(kernels.modwpt_step(parent, hi, stride))
        nodes = next_nodes
    return PacketTable(np.vstack(nodes), level, wavelet)


def node_energy_series(table):
    """Per node, the element-wise squared coefficients."""
    return [node**2 for node in table.nodes]


def node_bands_hz(level, sample_rate_hz):
    """Nominal frequency band (lo, hi) of each Paley-ordered terminal node.

    Every wavelet-branch step reverses the spectral orientation of its
    sub-band, so the frequency-sorted (sequency) position of Paley node n is
    the Gray decode of n (prefix XOR over the branch bits).
    """
    width = sample_rate_hz / 2 ** (level + 1)
    bands = []
    for n in range(2**level):
        s = n
        shift = 1
        while (n >> shift) > 0:
            s ^= n >> shift
            shift += 1
        bands.append((s * width, (s + 1) * width))
    return bands
