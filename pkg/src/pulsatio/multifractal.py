"""Wavelet-leader multifractal analysis.

Leaders are built from a detail-coefficient pyramid by propagating running
maxima from the finest scale upward (each coarser position absorbs the maxima
of its two dyadic children) and then taking the maximum over the three-point
neighborhood at each scale.  Structure functions of the leaders across scales
yield the scaling exponents zeta(q), their polynomial expansion gives the
cumulants c1..c3, and the Legendre-transformed spectrum (h, D(h)) quantifies
the spread of local regularity.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels as kernels
from .errors import (
    DegenerateScale,
    DegenerateSpectrum,
    IllConditionedFit,
    InsufficientScales,
    InvalidParameter,
    NonPositiveStructureFunction,
    TooFewLevels,
)
from .wavelets import DwtPyramid, dwt, max_dwt_levels

SPECTRUM_CONCAVITY_TOL = 1e-9


@dataclass
class LeaderPyramid:
    """Per-scale leader magnitudes, coarsest-first ordering not implied.

    ``scales[i]`` is the dyadic level of ``leaders[i]``; leaders start one
    level coarser than the finest decomposition scale, so scales begin at 2.
    """

    leaders: list
    scales: np.ndarray
    counts: np.ndarray
    source_wavelet: str


@dataclass
class StructureFunctionTable:
    """S(q, j) = mean of leader^q at each retained scale.

    Zero leaders are excluded from the mean (with the count adjusted) so that
    negative moments stay finite; scales whose leaders are all zero are
    dropped entirely.
    """

    q_grid: np.ndarray
    scales: np.ndarray
    values: np.ndarray  # shape (len(q_grid), len(scales))
    counts: np.ndarray


@dataclass
class MultifractalSummary:
    q_grid: np.ndarray
    zeta: np.ndarray
    cumulants: tuple
    regression_r2_per_q: np.ndarray
    spectrum: list  # (h, D(h)) pairs
    spread_delta_h: float
    scales_used: tuple
    wavelet: str
    excluded_spectrum_points: int = 0

    def to_dict(self):
        c1, c2, c3 = self.cumulants
        return {
            "q_grid": [float(q) for q in self.q_grid],
            "zeta": [float(z) for z in self.zeta],
            "r2": [float(r) for r in self.regression_r2_per_q],
            "cumulants": {"c1": float(c1), "c2": float(c2), "c3": float(c3)},
            "spectrum": [{"h": float(h), "D": float(d)} for h, d in self.spectrum],
            "spread_delta_h": float(self.spread_delta_h),
            "scales_used": [int(self.scales_used[0]), int(self.scales_used[1])],
            "wavelet": self.wavelet,
            "excluded_spectrum_points": int(self.excluded_spectrum_points),
        }


def compute_leaders(pyramid):
    """Leader magnitudes per scale from a detail-coefficient pyramid.

    The running maximum at a position is the max of its own |d| and the
    running maxima of its two children one scale finer; the leader is the max
    of the running maxima over {k-1, k, k+1}, truncated at the edges.
    """
    if pyramid.levels < 3:
        raise TooFewLevels(f"leaders need >= 3 decomposition levels, got {pyramid.levels}")
    running = np.abs(np.ascontiguousarray(pyramid.details[0], dtype=np.float64))
    leaders = []
    scales = []
    for j in range(2, pyramid.levels + 1):
        own = np.abs(np.ascontiguousarray(pyramid.details[j - 1], dtype=np.float64))
        running = kernels.child_running_max(own, running)
        leaders.append(kernels.neighborhood_max3(running))
        scales.append(j)
    counts = np.array([ld.size for ld in leaders])
    return LeaderPyramid(leaders, np.asarray(scales), counts, pyramid.wavelet_name)


def structure_functions(leaders, q_grid):
    """Empirical q-th moments of the leaders at every usable scale."""
    q = np.asarray(q_grid, dtype=np.float64)
    columns = []
    kept_scales = []
    kept_counts = []
    for values, scale in zip(leaders.leaders, leaders.scales):
        positive = values[values > 0.0]
        if positive.size == 0:
            continue
        columns.append([np.mean(positive**qi) for qi in q])
        kept_scales.append(int(scale))
        kept_counts.append(positive.size)
    if not columns:
        raise DegenerateScale("every leader is zero at every scale")
    values = np.asarray(columns, dtype=np.float64).T
    return StructureFunctionTable(q, np.asarray(kept_scales), values, np.asarray(kept_counts))


def scaling_exponents(table, scale_range):
    """Slopes of log2 S(q, j) against j over the requested scales.

    Returns (zeta, r_squared) arrays aligned with the q grid.  A constant
    log-structure-function (q = 0) reports r^2 = 1 by convention.
    """
    j_min, j_max = scale_range
    if j_max - j_min < 2:
        raise InsufficientScales(f"scale range {scale_range} spans fewer than 3 scales")
    mask = (table.scales >= j_min) & (table.scales <= j_max)
    if int(mask.sum()) < 3:
        raise InsufficientScales(
            f"only {int(mask.sum())} usable scales inside {scale_range}")
    S = table.values[:, mask]
    if not np.all(np.isfinite(S)) or np.any(S <= 0.0):
        raise NonPositiveStructureFunction("structure functions must be positive and finite")
    scales = table.scales[mask].astype(np.float64)
    logS = np.log2(S)
    zeta = np.empty(table.q_grid.size)
    r2 = np.empty(table.q_grid.size)
    for i in range(table.q_grid.size):
        slope, intercept = np.polyfit(scales, logS[i], 1)
        predicted = slope * scales + intercept
        ss_res = np.sum((logS[i] - predicted) ** 2)
        ss_tot = np.sum((logS[i] - logS[i].mean()) ** 2)
        zeta[i] = slope
        r2[i] = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return zeta, r2


def cumulants(zeta, q_grid):
    """Least-squares fit of zeta(q) to c1 q + c2 q^2/2 + c3 q^3/6 (zero intercept)."""
    q = np.asarray(q_grid, dtype=np.float64)
    if np.unique(q).size < 4:
        raise IllConditionedFit("cumulant fit needs at least 4 distinct moments")
    basis = np.column_stack([q, q**2 / 2.0, q**3 / 6.0])
    coef, *_ = np.linalg.lstsq(basis, np.asarray(zeta, dtype=np.float64), rcond=None)
    return float(coef[0]), float(coef[1]), float(coef[2])


def singularity_spectrum(zeta, q_grid):
    """Parametric spectrum points (h(q), D(h)) via h = dzeta/dq, D = q h - zeta + 1.

    The derivative uses second-order differences (exact for quadratic zeta,
    endpoints included).  Points that break concavity (h rising above the
    running minimum beyond tolerance) are excluded; the tolerance scales with
    the median |dh| step so estimator noise on near-linear zeta does not
    empty the spectrum.
    """
    q = np.asarray(q_grid, dtype=np.float64)
    z = np.asarray(zeta, dtype=np.float64)
    if q.size != z.size:
        raise InvalidParameter("zeta and q_grid lengths differ")
    if q.size < 3:
        raise DegenerateSpectrum("need at least 3 moments for a spectrum")
    h = np.gradient(z, q, edge_order=2)
    tol = max(SPECTRUM_CONCAVITY_TOL * max(1.0, float(np.abs(h).max())),
              3.0 * float(np.median(np.abs(np.diff(h)))))
    points = []
    running_min = np.inf
    for i in range(q.size):
        if h[i] <= running_min + tol:
            points.append((float(h[i]), float(q[i] * h[i] - z[i] + 1.0)))
            running_min = min(running_min, h[i])
    if len(points) < 3:
        raise DegenerateSpectrum(f"only {len(points)} concave spectrum points")
    return points


def multifractality_spread(summary_or_points):
    """Width of the Hölder-exponent range over spectrum points with D(h) >= 0."""
    points = getattr(summary_or_points, "spectrum", summary_or_points)
    hs = [h for h, d in points if d >= 0.0]
    if not hs:
        raise DegenerateSpectrum("no spectrum points with non-negative dimension")
    return float(max(hs) - min(hs))


def analyze(x, wavelet="db3", q_grid=None, levels=None, scale_range=None):
    """Full leader pipeline for one signal; returns a MultifractalSummary.

    Detail coefficients are rescaled by 2^(-j/2) before the leaders are formed
    (amplitude-per-scale normalization), so zeta(1) estimates the Hölder
    scaling directly: an fBm of Hurst exponent H gives zeta(q) ~ qH.

    The signal is mirror-extended before the periodic transform: the wrap of a
    non-circular path (e.g. any random walk) would otherwise inject one huge
    coefficient per scale, and the leader maxima propagate it everywhere.  A
    reflected junction has the signal's own local regularity, so it adds no
    artifact.  The decomposition depth is still chosen from the original
    length.
    """
    samples = np.ascontiguousarray(getattr(x, "samples", x), dtype=np.float64)
    if q_grid is None:
        q_grid = np.round(np.arange(-5.0, 5.25, 0.5), 10)
    q = np.asarray(q_grid, dtype=np.float64)
    if levels is None:
        levels = max_dwt_levels(samples.size)
    if levels < 3:
        raise TooFewLevels(f"signal supports only {levels} levels")
    mirrored = np.concatenate([samples, samples[::-1]])
    pyramid = dwt(mirrored, wavelet, levels)
    rescaled = DwtPyramid(
        [d * 2.0 ** (-(i + 1) / 2.0) for i, d in enumerate(pyramid.details)],
        pyramid.approximation,
        pyramid.wavelet_name,
        pyramid.original_length,
        pyramid.level_lengths,
    )
    leaders = compute_leaders(rescaled)
    table = structure_functions(leaders, q)
    if scale_range is None:
        j_min, j_max = 3, levels - 2
        if j_max - j_min < 2:
            j_min, j_max = 2, levels
        scale_range = (j_min, j_max)
    zeta, r2 = scaling_exponents(table, scale_range)
    c123 = cumulants(zeta, q)
    points = singularity_spectrum(zeta, q)
    spread = multifractality_spread(points)
    return MultifractalSummary(
        q_grid=q,
        zeta=zeta,
        cumulants=c123,
        regression_r2_per_q=r2,
        spectrum=points,
        spread_delta_h=spread,
        scales_used=tuple(scale_range),
        wavelet=wavelet,
        excluded_spectrum_points=q.size - len(points),
    )
