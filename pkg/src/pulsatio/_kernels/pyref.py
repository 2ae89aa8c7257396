"""Pure-numpy implementations of the hot inner-loop kernels.

This module is the fallback backend used when the compiled extension
(``pulsatio._kernels._native``) is unavailable or disabled; both expose the
same functions with identical semantics.  Inputs are assumed validated by the
calling layer (contiguous float64, sane sizes); error checks here are limited
to numerical degeneracies the caller cannot see in advance.
"""

import numpy as np


def burg_reflection(x, m):
    """Reflection coefficients k_0..k_{m-1} of the Burg lattice recursion.

    Each stage trims the forward error vector by its first element and the
    backward error vector by its last, computes
    k = -2 (b.f) / (f.f + b.b), then updates f <- f + k b, b <- b + k f
    using the pre-update f.
    """
    f = np.ascontiguousarray(x, dtype=np.float64)
    b = f
    k = np.empty(m, dtype=np.float64)
    for i in range(m):
        f = f[1:]
        b = b[:-1]
        den = f @ f + b @ b
        if den == 0.0:
            raise ValueError(f"zero prediction-error energy at stage {i}")
        ki = -2.0 * (b @ f) / den
        k[i] = ki
        f, b = f + ki * b, b + ki * f
    return k


def modwpt_step(parent, filt, stride):
    """Non-decimated packet filtering: y[t] = sum_l filt[l] * parent[(t - stride*l) mod N]."""
    y = np.zeros_like(parent)
    for l, c in enumerate(filt):
        y += c * np.roll(parent, stride * l)
    return y


def dwt_analysis_step(a, lo, hi):
    """One periodic decimated analysis step; ``a`` must have even length.

    approx[k] = sum_l lo[l] * a[(2k + l) mod N], likewise detail with hi.
    """
    n = a.shape[0]
    L = lo.shape[0]
    ext = np.resize(a, n + L)  # cyclic tiling covers filters longer than a
    approx = np.zeros(n // 2)
    detail = np.zeros(n // 2)
    for l in range(L):
        seg = ext[l : l + n : 2]
        approx += lo[l] * seg
        detail += hi[l] * seg
    return approx, detail


def dwt_synthesis_step(approx, detail, lo, hi):
    """Adjoint of dwt_analysis_step; returns the length 2*len(approx) parent."""
    n = 2 * approx.shape[0]
    L = lo.shape[0]
    ext = np.zeros(n + L)
    for l in range(L):
        ext[l : l + n : 2] += lo[l] * approx + hi[l] * detail
    out = ext[:n].copy()
    for start in range(n, n + L, n):  # fold the periodic overhang back in
        seg = ext[start : start + n]
        out[: seg.shape[0]] += seg
    return out


def child_running_max(own_abs, finer_max):
    """Per-position max of own magnitude and the two dyadic children one scale finer.

    finer_max has length 2n or 2n-1 for an output of length n; a missing
    second child at the tail is ignored.
    """
    n = own_abs.shape[0]
    padded = np.full(2 * n, -np.inf)
    padded[: finer_max.shape[0]] = finer_max
    pair = padded.reshape(n, 2).max(axis=1)
    return np.maximum(own_abs, pair)


def neighborhood_max3(values):
    """Sliding maximum over {k-1, k, k+1}, truncated at the array edges."""
    out = values.copy()
    out[:-1] = np.maximum(out[:-1], values[1:])
    out[1:] = np.maximum(out[1:], values[:-1])
    return out
