"""Independent reference implementations used only by the test suite.

These share no code with the package: plain-Python arithmetic with exact
(fsum) accumulation for the lattice recursion, and a recursive exhaustive
search for the leader construction.
"""

import math

import numpy as np


def burg_reflection_oracle(x, order):
    """Direct transcription of the lattice recursion on Python lists.

    Per stage: drop the first forward-error element and the last
    backward-error element, k = -2 (b.f) / (f.f + b.b), then
    f' = f + k b and b' = b + k f with the pre-update f.
    """
    f = [float(v) for v in x]
    b = list(f)
    coefficients = []
    for _ in range(order):
        f = f[1:]
        b = b[:-1]
        den = math.fsum(v * v for v in f) + math.fsum(v * v for v in b)
        k = -2.0 * math.fsum(bi * fi for bi, fi in zip(b, f)) / den
        coefficients.append(k)
        new_f = [fi + k * bi for fi, bi in zip(f, b)]
        new_b = [bi + k * fi for fi, bi in zip(f, b)]
        f, b = new_f, new_b
    return coefficients


def _descendant_max(magnitudes, level, position):
    """Sup of |d| over (level, position) and all its dyadic descendants."""
    best = magnitudes[level - 1][position]
    if level > 1:
        finer = magnitudes[level - 2]
        for child in (2 * position, 2 * position + 1):
            if child < len(finer):
                best = max(best, _descendant_max(magnitudes, level - 1, child))
    return best


def leaders_oracle(details):
    """Exhaustive sup-over-3-neighborhood-and-all-descendants leaders.

    ``details`` is finest-first; leaders are returned for levels 2..J.
    """
    magnitudes = [np.abs(np.asarray(d, dtype=np.float64)) for d in details]
    out = []
    for level in range(2, len(magnitudes) + 1):
        n = len(magnitudes[level - 1])
        row = np.empty(n)
        for k in range(n):
            candidates = [
                _descendant_max(magnitudes, level, kk)
                for kk in (k - 1, k, k + 1)
                if 0 <= kk < n
            ]
            row[k] = max(candidates)
        out.append(row)
    return out
