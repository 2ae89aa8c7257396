"""Generate the orthonormal filter constants embedded in pulsatio.wavelet_filters.

Run manually; paste the printed tables into src/pulsatio/wavelet_filters.py.

Two constructions:

* Daubechies db2..db10 via spectral factorization of the maxflat half-band
  polynomial, done in 60-digit arithmetic (mpmath) so the rounded float64
  coefficients are exact to the last bit.
* An 18-tap conjugate-quadrature pair with equiripple stopband (Smith-Barnwell
  construction: LP design of the non-negative product filter, spectral
  factorization, Gauss-Newton refinement onto the orthonormality manifold).
"""

import numpy as np
import mpmath as mp
from scipy.optimize import linprog

mp.mp.dps = 60


def daubechies(p):
    """Minimal-phase Daubechies scaling filter with p vanishing moments (length 2p)."""
    # P(y) = sum_{k<p} C(p-1+k, k) y^k, the maxflat half-band remainder
    coeffs = [mp.binomial(p - 1 + k, k) for k in range(p)]
    if p == 1:
        roots_y = []
    else:
        roots_y = mp.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=200)
    # map y-roots to z-roots via y = (2 - z - 1/z)/4 and keep |z| < 1
    z_roots = []
    for y0 in roots_y:
        # z^2 - (2 - 4 y0) z + 1 = 0
        b = 2 - 4 * y0
        disc = mp.sqrt(b * b - 4)
        for z0 in ((b + disc) / 2, (b - disc) / 2):
            if abs(z0) < 1:
                z_roots.append(z0)
    # L(z) = prod (z - z_i) / (1 - z_i), so L(1) = 1
    poly = [mp.mpc(1)]
    for z0 in z_roots:
        new = [mp.mpc(0)] * (len(poly) + 1)
        for i, a in enumerate(poly):
            new[i + 1] += a
            new[i] -= z0 * a
        poly = new
    norm = sum(poly)
    poly = [mp.re(c / norm) for c in poly]  # conjugate root pairs: imag parts cancel
    # m0(z) = ((1+z)/2)^p * L(z); h = sqrt(2) * coeffs(m0)
    bin_part = [mp.binomial(p, k) / mp.mpf(2) ** p for k in range(p + 1)]
    m0 = [mp.mpf(0)] * (p + 1 + len(poly) - 1)
    for i, a in enumerate(bin_part):
        for j, b in enumerate(poly):
            m0[i + j] += a * b
    h = [mp.sqrt(2) * c for c in m0]
    arr = np.array([float(c) for c in h])
    # match the conventional table ordering (largest magnitude near the front)
    if abs(arr[0]) < abs(arr[-1]):
        arr = arr[::-1]
    return arr


def check_orthonormal(h, name):
    L = len(h)
    worst = 0.0
    for t in range(1, L // 2):
        worst = max(worst, abs(np.dot(h[: L - 2 * t], h[2 * t :])))
    report = {
        "name": name,
        "sum-sqrt2": float(np.sum(h) - np.sqrt(2)),
        "energy-1": float(np.dot(h, h) - 1.0),
        "even-lag": worst,
    }
    return report


def cqf18(stop_edge=0.60, grid_n=4096):
    """18-tap orthonormal quadrature filter with equiripple stopband.

    Designs the degree-17 product filter Phi(w) = |m0(w)|^2 by linear
    programming: Phi = 1 + 2*sum_j a_j cos((2j+1) w) (half-band structure makes
    the QMF condition automatic), Phi >= 0 everywhere, Phi(pi) = 0, stopband
    level minimized over [stop_edge*pi, pi]. Spectral factorization plus a
    Gauss-Newton polish gives a float64-exact orthonormal scaling filter.
    """
    nodd = 9
    w = np.linspace(0.0, np.pi, grid_n)
    basis = np.cos(np.outer(w, 2 * np.arange(nodd) + 1))  # grid x 9
    stop = w >= stop_edge * np.pi

    # variables: a_0..a_8, delta ; minimize delta
    # constraints: -2*basis a <= 1            (Phi >= 0 everywhere)
    #              2*basis a - delta <= -1    (Phi <= delta on stopband)
    #              sum_j (-1)^j? no: Phi(pi) = 1 + 2*sum a_j cos((2j+1)pi) = 1 - 2 sum a_j = 0
    n = nodd + 1
    A_ub = np.zeros((grid_n + stop.sum(), n))
    b_ub = np.zeros(grid_n + stop.sum())
    A_ub[:grid_n, :nodd] = -2 * basis
    b_ub[:grid_n] = 1.0
    A_ub[grid_n:, :nodd] = 2 * basis[stop]
    A_ub[grid_n:, nodd] = -1.0
    b_ub[grid_n:] = -1.0
    A_eq = np.zeros((1, n))
    A_eq[0, :nodd] = 2.0
    b_eq = np.array([1.0])
    c = np.zeros(n)
    c[nodd] = 1.0
    res = linprog(c, A_ub=A_ub, b_ub=b_ub, A_eq=A_eq, b_eq=b_eq,
                  bounds=[(None, None)] * nodd + [(0, None)], method="highs")
    if not res.success:
        raise RuntimeError(res.message)
    a = res.x[:nodd]
    print(f"  LP stopband level on Phi: {res.x[nodd]:.3e}")

    # autocorrelation sequence of the filter: r[0]=1, r[2j+1]=a_j, even lags 0
    r = np.zeros(18)
    r[0] = 1.0
    r[1::2] = a
    # roots of z^17 * Phi(z); pick one per reciprocal pair (inside / on circle)
    laurent = np.concatenate([r[::-1], r[1:]])  # z^-17 .. z^17 coefficients
    roots = np.roots(laurent[::-1])
    inside = roots[np.abs(roots) <= 1.0 + 1e-9]
    # nearly-double roots on the circle: keep one of each conjugate-recip pair
    inside = sorted(inside, key=lambda z: (np.angle(z), np.abs(z)))
    kept = []
    for z0 in inside:
        if any(abs(z0 - z1) < 1e-6 and abs(abs(z0) - 1) < 1e-6 and abs(abs(z1) - 1) < 1e-6
               for z1 in kept):
            continue
        kept.append(z0)
    if len(kept) != 17:
        # fall back: take the 17 smallest-modulus roots
        kept = sorted(roots, key=np.abs)[:17]
    h = np.real(np.poly(kept))
    h = h / np.linalg.norm(h)
    if h.sum() < 0:
        h = -h

    # Gauss-Newton onto { A(2t)=delta_t, sum h = sqrt2, alternating sum = 0 }.
    # The alternating sum is implied by the others in exact arithmetic but only
    # quadratically, so without its own (linear) equation it converges to
    # sqrt(tolerance) instead of tolerance.
    signs = np.where(np.arange(18) % 2 == 0, 1.0, -1.0)

    def residual(h):
        out = [np.dot(h, h) - 1.0]
        for t in range(1, 9):
            out.append(np.dot(h[: 18 - 2 * t], h[2 * t :]))
        out.append(h.sum() - np.sqrt(2))
        out.append(float(signs @ h))
        return np.array(out)

    for _ in range(50):
        F = residual(h)
        if np.max(np.abs(F)) < 2e-16:
            break
        J = np.zeros((11, 18))
        J[0] = 2 * h
        for t in range(1, 9):
            row = np.zeros(18)
            row[: 18 - 2 * t] += h[2 * t :]
            row[2 * t :] += h[: 18 - 2 * t]
            J[t] = row
        J[9] = 1.0
        J[10] = signs
        step, *_ = np.linalg.lstsq(J, -F, rcond=None)
        h = h + step
    if abs(h[0]) < abs(h[-1]):
        h = h[::-1]
    return h


def emit(name, h):
    print(f'    "{name}": (')
    for i in range(0, len(h), 3):
        chunk = ", ".join(f"{float(v)!r}" for v in h[i : i + 3])
        print(f"        {chunk},")
    print("    ),")


if __name__ == "__main__":
    tables = {}
    for p in range(2, 11):
        tables[f"db{p}"] = daubechies(p)
    print("designing 18-tap CQF ...")
    tables["fk18"] = cqf18()
    print("\nvalidation:")
    for name, h in tables.items():
        print(" ", check_orthonormal(h, name))
    print("\nSCALING_FILTERS = {")
    for name, h in tables.items():
        emit(name, h)
    print("}")
