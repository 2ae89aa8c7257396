import numpy as np
import pytest

from pulsatio import (
    AnalysisConfig,
    FilterSpec,
    binomial_cascade,
    detect_fiducials,
    fractional_brownian_motion,
    gross_acceleration,
    synthesize_scg,
    zero_phase_filter,
)
from pulsatio.errors import InvalidParameter


class TestSynthesizeScg:
    def test_deterministic(self):
        a = synthesize_scg(30, 60, 15, 0.05, seed=7)
        b = synthesize_scg(30, 60, 15, 0.05, seed=7)
        assert np.array_equal(a.samples, b.samples)

    def test_seed_changes_noise(self):
        a = synthesize_scg(10, 60, 15, 0.05, seed=1)
        b = synthesize_scg(10, 60, 15, 0.05, seed=2)
        assert not np.array_equal(a.samples, b.samples)

    def test_noiseless_burst_groups(self):
        s = synthesize_scg(30, 60, 15, 0.0, seed=1, sample_rate_hz=500)
        # remove the respiratory drift; what remains is bursts only
        residual = s.samples - gross_acceleration(s, 3.0).samples
        active = np.abs(residual) > 0.05 * np.abs(residual).max()
        # count burst groups, merging gaps below the intra-beat spacing
        idx = np.flatnonzero(active)
        gaps = np.diff(idx)
        groups = 1 + int(np.sum(gaps > 0.3 * 500))
        assert groups == 30

    def test_noiseless_floor_between_bursts(self):
        s = synthesize_scg(30, 60, 15, 0.0, seed=1, sample_rate_hz=500)
        residual = s.samples - gross_acceleration(s, 3.0).samples
        # probe 0.25 s before each beat center: >= 10 burst sigmas away
        probes = (np.arange(1, 30) * 500 + 125).astype(int)
        peak = np.abs(residual).max()
        assert np.abs(residual[probes]).max() < 1e-2 * peak

    def test_beats_detectable_downstream(self):
        s = synthesize_scg(30, 60, 15, 0.05, seed=1)
        f = zero_phase_filter(s, FilterSpec("bandpass", (1.0, 40.0)))
        found = detect_fiducials(f, AnalysisConfig())
        assert 29 <= len(found) <= 31

    def test_invalid_parameters(self):
        with pytest.raises(InvalidParameter):
            synthesize_scg(0, 60, 15, 0.0, seed=1)
        with pytest.raises(InvalidParameter):
            synthesize_scg(10, -1, 15, 0.0, seed=1)
        with pytest.raises(InvalidParameter):
            synthesize_scg(10, 60, 15, -0.1, seed=1)


class TestFractionalBrownianMotion:
    def test_deterministic(self):
        assert np.array_equal(fractional_brownian_motion(1024, 0.8, 3),
                              fractional_brownian_motion(1024, 0.8, 3))

    def test_increment_covariance(self):
        # averaged over seeds, fGn autocovariance matches theory
        H = 0.8
        lags = (1, 16, 256)
        measured = {lag: [] for lag in lags}
        for seed in range(10):
            inc = np.diff(fractional_brownian_motion(2**13, H, seed))
            for lag in lags:
                measured[lag].append(np.mean(inc[:-lag] * inc[lag:]))

        def gamma(k):
            return 0.5 * ((k + 1) ** (2 * H) - 2 * k ** (2 * H) + abs(k - 1) ** (2 * H))

        for lag in lags:
            assert np.mean(measured[lag]) == pytest.approx(gamma(lag), abs=0.02)

    def test_self_similar_variance(self):
        # Var(B(t+tau) - B(t)) ~ tau^(2H)
        H = 0.7
        v1, v16 = [], []
        for seed in range(10):
            b = fractional_brownian_motion(2**13, H, seed)
            v1.append(np.mean(np.diff(b) ** 2))
            d16 = b[16:] - b[:-16]
            v16.append(np.mean(d16**2))
        slope = np.log2(np.mean(v16) / np.mean(v1)) / 4
        assert slope == pytest.approx(2 * H, abs=0.1)

    def test_invalid_hurst(self):
        with pytest.raises(InvalidParameter):
            fractional_brownian_motion(128, 1.5, 0)


class TestBinomialCascade:
    def test_mass_conservation(self):
        mass = binomial_cascade(10, 0.3, seed=4)
        assert mass.size == 1024
        assert mass.sum() == pytest.approx(1.0, abs=1e-12)
        assert np.all(mass > 0)

    def test_deterministic(self):
        assert np.array_equal(binomial_cascade(8, 0.3, 5), binomial_cascade(8, 0.3, 5))

    def test_extreme_values(self):
        # every mass is a product of the two weights times 2^-levels scaling
        mass = binomial_cascade(6, 0.3, seed=1)
        assert mass.max() <= 0.7**6 + 1e-15
        assert mass.min() >= 0.3**6 - 1e-15
