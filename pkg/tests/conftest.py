import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def make_beat(n=300, fs=500.0, center_s=0.2):
    """Synthetic structured beat used across tests: windowed vibration burst."""
    t = np.arange(n) / fs
    burst = np.exp(-0.5 * ((t - center_s) / 0.03) ** 2) * np.sin(2 * np.pi * 25 * (t - center_s))
    late = 0.4 * np.exp(-0.5 * ((t - center_s - 0.15) / 0.04) ** 2) * np.sin(
        2 * np.pi * 15 * (t - center_s - 0.15))
    return burst + late
