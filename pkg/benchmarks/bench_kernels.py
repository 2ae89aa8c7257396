#!/usr/bin/env python3
"""Benchmark the compiled kernel backend against the pure-numpy fallback.

Times each hot kernel on pipeline-realistic workloads plus one end-to-end
per-beat feature pass, and prints a speedup table.  Run from the repository
root after an editable install:

    python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from pulsatio._kernels import available_backends


def timeit(fn, *args, repeat=5, number=1):
    best = np.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        for _ in range(number):
            fn(*args)
        best = min(best, (time.perf_counter() - t0) / number)
    return best


def workloads(rng):
    burg_x = rng.normal(size=10_000)
    packet_parent = rng.normal(size=16_384)
    packet_filter = rng.normal(size=18)
    dwt_a = rng.normal(size=16_384)
    dwt_lo = rng.normal(size=8)
    dwt_hi = rng.normal(size=8)
    finer = np.abs(rng.normal(size=8_192))
    own = np.abs(rng.normal(size=4_096))
    values = np.abs(rng.normal(size=8_192))
    beat = rng.normal(size=300)
    return [
        ("burg_reflection(n=10k, m=8)",
         lambda impl: impl.burg_reflection(burg_x, 8), 10),
        ("burg_reflection(n=300, m=4)",
         lambda impl: impl.burg_reflection(beat, 4), 200),
        ("modwpt_step(n=16k, 18 taps)",
         lambda impl: impl.modwpt_step(packet_parent, packet_filter, 8), 20),
        ("dwt_analysis_step(n=16k, db4)",
         lambda impl: impl.dwt_analysis_step(dwt_a, dwt_lo, dwt_hi), 50),
        ("dwt_synthesis_step(n=16k, db4)",
         lambda impl: impl.dwt_synthesis_step(dwt_a[:8_192], dwt_a[8_192:], dwt_lo, dwt_hi), 50),
        ("child_running_max(n=4k)",
         lambda impl: impl.child_running_max(own, finer), 100),
        ("neighborhood_max3(n=8k)",
         lambda impl: impl.neighborhood_max3(values), 100),
    ]


def bench_feature_pipeline():
    """End-to-end per-beat feature pass under each backend (set via env)."""
    from pulsatio import AnalysisConfig, beat_features

    rng = np.random.default_rng(0)
    t = np.arange(300) / 500.0
    beat = np.exp(-0.5 * ((t - 0.2) / 0.03) ** 2) * np.sin(2 * np.pi * 25 * (t - 0.2))
    beat = beat + rng.normal(0, 0.05, t.size)
    config = AnalysisConfig()
    return timeit(lambda: beat_features(beat, config), repeat=3, number=5)


def main():
    backends = available_backends()
    print(f"backends available: {', '.join(sorted(backends))}")
    rng = np.random.default_rng(1)
    rows = []
    for label, call, number in workloads(rng):
        times = {}
        for name, impl in backends.items():
            times[name] = timeit(call, impl, repeat=5, number=number)
        rows.append((label, times))

    width = max(len(r[0]) for r in rows) + 2
    header = f"{'kernel':<{width}}" + "".join(f"{name:>14}" for name in sorted(backends))
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, times in rows:
        line = f"{label:<{width}}"
        for name in sorted(backends):
            line += f"{times[name] * 1e6:>12.1f}us"
        if len(backends) == 2:
            line += f"{times['python'] / times['native']:>9.1f}x"
        print(line)

    from pulsatio import kernel_backend

    per_beat = bench_feature_pipeline()
    print(f"\nbeat_features end-to-end ({kernel_backend} backend): {per_beat * 1e3:.2f} ms/beat")
    print("re-run with PULSATIO_PURE_PYTHON=1 to time the fallback end-to-end")


if __name__ == "__main__":
    main()
