"""Batch command-line front end.

Subcommands: ``demo`` (full pipeline on a file or the synthetic generator),
plus per-stage access via ``features``, ``mf``, ``quality``, ``spectral``.
Exit codes: 0 success, 2 usage error, 3 stage failure.  Every demo run writes
``manifest.json`` naming each stage's status, failure included.
"""

import argparse
import json
import os
import sys

import numpy as np

from .beats import (
    detect_fiducials,
    ensemble_average,
    make_template,
    reject_noisy,
    segment_beats,
    waterfall,
)
from .core import AnalysisConfig, DEFAULT_SAMPLE_RATE_HZ, load_signal, write_table
from .errors import InvalidParameter, PulsatioError
from .features import feature_matrix, features_to_csv
from .figures import emit_figure
from .filtering import FilterSpec, zero_phase_filter
from .multifractal import analyze
from .quality import assess_signal
from .spectral import spectrogram, welch_psd
from .synthetic import synthesize_scg

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_STAGE_FAILURE = 3

SYNTHETIC_DEFAULTS = {
    "duration_s": 30.0,
    "heart_rate_bpm": 60.0,
    "resp_rate_bpm": 15.0,
    "noise_std": 0.05,
    "sample_rate_hz": DEFAULT_SAMPLE_RATE_HZ,
}

DEMO_FIGURES = ("average_beat.svg", "waterfall.svg", "zeta_vs_q.svg", "spectrum_D_of_h.svg")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pulsatio",
        description="Seismocardiography batch processing: filtering, beat "
                    "ensembling, quality, spectral, and multifractal analysis.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_input):
        p.add_argument("--input", help="single-column CSV of samples")
        p.add_argument("--output", "-o", default=None,
                       help="output directory (default: $PULSATIO_OUTPUT_DIR or ./pulsatio_output)")
        p.add_argument("--config", default=None, help="JSON file with AnalysisConfig fields")
        p.add_argument("--seed", type=int, default=None, help="override the configured RNG seed")
        p.add_argument("--sample-rate", type=float, default=DEFAULT_SAMPLE_RATE_HZ,
                       help="sample rate of --input files (Hz)")
        p.set_defaults(needs_input=needs_input)

    demo = sub.add_parser("demo", help="run the full demonstration pipeline")
    common(demo, needs_input=False)
    demo.add_argument("--synthetic", action="store_true",
                      help="use the built-in synthetic generator instead of --input")
    _add_overrides(demo)
    demo.set_defaults(func=cmd_demo)

    features = sub.add_parser("features", help="per-beat feature matrix from a raw signal")
    common(features, needs_input=True)
    _add_overrides(features)
    features.set_defaults(func=cmd_features)

    mf = sub.add_parser("mf", help="multifractal summary of one signal or beat")
    common(mf, needs_input=True)
    mf.add_argument("--q-min", type=float, default=None)
    mf.add_argument("--q-max", type=float, default=None)
    mf.set_defaults(func=cmd_mf)

    quality = sub.add_parser("quality", help="per-window signal quality indices")
    common(quality, needs_input=True)
    quality.add_argument("--template", required=True, help="single-column CSV template beat")
    quality.set_defaults(func=cmd_quality)

    spectral = sub.add_parser("spectral", help="Welch PSD and spectrogram exports")
    common(spectral, needs_input=True)
    spectral.set_defaults(func=cmd_spectral)
    return parser


def _add_overrides(p):
    p.add_argument("--band-low", type=float, default=None, help="SCG band low cutoff (Hz)")
    p.add_argument("--band-high", type=float, default=None, help="SCG band high cutoff (Hz)")
    p.add_argument("--ar-order", type=int, default=None, help="reflection coefficient count")
    p.add_argument("--q-min", type=float, default=None)
    p.add_argument("--q-max", type=float, default=None)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.needs_input and not args.input:
        parser.error(f"{args.command} requires --input")
    if args.command == "demo" and not (args.input or args.synthetic):
        parser.error("demo requires --input or --synthetic")
    try:
        config = _build_config(args)
    except (PulsatioError, TypeError) as exc:
        parser.error(str(exc))
    try:
        return args.func(args, config)
    except PulsatioError as exc:
        print(f"pulsatio {args.command}: {exc}", file=sys.stderr)
        return EXIT_STAGE_FAILURE


def _build_config(args):
    if args.config:
        config = AnalysisConfig.from_json_file(args.config)
    else:
        config = AnalysisConfig()
    if getattr(args, "band_low", None) is not None or getattr(args, "band_high", None) is not None:
        low = args.band_low if args.band_low is not None else config.scg_band_hz[0]
        high = args.band_high if args.band_high is not None else config.scg_band_hz[1]
        config.scg_band_hz = (low, high)
    if getattr(args, "ar_order", None) is not None:
        config.ar_order = args.ar_order
    if getattr(args, "q_min", None) is not None or getattr(args, "q_max", None) is not None:
        q_min = args.q_min if args.q_min is not None else float(config.q_grid[0])
        q_max = args.q_max if args.q_max is not None else float(config.q_grid[-1])
        if not q_min < 0 < q_max:
            raise InvalidParameter("q range must straddle 0")
        config.q_grid = tuple(np.round(np.arange(q_min, q_max + 0.25, 0.5), 10))
    if args.seed is not None:
        config.rng_seed = args.seed
    config.validate()
    return config


def _resolve_outdir(args):
    outdir = args.output or os.environ.get("PULSATIO_OUTPUT_DIR") or "pulsatio_output"
    os.makedirs(outdir, exist_ok=True)
    return outdir


def _load_input(args, config):
    if args.input:
        return load_signal(args.input, args.sample_rate)
    return synthesize_scg(seed=config.rng_seed, **SYNTHETIC_DEFAULTS)


def _write_signal_csv(path, samples, label):
    write_table(path, [[float(v)] for v in samples], [label])


def cmd_demo(args, config):
    outdir = _resolve_outdir(args)
    manifest = {
        "command": "demo",
        "config": config.to_dict(),
        "input": args.input,
        "synthetic": None if args.input else SYNTHETIC_DEFAULTS,
        "seed": config.rng_seed,
        "output_dir": outdir,
        "stages": [],
        "artifacts": [],
    }
    state = {}
    stages = (
        ("load", _demo_load),
        ("filter", _demo_filter),
        ("detect", _demo_detect),
        ("segment", _demo_segment),
        ("template", _demo_template),
        ("waterfall", _demo_waterfall),
        ("features", _demo_features),
        ("multifractal", _demo_multifractal),
        ("figures", _demo_figures),
    )
    failure = None
    for name, stage in stages:
        try:
            stage(state, config, args, outdir, manifest)
            manifest["stages"].append({"name": name, "status": "ok"})
        except (PulsatioError, OSError) as exc:
            manifest["stages"].append({"name": name, "status": "failed", "error": str(exc)})
            failure = (name, exc)
            break
    manifest["artifacts"].append("manifest.json")
    with open(os.path.join(outdir, "manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    if failure:
        print(f"pulsatio demo: stage {failure[0]!r} failed: {failure[1]}", file=sys.stderr)
        return EXIT_STAGE_FAILURE
    print(f"pulsatio demo: wrote {len(manifest['artifacts'])} artifacts to {outdir}")
    return EXIT_OK


def _artifact(manifest, outdir, name):
    manifest["artifacts"].append(name)
    return os.path.join(outdir, name)


def _demo_load(state, config, args, outdir, manifest):
    state["signal"] = _load_input(args, config)


def _demo_filter(state, config, args, outdir, manifest):
    spec = FilterSpec("bandpass", config.scg_band_hz)
    state["filtered"] = zero_phase_filter(state["signal"], spec)
    _write_signal_csv(_artifact(manifest, outdir, "filtered.csv"),
                      state["filtered"].samples, "acc_filtered")


def _demo_detect(state, config, args, outdir, manifest):
    state["fiducials"] = detect_fiducials(state["filtered"], config)


def _demo_segment(state, config, args, outdir, manifest):
    pre, post = config.beat_window_s
    matrix = segment_beats(state["filtered"], state["fiducials"], pre, post)
    state["beats"] = matrix
    write_table(_artifact(manifest, outdir, "beats.csv"), matrix.beats,
                [f"s{i:03d}" for i in range(matrix.n_samples)])


def _demo_template(state, config, args, outdir, manifest):
    matrix = state["beats"]
    report = make_template(matrix, config.rejection_threshold)
    matrix = reject_noisy(matrix, report.template, config.rejection_threshold)
    state["beats"] = matrix
    state["template_report"] = report
    _write_signal_csv(_artifact(manifest, outdir, "template.csv"),
                      report.template, "template")
    rows = np.column_stack([
        np.arange(matrix.n_beats, dtype=np.float64),
        report.per_beat_correlation,
        report.per_beat_rms_residual,
        matrix.accepted.astype(np.float64),
    ])
    write_table(_artifact(manifest, outdir, "residuals.csv"), rows,
                ["beat_index", "correlation", "rms_residual", "accepted"])


def _demo_waterfall(state, config, args, outdir, manifest):
    ridges = waterfall(state["beats"])
    state["waterfall"] = ridges
    write_table(_artifact(manifest, outdir, "waterfall.csv"), ridges,
                [f"s{i:03d}" for i in range(ridges.shape[1])])


def _demo_features(state, config, args, outdir, manifest):
    vectors = feature_matrix(state["beats"], config, accepted_only=True)
    state["features"] = vectors
    features_to_csv(_artifact(manifest, outdir, "features.csv"), vectors, config)


def _demo_multifractal(state, config, args, outdir, manifest):
    summary = analyze(state["filtered"].samples, wavelet=config.leader_wavelet,
                      q_grid=config.q_array(), scale_range=config.scale_range)
    state["mf_summary"] = summary
    with open(_artifact(manifest, outdir, "multifractal.json"), "w", encoding="utf-8") as fh:
        json.dump(summary.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


def _demo_figures(state, config, args, outdir, manifest):
    matrix = state["beats"]
    times = matrix.times()
    average = ensemble_average(matrix, use_accepted_only=True)
    emit_figure([(times, average), (times, state["template_report"].template)],
                "line", _artifact(manifest, outdir, "average_beat.svg"),
                title="Ensemble average and template beat",
                x_label="time from anchor (s)", y_label="acceleration")
    emit_figure(state["waterfall"], "waterfall_ridges",
                _artifact(manifest, outdir, "waterfall.svg"),
                title="Beat morphology over time (earliest at bottom)",
                x_label="sample", y_label="beat")
    summary = state["mf_summary"]
    q = summary.q_grid
    c1, c2, c3 = summary.cumulants
    fitted = c1 * q + c2 * q**2 / 2.0 + c3 * q**3 / 6.0
    emit_figure([(q, summary.zeta), (q, fitted)], "line",
                _artifact(manifest, outdir, "zeta_vs_q.svg"),
                title="Scaling exponents and cumulant fit",
                x_label="moment q", y_label="zeta(q)")
    hs = [h for h, _ in summary.spectrum]
    ds = [d for _, d in summary.spectrum]
    emit_figure((hs, ds), "scatter",
                _artifact(manifest, outdir, "spectrum_D_of_h.svg"),
                title="Singularity spectrum",
                x_label="Hölder exponent h", y_label="D(h)")


def cmd_features(args, config):
    outdir = _resolve_outdir(args)
    signal = _load_input(args, config)
    filtered = zero_phase_filter(signal, FilterSpec("bandpass", config.scg_band_hz))
    fiducials = detect_fiducials(filtered, config)
    pre, post = config.beat_window_s
    matrix = segment_beats(filtered, fiducials, pre, post)
    report = make_template(matrix, config.rejection_threshold)
    matrix = reject_noisy(matrix, report.template, config.rejection_threshold)
    vectors = feature_matrix(matrix, config, accepted_only=True)
    features_to_csv(os.path.join(outdir, "features.csv"), vectors, config)
    print(f"pulsatio features: {len(vectors)} beats -> {outdir}/features.csv")
    return EXIT_OK


def cmd_mf(args, config):
    outdir = _resolve_outdir(args)
    signal = load_signal(args.input, args.sample_rate)
    summary = analyze(signal.samples, wavelet=config.leader_wavelet,
                      q_grid=config.q_array(), scale_range=config.scale_range)
    path = os.path.join(outdir, "multifractal.json")
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(summary.to_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"pulsatio mf: spread_delta_h={summary.spread_delta_h:.4f} -> {path}")
    return EXIT_OK


def cmd_quality(args, config):
    outdir = _resolve_outdir(args)
    signal = load_signal(args.input, args.sample_rate)
    template = load_signal(args.template, args.sample_rate)
    reports = assess_signal(signal, template.samples)
    rows = [[r.window_index, r.template_correlation_sqi, r.kurtosis_sqi,
             r.spectral_entropy_sqi, r.composite] for r in reports]
    path = os.path.join(outdir, "quality.csv")
    write_table(path, rows, ["window_index", "template_correlation", "kurtosis",
                             "spectral_entropy", "composite"])
    print(f"pulsatio quality: {len(rows)} windows -> {path}")
    return EXIT_OK


def cmd_spectral(args, config):
    outdir = _resolve_outdir(args)
    signal = load_signal(args.input, args.sample_rate)
    ps = welch_psd(signal)
    psd_path = os.path.join(outdir, "psd.csv")
    write_table(psd_path, np.column_stack([ps.freqs_hz, ps.power]),
                ["freq_hz", "power"])
    sg = spectrogram(signal, window_s=1.0, hop_s=0.5)
    write_table(os.path.join(outdir, "spectrogram.csv"),
                np.column_stack([sg.freqs_hz, sg.power]),
                ["freq_hz"] + [f"t{t:.3f}" for t in sg.times_s])
    print(f"pulsatio spectral: psd.csv and spectrogram.csv -> {outdir}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
