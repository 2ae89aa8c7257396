import json
import re

import numpy as np
import pytest

from pulsatio import synthesize_scg, write_table
from pulsatio.cli import main

DEMO_ARTIFACTS = [
    "filtered.csv", "beats.csv", "template.csv", "residuals.csv", "waterfall.csv",
    "features.csv", "multifractal.json", "manifest.json",
    "average_beat.svg", "waterfall.svg", "zeta_vs_q.svg", "spectrum_D_of_h.svg",
]


def run_demo(tmp_path, name="out", extra=()):
    outdir = tmp_path / name
    code = main(["demo", "--synthetic", "--seed", "1", "-o", str(outdir), *extra])
    return code, outdir


class TestDemo:
    def test_all_artifacts_exist(self, tmp_path):
        code, outdir = run_demo(tmp_path)
        assert code == 0
        for name in DEMO_ARTIFACTS:
            assert (outdir / name).exists(), name
        manifest = json.loads((outdir / "manifest.json").read_text())
        assert sorted(manifest["artifacts"]) == sorted(DEMO_ARTIFACTS)
        assert all(s["status"] == "ok" for s in manifest["stages"])

    def test_feature_rows_match_accepted_beats(self, tmp_path):
        _, outdir = run_demo(tmp_path)
        residuals = (outdir / "residuals.csv").read_text().splitlines()[1:]
        accepted = sum(1 for line in residuals if line.endswith("1.0"))
        feature_rows = len((outdir / "features.csv").read_text().splitlines()) - 1
        assert feature_rows == accepted

    def test_detected_beats_in_range(self, tmp_path):
        _, outdir = run_demo(tmp_path)
        n_rows = len((outdir / "beats.csv").read_text().splitlines()) - 1
        assert 29 <= n_rows <= 31

    def test_bitwise_determinism(self, tmp_path):
        _, out1 = run_demo(tmp_path, "a")
        _, out2 = run_demo(tmp_path, "b")
        for name in DEMO_ARTIFACTS:
            b1 = (out1 / name).read_bytes()
            b2 = (out2 / name).read_bytes()
            if name == "manifest.json":
                b1 = b1.replace(str(out1).encode(), b"OUT")
                b2 = b2.replace(str(out2).encode(), b"OUT")
            assert b1 == b2, name

    def test_zeta_zero_in_multifractal_json(self, tmp_path):
        _, outdir = run_demo(tmp_path)
        payload = json.loads((outdir / "multifractal.json").read_text())
        q = payload["q_grid"]
        assert payload["zeta"][q.index(0.0)] == 0.0

    def test_unreadable_input_names_load_stage(self, tmp_path):
        outdir = tmp_path / "fail"
        code = main(["demo", "--input", str(tmp_path / "missing.csv"), "-o", str(outdir)])
        assert code == 3
        manifest = json.loads((outdir / "manifest.json").read_text())
        failed = [s for s in manifest["stages"] if s["status"] == "failed"]
        assert failed and failed[0]["name"] == "load"

    def test_requires_source(self, tmp_path, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["demo", "-o", str(tmp_path / "x")])
        assert exc.value.code == 2

    def test_env_var_output_dir(self, tmp_path, monkeypatch):
        outdir = tmp_path / "fromenv"
        monkeypatch.setenv("PULSATIO_OUTPUT_DIR", str(outdir))
        assert main(["demo", "--synthetic", "--seed", "1"]) == 0
        assert (outdir / "manifest.json").exists()

    def test_figure_structure(self, tmp_path):
        _, outdir = run_demo(tmp_path)
        zeta_svg = (outdir / "zeta_vs_q.svg").read_text()
        assert len(re.findall(r"<polyline", zeta_svg)) == 2  # measured + cumulant fit
        ridge_svg = (outdir / "waterfall.svg").read_text()
        n_rows = len((outdir / "waterfall.csv").read_text().splitlines()) - 1
        assert len(re.findall(r"<polyline", ridge_svg)) == n_rows
        assert "<circle" in (outdir / "spectrum_D_of_h.svg").read_text()


class TestStageCommands:
    def write_signal(self, tmp_path, samples, name="sig.csv"):
        path = tmp_path / name
        write_table(path, [[v] for v in samples], ["acc"])
        return path

    def test_mf_command(self, tmp_path):
        sig = synthesize_scg(20, 60, 15, 0.05, seed=3)
        path = self.write_signal(tmp_path, sig.samples)
        outdir = tmp_path / "mf"
        code = main(["mf", "--input", str(path), "--q-min", "-5", "--q-max", "5",
                     "-o", str(outdir)])
        assert code == 0
        payload = json.loads((outdir / "multifractal.json").read_text())
        assert payload["zeta"][payload["q_grid"].index(0.0)] == 0.0

    def test_quality_command(self, tmp_path):
        rng = np.random.default_rng(0)
        t = np.arange(300) / 500
        beat = np.exp(-0.5 * ((t - 0.2) / 0.03) ** 2) * np.sin(2 * np.pi * 25 * (t - 0.2))
        stream = np.concatenate([beat + rng.normal(0, 0.05, 300) for _ in range(6)])
        sig = self.write_signal(tmp_path, stream)
        template = self.write_signal(tmp_path, beat, "template.csv")
        outdir = tmp_path / "q"
        code = main(["quality", "--input", str(sig), "--template", str(template),
                     "-o", str(outdir)])
        assert code == 0
        lines = (outdir / "quality.csv").read_text().splitlines()
        assert lines[0] == "window_index,template_correlation,kurtosis,spectral_entropy,composite"
        assert len(lines) == 7
        for line in lines[1:]:
            _, corr, _, entropy, comp = map(float, line.split(","))
            assert -1.0 <= corr <= 1.0
            assert 0.0 <= entropy <= 1.0
            assert 0.0 <= comp <= 1.0

    def test_spectral_command(self, tmp_path):
        sig = synthesize_scg(10, 60, 15, 0.05, seed=4)
        path = self.write_signal(tmp_path, sig.samples)
        outdir = tmp_path / "sp"
        assert main(["spectral", "--input", str(path), "-o", str(outdir)]) == 0
        lines = (outdir / "psd.csv").read_text().splitlines()
        assert lines[0] == "freq_hz,power"
        powers = [float(line.split(",")[1]) for line in lines[1:]]
        assert all(p >= 0.0 for p in powers)
        assert (outdir / "spectrogram.csv").exists()

    def test_features_command(self, tmp_path):
        sig = synthesize_scg(20, 60, 15, 0.05, seed=5)
        path = self.write_signal(tmp_path, sig.samples)
        outdir = tmp_path / "feat"
        assert main(["features", "--input", str(path), "-o", str(outdir)]) == 0
        lines = (outdir / "features.csv").read_text().splitlines()
        assert lines[0].startswith("beat_index,ar_k1")
        assert len(lines) > 10

    def test_missing_input_is_usage_error(self, tmp_path):
        with pytest.raises(SystemExit) as exc:
            main(["mf", "-o", str(tmp_path)])
        assert exc.value.code == 2

    def test_stage_failure_exit_code(self, tmp_path):
        path = self.write_signal(tmp_path, np.zeros(5000))
        assert main(["features", "--input", str(path), "-o", str(tmp_path / "o")]) == 3
