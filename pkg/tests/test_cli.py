"""Tests for the command-line interface: reports, determinism, exit codes."""

import json
import math

import numpy as np
import pytest

import egain.cli as cli
from egain.cli import main
from egain.errors import HypothesisViolationError
from egain.matio import save_matrix, write_json


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGain:
    def test_attenuator_preset(self, capsys):
        code, out, _ = run(["gain", "--preset", "attenuator", "--k", "0.5"], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["gain_closed_form"] == pytest.approx(2.0 * math.log(0.5))
        assert report["regular"] is True
        assert report["admissibility"]["verdict"] == "positive_semidefinite"

    def test_classical_noise_zero_gain(self, capsys):
        code, out, _ = run(
            ["gain", "--preset", "classical-noise", "--k", "1", "--noise", "0.3"], capsys
        )
        assert code == 0
        report = json.loads(out)
        assert report["gain_closed_form"] == 0.0
        assert report["admissibility"]["strict"] is True

    def test_channel_file(self, tmp_path, capsys):
        path = str(tmp_path / "channel.json")
        write_json(
            path,
            {"K": [[2.0, 0.0], [0.0, 2.0]], "mu": [[1.6, 0.0], [0.0, 1.6]]},
        )
        code, out, _ = run(["gain", "--channel-file", path], capsys)
        assert code == 0
        assert json.loads(out)["gain_closed_form"] == pytest.approx(math.log(4.0))

    def test_singular_k_exits_2(self, tmp_path, capsys):
        path = str(tmp_path / "singular.json")
        write_json(path, {"K": [[0.0, 0.0], [0.0, 0.0]], "mu": [[2.0, 0.0], [0.0, 2.0]]})
        code, _, err = run(["gain", "--channel-file", path], capsys)
        assert code == 2
        assert "non-regular" in err

    def test_inadmissible_exits_2_with_certificate(self, tmp_path, capsys):
        path = str(tmp_path / "bad.json")
        write_json(path, {"K": [[2.0, 0.0], [0.0, 2.0]], "mu": [[0.1, 0.0], [0.0, 0.1]]})
        code, _, err = run(["gain", "--channel-file", path], capsys)
        assert code == 2
        assert "min eigenvalue" in err

    def test_missing_channel_spec_exits_2(self, capsys):
        code, _, err = run(["gain"], capsys)
        assert code == 2
        assert "preset" in err


class TestSweep:
    def test_csv_shape_and_convergence(self, tmp_path, capsys):
        out_path = str(tmp_path / "sweep.csv")
        code, _, _ = run(
            ["sweep", "--preset", "attenuator", "--k", "0.5", "--out", out_path], capsys
        )
        assert code == 0
        lines = open(out_path).read().strip().split("\n")
        header_idx = lines.index("beta,gain,gap_to_closed_form")
        rows = [line.split(",") for line in lines[header_idx + 1 :]]
        gaps = [float(r[2]) for r in rows]
        assert "# converged: true" in lines
        assert abs(gaps[-1]) < 1e-3
        assert all(b < a for a, b in zip(gaps, gaps[1:]))

    def test_identity_channel_all_gaps_zero(self, tmp_path, capsys):
        # classical-noise with k = 1 and zero extra noise is the identity
        out_path = str(tmp_path / "identity.csv")
        code, _, _ = run(
            ["sweep", "--preset", "classical-noise", "--k", "1", "--out", out_path],
            capsys,
        )
        assert code == 0
        lines = open(out_path).read().strip().split("\n")
        header_idx = lines.index("beta,gain,gap_to_closed_form")
        gaps = [abs(float(line.split(",")[2])) for line in lines[header_idx + 1 :]]
        assert max(gaps) < 1e-12

    def test_warning_row_on_non_convergence(self, tmp_path, capsys, monkeypatch):
        # force non-convergence by disabling the adaptive extension through
        # a tight custom grid and a patched sweep... simpler: a grid whose
        # floor is above the convergence point with adaptive off is not
        # reachable through the CLI, so patch the library call instead.
        from egain.channels import GainReport

        def fake_sweep(channel, hamiltonian, beta_grid=None, **kwargs):
            return GainReport(
                beta_grid=np.array([1.0, 0.1]),
                gains=np.array([1.0, 0.9]),
                closed_form=0.5,
                lower_bound_general=0.5,
                converged=False,
            )

        monkeypatch.setattr(cli, "gain_beta_sweep", fake_sweep)
        out_path = str(tmp_path / "warn.csv")
        code, _, _ = run(
            ["sweep", "--preset", "attenuator", "--k", "0.5", "--out", out_path], capsys
        )
        assert code == 0
        text = open(out_path).read()
        assert "# warning:" in text


class TestFock:
    def test_small_campaign_report(self, tmp_path, capsys):
        out_path = str(tmp_path / "fock.json")
        code, _, _ = run(
            [
                "fock",
                "--preset",
                "attenuator",
                "--k",
                "0.7",
                "--trials",
                "5",
                "--seed",
                "11",
                "--out",
                out_path,
            ],
            capsys,
        )
        assert code == 0
        report = json.load(open(out_path))
        assert report["holds_count"] == 5
        assert report["seed"] == 11
        assert len(report["records"]) == 5
        assert report["worst_margin"] > 0

    def test_byte_identical_for_same_seed(self, tmp_path, capsys):
        paths = [str(tmp_path / name) for name in ("a.json", "b.json")]
        argv = [
            "fock",
            "--preset",
            "amplifier",
            "--k",
            "1.5",
            "--trials",
            "4",
            "--seed",
            "3",
        ]
        for path in paths:
            assert main(argv + ["--out", path]) == 0
        capsys.readouterr()
        assert open(paths[0], "rb").read() == open(paths[1], "rb").read()

    def test_tiny_dim_exits_4_but_reports(self, tmp_path, capsys):
        out_path = str(tmp_path / "tiny.json")
        code, _, _ = run(
            [
                "fock",
                "--preset",
                "amplifier",
                "--k",
                "1.5",
                "--dim",
                "8",
                "--trials",
                "6",
                "--seed",
                "0",
                "--out",
                out_path,
            ],
            capsys,
        )
        assert code == 4
        report = json.load(open(out_path))
        assert report["unreliable_count"] > 0
        assert len(report["records"]) == 6

    def test_small_dim_clamps_generator_support(self, tmp_path, capsys):
        # support-10 campaign inputs must shrink to fit a dim-8 cutoff
        out_path = str(tmp_path / "tiny_att.json")
        code, _, _ = run(
            [
                "fock",
                "--preset",
                "attenuator",
                "--k",
                "0.7",
                "--dim",
                "8",
                "--trials",
                "4",
                "--seed",
                "0",
                "--out",
                out_path,
            ],
            capsys,
        )
        assert code == 4
        report = json.load(open(out_path))
        assert len(report["records"]) == 4

    def test_extremality_campaign(self, capsys):
        code, out, _ = run(
            [
                "fock",
                "--preset",
                "classical-noise",
                "--k",
                "1",
                "--noise",
                "0.3",
                "--trials",
                "3",
                "--seed",
                "5",
                "--extremality",
            ],
            capsys,
        )
        assert code == 0
        report = json.loads(out)
        assert report["campaign"] == "extremality"
        assert report["holds_count"] == 3
        assert "gaussian_gain" in report["records"][0]

    def test_hypothesis_violation_exits_3(self, capsys, monkeypatch):
        def boom(*args, **kwargs):
            raise HypothesisViolationError("degenerate input")

        monkeypatch.setattr(cli, "extremality_campaign", boom)
        code, _, err = run(
            ["fock", "--preset", "attenuator", "--k", "0.7", "--extremality"], capsys
        )
        assert code == 3
        assert "degenerate" in err


class TestClassical:
    def test_table_rows(self, capsys):
        code, out, _ = run(["classical", "--k", "5"], capsys)
        assert code == 0
        lines = out.strip().split("\n")
        rows = [line.split(",") for line in lines if line and not line.startswith("#")]
        assert rows[0] == ["k", "H", "doubly_stochastic"]
        body = rows[1:]
        assert len(body) == 5
        assert all(r[2] == "true" for r in body)
        entropies = [float(r[1]) for r in body]
        assert all(b > a for a, b in zip(entropies, entropies[1:]))


class TestWilliamson:
    def test_report(self, tmp_path, capsys):
        path = str(tmp_path / "alpha.json")
        save_matrix(path, np.diag([2.0, 2.0, 0.7, 0.7]))
        code, out, _ = run(["williamson", path], capsys)
        assert code == 0
        report = json.loads(out)
        assert report["symplectic_eigenvalues"] == pytest.approx([2.0, 0.7])
        assert report["admissibility"]["verdict"] == "positive_definite"

    def test_accepts_matrix_object_file(self, tmp_path, capsys):
        path = str(tmp_path / "alpha_obj.json")
        write_json(path, {"matrix": [[1.0, 0.2], [0.2, 0.8]]})
        code, out, _ = run(["williamson", path], capsys)
        assert code == 0
        report = json.loads(out)
        nu = math.sqrt(1.0 * 0.8 - 0.2 * 0.2)
        assert report["symplectic_eigenvalues"] == pytest.approx([nu])

    def test_odd_dimension_exits_2(self, tmp_path, capsys):
        path = str(tmp_path / "odd.json")
        save_matrix(path, np.eye(3))
        code, _, _ = run(["williamson", path], capsys)
        assert code == 2

    def test_missing_file_exits_2(self, capsys):
        code, _, _ = run(["williamson", "/no/such/file.json"], capsys)
        assert code == 2


class TestTolerancePlumbing:
    def test_env_var_override(self, tmp_path, capsys, monkeypatch):
        # an absurdly loose EGAIN_TOL admits a slightly deficient channel
        path = str(tmp_path / "borderline.json")
        write_json(
            path,
            {"K": [[1.0, 0.0], [0.0, 1.0]], "mu": [[-1e-6, 0.0], [0.0, -1e-6]]},
        )
        monkeypatch.delenv("EGAIN_TOL", raising=False)
        code, _, _ = run(["gain", "--channel-file", path], capsys)
        assert code == 2
        monkeypatch.setenv("EGAIN_TOL", "1e-3")
        code, out, _ = run(["gain", "--channel-file", path], capsys)
        assert code == 0

    def test_flag_beats_env(self, tmp_path, capsys, monkeypatch):
        path = str(tmp_path / "borderline2.json")
        write_json(
            path,
            {"K": [[1.0, 0.0], [0.0, 1.0]], "mu": [[-1e-6, 0.0], [0.0, -1e-6]]},
        )
        monkeypatch.setenv("EGAIN_TOL", "1e-12")
        code, _, _ = run(["gain", "--channel-file", path, "--tol", "1e-3"], capsys)
        assert code == 0

    def test_bad_env_var_exits_2(self, capsys, monkeypatch):
        monkeypatch.setenv("EGAIN_TOL", "banana")
        code, _, err = run(["gain", "--preset", "attenuator", "--k", "0.5"], capsys)
        assert code == 2
        assert "EGAIN_TOL" in err
