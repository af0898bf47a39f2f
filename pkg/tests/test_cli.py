"""End-to-end tests of the command-line interface."""

import csv
import json

import pytest
from click.testing import CliRunner

from ld_shift.cli.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def write_config(tmp_path, text):
    path = tmp_path / "run.yaml"
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestTrajectoryCommand:
    def test_writes_samples_and_summary(self, runner, tmp_path):
        result = runner.invoke(cli, ["--out", str(tmp_path), "trajectory"])
        assert result.exit_code == 0, result.output
        rows = list(csv.DictReader((tmp_path / "trajectory.csv").open(encoding="utf-8")))
        assert len(rows) == 2001
        assert float(rows[-1]["t"]) == 0.0
        summary = json.loads((tmp_path / "trajectory_summary.json").read_text(encoding="utf-8"))
        assert summary["config"]["particle"]["p"] == 1.0
        assert summary["t_entry"] < summary["t_exit"] < 0.0

    def test_json_only(self, runner, tmp_path):
        result = runner.invoke(cli, ["--out", str(tmp_path), "--format", "json", "trajectory"])
        assert result.exit_code == 0, result.output
        assert not (tmp_path / "trajectory.csv").exists()
        assert (tmp_path / "trajectory_summary.json").exists()

    def test_unknown_config_key(self, runner, tmp_path):
        config = write_config(tmp_path, "particle:\n  mass: 2.0\n")
        result = runner.invoke(cli, ["--config", config, "--out", str(tmp_path), "trajectory"])
        assert result.exit_code == 2
        assert "particle.mass" in result.output

    def test_turning_point(self, runner, tmp_path):
        config = write_config(tmp_path, "potential:\n  V0: 0.5\n")
        result = runner.invoke(cli, ["--config", config, "--out", str(tmp_path), "trajectory"])
        assert result.exit_code == 2
        assert "TurningPointError" in result.output


class TestShiftCommand:
    def test_report(self, runner, tmp_path):
        result = runner.invoke(cli, ["--out", str(tmp_path), "shift", "--no-fd"])
        assert result.exit_code == 0, result.output
        report = json.loads((tmp_path / "shift_report.json").read_text(encoding="utf-8"))
        assert report["passed"] is True
        assert report["dzq_reduced"] == pytest.approx(report["dz_classical_closed"], rel=1e-5)
        assert "dzq_angular_fd" not in report
        assert "PASSED" in result.output


class TestAmplitudeCommand:
    def test_spectrum_grid(self, runner, tmp_path):
        args = ["--out", str(tmp_path), "amplitude", "--k-min", "1", "--k-max", "4", "--k-count", "3", "--cos-count", "2"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        rows = list(csv.DictReader((tmp_path / "spectrum.csv").open(encoding="utf-8")))
        assert len(rows) == 6
        summary = json.loads((tmp_path / "spectrum.json").read_text(encoding="utf-8"))
        assert summary["max_form_difference"] <= 1e-6

    def test_k_beyond_budget(self, runner, tmp_path):
        args = ["--out", str(tmp_path), "amplitude", "--k-max", "1e5", "--k-count", "2", "--cos-count", "1"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 3
        assert "ResolutionError" in result.output

    def test_bad_k_range(self, runner, tmp_path):
        result = runner.invoke(cli, ["--out", str(tmp_path), "amplitude", "--k-min", "0"])
        assert result.exit_code == 2


class TestVerifyCommand:
    def test_loose_solver_fails_checks(self, runner, tmp_path):
        config = write_config(tmp_path, "simulation:\n  ode_rel_tol: 1.0e-3\n  ode_abs_tol: 1.0e-6\n")
        result = runner.invoke(cli, ["--config", config, "--out", str(tmp_path), "verify", "--no-fd"])
        assert result.exit_code == 1
        results = json.loads((tmp_path / "verification.json").read_text(encoding="utf-8"))
        assert results["valid"] is False
        failed = {c["name"] for c in results["checks"] if not c["passed"]}
        assert "jacobi.symplectic_drift" in failed

    def test_zero_coupling_passes(self, runner, tmp_path):
        config = write_config(tmp_path, "particle:\n  alpha_c: 0.0\n")
        result = runner.invoke(cli, ["--config", config, "--out", str(tmp_path), "verify", "--no-fd"])
        assert result.exit_code == 0, result.output
        results = json.loads((tmp_path / "verification.json").read_text(encoding="utf-8"))
        routes = next(c for c in results["checks"] if c["name"] == "shift.route_equality")
        assert routes["measured"] == 0.0


class TestSweepCommand:
    def test_shift_scales_with_coupling(self, runner, tmp_path):
        args = ["--out", str(tmp_path), "sweep", "--parameter", "alpha_c", "--values", "0.005,0.01,0.02", "--no-fd"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        rows = list(csv.DictReader((tmp_path / "sweep.csv").open(encoding="utf-8")))
        assert [float(r["value"]) for r in rows] == [0.005, 0.01, 0.02]
        shifts = [float(r["dz_classical_closed"]) for r in rows]
        assert shifts[1] == pytest.approx(2.0 * shifts[0], rel=1e-9)
        assert shifts[2] == pytest.approx(4.0 * shifts[0], rel=1e-9)
        assert all(r["passed"] == "true" for r in rows)
        assert all(r["dzq_angular_fd"] == "" for r in rows)

    def test_single_value_matches_shift(self, runner, tmp_path):
        shift_dir, sweep_dir = tmp_path / "shift", tmp_path / "sweep"
        result = runner.invoke(cli, ["--out", str(shift_dir), "shift", "--no-fd"])
        assert result.exit_code == 0, result.output
        args = ["--out", str(sweep_dir), "--format", "json", "sweep", "--parameter", "p", "--values", "1.0", "--no-fd"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 0, result.output
        shift_report = json.loads((shift_dir / "shift_report.json").read_text(encoding="utf-8"))
        sweep_report = json.loads((sweep_dir / "sweep.json").read_text(encoding="utf-8"))["reports"][0]
        shift_report.pop("config")
        assert sweep_report == shift_report

    def test_unknown_parameter(self, runner, tmp_path):
        args = ["--out", str(tmp_path), "sweep", "--parameter", "m", "--values", "1,2"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 2

    def test_failed_point_sets_exit_code(self, runner, tmp_path):
        args = ["--out", str(tmp_path), "--format", "json", "sweep", "--parameter", "V0", "--values", "0.1,0.5", "--no-fd"]
        result = runner.invoke(cli, args)
        assert result.exit_code == 2
        payload = json.loads((tmp_path / "sweep.json").read_text(encoding="utf-8"))
        assert payload["reports"][0] is not None
        assert payload["reports"][1] is None
        assert list(payload["errors"]) == ["V0-0001"]

    def test_unparseable_values(self, runner, tmp_path):
        result = runner.invoke(cli, ["--out", str(tmp_path), "sweep", "--parameter", "p", "--values", "1,x"])
        assert result.exit_code == 2


def test_version(runner):
    result = runner.invoke(cli, ["--version"])
    assert result.exit_code == 0
    assert "ld-shift" in result.output
