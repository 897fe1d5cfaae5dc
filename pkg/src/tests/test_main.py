from __future__ import annotations

import json
from typing import TYPE_CHECKING

from click.testing import CliRunner
from pytest import approx, fixture

from bichromatic import __version__
from bichromatic.cli import _main
from bichromatic.lib import data_rows

if TYPE_CHECKING:
    from pathlib import Path


_GRID = ["--theta-min", "10", "--theta-max", "12", "--theta-step", "1"]


@fixture
def runner() -> CliRunner:
    return CliRunner()


class TestCLI:
    def test_born(self, *, runner: CliRunner) -> None:
        result = runner.invoke(_main, ["born", *_GRID])
        assert result.exit_code == 0, result.output
        lines = data_rows(result.stdout)
        assert lines[0] == "theta_deg,q_fm_inv,dcs_mb_sr"
        assert len(lines) == 4

    def test_phase_scan_json(self, *, runner: CliRunner) -> None:
        result = runner.invoke(
            _main,
            ["phase-scan", "--phase-points", "5", "--phase-units", "pi", "--format", "json"],
        )
        assert result.exit_code == 0, result.output
        data = json.loads(result.stdout)
        assert data["columns"] == ["phase_pi", "abs_c_1", "abs_c_2", "abs_c_3"]
        assert [row[0] for row in data["rows"]] == approx([0.0, 0.5, 1.0, 1.5, 2.0])

    def test_ratio_scan(self, *, runner: CliRunner) -> None:
        result = runner.invoke(
            _main, ["ratio-scan", "--phase-points", "9", "--ratios", "1,4", "--n", "2"]
        )
        assert result.exit_code == 0, result.output
        assert data_rows(result.stdout)[0] == "phase_rad,abs_c_2_ratio_1,abs_c_2_ratio_4"

    def test_total(self, *, runner: CliRunner) -> None:
        result = runner.invoke(_main, ["total", "--theta-min", "10"])
        assert result.exit_code == 0, result.output
        header, row = data_rows(result.stdout)
        assert header == "theta_min_deg,total_mb"
        assert float(row.split(",")[1]) > 0.0

    def test_output(self, *, runner: CliRunner, tmp_path: Path) -> None:
        path = tmp_path.joinpath("inelastic.csv")
        result = runner.invoke(_main, ["inelastic", *_GRID, "--output", str(path)])
        assert result.exit_code == 0, result.output
        assert result.stdout == ""
        assert data_rows(path.read_text())[0] == "theta_deg,a,b,bichromatic,monochromatic"

    def test_dressed(self, *, runner: CliRunner) -> None:
        result = runner.invoke(_main, ["dressed", *_GRID, "--n=-1,1"])
        assert result.exit_code == 0, result.output
        assert "dressed_-1_mb_sr" in data_rows(result.stdout)[0]

    def test_version(self, *, runner: CliRunner) -> None:
        result = runner.invoke(_main, ["--version"])
        assert result.exit_code == 0
        assert __version__ in result.stdout

    def test_error_config(self, *, runner: CliRunner) -> None:
        result = runner.invoke(
            _main, ["born", "--theta-min", "10", "--theta-max", "12", "--theta-step", "0"]
        )
        assert result.exit_code == 1
        assert "Invalid config 'theta_step'" in result.stderr

    def test_error_choice(self, *, runner: CliRunner) -> None:
        result = runner.invoke(_main, ["born", *_GRID, "--format", "xml"])
        assert result.exit_code == 2
        assert "Invalid value for '--format'" in result.stderr

    def test_error_computation(self, *, runner: CliRunner) -> None:
        result = runner.invoke(
            _main,
            ["dressed", *_GRID, "--n", "1000000000", "--laser-intensity-m", "0"],
        )
        assert result.exit_code == 2
        assert "is closed" in result.stderr

    def test_validate(self, *, runner: CliRunner) -> None:
        result = runner.invoke(_main, ["validate"])
        assert result.exit_code == 0, result.output
        assert "PASS" in result.stdout
        assert "FAIL" not in result.stdout
