"""Scenario configs, sweep execution, CSV output and exit codes."""

import configparser
import math
import os

import numpy as np
import pytest

from entroqsl import cli
from entroqsl.errors import BoundViolation, ConfigError

BASE_INI = """\
[drive]
kind = depolarizing
gamma = 1.0

[state]
r = 0.2,0.8

[time]
gamma_tau = 0:2:3

[run]
measures = J,JS
panels = 200
"""

GAD_INI = """\
[drive]
kind = gad
gamma = 0.5
alpha = 0.2,0.8

[state]
r = 0.3,0.6
theta = 0.7,2.4

[time]
gamma_tau = 0.5,1.5

[run]
measures = J
speed_mode = kraus-bound
panels = 200
"""

UNITARY_INI = """\
[drive]
kind = unitary
axis = 0,0,2

[state]
r = 0.5
theta = 1.2

[time]
n_tau = 0.4:2.4:3

[run]
measures = J,JS
panels = 200
"""


def parse_text(text):
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    parser.read_string(text)
    return cli.build_config(parser)


def write_ini(tmp_path, text, name="scenario.ini"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestConfigParsing:
    def test_base_shape(self):
        config = parse_text(BASE_INI)
        assert config.kind == "depolarizing"
        assert config.gamma == 1.0
        assert config.r_values == (0.2, 0.8)
        assert config.time_values == (0.0, 1.0, 2.0)
        assert config.measures == ("J", "JS")
        assert config.speed_mode == "exact"
        assert config.cell_count == 6
        assert config.time_name == "gamma_tau"

    def test_value_forms(self):
        assert cli._parse_values("1.5", context="x") == (1.5,)
        assert cli._parse_values("1,2,3", context="x") == (1.0, 2.0, 3.0)
        assert cli._parse_values("0:1:5", context="x") == (0.0, 0.25, 0.5, 0.75, 1.0)
        assert cli._parse_values("2:2:1", context="x") == (2.0,)

    def test_gad_panel_axes(self):
        config = parse_text(GAD_INI)
        assert config.alpha_values == (0.2, 0.8)
        assert config.theta_values == (0.7, 2.4)
        assert config.cell_count == 16
        assert config.has_alpha

    def test_unitary_shape(self):
        config = parse_text(UNITARY_INI)
        assert config.is_unitary
        assert config.axis == (0.0, 0.0, 2.0)
        assert config.time_name == "n_tau"
        assert config.gamma is None

    @pytest.mark.parametrize(
        "mutation",
        [
            lambda s: s.replace("kind = depolarizing", "kind = mystery"),
            lambda s: s.replace("gamma = 1.0", "gamma = 0"),
            lambda s: s.replace("gamma = 1.0", "gamma = oops"),
            lambda s: s.replace("r = 0.2,0.8", "r = 0.2,1.0"),
            lambda s: s.replace("gamma_tau = 0:2:3", "gamma_tau = -1,2"),
            lambda s: s.replace("gamma_tau = 0:2:3", "n_tau = 1"),
            lambda s: s.replace("measures = J,JS", "measures = J,XX"),
            lambda s: s.replace("panels = 200", "panels = 7"),
            lambda s: s.replace("[drive]\nkind = depolarizing\ngamma = 1.0", "[drive]\nkind = gad\ngamma = 1.0"),
        ],
    )
    def test_invalid_configs_rejected(self, mutation):
        with pytest.raises(ConfigError):
            parse_text(mutation(BASE_INI))

    def test_unitary_constraints(self):
        with pytest.raises(ConfigError):
            parse_text(UNITARY_INI.replace("axis = 0,0,2", "axis = 0,0,0"))
        with pytest.raises(ConfigError):
            parse_text(UNITARY_INI + "speed_mode = kraus-bound\n")
        with pytest.raises(ConfigError):
            parse_text(UNITARY_INI.replace("[state]", "[drive2]\n[state]").replace("kind = unitary", "kind = unitary\ngamma = 1.0"))

    def test_theta_out_of_range(self):
        with pytest.raises(ConfigError):
            parse_text(BASE_INI.replace("r = 0.2,0.8", "r = 0.5\ntheta = 3.5"))

    def test_missing_file(self):
        with pytest.raises(ConfigError):
            cli.parse_config("/nonexistent/path.ini")


class TestRunScenario:
    def test_row_ordering_radius_fastest(self):
        grid = cli.run_scenario(parse_text(BASE_INI))
        r_column = [row["r"] for row in grid.rows]
        t_column = [row["gamma_tau"] for row in grid.rows]
        assert r_column == [0.2, 0.8, 0.2, 0.8, 0.2, 0.8]
        assert t_column == [0.0, 0.0, 1.0, 1.0, 2.0, 2.0]

    def test_gad_panels_walk_alpha_then_theta(self):
        grid = cli.run_scenario(parse_text(GAD_INI))
        assert grid.cell_count == 16
        alphas = [row["alpha"] for row in grid.rows]
        thetas = [row["theta"] for row in grid.rows]
        assert alphas == [0.2] * 8 + [0.8] * 8
        assert thetas == [0.7] * 4 + [2.4] * 4 + [0.7] * 4 + [2.4] * 4

    def test_tau_column_rescales_by_gamma(self):
        grid = cli.run_scenario(parse_text(GAD_INI))
        for row in grid.rows:
            assert row["tau"] == pytest.approx(row["gamma_tau"] / 0.5, abs=1e-15)

    def test_normalization_per_panel(self):
        grid = cli.run_scenario(parse_text(GAD_INI))
        for start in range(0, 16, 4):
            panel = [row["delta_J_normalized"] for row in grid.rows[start : start + 4]]
            assert min(panel) == 0.0
            assert max(panel) == 1.0

    def test_error_carries_cell_coordinates(self, monkeypatch):
        config = parse_text(BASE_INI)

        def boom(*args, **kwargs):
            raise BoundViolation("synthetic failure")

        monkeypatch.setattr(cli, "evaluate_report", boom)
        with pytest.raises(BoundViolation, match=r"at cell \(gamma_tau=0, r=0\.2"):
            cli.run_scenario(config)

    def test_unitary_grid_has_no_kraus_columns(self):
        grid = cli.run_scenario(parse_text(UNITARY_INI))
        assert "tau_qsl_J_kraus_bound" not in grid.columns
        assert "tau_qsl_J" in grid.columns
        assert grid.cell_count == 3


class TestCsv:
    def test_deterministic_bytes(self, tmp_path):
        config = parse_text(BASE_INI)
        path_a = tmp_path / "a.csv"
        path_b = tmp_path / "b.csv"
        cli.export_csv(cli.run_scenario(config), path_a)
        cli.export_csv(cli.run_scenario(config), path_b)
        assert path_a.read_bytes() == path_b.read_bytes()

    def test_roundtrip_at_printed_precision(self, tmp_path):
        config = parse_text(BASE_INI)
        grid = cli.run_scenario(config)
        path = tmp_path / "out.csv"
        cli.export_csv(grid, path)
        meta, columns, rows = cli.read_csv(str(path))
        assert meta["kind"] == "depolarizing"
        assert meta["gamma"] == "1"
        assert columns == grid.columns
        assert len(rows) == grid.cell_count
        for row, original in zip(rows, grid.rows):
            for name in columns:
                assert float(cli._format_cell(name, original[name])) == row[name]

    def test_header_mentions_panels_and_normalization(self, tmp_path):
        path = tmp_path / "out.csv"
        cli.export_csv(cli.run_scenario(parse_text(BASE_INI)), path)
        text = path.read_text(encoding="utf-8")
        assert "# panels = 200" in text
        assert "# normalization = min-max per (alpha, theta) panel" in text
        assert "# timestamp" not in text

    def test_flag_columns_are_integers(self, tmp_path):
        path = tmp_path / "out.csv"
        cli.export_csv(cli.run_scenario(parse_text(BASE_INI)), path)
        for line in path.read_text(encoding="utf-8").splitlines():
            if line.startswith("#") or line.startswith("gamma_tau"):
                continue
            parts = line.split(",")
            assert parts[-1] in ("0", "1")
            assert parts[-2] in ("0", "1")

    def test_optional_timestamp(self, tmp_path):
        path = tmp_path / "out.csv"
        cli.export_csv(cli.run_scenario(parse_text(BASE_INI)), path, include_timestamp=True)
        assert "# timestamp = " in path.read_text(encoding="utf-8")


class TestOutputPathResolution:
    def test_relative_uses_env_dir(self, monkeypatch, tmp_path):
        monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
        assert cli.resolve_output_path("x.csv") == os.path.join(str(tmp_path), "x.csv")

    def test_absolute_ignores_env_dir(self, monkeypatch, tmp_path):
        monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
        assert cli.resolve_output_path("/data/x.csv") == "/data/x.csv"

    def test_unset_env_keeps_relative(self, monkeypatch):
        monkeypatch.delenv(cli.OUTPUT_DIR_ENV, raising=False)
        assert cli.resolve_output_path("x.csv") == "x.csv"


class TestMain:
    def test_run_writes_file(self, tmp_path, capsys):
        config_path = write_ini(tmp_path, BASE_INI)
        out_path = tmp_path / "sweep.csv"
        code = cli.main(["run", config_path, "--output", str(out_path)])
        assert code == 0
        assert out_path.exists()
        assert "wrote" in capsys.readouterr().out

    def test_run_uses_env_output_dir(self, tmp_path, monkeypatch):
        monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
        config_path = write_ini(tmp_path, BASE_INI + "\n[output]\npath = nested/sweep.csv\n")
        assert cli.main(["run", config_path]) == 0
        assert (tmp_path / "nested" / "sweep.csv").exists()

    def test_run_without_output_is_config_error(self, tmp_path, capsys):
        config_path = write_ini(tmp_path, BASE_INI)
        assert cli.main(["run", config_path]) == 2
        assert "config error" in capsys.readouterr().err

    def test_bad_config_exit_code(self, tmp_path):
        config_path = write_ini(tmp_path, BASE_INI.replace("gamma = 1.0", "gamma = -1"))
        assert cli.main(["run", config_path, "--output", str(tmp_path / "x.csv")]) == 2

    def test_numerical_violation_exit_code(self, tmp_path, monkeypatch, capsys):
        config_path = write_ini(tmp_path, BASE_INI)

        def boom(config):
            raise BoundViolation("synthetic failure")

        monkeypatch.setattr(cli, "run_scenario", boom)
        code = cli.main(["run", config_path, "--output", str(tmp_path / "x.csv")])
        assert code == 3
        assert "numerical contract violation" in capsys.readouterr().err

    def test_verify_single_suite(self, capsys):
        assert cli.main(["verify", "states"]) == 0
        out = capsys.readouterr().out
        assert "[PASS] states ::" in out
        assert '"total_failed": 0' in out

    def test_verify_unknown_suite(self, capsys):
        assert cli.main(["verify", "bogus"]) == 2
        assert "unknown suite" in capsys.readouterr().err

    def test_show_formulas(self, capsys):
        assert cli.main(["show-formulas"]) == 0
        out = capsys.readouterr().out
        assert "cost_J" in out
        assert "depolarizing" in out
