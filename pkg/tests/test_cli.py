"""Exit-code contract and artifact formats of the command-line tool."""

import json

import pytest

from szegolab import cli, scenarios


def run(argv):
    return cli.cli_main(argv)


class TestCounterexampleCommand:
    def test_report_written(self, tmp_path):
        out = tmp_path / "report.json"
        assert run(["counterexample", "--resolution", "1024", "--out", str(out)]) == 0
        data = json.loads(out.read_text())
        assert data["verdict"] is True
        assert data["mu1_ball"] < data["k_rT"] < data["k_at_chi_inv_2"] < 12.0

    def test_failed_verdict_exits_one(self, tmp_path, monkeypatch):
        report = scenarios.run_counterexample(1024)
        report.verdict = False
        monkeypatch.setattr(cli.scenarios, "run_counterexample", lambda n: report)
        out = tmp_path / "report.json"
        assert run(["counterexample", "--out", str(out)]) == 1

    def test_bad_resolution_exits_two(self):
        assert run(["counterexample", "--resolution", "17"]) == 2


class TestSweepCommand:
    def test_config_file(self, tmp_path):
        cfg = {
            "scenario": "sweep",
            "weight": {"kind": "gaussian"},
            "budget": 1.0,
            "a_min": -0.6,
            "a_max": -0.3,
            "steps": 4,
            "resolution": 600,
            "out": str(tmp_path / "points.csv"),
            "summary": str(tmp_path / "summary.json"),
        }
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg))
        assert run(["sweep", "--config", str(path)]) == 0

        lines = (tmp_path / "points.csv").read_bytes().split(b"\n")
        assert lines[0] == b"a,b,mu1,dmu1_analytic,dmu1_fd"
        assert len(lines) == 6  # header + 4 points + trailing newline
        assert all(b"\r" not in line for line in lines)
        summary = json.loads((tmp_path / "summary.json").read_text())
        assert summary["symmetry_ok"] and summary["sign_ok"]

    def test_flag_overrides(self, tmp_path):
        out = tmp_path / "pts.csv"
        rc = run([
            "sweep", "--weight", "gaussian", "--budget", "1.0",
            "--a-min", "-0.6", "--a-max", "-0.3", "--steps", "3",
            "--resolution", "400", "--out", str(out),
            "--summary", str(tmp_path / "s.json"),
        ])
        assert rc == 0
        assert out.exists()

    def test_missing_budget_exits_two(self, capsys):
        rc = run(["sweep", "--weight", "gaussian", "--a-min", "-0.6", "--a-max", "-0.3"])
        assert rc == 2
        assert "budget" in capsys.readouterr().err

    def test_missing_config_file_exits_two(self, tmp_path):
        assert run(["sweep", "--config", str(tmp_path / "absent.json")]) == 2

    def test_scenario_mismatch_exits_two(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"scenario": "radial"}))
        assert run(["sweep", "--config", str(path)]) == 2

    def test_unknown_weight_exits_two(self, capsys):
        rc = run(["sweep", "--weight", "bogus", "--budget", "1.0",
                  "--a-min", "-0.6", "--a-max", "-0.3"])
        assert rc == 2
        assert "weight.kind" in capsys.readouterr().err


class TestSpectrumCommand:
    def test_neumann_csv(self, tmp_path):
        out = tmp_path / "spec.csv"
        rc = run(["spectrum-1d", "--weight", "constant", "--a", "0", "--b", "1",
                  "--count", "2", "--resolution", "200", "--out", str(out)])
        assert rc == 0
        assert out.read_text().splitlines()[0] == "index,x,weight,u0,u1,u2"

    def test_dirichlet_and_flat(self, tmp_path):
        for bc in ("dirichlet", "flat"):
            out = tmp_path / f"{bc}.csv"
            rc = run(["spectrum-1d", "--weight", "gaussian", "--a", "-0.5", "--b", "0.5",
                      "--bc", bc, "--count", "1", "--resolution", "200", "--out", str(out)])
            assert rc == 0

    def test_missing_interval_exits_two(self):
        assert run(["spectrum-1d", "--weight", "gaussian"]) == 2


class TestRadialCommand:
    def test_gap_report(self, tmp_path):
        out = tmp_path / "gap.json"
        csv_out = tmp_path / "mode.csv"
        rc = run(["radial", "--weight", "radial_square", "--dim", "2",
                  "--radius", "1.0", "--resolution", "400",
                  "--out", str(out), "--csv", str(csv_out)])
        assert rc == 0
        data = json.loads(out.read_text())
        assert data["gap_ok"] is True
        assert data["nu1"] < data["tau1"]
        assert csv_out.read_text().splitlines()[0] == "index,r,weight,u1"

    def test_missing_radius_exits_two(self):
        assert run(["radial", "--weight", "radial_zero"]) == 2


class TestRearrangeCommand:
    def test_report(self, tmp_path):
        cfg = {
            "weight": {"kind": "radial_square", "params": {"dim": 2}},
            "cells": [
                {"r_in": 0.2, "r_out": 0.7, "value": 2.0},
                {"r_in": 0.9, "r_out": 1.1, "value": 1.0},
            ],
            "resolution": 800,
            "out": str(tmp_path / "re.json"),
        }
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg))
        assert run(["rearrange", "--config", str(path)]) == 0
        data = json.loads((tmp_path / "re.json").read_text())
        assert data["equimeasurable"] is True
        assert data["numerator_cmp"] and data["denominator_cmp"]
        assert data["bound"] <= data["mu1_star"] * (1.0 + 1e-9)

    def test_bad_cells_exit_two(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"weight": "radial_zero", "cells": [{"r_in": 0.3}]}))
        assert run(["rearrange", "--config", str(path)]) == 2


class TestHlCheckCommand:
    def test_chain_report(self, tmp_path):
        cfg = {
            "weight": "radial_zero",
            "u": [{"r_in": 0.0, "r_out": 1.0, "value": 1.0},
                  {"r_in": 1.0, "r_out": 2.0, "value": 3.0}],
            "v": [{"r_in": 0.0, "r_out": 1.0, "value": 2.0},
                  {"r_in": 1.0, "r_out": 2.0, "value": 0.5}],
            "out": str(tmp_path / "hl.json"),
        }
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg))
        assert run(["hl-check", "--config", str(path)]) == 0
        data = json.loads((tmp_path / "hl.json").read_text())
        assert data["lhs"] <= data["mid"] <= data["rhs"]
        assert data["ok"] is True

    def test_mismatched_supports_exit_two(self, tmp_path):
        cfg = {
            "weight": "radial_zero",
            "u": [{"r_in": 0.0, "r_out": 1.0, "value": 1.0}],
            "v": [{"r_in": 0.0, "r_out": 2.0, "value": 1.0}],
        }
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg))
        assert run(["hl-check", "--config", str(path)]) == 2


class TestConfigPlumbing:
    def test_invalid_json_exits_two(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert run(["sweep", "--config", str(path)]) == 2

    def test_error_names_offending_key(self, tmp_path, capsys):
        cfg = {"weight": {"kind": "gaussian"}, "a_min": -0.5, "a_max": -0.2}
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps(cfg))
        assert run(["sweep", "--config", str(path)]) == 2
        assert "budget" in capsys.readouterr().err
