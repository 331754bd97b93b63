"""
Tests for the command line interface.
"""
import csv
import io
import json

import pytest

from permoments.main import build_parser, run


def invoke(capsys, command: str) -> tuple[int, str, str]:
    code = run(command.split())
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestMomentCommands:
    """Test the moments subcommands."""

    def test_gaussian_human(self, capsys):
        code, out, _ = invoke(capsys, "moments gaussian --k 3 --t 3")
        assert code == 0
        assert out == "8784\n"

    def test_gaussian_json(self, capsys):
        """JSON reports carry exact values as strings."""
        code, out, _ = invoke(capsys, "moments gaussian --k 3 --t 4 --format json")
        assert code == 0
        data = json.loads(out)
        assert data["value"] == "1092096"
        assert data["ratio"] == "1.62974751371742"
        assert data["ensemble"] == "gaussian"

    def test_gaussian_series_csv(self, capsys):
        code, out, _ = invoke(capsys, "moments gaussian --k 2 --t-max 3")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0
        assert rows[0] == ["ensemble", "k", "t", "d", "value", "ratio", "method"]
        assert [r[4] for r in rows[1:]] == ["2", "12", "144"]

    def test_det_unitary(self, capsys):
        code, out, _ = invoke(capsys, "moments det unitary --d 5 --k 5 --t 7")
        assert code == 0
        assert out == "1\n"

    def test_det_gaussian(self, capsys):
        _, out, _ = invoke(capsys, "moments det gaussian --k 2 --t 2")
        assert out == "12\n"

    def test_unitary(self, capsys):
        _, out, _ = invoke(capsys, "moments unitary --d 3 --k 3 --t 3")
        assert out == "323/57750\n"

    def test_output_file(self, capsys, tmp_path):
        """--output writes the report instead of stdout."""
        target = tmp_path / "moment.txt"
        code, out, _ = invoke(capsys, f"moments gaussian --k 2 --t 2 --output {target}")
        assert code == 0
        assert out == ""
        assert target.read_text() == "12\n"


class TestTraceAndTableCommands:
    """Test traces, tables, bounds and pleth."""

    def test_traces_rc(self, capsys):
        """Human output lists nonzero traces only."""
        code, out, _ = invoke(capsys, "traces rc --k 3 --t 3")
        assert code == 0
        assert out.splitlines() == [
            "(9) 46656",
            "(7,2) 5184",
            "(6,3) 2304",
            "(5,2,2) 144",
            "(4,4,1) 576",
        ]

    def test_trace_single_shape(self, capsys):
        _, out, _ = invoke(capsys, "traces rcrc --k 3 --t 3 --shape 5,2,2")
        assert out == "20736\n"

    def test_traces_brute(self, capsys):
        _, out, _ = invoke(capsys, "traces brute --k 2 --t 2")
        assert out == "12\n"

    def test_trace_shape_brute_force(self, capsys):
        code, out, _ = invoke(
            capsys, "traces rc --k 3 --t 3 --shape 5,2,2 --brute-force --format csv"
        )
        assert code == 0
        assert out.splitlines()[-1].endswith("144,brute-force")

    def test_section_table(self, capsys, fixtures_dir):
        code, out, _ = invoke(capsys, "tables section-4-6 --k 3 --t-max 10")
        assert code == 0
        assert out == (fixtures_dir / "section_4_6_k3.csv").read_text()

    def test_bounds_gaussian(self, capsys):
        _, out, _ = invoke(capsys, "bounds gaussian --k 3 --t 3")
        names = [line.split()[0] for line in out.splitlines()]
        assert names == ["base", "four-term"]

    def test_bounds_unitary(self, capsys):
        _, out, _ = invoke(capsys, "bounds unitary --d 3 --k 3 --t 3")
        assert out.splitlines() == ["inverse-binomial 1/220", "hunter-jones 3/500"]

    def test_pleth(self, capsys):
        _, out, _ = invoke(capsys, "pleth --k 3 --t 3 --shape 5,2,2")
        assert out == "1\n"


class TestLdevCommands:
    """Test large-deviation CSV output."""

    def test_lambda(self, capsys):
        code, out, _ = invoke(capsys, "ldev lambda --t 1 3")
        rows = list(csv.reader(io.StringIO(out)))
        assert code == 0
        assert rows[0] == ["t", "lambda", "lower", "upper"]
        assert rows[2][1] == "0.287682072452"

    def test_omega_off_branch(self, capsys):
        code, _, err = invoke(capsys, "ldev omega --y 0.1")
        assert code == 4
        assert "outside the computed branch" in err

    def test_rate_mixed(self, capsys):
        _, out, _ = invoke(capsys, "ldev rate --y 0.03 1.0")
        assert "small-y" in out
        assert out.startswith("y,t_star,rate,omega,omega_asymptotic\n")

    def test_det_rate(self, capsys):
        _, out, _ = invoke(capsys, "ldev det-rate --z 0.75")
        assert out.splitlines()[1] == "0.750000000000,2.00000000000"


class TestExitCodes:
    """Test error reporting and exit codes."""

    def test_usage_error(self, capsys):
        code, _, _ = invoke(capsys, "moments")
        assert code == 2

    def test_shape_mismatch(self, capsys):
        code, _, err = invoke(capsys, "traces rc --k 3 --t 3 --shape 4,4")
        assert code == 2
        assert err.startswith("error:")

    def test_invalid_threads(self, capsys):
        code, _, _ = invoke(capsys, "moments gaussian --k 2 --t 2 --threads 0")
        assert code == 2

    def test_budget_exceeded(self, capsys):
        code, _, err = invoke(capsys, "moments gaussian --k 5 --t 5")
        assert code == 3
        assert "GAUSSIAN_MAX_T_K5" in err

    def test_unsupported(self, capsys):
        code, _, _ = invoke(capsys, "moments unitary --d 6 --k 4 --t 4")
        assert code == 4

    def test_validity_range(self, capsys):
        code, _, _ = invoke(capsys, "bounds gaussian --k 2 --t 5 --depth four-term")
        assert code == 4

    def test_invalid_sample_config(self, capsys):
        code, _, _ = invoke(
            capsys, "mc estimate --ensemble unitary-minor --k 2 --samples 10"
        )
        assert code == 2

    def test_version(self, capsys):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["--version"])
        assert "0.1.0" in capsys.readouterr().out


class TestMonteCarloCommand:
    """Test mc estimate."""

    def test_json_report(self, capsys):
        code, out, _ = invoke(capsys, "mc estimate --k 2 --samples 2000 --seed 1")
        assert code == 0
        data = json.loads(out)
        assert data["config"]["samples"] == 2000
        assert [e["t"] for e in data["estimates"]] == [1, 2]
        assert data["estimates"][0]["exact"] == "2"
