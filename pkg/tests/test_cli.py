import json
import subprocess
import sys
from importlib.resources import files

import jsonschema
import pytest

import qfsums.cli as cli
from qfsums.arithmetic import CoefficientKind
from qfsums.errors import NumericBudgetError
from qfsums.summation import SummationReport

SCHEMA = json.loads(files("qfsums").joinpath("schema/report.schema.json").read_text())


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


class TestExamples:
    def test_constants_corollary2(self, capsys):
        code, out, _ = run(capsys, "constants", "--corollary", "2", "--D", "-4")
        assert code == 0
        data = json.loads(out)
        assert abs(data["4A2"] - 0.9091) <= 2e-4
        for key in ("L(1)", "L'(1)", "L(2)", "L'(2)", "gamma", "zeta'(2)", "G(1)", "G'(1)/G(1)"):
            assert key in data["ingredients"]

    def test_count(self, capsys):
        assert run(capsys, "count", "--form", "1,0,1", "--x", "2")[:2] == (0, "9\n")

    def test_sum(self, capsys):
        assert run(capsys, "sum", "--kind", "rk2", "--D", "-4", "--x", "5")[:2] == (0, "7\n")

    def test_constants_corollary1_human(self, capsys):
        code, out, _ = run(capsys, "constants", "--corollary", "1", "--D", "-4", "--format", "human")
        assert code == 0
        assert "16A1 = 4" in out
        # ten significant digits with the tolerance alongside
        gamma_line = next(l for l in out.splitlines() if l.strip().startswith("gamma"))
        assert "0.5772156649" in gamma_line and "+/-" in gamma_line

    def test_identity(self, capsys):
        code, out, _ = run(capsys, "identity", "--kind", "rk2", "--D", "-4", "--s", "3", "--N", "1e5",
                           "--format", "json")
        assert code == 0
        data = json.loads(out)
        assert data["gap"] <= 1e-8

    def test_corollary3_form(self, capsys):
        code, out, _ = run(capsys, "constants", "--corollary", "3", "--form", "1,0,1")
        assert code == 0
        assert abs(json.loads(out)["A"] - 0.9091) <= 2e-4


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ["sum", "--kind", "rk9", "--D", "-4", "--x", "5"],
        ["sum", "--kind", "rk", "--D", "-4"],
        ["sum", "--kind", "rk", "--D", "3", "--x", "5"],
        ["sum", "--kind", "rk", "--D", "-4", "--x", "0"],
        ["sum", "--kind", "rk", "--D", "-4", "--x", "5", "--workers", "0"],
        ["constants", "--corollary", "1"],
        ["constants", "--corollary", "2", "--D", "-4", "--prime-bound", "50"],
        ["count", "--form", "1,0", "--x", "3"],
        ["verify", "--kind", "rk2", "--D", "-4", "--grid", "10,100"],
        ["verify", "--kind", "rk2", "--D", "-4", "--grid", "1e4:1e3:2"],
        ["identity", "--kind", "rk", "--D", "-4", "--s", "1", "--N", "10"],
    ])
    def test_invalid_config(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 2 and out == ""

    @pytest.mark.parametrize("argv", [
        ["constants", "--corollary", "3", "--form", "1,1,6"],
        ["constants", "--corollary", "1", "--D", "-12"],
        ["identity", "--kind", "rk2", "--D", "-12", "--s", "3", "--N", "100"],
        ["count", "--form", "2,1,3", "--x", "5"],
    ])
    def test_unsupported(self, capsys, argv):
        code, _, err = run(capsys, *argv)
        assert code == 3
        assert "discriminant" in err or "class number" in err

    def test_scale_limit(self, capsys):
        code, _, err = run(capsys, "sum", "--kind", "rk", "--D", "-4", "--x", "1000", "--max-x", "100")
        assert code == 4 and "100" in err

    def test_numeric_budget(self, capsys, monkeypatch):
        def broken():
            raise NumericBudgetError("gamma off")

        monkeypatch.setattr(cli, "euler_gamma", broken)
        code, _, err = run(capsys, "constants", "--corollary", "1", "--D", "-4")
        assert code == 5 and "gamma off" in err


class TestSchema:
    @pytest.mark.parametrize("argv", [
        ["constants", "--corollary", "1", "--D", "-4"],
        ["constants", "--corollary", "2", "--D", "-7"],
        ["constants", "--corollary", "3", "--form", "1,0,3"],
        ["sum", "--kind", "rk3", "--D", "-3", "--x", "100"],
        ["count", "--form", "1,1,1", "--x", "20"],
        ["identity", "--kind", "rk3", "--D", "5", "--s", "2.5", "--N", "1000"],
        ["verify", "--kind", "rk3", "--D", "-4", "--grid", "100:10000:2"],
    ])
    def test_json_validates(self, capsys, argv):
        code, out, _ = run(capsys, *argv, "--format", "json")
        assert code == 0
        jsonschema.validate(json.loads(out), SCHEMA)

    def test_schema_rejects_garbage(self):
        with pytest.raises(jsonschema.ValidationError):
            jsonschema.validate({"command": "sum", "sum": -1}, SCHEMA)


class TestReports:
    def test_csv_round_trip(self, capsys):
        code, out, _ = run(capsys, "verify", "--kind", "rk2", "--D", "-4", "--grid", "16,1e3,1e4")
        assert code == 0
        rep = SummationReport.from_csv(out, CoefficientKind.IDEAL_COUNT_SQUARED, -4)
        assert rep.grid == [16, 1000, 10000]
        assert rep.to_csv() == out

    def test_byte_identical(self, capsys):
        argv = ["verify", "--kind", "rk3", "--D", "-4", "--grid", "1e3:1e5:3", "--workers", "4"]
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "r.csv"
        code, out, _ = run(capsys, "verify", "--kind", "rk2", "--D", "-3", "--grid", "100,200", "-o", str(target))
        assert code == 0 and out == ""
        assert target.read_text().startswith("x,exact_sum,main_term,residual,normalized_residual\n")

    def test_human_verify(self, capsys):
        code, out, _ = run(capsys, "verify", "--kind", "rk2", "--D", "-4", "--grid", "100", "--format", "human")
        assert code == 0 and out.startswith("x=100 S=")


class TestGrid:
    def test_comma(self):
        assert cli.parse_grid("1e4, 1e5,100") == [10000, 100000, 100]

    def test_log_range(self):
        assert cli.parse_grid("1e4:1e7:1") == [10**4, 10**5, 10**6, 10**7]
        g = cli.parse_grid("100:1000:4")
        assert g[0] == 100 and g[-1] == 1000 and len(g) == 5

    def test_bad(self):
        with pytest.raises(ValueError):
            cli.parse_grid("1:2")


class TestEnvironment:
    def test_prime_bound_env(self, monkeypatch, capsys):
        monkeypatch.setenv("QFSUMS_PRIME_BOUND", "1000")
        code, out, _ = run(capsys, "constants", "--corollary", "2", "--D", "-4")
        small = json.loads(out)["ingredients"]["G(1)_log_tail_bound"]
        monkeypatch.delenv("QFSUMS_PRIME_BOUND")
        code, out, _ = run(capsys, "constants", "--corollary", "2", "--D", "-4")
        assert small > json.loads(out)["ingredients"]["G(1)_log_tail_bound"]

    def test_segment_size_env(self, monkeypatch, capsys):
        monkeypatch.setenv("QFSUMS_SEGMENT_SIZE", "64")
        assert run(capsys, "sum", "--kind", "rk2", "--D", "-4", "--x", "10000")[1] == "28094\n"

    def test_bad_env(self, monkeypatch, capsys):
        monkeypatch.setenv("QFSUMS_SEGMENT_SIZE", "lots")
        code, _, err = run(capsys, "sum", "--kind", "rk", "--D", "-4", "--x", "5")
        assert code == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qfsums", "count", "--form", "1,0,1", "--x", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout == "9\n"
