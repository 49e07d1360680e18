import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from opcalc.cli import main, parse_problem_spec
from opcalc.errors import ExpressionError, SchemaError
from opcalc.expr import parse_expression

SPECS = Path(__file__).resolve().parent.parent / "docs" / "specs"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def read_csv(text):
    rows = list(csv.reader(io.StringIO(text)))
    header = rows[0]
    data = np.array([[float(v) for v in r] for r in rows[1:]])
    return header, data


def write_spec(tmp_path, text, name="spec.yaml"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestParseSpec:
    def test_valid(self):
        spec = parse_problem_spec(
            "operator: [1, 0, 1]\nforcing: 'exp(x)'\ninterval: [-1, 2]\n"
            "initial_values: [0, [1, 0]]\ntolerances: {residual: 1.0e-9}\n"
        )
        assert spec.operator == [1, 0, 1]
        assert spec.interval == (-1.0, 2.0)
        assert spec.initial_values == [0, 1]
        assert spec.residual_tol == 1e-9
        assert spec.forcing == ("expression", "exp(x)")

    def test_json_is_accepted(self):
        spec = parse_problem_spec(json.dumps({"operator": [[0, 1], 1]}))
        assert spec.operator == [1j, 1]

    def test_interval_without_zero(self):
        with pytest.raises(SchemaError) as info:
            parse_problem_spec("operator: [1, 1]\ninterval: [1, 2]\n")
        assert info.value.path == "interval"

    def test_wrong_number_of_initial_values(self):
        with pytest.raises(SchemaError) as info:
            parse_problem_spec("operator: [1, 0, 1]\ninitial_values: [0]\n")
        assert info.value.path == "initial_values"

    def test_unknown_field(self):
        with pytest.raises(SchemaError):
            parse_problem_spec("operator: [1, 1]\ncolour: blue\n")

    def test_zero_operator(self):
        with pytest.raises(SchemaError) as info:
            parse_problem_spec("operator: [0, 0]\n")
        assert info.value.path == "operator"

    def test_bad_coefficient_reports_index(self):
        with pytest.raises(SchemaError) as info:
            parse_problem_spec("operator: [1, 'a']\n")
        assert info.value.path == "operator[1]"

    def test_unknown_token_in_forcing(self):
        with pytest.raises(ExpressionError):
            parse_problem_spec("operator: [1, 1]\nforcing: 'tan(x)'\n")


class TestExpression:
    def test_exp(self):
        fn = parse_expression("exp(1*x)")
        xs = np.linspace(-1, 1, 11)
        np.testing.assert_allclose(fn(xs), np.exp(xs))

    def test_constant_broadcasts(self):
        assert parse_expression("2")(np.zeros(3)).tolist() == [2, 2, 2]

    def test_complex_and_powers(self):
        fn = parse_expression("x**2 + i*sin(pi*x) - cos(x)/2")
        x = np.array([0.3])
        np.testing.assert_allclose(fn(x), x**2 + 1j * np.sin(np.pi * x) - np.cos(x) / 2)

    @pytest.mark.parametrize(
        "text", ["__import__('os')", "x.real", "x**x", "exp(x, 1)", "y", "'a'", "x +", "abs(x)"]
    )
    def test_rejected(self, text):
        with pytest.raises(ExpressionError):
            parse_expression(text)


class TestCommands:
    def test_homogeneous_harmonic(self, capsys):
        code, out, _ = run(capsys, "homogeneous", "--spec", SPECS / "harmonic.yaml")
        assert code == 0
        header, data = read_csv(out)
        assert header == ["x", "xi_0_re", "xi_0_im", "xi_1_re", "xi_1_im"]
        x = data[:, 0]
        assert np.max(np.abs(data[:, 1] - np.sin(x))) < 1e-9
        assert np.max(np.abs(data[:, 3] - np.cos(x))) < 1e-9
        assert np.max(np.abs(data[:, [2, 4]])) < 1e-9

    def test_expand_geometric(self, capsys):
        code, out, _ = run(capsys, "expand", "--spec", SPECS / "geometric.yaml")
        assert code == 0
        payload = json.loads(out)
        assert payload["valuation"] == 1
        re = [c[0] for c in payload["coefficients"][:4]]
        np.testing.assert_allclose(re, [1, 2, 4, 8])

    def test_solve_with_oracle(self, capsys):
        code, out, err = run(capsys, "solve", "--spec", SPECS / "forced_oscillator.yaml", "--oracle")
        assert code == 0
        header, data = read_csv(out)
        assert header[:3] == ["x", "xi_re", "xi_im"]
        x = data[:, 0]
        closed = (np.exp(x) - np.cos(x) - np.sin(x)) / 2
        assert np.max(np.abs(data[:, 1] - closed)) < 1e-10
        assert json.loads(err)["max_abs_deviation"] < 1e-6

    def test_verify(self, capsys):
        code, out, _ = run(capsys, "verify", "--spec", SPECS / "forced_oscillator.yaml")
        assert code == 0
        report = json.loads(out)
        assert report["passed"]
        assert {c["check"] for c in report["checks"]} >= {"solution", "basis_0", "initial_value_1"}

    def test_verify_failure_exit_code(self, capsys, tmp_path):
        spec = write_spec(tmp_path, "operator: [1, 0, 1]\nforcing: 'exp(x)'\ninitial_values: [0, 0]\n")
        code, out, _ = run(capsys, "verify", "--spec", spec, "--tol", "1e-300")
        assert code == 1
        assert not json.loads(out)["passed"]

    def test_deterministic(self, capsys):
        outs = [run(capsys, "solve", "--spec", SPECS / "forced_oscillator.yaml")[1] for _ in range(2)]
        assert outs[0] == outs[1]

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "basis.csv"
        code, out, _ = run(capsys, "homogeneous", "--spec", SPECS / "harmonic.yaml", "--out", target)
        assert code == 0 and out == ""
        assert target.read_text().startswith("x,xi_0_re")

    def test_grid_override(self, capsys):
        _, out, _ = run(capsys, "homogeneous", "--spec", SPECS / "harmonic.yaml", "--grid", 5)
        assert len(out.strip().splitlines()) == 6

    def test_sampled_forcing_round_trip(self, capsys, tmp_path):
        # sample e^x, feed it back as forcing of xi' - xi = e^x, xi(0) = 0  ->  x e^x
        xs = np.linspace(-1, 1, 401)
        with open(tmp_path / "forcing.csv", "w") as fh:
            fh.write("x,w\n")
            for x in xs:
                fh.write(f"{x:.17g},{np.exp(x):.17g}\n")
        spec = write_spec(
            tmp_path, "operator: [-1, 1]\nforcing: {samples: forcing.csv}\ninitial_values: [0]\n"
        )
        code, out, _ = run(capsys, "solve", "--spec", spec)
        assert code == 0
        _, data = read_csv(out)
        assert np.max(np.abs(data[:, 1] - data[:, 0] * np.exp(data[:, 0]))) < 1e-9

    def test_solve_output_reingested(self, capsys, tmp_path):
        code, out, _ = run(capsys, "solve", "--spec", SPECS / "forced_oscillator.yaml", "--grid", 401)
        assert code == 0
        (tmp_path / "xi.csv").write_text(out)
        spec = write_spec(tmp_path, "operator: [0, 1]\nforcing: {samples: xi.csv}\ninitial_values: [0]\n")
        code, out, _ = run(capsys, "solve", "--spec", spec)
        assert code == 0
        _, data = read_csv(out)
        x = data[:, 0]
        # J of (e^x - cos x - sin x)/2
        ref = (np.exp(x) - 1 - np.sin(x) + np.cos(x) - 1) / 2
        assert np.max(np.abs(data[:, 1] - ref)) < 1e-8


class TestErrors:
    def test_schema_error_exit_2(self, capsys, tmp_path):
        spec = write_spec(tmp_path, "operator: [1, 1]\ninterval: [1, 2]\n")
        code, out, _ = run(capsys, "solve", "--spec", spec)
        assert code == 2
        assert json.loads(out)["path"] == "interval"

    def test_missing_file_exit_2(self, capsys, tmp_path):
        code, out, _ = run(capsys, "solve", "--spec", tmp_path / "nope.yaml")
        assert code == 2
        assert "error" in json.loads(out)

    def test_expression_error_exit_2(self, capsys, tmp_path):
        spec = write_spec(tmp_path, "operator: [1, 1]\nforcing: 'log(x)'\n")
        assert run(capsys, "solve", "--spec", spec)[0] == 2

    def test_numeric_failure_exit_3(self, capsys, tmp_path):
        # constant operator with initial values has no degree to match: numeric failure
        spec = write_spec(tmp_path, "operator: [2]\ninitial_values: []\n")
        code, out, _ = run(capsys, "solve", "--spec", spec)
        assert code == 3
        assert json.loads(out)["error"] == "DegreeZero"

    def test_oracle_requires_initial_values(self, capsys, tmp_path):
        spec = write_spec(tmp_path, "operator: [1, 1]\nforcing: 'x'\n")
        assert run(capsys, "solve", "--spec", spec, "--oracle")[0] == 2

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "opcalc", "expand", "--spec", str(SPECS / "geometric.yaml")],
            capture_output=True,
            text=True,
            check=False,
        )
        assert proc.returncode == 0
        assert json.loads(proc.stdout)["valuation"] == 1
