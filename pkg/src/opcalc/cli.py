"""Command-line front end: ``opcalc <command> --spec <path>``.

Commands:
    expand       Laurent coefficients of ``numerator/f`` (or ``s*numerator/f``) as JSON.
    homogeneous  basis of ``f(D) xi = 0`` sampled on a grid, as CSV.
    solve        particular or initial-value solution sampled on a grid, as CSV.
    verify       residual checks of the solve pipeline; exit 0 iff all pass.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 numeric failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import yaml

from .errors import ExpressionError, OpcalcError, SchemaError
from .expr import parse_expression
from .funcrep import ChebFunction, Interval, cf_derivative, cf_eval, cf_from_callable
from .generalized import gf_from_continuous, gf_materialize, gf_zero
from .oracle import rk4_integrate
from .series import PolynomialS, laurent_ratio
from .solvers import (
    TAU_RES,
    OdeProblem,
    initial_value_solve,
    is_solution,
    residual_norm,
    solve_homogeneous_basis,
    solve_particular,
)

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3
COMMANDS = ("expand", "homogeneous", "solve", "verify")
RK4_STEP = 1e-3


@dataclass
class ProblemSpec:
    operator: list[complex]
    forcing: tuple[str, object] = ("none", None)
    interval: tuple[float, float] = (-1.0, 1.0)
    initial_values: list[complex] | None = None
    tolerances: dict[str, float] = field(default_factory=dict)
    output: str | None = None
    grid_points: int = 201
    numerator: list[complex] = field(default_factory=lambda: [1.0])
    times_s: bool = False
    terms: int = 16

    @property
    def f(self) -> PolynomialS:
        return PolynomialS(tuple(self.operator))

    @property
    def residual_tol(self) -> float:
        return self.tolerances.get("residual", TAU_RES)


def _complex(value, path: str) -> complex:
    if isinstance(value, bool):
        raise SchemaError(path, "expected a number or [re, im] pair")
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        re, im = value
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in (re, im)):
            return complex(re, im)
    raise SchemaError(path, "expected a number or [re, im] pair")


def _complex_list(value, path: str) -> list[complex]:
    if not isinstance(value, list):
        raise SchemaError(path, "expected a list")
    return [_complex(v, f"{path}[{i}]") for i, v in enumerate(value)]


def _number(value, path: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(path, "expected a real number")
    return float(value)


def parse_problem_spec(text: str, base_dir: Path | None = None) -> ProblemSpec:
    """Validate a YAML/JSON problem document.

    Raises:
        SchemaError: with the dotted path of the offending field.
        ExpressionError: if a forcing expression uses unknown tokens.
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise SchemaError("$", f"not a valid document: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("$", "expected a mapping at top level")
    known = {f for f in ProblemSpec.__dataclass_fields__}
    for key in doc:
        if key not in known:
            raise SchemaError(key, "unknown field")

    if "operator" not in doc:
        raise SchemaError("operator", "required field missing")
    operator = _complex_list(doc["operator"], "operator")
    if not any(operator):
        raise SchemaError("operator", "operator polynomial must be nonzero")
    spec = ProblemSpec(operator=operator)

    if "interval" in doc:
        iv = doc["interval"]
        if not isinstance(iv, list) or len(iv) != 2:
            raise SchemaError("interval", "expected [a, b]")
        a, b = _number(iv[0], "interval[0]"), _number(iv[1], "interval[1]")
        if not (a < b and a <= 0.0 <= b):
            raise SchemaError("interval", f"[{a}, {b}] must satisfy a < b and contain 0")
        spec.interval = (a, b)

    forcing = doc.get("forcing")
    if forcing is None or forcing == "none":
        spec.forcing = ("none", None)
    elif isinstance(forcing, str):
        parse_expression(forcing)
        spec.forcing = ("expression", forcing)
    elif isinstance(forcing, dict) and set(forcing) == {"samples"}:
        path = forcing["samples"]
        if not isinstance(path, str):
            raise SchemaError("forcing.samples", "expected a file path")
        p = Path(path)
        if base_dir is not None and not p.is_absolute():
            p = base_dir / p
        spec.forcing = ("samples", p)
    elif isinstance(forcing, dict) and set(forcing) == {"expression"}:
        parse_expression(str(forcing["expression"]))
        spec.forcing = ("expression", str(forcing["expression"]))
    else:
        raise SchemaError("forcing", "expected none, an expression, or {samples: path}")

    degree = spec.f.degree
    if doc.get("initial_values") is not None:
        ivs = _complex_list(doc["initial_values"], "initial_values")
        if len(ivs) != degree:
            raise SchemaError(
                "initial_values", f"expected {degree} values for an operator of degree {degree}"
            )
        spec.initial_values = ivs

    tols = doc.get("tolerances") or {}
    if not isinstance(tols, dict):
        raise SchemaError("tolerances", "expected a mapping")
    for key, val in tols.items():
        if key not in ("residual", "interpolation"):
            raise SchemaError(f"tolerances.{key}", "unknown tolerance")
        val = _number(val, f"tolerances.{key}")
        if val <= 0:
            raise SchemaError(f"tolerances.{key}", "must be positive")
        spec.tolerances[key] = val

    if doc.get("output") is not None:
        if not isinstance(doc["output"], str):
            raise SchemaError("output", "expected a path or '-'")
        spec.output = doc["output"]

    for key, lo in (("grid_points", 2), ("terms", 1)):
        if key in doc:
            val = doc[key]
            if isinstance(val, bool) or not isinstance(val, int) or val < lo:
                raise SchemaError(key, f"expected an integer >= {lo}")
            setattr(spec, key, val)

    if "numerator" in doc:
        spec.numerator = _complex_list(doc["numerator"], "numerator")
    if "times_s" in doc:
        if not isinstance(doc["times_s"], bool):
            raise SchemaError("times_s", "expected true or false")
        spec.times_s = doc["times_s"]
    return spec


def read_samples(path: Path):
    """Read a CSV with an ``x`` column and one value column (or a ``_re``/``_im`` pair)."""
    try:
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
    except OSError as exc:
        raise SchemaError("forcing.samples", f"cannot read {path}: {exc.strerror}") from exc
    if len(rows) < 3:
        raise SchemaError("forcing.samples", "need a header and at least two rows")
    header = [h.strip() for h in rows[0]]
    if header[0] != "x" or len(header) < 2:
        raise SchemaError("forcing.samples", "first column must be 'x' followed by values")
    try:
        data = np.array([[float(v) for v in row] for row in rows[1:] if row], dtype=float)
    except ValueError as exc:
        raise SchemaError("forcing.samples", f"non-numeric entry: {exc}") from exc
    xs = data[:, 0]
    if header[1].endswith("_re") and len(header) > 2 and header[2].endswith("_im"):
        ys = data[:, 1] + 1j * data[:, 2]
    else:
        ys = data[:, 1].astype(complex)
    if np.any(np.diff(xs) <= 0):
        raise SchemaError("forcing.samples", "x values must be strictly increasing")
    return xs, ys


def samples_to_function(xs, ys, interval: Interval) -> ChebFunction:
    """Least-squares Chebyshev fit of sampled data covering ``interval``.

    The degree is about ``2 sqrt(n)``, where least squares on an equispaced
    grid stays well conditioned.  A fit that misses the samples by more
    than ``1e-10`` (relative) is flagged ``inexact``.
    """
    span = interval.b - interval.a
    if xs[0] > interval.a + 1e-9 * span or xs[-1] < interval.b - 1e-9 * span:
        raise SchemaError("forcing.samples", "samples do not cover the interval")
    n = xs.size
    deg = max(1, min(n - 1, int(2 * math.sqrt(n))))
    t = interval.to_unit(np.clip(xs, interval.a, interval.b))
    fit_re = np.polynomial.chebyshev.chebfit(t, ys.real, deg)
    fit_im = np.polynomial.chebyshev.chebfit(t, ys.imag, deg)
    coeffs = fit_re + 1j * fit_im
    resid = np.max(np.abs(np.polynomial.chebyshev.chebval(t, coeffs) - ys))
    scale = max(np.max(np.abs(ys)), 1e-300)
    return ChebFunction.from_coeffs(coeffs, interval, inexact=bool(resid > 1e-10 * scale))


def build_forcing(spec: ProblemSpec, interval: Interval):
    """Forcing as (ChebFunction or None, scalar callable for the RK4 oracle)."""
    kind, payload = spec.forcing
    tol = spec.tolerances.get("interpolation", 1e-14)
    if kind == "none":
        return None, None
    if kind == "expression":
        fn = parse_expression(payload)
        return cf_from_callable(fn, interval, tol), lambda x: complex(fn(np.array(x))[()])
    xs, ys = read_samples(payload)
    u = samples_to_function(xs, ys, interval)
    return u, lambda x: complex(cf_eval(u, x))


def _fmt(v: float) -> str:
    return format(float(v), ".17g")


def write_csv(columns: dict[str, np.ndarray], out) -> None:
    """Header row, then one row per grid point; complex columns become ``_re``/``_im``."""
    names, cols = [], []
    for name, col in columns.items():
        col = np.asarray(col)
        if name == "x":
            names.append(name)
            cols.append(col.real)
        else:
            names += [f"{name}_re", f"{name}_im"]
            cols += [col.real, np.asarray(col.imag)]
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(names)
    for row in zip(*cols):
        writer.writerow([_fmt(v) for v in row])


def _sample(u: ChebFunction, xs) -> np.ndarray:
    return np.asarray(cf_eval(u, xs), dtype=complex)


def _problem(spec: ProblemSpec):
    interval = Interval(*spec.interval)
    forcing, forcing_fn = build_forcing(spec, interval)
    omega = gf_from_continuous(forcing) if forcing is not None else gf_zero(interval)
    problem = OdeProblem(spec.f, omega, interval, spec.initial_values)
    return problem, forcing_fn


def _solve(problem: OdeProblem):
    """Continuous solution: initial-value if ICs are given, else the particular one."""
    if problem.initial_values is not None:
        xi = initial_value_solve(problem)
    else:
        xi = solve_particular(problem.f, problem.omega)
    u = gf_materialize(xi)
    if u is None:
        raise OpcalcError("solution is not a continuous function at this tolerance")
    return xi, u


def cmd_expand(spec: ProblemSpec) -> tuple[int, str]:
    num = PolynomialS(tuple(spec.numerator))
    if spec.times_s:
        num = num * PolynomialS((0, 1))
    g = laurent_ratio(num, spec.f)
    if g.is_zero:
        payload = {"valuation": None, "coefficients": []}
    else:
        coeffs = [g.coefficient(g.valuation + k) for k in range(spec.terms)]
        payload = {
            "valuation": int(g.valuation),
            "coefficients": [[c.real, c.imag] for c in coeffs],
        }
    return EXIT_OK, json.dumps(payload, indent=2) + "\n"


def cmd_homogeneous(spec: ProblemSpec) -> tuple[int, str]:
    interval = Interval(*spec.interval)
    basis = solve_homogeneous_basis(spec.f, interval)
    xs = interval.grid(spec.grid_points)
    columns = {"x": xs}
    for j, xi in enumerate(basis):
        columns[f"xi_{j}"] = _sample(xi.rep.body, xs)
    buf = io.StringIO()
    write_csv(columns, buf)
    return EXIT_OK, buf.getvalue()


def cmd_solve(spec: ProblemSpec, with_oracle: bool = False) -> tuple[int, str, dict]:
    problem, forcing_fn = _problem(spec)
    _, u = _solve(problem)
    xs = problem.interval.grid(spec.grid_points)
    columns = {"x": xs, "xi": _sample(u, xs)}
    summary = {"inexact": bool(u.inexact)}
    if with_oracle:
        if spec.initial_values is None:
            raise SchemaError("initial_values", "the RK4 oracle needs initial values")
        traj = rk4_integrate(spec.f, spec.initial_values, forcing_fn, problem.interval, RK4_STEP)
        oracle = np.interp(xs, traj.xs, traj.ys.real) + 1j * np.interp(xs, traj.xs, traj.ys.imag)
        columns["rk4"] = oracle
        dev = float(np.max(np.abs(_sample(u, traj.xs) - traj.ys)))
        summary["max_abs_deviation"] = dev
    buf = io.StringIO()
    write_csv(columns, buf)
    return EXIT_OK, buf.getvalue(), summary


def cmd_verify(spec: ProblemSpec) -> tuple[int, str]:
    problem, _ = _problem(spec)
    tol = spec.residual_tol
    checks = []
    xi, u = _solve(problem)
    checks.append(
        {
            "check": "solution",
            "passed": is_solution(problem.f, xi, problem.omega, tol),
            "residual": residual_norm(problem.f, xi, problem.omega),
        }
    )
    zero = gf_zero(problem.interval)
    for j, b in enumerate(solve_homogeneous_basis(problem.f, problem.interval)):
        checks.append(
            {
                "check": f"basis_{j}",
                "passed": is_solution(problem.f, b, zero, tol),
                "residual": residual_norm(problem.f, b, zero),
            }
        )
    if problem.initial_values is not None:
        for k, target in enumerate(problem.initial_values):
            got = complex(cf_eval(cf_derivative(u, k), 0.0))
            err = abs(got - target)
            checks.append(
                {
                    "check": f"initial_value_{k}",
                    "passed": err <= tol * (1 + abs(target)),
                    "residual": err,
                }
            )
    ok = all(c["passed"] for c in checks)
    report = {"passed": ok, "tolerance": tol, "checks": checks}
    return (EXIT_OK if ok else EXIT_VERIFY), json.dumps(report, indent=2) + "\n"


def _emit(text: str, target: str | None) -> None:
    if target is None or target == "-":
        sys.stdout.write(text)
    else:
        Path(target).write_text(text)


def _error(exc: Exception, code: int) -> int:
    payload = {"error": type(exc).__name__, "message": str(exc)}
    if isinstance(exc, SchemaError):
        payload["path"] = exc.path
    sys.stdout.write(json.dumps(payload) + "\n")
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="opcalc", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--spec", required=True, help="problem document (YAML or JSON)")
    parser.add_argument("--out", help="output path ('-' for standard output)")
    parser.add_argument("--grid", type=int, help="number of grid points")
    parser.add_argument("--tol", type=float, help="residual tolerance")
    parser.add_argument(
        "--oracle", action="store_true", help="solve: add an RK4 column and report deviation"
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        path = Path(args.spec)
        spec = parse_problem_spec(path.read_text(), path.parent)
        if args.grid is not None:
            if args.grid < 2:
                raise SchemaError("--grid", "expected an integer >= 2")
            spec.grid_points = args.grid
        if args.tol is not None:
            if args.tol <= 0:
                raise SchemaError("--tol", "must be positive")
            spec.tolerances["residual"] = args.tol
        target = args.out if args.out is not None else spec.output
    except (SchemaError, ExpressionError) as exc:
        return _error(exc, EXIT_INPUT)
    except OSError as exc:
        return _error(exc, EXIT_INPUT)

    try:
        if args.command == "expand":
            code, text = cmd_expand(spec)
        elif args.command == "homogeneous":
            code, text = cmd_homogeneous(spec)
        elif args.command == "solve":
            code, text, summary = cmd_solve(spec, args.oracle)
            sys.stderr.write(json.dumps(summary) + "\n")
        else:
            code, text = cmd_verify(spec)
    except (SchemaError, ExpressionError) as exc:
        return _error(exc, EXIT_INPUT)
    except (OpcalcError, ArithmeticError, np.linalg.LinAlgError, ValueError) as exc:
        return _error(exc, EXIT_NUMERIC)
    _emit(text, target)
    return code


if __name__ == "__main__":
    sys.exit(main())
