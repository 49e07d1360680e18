import numpy as np
import pytest

from opcalc.errors import DegreeZero, NotMaterializable, ZeroPolynomial
from opcalc.funcrep import ChebFunction, Interval, cf_from_callable, cf_integral_J
from opcalc.generalized import gf_equals, gf_from_continuous, gf_from_mikusinski, gf_zero
from opcalc.mikusinski import MikusinskiFunction
from opcalc.oracle import closed_form_reference
from opcalc.series import PolynomialS
from opcalc.solvers import (
    OdeProblem,
    apply_poly_D,
    basis_coefficient_matrix,
    homogeneous_solution,
    initial_value_solve,
    is_solution,
    recover_remainder,
    residual_norm,
    solve_homogeneous_basis,
    solve_particular,
)

from support import grid, random_analytic, sup_between, sup_diff

ONE = ChebFunction.one()
X = ChebFunction.identity()
HARMONIC = PolynomialS((1, 0, 1))


def cls(u):
    return gf_from_continuous(u)


def random_operator(rng, max_degree=4):
    d = int(rng.integers(1, max_degree + 1))
    roots = rng.uniform(-2, 2, d) + 1j * rng.uniform(-1, 1, d)
    return PolynomialS.from_roots(roots, leading=rng.uniform(0.5, 2)), roots


def fit_residual(basis_samples, target):
    """Max residual of the least-squares fit of ``target`` onto the basis columns."""
    coef, *_ = np.linalg.lstsq(basis_samples, target, rcond=None)
    return float(np.max(np.abs(basis_samples @ coef - target)))


class TestApply:
    def test_identity(self, rng):
        _, u = random_analytic(rng)
        assert gf_equals(apply_poly_D(PolynomialS((1,)), cls(u)), cls(u))

    def test_s_on_x(self):
        assert gf_equals(apply_poly_D(PolynomialS((0, 1)), cls(X)), cls(ONE))

    def test_harmonic_kills_sin(self, interval):
        s = cf_from_callable(np.sin)
        assert gf_equals(apply_poly_D(HARMONIC, cls(s)), gf_zero(interval))

    def test_zero_polynomial(self, interval):
        assert gf_equals(apply_poly_D(PolynomialS(()), cls(X)), gf_zero(interval))

    def test_matches_sum_of_derivatives(self, rng):
        from opcalc.generalized import gf_derivative

        _, u = random_analytic(rng)
        f = PolynomialS((2, -1, 0.5))
        direct = cls(u) * 2 - gf_derivative(cls(u)) + gf_derivative(cls(u), 2) * 0.5
        assert gf_equals(apply_poly_D(f, cls(u)), direct)


class TestParticular:
    def test_f_one(self, rng):
        _, u = random_analytic(rng)
        xi = solve_particular(PolynomialS((1,)), cls(u))
        assert gf_equals(xi, cls(u))

    def test_antiderivative(self, rng):
        _, u = random_analytic(rng)
        xi = solve_particular(PolynomialS((0, 1)), cls(u))
        assert gf_equals(xi, cls(cf_integral_J(u)))
        assert xi.rep.order == 0
        assert sup_between(xi.rep.body, cf_integral_J(u)) < 1e-12

    def test_resonant_exponential(self):
        f = PolynomialS((-1, 1))
        omega = cls(cf_from_callable(np.exp))
        xi = solve_particular(f, omega)
        assert is_solution(f, xi, omega)
        # differs from x e^x by a multiple of e^x (here: exactly x e^x since xi(0) = 0)
        assert sup_diff(xi.rep.body, lambda x: x * np.exp(x)) < 1e-10

    def test_generalized_forcing(self):
        # forcing s 1 + 1 is the class of 1 (s 1 lies in N)
        f = PolynomialS((1, 1))
        omega = gf_from_mikusinski(MikusinskiFunction(1, ONE + X))
        xi = solve_particular(f, omega)
        assert is_solution(f, xi, omega)

    def test_random_problems(self, rng):
        for _ in range(20):
            f, _ = random_operator(rng)
            _, u = random_analytic(rng)
            xi = solve_particular(f, cls(u))
            assert is_solution(f, xi, cls(u))
            assert residual_norm(f, xi, cls(u)) < 1e-8

    def test_zero_polynomial(self):
        with pytest.raises(ZeroPolynomial):
            solve_particular(PolynomialS(()), cls(ONE))

    def test_superposition(self, rng):
        f, _ = random_operator(rng)
        _, u1 = random_analytic(rng)
        _, u2 = random_analytic(rng)
        xi1, xi2 = solve_particular(f, cls(u1)), solve_particular(f, cls(u2))
        assert is_solution(f, xi1 + xi2, cls(u1) + cls(u2))


class TestHomogeneous:
    def test_constants_solve_first_order(self):
        (b,) = solve_homogeneous_basis(PolynomialS((0, 1)), ONE.interval)
        np.testing.assert_allclose(b.rep.body.coeffs, [1.0], atol=1e-15)

    def test_sin_cos(self, interval):
        b = solve_homogeneous_basis(HARMONIC, interval)
        assert sup_diff(b[0].rep.body, np.sin) < 1e-10
        assert sup_diff(b[1].rep.body, np.cos) < 1e-10

    def test_repeated_root_contains_x_exp(self, interval):
        b = solve_homogeneous_basis(PolynomialS.from_roots([1, 1]), interval)
        assert sup_diff(b[0].rep.body, lambda x: x * np.exp(x)) < 1e-9

    def test_constant_operator_has_no_basis(self, interval):
        assert solve_homogeneous_basis(PolynomialS((3,)), interval) == []

    def test_basis_elements_are_solutions(self, rng, interval):
        for _ in range(10):
            f, _ = random_operator(rng)
            for b in solve_homogeneous_basis(f, interval):
                assert is_solution(f, b, gf_zero(interval))

    def test_dimension_and_rank(self, rng, interval):
        for _ in range(10):
            f, _ = random_operator(rng)
            d = f.degree
            assert len(solve_homogeneous_basis(f, interval)) == d
            A = basis_coefficient_matrix(f)
            assert np.linalg.matrix_rank(A) == d
            assert np.isfinite(np.linalg.cond(A))
            # anti-triangular with 1/a_d on the anti-diagonal
            np.testing.assert_allclose(np.diag(A[::-1]), 1 / complex(f.leading))
            assert np.allclose(np.tril(A[::-1], -1), 0)

    def test_basis_derivatives_at_zero_match_matrix(self, interval):
        f = PolynomialS.from_roots([0.5, -1.0, 2.0])
        A = basis_coefficient_matrix(f)
        from opcalc.funcrep import cf_derivative, cf_eval

        for j, b in enumerate(solve_homogeneous_basis(f, interval)):
            for k in range(3):
                assert abs(cf_eval(cf_derivative(b.rep.body, k), 0.0) - A[k, j]) < 1e-9

    def test_completeness_distinct_roots(self, rng, interval):
        xs = grid(interval)
        for _ in range(10):
            f, roots = random_operator(rng)
            c = rng.normal(size=roots.size) + 1j * rng.normal(size=roots.size)

            def fn(x, c=c, roots=roots):
                return sum(ci * np.exp(li * np.asarray(x)) for ci, li in zip(c, roots))

            xi = cls(cf_from_callable(fn, interval))
            r = recover_remainder(f, xi)
            assert r.is_zero or r.degree < f.degree
            rebuilt = homogeneous_solution(f, r, interval)
            assert gf_equals(xi, cls(rebuilt))
            assert np.max(np.abs(rebuilt(xs) - fn(xs))) < 1e-8 * max(1, np.max(np.abs(fn(xs))))

    def test_recover_remainder_rejects_non_solution(self):
        with pytest.raises(ValueError):
            recover_remainder(HARMONIC, cls(ONE))

    def test_homogeneous_solution_rejects_large_r(self, interval):
        with pytest.raises(ValueError):
            homogeneous_solution(HARMONIC, PolynomialS((0, 0, 1)), interval)


class TestInitialValue:
    def test_exponential(self, interval):
        xi = initial_value_solve(OdeProblem(PolynomialS((-1, 1)), None, interval, [1]))
        assert sup_diff(xi.rep.body, np.exp) < 1e-10

    def test_sine(self, interval):
        xi = initial_value_solve(OdeProblem(HARMONIC, None, interval, [0, 1]))
        assert sup_diff(xi.rep.body, np.sin) < 1e-10

    def test_antiderivative_of_one(self):
        xi = initial_value_solve(OdeProblem(PolynomialS((0, 1)), cls(ONE), None, [0]))
        assert sup_diff(xi.rep.body, lambda x: x) < 1e-14

    def test_forced_oscillator_closed_form(self, interval):
        # xi'' + xi = e^x, xi(0) = xi'(0) = 0  ->  (e^x - cos x - sin x) / 2
        problem = OdeProblem(HARMONIC, cls(cf_from_callable(np.exp)), interval, [0, 0])
        xi = initial_value_solve(problem)
        closed = lambda x: (np.exp(x) - np.cos(x) - np.sin(x)) / 2  # noqa: E731
        assert sup_diff(xi.rep.body, closed) < 1e-10

    def test_matches_initial_values(self, rng):
        iv = Interval(-0.5, 1.0)
        from opcalc.funcrep import cf_derivative, cf_eval

        for _ in range(5):
            f, _ = random_operator(rng, 3)
            ics = list(rng.normal(size=f.degree) + 1j * rng.normal(size=f.degree))
            _, w = random_analytic(rng, iv)
            xi = initial_value_solve(OdeProblem(f, cls(w), iv, ics))
            assert is_solution(f, xi, cls(w))
            for k, target in enumerate(ics):
                assert abs(cf_eval(cf_derivative(xi.rep.body, k), 0.0) - target) < 1e-8

    def test_generalized_forcing_that_materializes(self, interval):
        omega = gf_from_mikusinski(MikusinskiFunction(1, cf_from_callable(np.exp)))
        xi = initial_value_solve(OdeProblem(PolynomialS((-1, 1)), omega, interval, [0]))
        assert is_solution(PolynomialS((-1, 1)), xi, omega)

    def test_not_materializable(self, interval, monkeypatch):
        import opcalc.solvers as sv

        monkeypatch.setattr(sv, "gf_materialize", lambda xi: None)
        with pytest.raises(NotMaterializable):
            sv.initial_value_solve(OdeProblem(HARMONIC, cls(ONE), interval, [0, 0]))

    def test_constant_operator(self, interval):
        with pytest.raises(DegreeZero):
            initial_value_solve(OdeProblem(PolynomialS((2,)), None, interval, []))

    def test_problem_validation(self, interval):
        with pytest.raises(ValueError):
            OdeProblem(HARMONIC, None, interval, [1])
        with pytest.raises(ZeroPolynomial):
            OdeProblem(PolynomialS(()), None, interval)
        with pytest.raises(ValueError):
            OdeProblem(HARMONIC)


class TestIsSolution:
    def test_constant_does_not_solve_exponential_equation(self, interval):
        assert not is_solution(PolynomialS((-1, 1)), cls(ONE), gf_zero(interval))

    def test_closed_form_exponential(self, interval):
        e = cf_from_callable(lambda x: np.exp(0.5 * x))
        assert is_solution(PolynomialS((-0.5, 1)), cls(e), gf_zero(interval))
        assert closed_form_reference("exp", 1.0, 0.5) == pytest.approx(e(1.0))
