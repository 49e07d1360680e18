"""Constant-coefficient linear differential equations ``f(D) xi = omega``.

Particular solutions come from dividing by ``f`` in the field of Laurent
series; homogeneous solutions are ``E(s r / f)`` for polynomials ``r`` of
degree below ``deg f``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import DegreeZero, NotMaterializable, SingularSystem, ZeroPolynomial
from .funcrep import (
    ChebFunction,
    Interval,
    cf_derivative,
    cf_eval,
    e_transform,
    module_mul,
    to_power_basis,
)
from .generalized import (
    TAU_N,
    GeneralizedFunction,
    gf_equals,
    gf_from_continuous,
    gf_materialize,
    gf_zero,
)
from .mikusinski import align_orders, mf_scalar_mul
from .series import (
    DEFAULT_ORDER,
    TAU_UNIT,
    PolynomialS,
    laurent_ratio,
    poly_divmod,
    poly_s_to_laurent,
)

TAU_RES = 1e-8

S = PolynomialS((0, 1))


@dataclass(frozen=True, eq=False)
class OdeProblem:
    """``f(D) xi = omega`` on ``interval`` with optional initial values.

    ``initial_values`` lists ``xi(0), xi'(0), ..., xi^(d-1)(0)``.
    """

    f: PolynomialS
    omega: GeneralizedFunction | None = None
    interval: Interval | None = None
    initial_values: Sequence[complex] | None = field(default=None)

    def __post_init__(self):
        if self.f.is_zero:
            raise ZeroPolynomial("operator polynomial is zero")
        if self.interval is None:
            if self.omega is None:
                raise ValueError("need an interval or a forcing term")
            object.__setattr__(self, "interval", self.omega.interval)
        if self.omega is None:
            object.__setattr__(self, "omega", gf_zero(self.interval))
        if self.initial_values is not None:
            ivs = tuple(complex(c) for c in self.initial_values)
            if len(ivs) != self.f.degree:
                raise ValueError(
                    f"{len(ivs)} initial values given for an operator of degree {self.f.degree}"
                )
            object.__setattr__(self, "initial_values", ivs)

    @property
    def degree(self) -> int:
        return self.f.degree


def apply_poly_D(f: PolynomialS, xi: GeneralizedFunction) -> GeneralizedFunction:
    """``f(D) xi = sum_j a_j D**j xi``; the zero polynomial gives the zero class."""
    if f.is_zero:
        return gf_zero(xi.interval)
    return GeneralizedFunction(mf_scalar_mul(poly_s_to_laurent(f), xi.rep))


def solve_particular(
    f: PolynomialS, omega: GeneralizedFunction, order: int = DEFAULT_ORDER
) -> GeneralizedFunction:
    """``xi = (1/f) omega``, a solution of ``f(D) xi = omega``."""
    if f.is_zero:
        raise ZeroPolynomial("operator polynomial is zero")
    inv = laurent_ratio(PolynomialS((1,)), f, order)
    return GeneralizedFunction(mf_scalar_mul(inv, omega.rep))


def _solution_series(f: PolynomialS, r: PolynomialS, order: int):
    """Power series of ``s r / f`` (valuation >= 0 since deg(s r) <= deg f)."""
    g = laurent_ratio(S * r, f, order)
    if not g.is_zero and g.valuation < 0:
        raise ValueError(f"deg r = {r.degree} is too large for deg f = {f.degree}")
    return g.series_part()


def homogeneous_solution(
    f: PolynomialS, r: PolynomialS, interval: Interval, order: int = DEFAULT_ORDER
) -> ChebFunction:
    """``E(s r / f)`` for ``deg r < deg f``."""
    if r.is_zero:
        return ChebFunction.zero(interval)
    return e_transform(_solution_series(f, r, order), interval)


def solve_homogeneous_basis(
    f: PolynomialS, interval: Interval, order: int = DEFAULT_ORDER
) -> list[GeneralizedFunction]:
    """Basis ``E(s**(j+1) / f)``, ``j = 0..d-1``, of the solutions of ``f(D) xi = 0``.

    A constant ``f`` has only the zero solution and yields an empty list.
    """
    if f.is_zero:
        raise ZeroPolynomial("operator polynomial is zero")
    d = f.degree
    basis = []
    for j in range(d):
        u = homogeneous_solution(f, PolynomialS.s_power(j), interval, order)
        basis.append(gf_from_continuous(u))
    return basis


def basis_coefficient_matrix(f: PolynomialS, order: int = DEFAULT_ORDER) -> np.ndarray:
    """``A[k, j]``: coefficient of ``t**k`` in ``s**(j+1)/f`` for ``k, j < d``.

    Since ``E(g)^(k)(0)`` is the k-th coefficient of ``g``, column ``j`` holds
    the first ``d`` derivatives at 0 of the j-th basis function.  The matrix
    is anti-triangular with ``1/a_d`` on the anti-diagonal.
    """
    d = f.degree
    A = np.zeros((d, d), dtype=complex)
    for j in range(d):
        g = laurent_ratio(PolynomialS.s_power(j + 1), f, order)
        for k in range(d):
            A[k, j] = g.coefficient(k)
    return A


def is_solution(
    f: PolynomialS, xi: GeneralizedFunction, omega: GeneralizedFunction, tol: float = TAU_RES
) -> bool:
    return gf_equals(apply_poly_D(f, xi), omega, tol)


def initial_value_solve(problem: OdeProblem, order: int = DEFAULT_ORDER) -> GeneralizedFunction:
    """The continuous solution matching the given initial values.

    ``xi = xi_p + E(s r / f)``: the particular part ``xi_p = (1/f) omega``,
    plus the homogeneous part whose series coefficients (the derivatives at
    0) make up the difference between the initial values and those of
    ``xi_p``.
    """
    f = problem.f
    d = f.degree
    if problem.initial_values is None:
        raise ValueError("initial values are required")
    if d < 1:
        raise DegreeZero("a constant operator admits no initial values")
    if abs(f.leading) <= TAU_UNIT:
        raise SingularSystem(f"leading coefficient {f.leading!r} underflows")

    w = gf_materialize(problem.omega)
    if w is None:
        raise NotMaterializable("forcing is not a continuous function at this tolerance")
    inv = laurent_ratio(PolynomialS((1,)), f, order)
    particular = module_mul(inv.series_part(), w)

    p_derivs = np.array(
        [cf_eval(cf_derivative(particular, k), 0.0) for k in range(d)], dtype=complex
    )
    rhs = np.asarray(problem.initial_values, dtype=complex) - p_derivs
    A = basis_coefficient_matrix(f, order)
    try:
        r = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(str(exc)) from exc
    homog = homogeneous_solution(f, PolynomialS(tuple(r)), problem.interval, order)
    return gf_from_continuous(particular + homog)


def recover_remainder(
    f: PolynomialS, xi: GeneralizedFunction, tol: float = TAU_N
) -> PolynomialS:
    """The ``r`` (``deg r < deg f``) with ``xi = E(s r / f)`` for a homogeneous solution.

    Writes ``f(D) xi = s**m v`` with ``v`` a polynomial of degree below ``m``,
    reads off ``s a(s) 1 = s**m v``, and reduces ``a`` modulo ``f``.

    Raises:
        ValueError: if ``xi`` does not solve ``f(D) xi = 0``.
    """
    image = apply_poly_D(f, xi)
    zero = gf_zero(xi.interval)
    if not gf_equals(image, zero, tol):
        raise ValueError("not a solution of the homogeneous equation")
    m, v = image.rep.order, image.rep.body
    power = to_power_basis(v)[:m]
    # s**m (x**j) = j! s**(m-j) 1, so a(s) collects j! v_j at s**(m-j-1)
    a = [0j] * m
    fact = 1.0
    for j, vj in enumerate(power):
        if j:
            fact *= j
        a[m - j - 1] = complex(vj) * fact
    _, r = poly_divmod(PolynomialS(tuple(a)), f)
    return r


def residual_norm(
    f: PolynomialS, xi: GeneralizedFunction, omega: GeneralizedFunction
) -> float:
    """Relative size of the non-polynomial tail of ``f(D) xi - omega``.

    This is the quantity :func:`is_solution` compares against its tolerance.
    """
    n, u1, u2 = align_orders(apply_poly_D(f, xi).rep, omega.rep)
    tail = float(np.sum(np.abs((u1 - u2).coeffs[n:])))
    ref = max(u1.norm(), u2.norm(), (u1 - u2).norm())
    return tail / ref if ref else 0.0

