"""Generalized functions: Mikusinski functions modulo ``N = {f 1 : f in s C[s]}``.

``s**m v`` lies in N exactly when ``v`` is a polynomial of degree at most
``m - 1``: multiplying ``s**m v = f(s) 1`` by ``t**m`` gives
``v = sum_j a_j x**(m-j) / (m-j)!`` and the constant-term argument rules out
any other part.  Polynomials of degree below ``m`` are precisely the span of
the first ``m`` Chebyshev polynomials (the affine change of variable keeps
degrees), so membership is read off the Chebyshev tail directly.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass

import numpy as np

from .funcrep import ChebFunction, Interval, cf_derivative
from .mikusinski import (
    MikusinskiFunction,
    align_orders,
    mf_from_continuous,
    mf_integrate,
    mf_scalar_mul,
    mf_zero,
)
from .series import LaurentSeries

TAU_N = 1e-8


def n_membership(w: MikusinskiFunction, tol: float = TAU_N, scale: float = 0.0) -> bool:
    """Whether ``w = s**m v`` belongs to N(I).

    True iff the Chebyshev coefficients of ``v`` from index ``m`` on sum (in
    absolute value) to at most ``tol * max(||v||, scale)``.  For ``m = 0``
    this asks that ``v`` vanish.  ``scale`` supplies an outside magnitude
    when ``v`` is a difference of two comparable functions.
    """
    coeffs = w.body.coeffs
    tail = float(np.sum(np.abs(coeffs[w.order :])))
    if tail == 0.0:
        return True
    ref = max(w.body.norm(), scale)
    return tail <= tol * ref


@dataclass(frozen=True, eq=False)
class GeneralizedFunction:
    """Coset ``rep + N(I)`` in G(I)."""

    rep: MikusinskiFunction

    @property
    def interval(self) -> Interval:
        return self.rep.interval

    @property
    def inexact(self) -> bool:
        return self.rep.inexact

    def __repr__(self):
        return f"GeneralizedFunction({self.rep!r})"

    def __add__(self, other):
        if not isinstance(other, GeneralizedFunction):
            return NotImplemented
        return GeneralizedFunction(self.rep + other.rep)

    def __sub__(self, other):
        if not isinstance(other, GeneralizedFunction):
            return NotImplemented
        return GeneralizedFunction(self.rep - other.rep)

    def __neg__(self):
        return GeneralizedFunction(-self.rep)

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return GeneralizedFunction(self.rep * other)
        return NotImplemented

    __rmul__ = __mul__


def gf_zero(interval: Interval) -> GeneralizedFunction:
    return GeneralizedFunction(mf_zero(interval))


def gf_from_continuous(u: ChebFunction) -> GeneralizedFunction:
    """``u`` modulo N(I); injective because C(I) and N(I) meet only in 0."""
    return GeneralizedFunction(mf_from_continuous(u))


def gf_from_mikusinski(w: MikusinskiFunction) -> GeneralizedFunction:
    return GeneralizedFunction(w)


def gf_equals(
    xi1: GeneralizedFunction, xi2: GeneralizedFunction, tol: float = TAU_N
) -> bool:
    """Coset equality: the difference of representatives lies in N(I).

    The membership tolerance is taken relative to the larger of the two
    (order-aligned) representatives, so that two equal classes whose
    difference is pure rounding noise still compare equal.
    """
    n, u1, u2 = align_orders(xi1.rep, xi2.rep)
    diff = MikusinskiFunction(n, u1 - u2)
    return n_membership(diff, tol, scale=max(u1.norm(), u2.norm()))


def gf_derivative(xi: GeneralizedFunction, k: int = 1) -> GeneralizedFunction:
    """``D**k xi = s**k xi``."""
    if k == 0:
        return xi
    return GeneralizedFunction(mf_scalar_mul(LaurentSeries.monomial(-k), xi.rep))


def gf_integrate(xi: GeneralizedFunction, k: int = 1) -> GeneralizedFunction:
    return GeneralizedFunction(mf_integrate(xi.rep, k))


def gf_materialize(xi: GeneralizedFunction, tol: float = TAU_N) -> ChebFunction | None:
    """A continuous function in the class of ``xi``, or None if there is none.

    For ``rep = s**m v`` the candidate is the m-th derivative of ``v``; it is
    accepted only if it lands back in the same class.
    """
    m, v = xi.rep.order, xi.rep.body
    u = cf_derivative(v, m) if m else v
    if m == 0 or gf_equals(xi, gf_from_continuous(u), tol):
        return u
    return None
