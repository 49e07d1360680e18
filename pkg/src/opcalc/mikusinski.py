"""Mikusinski functions: fractions ``u/g`` of continuous functions by series.

Every element has the normal form ``s**n u`` with ``u`` continuous, stored as
the pair ``(order, body)``.  Equality of ``s**n1 u1`` and ``s**n2 u2`` is
decided by integrating up, ``J**n2 u1 == J**n1 u2``, never by differentiating.
"""

from __future__ import annotations

import numbers
from dataclasses import dataclass

from .errors import IntervalMismatch
from .funcrep import (
    ChebFunction,
    Interval,
    cf_derivative,
    cf_eval,
    cf_integral_power,
    module_mul,
)
from .series import LaurentSeries, PowerSeries

TAU_EQ = 1e-9
TAU_REDUCE = 1e-10


@dataclass(frozen=True, eq=False)
class MikusinskiFunction:
    """The element ``s**order * body`` of M(I)."""

    order: int
    body: ChebFunction

    def __post_init__(self):
        if self.order < 0:
            raise ValueError("order must be nonnegative")

    @property
    def interval(self) -> Interval:
        return self.body.interval

    @property
    def inexact(self) -> bool:
        return self.body.inexact

    def __repr__(self):
        return f"MikusinskiFunction(s**{self.order} * {self.body!r})"

    def __add__(self, other):
        if not isinstance(other, MikusinskiFunction):
            return NotImplemented
        return mf_add(self, other)

    def __sub__(self, other):
        if not isinstance(other, MikusinskiFunction):
            return NotImplemented
        return mf_add(self, other, 1.0, -1.0)

    def __neg__(self):
        return MikusinskiFunction(self.order, -self.body)

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return MikusinskiFunction(self.order, self.body * other)
        if isinstance(other, (LaurentSeries, PowerSeries)):
            return mf_scalar_mul(other, self)
        return NotImplemented

    __rmul__ = __mul__


def mf_zero(interval: Interval) -> MikusinskiFunction:
    return MikusinskiFunction(0, ChebFunction.zero(interval))


def mf_from_continuous(u: ChebFunction) -> MikusinskiFunction:
    """The identification ``u = u/1``."""
    return MikusinskiFunction(0, u)


def align_orders(w1: MikusinskiFunction, w2: MikusinskiFunction):
    """Bodies of w1, w2 rewritten over the common order ``max(n1, n2)``."""
    if w1.interval != w2.interval:
        raise IntervalMismatch(f"{w1.interval} vs {w2.interval}")
    n = max(w1.order, w2.order)
    u1 = cf_integral_power(w1.body, n - w1.order)
    u2 = cf_integral_power(w2.body, n - w2.order)
    return n, u1, u2


def mf_equals(w1: MikusinskiFunction, w2: MikusinskiFunction, tol: float = TAU_EQ) -> bool:
    """Ratio equality: ``J**n2 u1`` and ``J**n1 u2`` agree uniformly.

    The test is ``||J**n2 u1 - J**n1 u2|| <= tol * (1 + ||J**n2 u1||)``.
    """
    _, u1, u2 = align_orders(w1, w2)
    return (u1 - u2).norm() <= tol * (1.0 + u1.norm())


def mf_add(
    w1: MikusinskiFunction, w2: MikusinskiFunction, c1=1.0, c2=1.0
) -> MikusinskiFunction:
    """Linear combination ``c1*w1 + c2*w2`` over the common order."""
    n, u1, u2 = align_orders(w1, w2)
    return MikusinskiFunction(n, u1.lincomb(u2, c1, c2))


def mf_scalar_mul(h, w: MikusinskiFunction) -> MikusinskiFunction:
    """Action of a Laurent series ``h = t**v h0`` on ``w = s**n u``.

    Negative ``v`` raises the order.  Positive ``v`` first cancels against the
    order (``t s = 1``) and integrates ``u`` only for what is left, so repeated
    integration of ``s**n u`` returns to ``u`` itself rather than to an
    ever-smaller body.
    """
    h = LaurentSeries.coerce(h)
    if h.is_zero:
        return mf_zero(w.interval)
    v = h.valuation
    unit = h.unit_part
    if v < 0:
        return MikusinskiFunction(w.order - v, module_mul(unit, w.body))
    cancel = min(v, w.order)
    body = cf_integral_power(w.body, v - cancel)
    return MikusinskiFunction(w.order - cancel, module_mul(unit, body))


def mf_integrate(w: MikusinskiFunction, k: int = 1) -> MikusinskiFunction:
    """Extended integration operator ``J(w) = t w``; bijective on M(I)."""
    return mf_scalar_mul(LaurentSeries.monomial(k), w)


def mf_shift(w: MikusinskiFunction, k: int = 1) -> MikusinskiFunction:
    """Multiplication by ``s**k``."""
    return MikusinskiFunction(w.order + k, w.body)


def mf_normalize(w: MikusinskiFunction, tol: float = TAU_REDUCE) -> MikusinskiFunction:
    """Lower the order while the body decisively vanishes at 0.

    ``s**n u`` with ``u(0) = 0`` equals ``s**(n-1) u'``.  Differentiation
    amplifies noise, so reduction only happens when ``|u(0)|`` is below
    ``tol * ||u||``.
    """
    order, body = w.order, w.body
    while order > 0:
        scale = body.norm()
        if scale == 0.0:
            return MikusinskiFunction(0, body)
        if abs(cf_eval(body, 0.0)) > tol * scale:
            break
        body = cf_derivative(body)
        order -= 1
    return MikusinskiFunction(order, body)
