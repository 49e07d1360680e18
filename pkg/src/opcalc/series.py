"""Truncated power series in t, Laurent series, and polynomials in s = 1/t.

Power series are stored as a fixed-length vector of complex coefficients
(ascending powers of t).  Laurent series factor as ``t**v * unit`` where the
unit part has a nonzero constant term, so division reduces to inverting the
unit part and subtracting valuations.  Polynomials in s keep plain Python
coefficients so that integer and Fraction inputs divide exactly.
"""

from __future__ import annotations

import math
import numbers
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import DivisionByZeroSeries, NotAUnit, ZeroPolynomial

DEFAULT_ORDER = 64
TAU_UNIT = 1e-12
TAU_ZERO = 1e-12

INF = math.inf


def _coeff_array(values, order: int | None = None) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(values, dtype=complex)).ravel()
    if order is None:
        return arr.copy()
    out = np.zeros(order, dtype=complex)
    n = min(order, arr.size)
    out[:n] = arr[:n]
    return out


@dataclass(frozen=True, eq=False)
class PowerSeries:
    """Element of C{t} truncated after ``trunc_order`` coefficients."""

    coeffs: np.ndarray

    def __post_init__(self):
        arr = _coeff_array(self.coeffs)
        if arr.size == 0:
            raise ValueError("a power series needs at least one coefficient")
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def from_coeffs(cls, values, order: int = DEFAULT_ORDER) -> PowerSeries:
        """Zero-pad (or cut) ``values`` to exactly ``order`` coefficients."""
        return cls(_coeff_array(values, order))

    @classmethod
    def constant(cls, c, order: int = DEFAULT_ORDER) -> PowerSeries:
        return cls.from_coeffs([c], order)

    @classmethod
    def monomial(cls, k: int, order: int = DEFAULT_ORDER, c=1.0) -> PowerSeries:
        arr = np.zeros(order, dtype=complex)
        if k < order:
            arr[k] = c
        return cls(arr)

    @property
    def trunc_order(self) -> int:
        return self.coeffs.size

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, k):
        return self.coeffs[k]

    def __repr__(self):
        shown = ", ".join(f"{c:.6g}" for c in self.coeffs[:6])
        more = ", ..." if self.trunc_order > 6 else ""
        return f"PowerSeries([{shown}{more}], trunc_order={self.trunc_order})"

    def _coerce(self, other):
        if isinstance(other, PowerSeries):
            return other
        if isinstance(other, numbers.Number):
            return PowerSeries.constant(other, self.trunc_order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ps_arith(self, other, "add")

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ps_arith(self, other, "sub")

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return ps_arith(other, self, "sub")

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return PowerSeries(self.coeffs * other)
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return ps_arith(self, other, "mul")

    __rmul__ = __mul__

    def __neg__(self):
        return PowerSeries(-self.coeffs)

    def invert(self) -> PowerSeries:
        return ps_invert(self)

    def valuation(self):
        return ps_valuation(self)

    def shifted(self, k: int) -> PowerSeries:
        """Multiply by t**k, keeping the truncation order (top coefficients drop)."""
        if k < 0:
            raise ValueError("use LaurentSeries for negative shifts")
        out = np.zeros(self.trunc_order, dtype=complex)
        if k < self.trunc_order:
            out[k:] = self.coeffs[: self.trunc_order - k]
        return PowerSeries(out)


def ps_arith(a: PowerSeries, b: PowerSeries, op: str) -> PowerSeries:
    """Ring operation on truncated series; the result has the smaller order."""
    n = min(a.trunc_order, b.trunc_order)
    x, y = a.coeffs[:n], b.coeffs[:n]
    if op == "add":
        return PowerSeries(x + y)
    if op == "sub":
        return PowerSeries(x - y)
    if op == "mul":
        return PowerSeries(np.convolve(x, y)[:n])
    raise ValueError(f"unknown operation {op!r}")


def ps_invert(a: PowerSeries, tau_unit: float = TAU_UNIT) -> PowerSeries:
    """Inverse of a unit of C{t}.

    Raises:
        NotAUnit: if ``|c0| <= tau_unit``; factor out ``t**v`` with
            :func:`ps_valuation` first.
    """
    c = a.coeffs
    if abs(c[0]) <= tau_unit:
        raise NotAUnit(f"constant term {c[0]!r} is not invertible")
    n = c.size
    inv_c0 = 1.0 / c[0]
    d = np.zeros(n, dtype=complex)
    d[0] = inv_c0
    for k in range(1, n):
        # d_k = -(1/c0) * sum_{j=1..k} c_j d_{k-j}
        d[k] = -inv_c0 * np.dot(c[1 : k + 1], d[k - 1 :: -1])
    return PowerSeries(d)


def ps_valuation(a: PowerSeries, tau_zero: float = TAU_ZERO, scale=None):
    """Index of the first coefficient that is not negligible (``inf`` for zero).

    A coefficient counts when ``|c_k| > tau_zero * scale``.  ``scale``
    defaults to ``max|c|``; pass a per-coefficient array to judge each entry
    against the magnitudes it was computed from (e.g. the operands of a sum).
    """
    mags = np.abs(a.coeffs)
    if scale is None:
        scale = mags.max()
    above = (mags > tau_zero * np.asarray(scale)) & (mags > 0)
    if not above.any():
        return INF
    return int(np.argmax(above))


@dataclass(frozen=True, eq=False)
class LaurentSeries:
    """Element of C({t}) written as ``t**valuation * unit_part``.

    The zero series has ``valuation == inf`` and an all-zero unit part.
    Construct through :meth:`from_power_series` to get a normalized value.
    """

    valuation: int | float
    unit_part: PowerSeries

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> LaurentSeries:
        return cls(INF, PowerSeries(np.zeros(order, dtype=complex)))

    @classmethod
    def from_power_series(cls, ps: PowerSeries, shift: int = 0, scale=0.0) -> LaurentSeries:
        """Normalize ``t**shift * ps`` so the unit part has a nonzero constant term.

        Leading coefficients that ``ps_valuation(ps, scale=scale)`` treats as
        zero are dropped, which shortens the truncation order by the same
        amount.  The default keeps every nonzero coefficient: a threshold
        relative to ``max|c|`` would swallow the head of a geometrically
        growing series such as ``1/(1 + 2t)``.
        """
        v = ps_valuation(ps, scale=scale)
        if v == INF:
            return cls.zero(ps.trunc_order)
        coeffs = ps.coeffs[v:]
        return cls(shift + v, PowerSeries(coeffs))

    @classmethod
    def monomial(cls, k: int, order: int = DEFAULT_ORDER, c=1.0) -> LaurentSeries:
        if c == 0:
            return cls.zero(order)
        return cls(k, PowerSeries.constant(c, order))

    @classmethod
    def coerce(cls, value, order: int = DEFAULT_ORDER) -> LaurentSeries:
        if isinstance(value, LaurentSeries):
            return value
        if isinstance(value, PowerSeries):
            return cls.from_power_series(value)
        if isinstance(value, PolynomialS):
            return poly_s_to_laurent(value, order)
        if isinstance(value, numbers.Number):
            return cls.monomial(0, order, value)
        raise TypeError(f"cannot interpret {type(value).__name__} as a Laurent series")

    @property
    def is_zero(self) -> bool:
        return self.valuation == INF

    @property
    def trunc_order(self) -> int:
        return self.unit_part.trunc_order

    def coefficient(self, k: int) -> complex:
        """Coefficient of t**k (zero below the valuation or beyond truncation)."""
        if self.is_zero:
            return 0j
        i = k - self.valuation
        if 0 <= i < self.trunc_order:
            return complex(self.unit_part.coeffs[i])
        return 0j

    def series_part(self) -> PowerSeries:
        """The value as a PowerSeries; requires a nonnegative valuation.

        The result has ``valuation + trunc_order`` coefficients, which is
        exactly the number known.
        """
        if self.is_zero:
            return PowerSeries(np.zeros(self.trunc_order, dtype=complex))
        if self.valuation < 0:
            raise ValueError(f"valuation {self.valuation} < 0: not a power series")
        v = self.valuation
        out = np.zeros(v + self.trunc_order, dtype=complex)
        out[v:] = self.unit_part.coeffs
        return PowerSeries(out)

    def __repr__(self):
        if self.is_zero:
            return "LaurentSeries(0)"
        return f"LaurentSeries(t**{self.valuation} * {self.unit_part!r})"

    def __add__(self, other):
        return laurent_arith(self, LaurentSeries.coerce(other, self.trunc_order), "add")

    __radd__ = __add__

    def __sub__(self, other):
        return laurent_arith(self, LaurentSeries.coerce(other, self.trunc_order), "sub")

    def __rsub__(self, other):
        return laurent_arith(LaurentSeries.coerce(other, self.trunc_order), self, "sub")

    def __mul__(self, other):
        return laurent_arith(self, LaurentSeries.coerce(other, self.trunc_order), "mul")

    __rmul__ = __mul__

    def __truediv__(self, other):
        return laurent_arith(self, LaurentSeries.coerce(other, self.trunc_order), "div")

    def __rtruediv__(self, other):
        return laurent_arith(LaurentSeries.coerce(other, self.trunc_order), self, "div")

    def __neg__(self):
        if self.is_zero:
            return self
        return LaurentSeries(self.valuation, -self.unit_part)


def laurent_arith(x: LaurentSeries, y: LaurentSeries, op: str) -> LaurentSeries:
    """Field operations of C({t}) on normalized Laurent series."""
    if op == "mul":
        if x.is_zero or y.is_zero:
            return LaurentSeries.zero(min(x.trunc_order, y.trunc_order))
        return LaurentSeries(x.valuation + y.valuation, x.unit_part * y.unit_part)
    if op == "div":
        if y.is_zero:
            raise DivisionByZeroSeries("division by the zero Laurent series")
        if x.is_zero:
            return LaurentSeries.zero(min(x.trunc_order, y.trunc_order))
        return LaurentSeries(
            x.valuation - y.valuation, x.unit_part * ps_invert(y.unit_part)
        )
    if op not in ("add", "sub"):
        raise ValueError(f"unknown operation {op!r}")
    if op == "sub":
        y = -y
    if x.is_zero:
        return y
    if y.is_zero:
        return x
    lo = min(x.valuation, y.valuation)
    hi = min(x.valuation + x.trunc_order, y.valuation + y.trunc_order)
    out = np.zeros(hi - lo, dtype=complex)
    mags = np.zeros(hi - lo)
    for z in (x, y):
        start = z.valuation - lo
        n = max(0, min(z.trunc_order, hi - z.valuation))
        out[start : start + n] += z.unit_part.coeffs[:n]
        mags[start : start + n] += np.abs(z.unit_part.coeffs[:n])
    # a coefficient is zero when it cancelled down to rounding level
    return LaurentSeries.from_power_series(PowerSeries(out), lo, scale=mags)


def _is_exact(c) -> bool:
    return isinstance(c, numbers.Rational)


def _div(a, b):
    if _is_exact(a) and _is_exact(b):
        return Fraction(a) / Fraction(b)
    return a / b


@dataclass(frozen=True, eq=False)
class PolynomialS:
    """Polynomial in s with coefficients ``s_coeffs[k]`` of ``s**k``.

    Coefficients are kept as given (int, Fraction, float, complex), so exact
    inputs stay exact through :func:`poly_divmod`.
    """

    s_coeffs: tuple

    def __post_init__(self):
        coeffs = list(self.s_coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "s_coeffs", tuple(coeffs))

    @classmethod
    def s_power(cls, k: int, c=1) -> PolynomialS:
        return cls((0,) * k + (c,))

    @classmethod
    def from_roots(cls, roots: Sequence, leading=1) -> PolynomialS:
        """``leading * prod(s - r)``."""
        p = cls((leading,))
        for r in roots:
            p = p * cls((-r, 1))
        return p

    @property
    def degree(self):
        return len(self.s_coeffs) - 1 if self.s_coeffs else -INF

    @property
    def is_zero(self) -> bool:
        return not self.s_coeffs

    @property
    def leading(self):
        return self.s_coeffs[-1] if self.s_coeffs else 0

    def __call__(self, s):
        acc = 0
        for c in reversed(self.s_coeffs):
            acc = acc * s + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, PolynomialS):
            return NotImplemented
        return self.s_coeffs == other.s_coeffs

    def __hash__(self):
        return hash(self.s_coeffs)

    def __repr__(self):
        return f"PolynomialS({list(self.s_coeffs)!r})"

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.s_coeffs), len(other.s_coeffs))
        a = self.s_coeffs + (0,) * (n - len(self.s_coeffs))
        b = other.s_coeffs + (0,) * (n - len(other.s_coeffs))
        return PolynomialS(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return PolynomialS(tuple(-c for c in self.s_coeffs))

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if self.is_zero or other.is_zero:
            return PolynomialS(())
        out = [0] * (len(self.s_coeffs) + len(other.s_coeffs) - 1)
        for i, x in enumerate(self.s_coeffs):
            for j, y in enumerate(other.s_coeffs):
                out[i + j] += x * y
        return PolynomialS(tuple(out))

    __rmul__ = __mul__

    def __divmod__(self, other):
        return poly_divmod(self, _as_poly(other))


def _as_poly(value) -> PolynomialS:
    if isinstance(value, PolynomialS):
        return value
    if isinstance(value, numbers.Number):
        return PolynomialS((value,))
    return PolynomialS(tuple(value))


def poly_s_to_laurent(f: PolynomialS, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """Embed C[s] in C({t}): ``a0 + ... + ad s**d = t**-d (ad + ... + a0 t**d)``."""
    if f.is_zero:
        raise ZeroPolynomial("the zero polynomial has no Laurent normal form")
    unit = [complex(c) for c in reversed(f.s_coeffs)]
    return LaurentSeries(-f.degree, PowerSeries.from_coeffs(unit, order))


def laurent_ratio(p: PolynomialS, q: PolynomialS, order: int = DEFAULT_ORDER) -> LaurentSeries:
    """Expansion of the rational function ``p(s)/q(s)`` in powers of t."""
    if q.is_zero:
        raise ZeroPolynomial("denominator is the zero polynomial")
    if p.is_zero:
        return LaurentSeries.zero(order)
    return laurent_arith(poly_s_to_laurent(p, order), poly_s_to_laurent(q, order), "div")


def poly_divmod(p: PolynomialS, q: PolynomialS) -> tuple[PolynomialS, PolynomialS]:
    """Euclidean division ``p = quot*q + rem`` with ``deg rem < deg q``."""
    if q.is_zero:
        raise ZeroPolynomial("division by the zero polynomial")
    rem = list(p.s_coeffs)
    dq = q.degree
    lead = q.leading
    if p.is_zero or p.degree < dq:
        return PolynomialS(()), p
    quot = [0] * (p.degree - dq + 1)
    for k in range(p.degree - dq, -1, -1):
        c = _div(rem[k + dq], lead)
        quot[k] = c
        for j, qj in enumerate(q.s_coeffs):
            rem[k + j] -= c * qj
    return PolynomialS(tuple(quot)), PolynomialS(tuple(rem[:dq]))
