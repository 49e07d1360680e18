"""Continuous functions on a compact interval as Chebyshev series.

A :class:`ChebFunction` stores first-kind Chebyshev coefficients in the
variable ``(2x - (a+b)) / (b-a)``.  The integration operator ``J`` (the
antiderivative vanishing at 0), the action of C{t} by ``g u = sum b_n J^n u``
and the entire function ``E(g) = g 1`` all live here.
"""

from __future__ import annotations

import math
import numbers
import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy.fft import dct

from .errors import IntervalMismatch, InvalidInterval, NoConvergence, OutOfDomain
from .series import PowerSeries

TAU_TRIM = 1e-14
TAU_TAIL = 1e-14
MIN_DEGREE = 16
MAX_DEGREE = 2**14


@dataclass(frozen=True)
class Interval:
    a: float
    b: float

    def __post_init__(self):
        a, b = float(self.a), float(self.b)
        if not (math.isfinite(a) and math.isfinite(b)):
            raise InvalidInterval(f"interval [{a}, {b}] must be bounded")
        if not a < b:
            raise InvalidInterval(f"interval [{a}, {b}] is empty")
        if not a <= 0.0 <= b:
            raise InvalidInterval(f"interval [{a}, {b}] does not contain 0")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def radius(self) -> float:
        """max(|a|, |b|): bound on |x| over the interval."""
        return max(abs(self.a), abs(self.b))

    @property
    def half_width(self) -> float:
        return 0.5 * (self.b - self.a)

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)

    def to_unit(self, x):
        return (np.asarray(x, dtype=float) - self.midpoint) / self.half_width

    def from_unit(self, t):
        return self.midpoint + self.half_width * np.asarray(t, dtype=float)

    def contains(self, x, slack: float = 1e-12) -> bool:
        x = np.asarray(x, dtype=float)
        eps = slack * (self.b - self.a)
        return bool(np.all((x >= self.a - eps) & (x <= self.b + eps)))

    def grid(self, n: int) -> np.ndarray:
        return np.linspace(self.a, self.b, n)


DEFAULT_INTERVAL = Interval(-1.0, 1.0)


def trim_coeffs(coeffs: np.ndarray, tau: float = TAU_TRIM) -> np.ndarray:
    """Drop trailing coefficients with ``|c| <= tau * max|c|`` (keeps at least one)."""
    coeffs = np.asarray(coeffs)
    mags = np.abs(coeffs)
    peak = mags.max() if mags.size else 0.0
    if peak == 0.0:
        return np.zeros(1, dtype=coeffs.dtype)
    keep = np.nonzero(mags > tau * peak)[0][-1] + 1
    return coeffs[:keep]


def _tidy(coeffs) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(coeffs))
    if np.iscomplexobj(arr):
        if np.all(arr.imag == 0):
            arr = arr.real
        arr = arr.astype(complex if np.iscomplexobj(arr) else float, copy=True)
    else:
        arr = arr.astype(float, copy=True)
    return arr


@dataclass(frozen=True, eq=False)
class ChebFunction:
    """Chebyshev-series proxy for an element of C(I).

    Attributes:
        interval: the compact interval [a, b] containing 0.
        coeffs: Chebyshev coefficients (float or complex), already trimmed.
        inexact: precision flag; set when an operation could not meet its
            tolerance (non-convergent interpolation, truncated series tail)
            and inherited by everything computed from this function.
    """

    interval: Interval
    coeffs: np.ndarray
    inexact: bool = False

    def __post_init__(self):
        arr = _tidy(self.coeffs)
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @classmethod
    def from_coeffs(cls, coeffs, interval: Interval = DEFAULT_INTERVAL, inexact=False):
        return cls(interval, trim_coeffs(_tidy(coeffs)), inexact)

    @classmethod
    def constant(cls, c, interval: Interval = DEFAULT_INTERVAL) -> ChebFunction:
        return cls(interval, np.array([c]))

    @classmethod
    def one(cls, interval: Interval = DEFAULT_INTERVAL) -> ChebFunction:
        return cls.constant(1.0, interval)

    @classmethod
    def zero(cls, interval: Interval = DEFAULT_INTERVAL) -> ChebFunction:
        return cls.constant(0.0, interval)

    @classmethod
    def identity(cls, interval: Interval = DEFAULT_INTERVAL) -> ChebFunction:
        return cls(interval, np.array([interval.midpoint, interval.half_width]))

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.coeffs)

    def __call__(self, x):
        return cf_eval(self, x)

    def __repr__(self):
        iv = self.interval
        flag = ", inexact" if self.inexact else ""
        return f"ChebFunction([{iv.a}, {iv.b}], degree={self.degree}{flag})"

    def norm(self) -> float:
        """Sup norm estimated on a Chebyshev grid finer than the degree."""
        n = max(2 * self.coeffs.size + 1, 65)
        t = np.cos(np.pi * np.arange(n) / (n - 1))
        return float(np.max(np.abs(C.chebval(t, self.coeffs))))

    def _check(self, other: ChebFunction):
        if other.interval != self.interval:
            raise IntervalMismatch(f"{self.interval} vs {other.interval}")

    def _combine(self, other, ca, cb):
        self._check(other)
        n = max(self.coeffs.size, other.coeffs.size)
        dtype = np.result_type(self.coeffs, other.coeffs, np.asarray(ca), np.asarray(cb))
        out = np.zeros(n, dtype=dtype)
        out[: self.coeffs.size] += ca * self.coeffs
        out[: other.coeffs.size] += cb * other.coeffs
        return ChebFunction.from_coeffs(out, self.interval, self.inexact or other.inexact)

    def lincomb(self, other: ChebFunction, ca=1.0, cb=1.0) -> ChebFunction:
        """``ca*self + cb*other``."""
        return self._combine(other, ca, cb)

    def __add__(self, other):
        if isinstance(other, numbers.Number):
            other = ChebFunction.constant(other, self.interval)
        if not isinstance(other, ChebFunction):
            return NotImplemented
        return self._combine(other, 1.0, 1.0)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, numbers.Number):
            other = ChebFunction.constant(other, self.interval)
        if not isinstance(other, ChebFunction):
            return NotImplemented
        return self._combine(other, 1.0, -1.0)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, numbers.Number):
            return NotImplemented
        return ChebFunction.from_coeffs(self.coeffs * other, self.interval, self.inexact)

    __rmul__ = __mul__

    def __neg__(self):
        return ChebFunction(self.interval, -self.coeffs, self.inexact)


def _cheb_points(n: int) -> np.ndarray:
    """First-kind Chebyshev points on [-1, 1], ordered as the DCT expects."""
    return np.cos(np.pi * (np.arange(n) + 0.5) / n)


def _values_to_coeffs(values: np.ndarray) -> np.ndarray:
    n = values.size

    def real_dct(v):
        c = dct(v, type=2) / n
        c[0] *= 0.5
        return c

    if np.iscomplexobj(values):
        return real_dct(values.real) + 1j * real_dct(values.imag)
    return real_dct(values)


def _sample(f, x: np.ndarray) -> np.ndarray:
    try:
        vals = np.asarray(f(x))
        vals = np.broadcast_to(vals, x.shape)
    except (TypeError, ValueError):
        vals = np.array([f(float(xi)) for xi in x])
    return np.array(vals, dtype=complex if np.iscomplexobj(vals) else float)


def cf_from_callable(
    f, interval: Interval = DEFAULT_INTERVAL, tol: float = TAU_TRIM
) -> ChebFunction:
    """Adaptive Chebyshev interpolation of ``f`` on ``interval``.

    The degree doubles from 16 until the trailing quarter of the coefficients
    falls below ``tol * max|c|``.  If ``MAX_DEGREE`` is reached first a
    :class:`NoConvergence` warning is issued and the result carries
    ``inexact=True``.
    """
    degree = MIN_DEGREE
    while True:
        n = degree + 1
        t = _cheb_points(n)
        vals = _sample(f, interval.from_unit(t))
        if not np.all(np.isfinite(vals)):
            raise ValueError("function is not finite on the interval")
        coeffs = _values_to_coeffs(vals)
        mags = np.abs(coeffs)
        peak = mags.max()
        tail = mags[-max(1, n // 4) :]
        if peak == 0.0 or tail.max() <= tol * peak:
            return ChebFunction.from_coeffs(coeffs, interval)
        if degree >= MAX_DEGREE:
            warnings.warn(
                f"no coefficient plateau below {tol:g} up to degree {degree}",
                NoConvergence,
                stacklevel=2,
            )
            return ChebFunction.from_coeffs(coeffs, interval, inexact=True)
        degree *= 2


def cf_eval(u: ChebFunction, x):
    """Evaluate ``u`` at scalar or array ``x`` (Clenshaw recurrence)."""
    if not u.interval.contains(x):
        raise OutOfDomain(f"point(s) outside [{u.interval.a}, {u.interval.b}]")
    t = np.clip(u.interval.to_unit(x), -1.0, 1.0)
    val = C.chebval(t, u.coeffs)
    if np.ndim(val) == 0:
        return complex(val) if u.is_complex else float(val)
    return val


def cf_integral_J(u: ChebFunction) -> ChebFunction:
    """``J(u)(x) = int_0^x u``; the result vanishes at 0."""
    iv = u.interval
    t0 = float(iv.to_unit(0.0))
    coeffs = C.chebint(u.coeffs, m=1, lbnd=t0, scl=iv.half_width)
    coeffs = np.array(trim_coeffs(coeffs))
    # trimming perturbs the value at 0; restore J(u)(0) = 0 through c0
    coeffs[0] -= C.chebval(t0, coeffs)
    return ChebFunction(iv, coeffs, u.inexact)


def cf_integral_power(u: ChebFunction, n: int) -> ChebFunction:
    for _ in range(n):
        u = cf_integral_J(u)
    return u


def cf_derivative(u: ChebFunction, k: int = 1) -> ChebFunction:
    """k-th derivative of the Chebyshev representative."""
    coeffs = u.coeffs
    for _ in range(k):
        if coeffs.size == 1:
            coeffs = np.zeros(1, dtype=coeffs.dtype)
            continue
        coeffs = C.chebder(coeffs, m=1, scl=1.0 / u.interval.half_width)
    return ChebFunction.from_coeffs(coeffs, u.interval, u.inexact)


def _factorial_terms(g: PowerSeries, radius: float) -> np.ndarray:
    """``|b_n| L**n / n!`` for every stored coefficient, computed in log space."""
    mags = np.abs(g.coeffs)
    n = np.arange(mags.size)
    with np.errstate(divide="ignore"):
        logs = np.log(mags) + n * math.log(radius) - np.array([math.lgamma(k + 1) for k in n])
    return np.where(mags > 0, np.exp(logs), 0.0)


def series_cutoff(g: PowerSeries, radius: float, tau_tail: float = TAU_TAIL):
    """Smallest M whose tail bound ``sum_{n>M} |b_n| L**n/n!`` is below ``tau_tail``.

    Returns ``(M, truncated)``; ``truncated`` is True when the last stored
    coefficient still contributes above ``tau_tail``, i.e. dropping the
    coefficients past the truncation order is not justified by the bound.
    Returns ``M = -1`` for the zero series.
    """
    terms = _factorial_terms(g, radius)
    nz = np.nonzero(terms)[0]
    if nz.size == 0:
        return -1, False
    # tails[M] = sum_{n > M} terms[n]
    tails = np.concatenate([np.cumsum(terms[::-1])[::-1][1:], [0.0]])
    M = int(np.argmax(tails < tau_tail))
    M = min(M, int(nz[-1]))
    return M, bool(terms[-1] >= tau_tail)


def module_mul(g: PowerSeries, u: ChebFunction, tau_tail: float = TAU_TAIL) -> ChebFunction:
    """The C{t}-module action ``g u = sum_n b_n J^n(u)``.

    Summation stops at the first index whose factorial tail bound (relative
    to ``||u||``) drops below ``tau_tail``.  Coefficients past the truncation
    order count as zero; if that is not justified the result is flagged
    ``inexact``.
    """
    M, truncated = series_cutoff(g, u.interval.radius, tau_tail)
    if M < 0:
        return ChebFunction.zero(u.interval)
    b = g.coeffs
    n_max = max(u.coeffs.size + M, 1)
    acc = np.zeros(n_max, dtype=complex)
    v = u
    for n in range(M + 1):
        if n:
            v = cf_integral_J(v)
        if b[n] != 0:
            acc[: v.coeffs.size] += b[n] * v.coeffs
    return ChebFunction.from_coeffs(acc, u.interval, u.inexact or truncated)


def e_transform(
    g: PowerSeries, interval: Interval = DEFAULT_INTERVAL, tau_tail: float = TAU_TAIL
) -> ChebFunction:
    """The entire function ``E(g)(x) = sum_n b_n x**n / n!`` on ``interval``.

    Computed as a polynomial in x (Horner) and interpolated exactly at
    ``M + 1`` Chebyshev points, independent of the ``J`` recursion used by
    :func:`module_mul`.
    """
    M, truncated = series_cutoff(g, interval.radius, tau_tail)
    if M < 0:
        return ChebFunction.zero(interval)
    power = np.array(
        [g.coeffs[n] / math.factorial(n) for n in range(M + 1)], dtype=complex
    )
    n = M + 1
    x = interval.from_unit(_cheb_points(n))
    vals = np.polynomial.polynomial.polyval(x, power)
    return ChebFunction.from_coeffs(_values_to_coeffs(vals), interval, truncated)


def to_power_basis(u: ChebFunction) -> np.ndarray:
    """Coefficients of ``u`` in powers of x (ill-conditioned beyond degree ~30)."""
    iv = u.interval
    series = C.Chebyshev(u.coeffs, domain=[iv.a, iv.b])
    return series.convert(kind=np.polynomial.Polynomial, domain=[iv.a, iv.b], window=[iv.a, iv.b]).coef
