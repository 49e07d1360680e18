"""Classical numerical references: RK4, composite Simpson, closed forms.

Nothing here touches the series or Chebyshev kernel; these routines exist to
check it by an unrelated path.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import ZeroLeadingCoefficient


@dataclass(frozen=True, eq=False)
class SampledTrajectory:
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=float)
        ys = np.asarray(self.ys, dtype=complex)
        if xs.shape != ys.shape:
            raise ValueError("xs and ys must have equal lengths")
        if np.any(np.diff(xs) <= 0):
            raise ValueError("xs must be strictly increasing")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)


def _poly_coeffs(f) -> list[complex]:
    coeffs = [complex(c) for c in getattr(f, "s_coeffs", f)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _bounds(interval) -> tuple[float, float]:
    if hasattr(interval, "a"):
        return float(interval.a), float(interval.b)
    a, b = interval
    return float(a), float(b)


def _rk4_leg(rhs, y0, x_end, step):
    """Fixed-step RK4 from 0 to ``x_end``; returns grid and states (0 excluded)."""
    n = max(1, math.ceil(abs(x_end) / step - 1e-9))
    h = x_end / n
    xs = np.empty(n)
    ys = np.empty((n, y0.size), dtype=complex)
    x, y = 0.0, y0
    for i in range(n):
        k1 = rhs(x, y)
        k2 = rhs(x + h / 2, y + h / 2 * k1)
        k3 = rhs(x + h / 2, y + h / 2 * k2)
        k4 = rhs(x + h, y + h * k3)
        y = y + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        x = (i + 1) * h
        xs[i] = x
        ys[i] = y
    return xs, ys


def rk4_integrate(f, ics, forcing, interval, step: float) -> SampledTrajectory:
    """Classical RK4 for ``sum_j a_j xi^(j) = forcing`` on [a, b].

    ``f`` is the operator polynomial (anything with ``s_coeffs`` or a plain
    coefficient list, ascending powers).  Integration runs from 0 to ``b``
    and from 0 to ``a`` with a step no larger than ``step``.
    """
    a_coeffs = _poly_coeffs(f)
    d = len(a_coeffs) - 1
    if d < 1:
        raise ZeroLeadingCoefficient("operator must have degree >= 1 with nonzero leading term")
    if step <= 0:
        raise ValueError("step must be positive")
    lead = a_coeffs[d]
    lower = np.array(a_coeffs[:d], dtype=complex)
    y0 = np.asarray(ics, dtype=complex)
    if y0.size != d:
        raise ValueError(f"need {d} initial values, got {y0.size}")
    if forcing is None:
        forcing = lambda x: 0.0  # noqa: E731

    def rhs(x, y):
        dy = np.empty_like(y)
        dy[:-1] = y[1:]
        dy[-1] = (forcing(x) - lower @ y) / lead
        return dy

    a, b = _bounds(interval)
    xs, ys = [np.zeros(1)], [y0[:1]]
    if b > 0:
        xr, yr = _rk4_leg(rhs, y0, b, step)
        xs.append(xr)
        ys.append(yr[:, 0])
    if a < 0:
        xl, yl = _rk4_leg(rhs, y0, a, step)
        xs.insert(0, xl[::-1])
        ys.insert(0, yl[::-1, 0])
    return SampledTrajectory(np.concatenate(xs), np.concatenate(ys))


def quad_J(u, x: float, nsteps: int = 1000) -> complex:
    """Composite Simpson approximation of ``int_0^x u``."""
    if nsteps < 2 or nsteps % 2:
        raise ValueError("nsteps must be even and >= 2")
    if x == 0:
        return 0j
    nodes = np.linspace(0.0, x, nsteps + 1)
    vals = np.array([u(float(z)) for z in nodes], dtype=complex)
    h = x / nsteps
    return complex(h / 3 * (vals[0] + vals[-1] + 4 * vals[1:-1:2].sum() + 2 * vals[2:-1:2].sum()))


def closed_form_reference(kind: str, x: float, lam: complex = 1.0, coeffs=()) -> complex:
    """Direct evaluation of ``exp(lam x)``, ``sin(lam x)``, ``cos(lam x)``, or a power-basis polynomial."""
    if kind == "exp":
        return cmath.exp(lam * x)
    if kind == "sin":
        return cmath.sin(lam * x)
    if kind == "cos":
        return cmath.cos(lam * x)
    if kind == "poly_coeffs":
        acc = 0j
        for c in reversed(list(coeffs)):
            acc = acc * x + c
        return acc
    raise ValueError(f"unknown closed form {kind!r}")
