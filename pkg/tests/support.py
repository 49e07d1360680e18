"""Random generators and comparison helpers shared by the tests."""

import numpy as np

from opcalc.funcrep import DEFAULT_INTERVAL, ChebFunction, cf_from_callable
from opcalc.series import PowerSeries


def grid(interval=DEFAULT_INTERVAL, n=1000):
    return np.linspace(interval.a, interval.b, n)


def sup_diff(u, fn, interval=None, n=1000):
    """max |u(x) - fn(x)| on an n-point uniform grid."""
    xs = grid(interval or u.interval, n)
    return float(np.max(np.abs(np.asarray(u(xs)) - fn(xs))))


def sup_between(u, v, n=1000):
    xs = grid(u.interval, n)
    return float(np.max(np.abs(np.asarray(u(xs)) - np.asarray(v(xs)))))


def random_series(rng, order=16, complex_=True):
    c = rng.uniform(-1, 1, order)
    if complex_:
        c = c + 1j * rng.uniform(-1, 1, order)
    return PowerSeries(c)


def random_unit_series(rng, order=16, c0_min=0.5):
    """|c0| in [c0_min, 1], |c_k| <= 1, uniformly random phases."""
    mags = rng.uniform(0, 1, order)
    mags[0] = rng.uniform(c0_min, 1.0)
    return PowerSeries(mags * np.exp(2j * np.pi * rng.uniform(0, 1, order)))


def random_cheb(rng, degree=12, interval=DEFAULT_INTERVAL):
    return ChebFunction.from_coeffs(rng.normal(size=degree + 1), interval)


def random_analytic_fn(rng):
    """A random entire function of x: exponential + trig + cubic."""
    lam = rng.uniform(-2, 2)
    w = rng.uniform(0.5, 3)
    a = rng.normal(size=5)

    def fn(x):
        x = np.asarray(x, dtype=float)
        return a[0] * np.exp(lam * x) + a[1] * np.sin(w * x) + a[2] * np.cos(w * x) + a[3] * x**3 + a[4]

    return fn


def random_analytic(rng, interval=DEFAULT_INTERVAL):
    fn = random_analytic_fn(rng)
    return fn, cf_from_callable(fn, interval)
