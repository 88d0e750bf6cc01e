"""One-dimensional quadrature and finite-difference utilities.

Adaptive Simpson quadrature with a mixed absolute/relative tolerance,
anchored cumulative integrals with memoized way-points, and
Richardson-extrapolated central differences.  Everything here is scalar
and deterministic; the memoizing cumulative integral is lock-synchronized
so instances may be shared between threads.
"""

from __future__ import annotations

import bisect
import math
import threading
from dataclasses import dataclass
from typing import Callable

import numpy as np

MAX_DEPTH = 60
DEFAULT_TOL = 1e-10


class NonFiniteSampleError(ArithmeticError):
    """An integrand or difference stencil produced NaN/inf, which normally
    means the evaluation point left the function's domain."""


class NonConvergenceError(ArithmeticError):
    """Subdivision limit reached without meeting the tolerance; the
    integrand is singular or wildly oscillatory on the interval."""


@dataclass
class QuadratureResult:
    value: float
    error_estimate: float
    subdivisions: int


def _sample(f: Callable[[float], float], x: float) -> float:
    y = float(f(x))
    if not math.isfinite(y):
        raise NonFiniteSampleError(f"integrand is not finite at {x!r}")
    return y


def _adapt(f, a, fa, m, fm, b, fb, whole, eps, depth, stats):
    lm = 0.5 * (a + m)
    rm = 0.5 * (m + b)
    if lm <= a or rm <= m:
        raise NonConvergenceError(
            f"interval [{a!r}, {b!r}] below float resolution without convergence"
        )
    flm = _sample(f, lm)
    frm = _sample(f, rm)
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if abs(delta) <= 15.0 * eps:
        stats[0] += 1
        stats[1] += abs(delta) / 15.0
        return left + right + delta / 15.0
    if depth <= 0:
        raise NonConvergenceError(
            f"no convergence after {MAX_DEPTH} subdivision levels near [{a!r}, {b!r}]"
        )
    return (
        _adapt(f, a, fa, lm, flm, m, fm, left, 0.5 * eps, depth - 1, stats)
        + _adapt(f, m, fm, rm, frm, b, fb, right, 0.5 * eps, depth - 1, stats)
    )


def integrate(f: Callable[[float], float], a: float, b: float,
              tol: float = DEFAULT_TOL) -> QuadratureResult:
    """Adaptive-Simpson integral of f over [a, b].

    The effective tolerance is max(tol, tol*|value|); orientation is
    honored (swapping the bounds negates the value) and a == b returns an
    exact zero.  Raises :class:`NonFiniteSampleError` on NaN/inf samples
    and :class:`NonConvergenceError` after ``MAX_DEPTH`` subdivision levels.
    """
    if tol <= 0.0:
        raise ValueError("tol must be positive")
    if a == b:
        return QuadratureResult(0.0, 0.0, 0)
    if b < a:
        r = integrate(f, b, a, tol)
        return QuadratureResult(-r.value, r.error_estimate, r.subdivisions)
    fa = _sample(f, a)
    m = 0.5 * (a + b)
    fm = _sample(f, m)
    fb = _sample(f, b)
    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    eps = max(tol, tol * abs(whole))
    stats = [0, 0.0]  # accepted panels, accumulated error estimate
    value = _adapt(f, a, fa, m, fm, b, fb, whole, eps, MAX_DEPTH, stats)
    return QuadratureResult(value, stats[1], stats[0])


class CumulativeIntegral:
    """F(u) = integral of f from u0 to u, with F(u0) = 0.

    Previously computed points serve as way-points: a new argument is
    integrated from the nearest known anchor instead of from u0, so
    sampling a fine grid costs one short panel per point.  All state is
    guarded by a lock; repeated calls with an identical argument return
    the identical float.
    """

    def __init__(self, f: Callable[[float], float], u0: float,
                 tol: float = DEFAULT_TOL):
        self._f = f
        self._tol = tol
        self.anchor = u0
        self._lock = threading.Lock()
        self._us = [u0]
        self._vals = [0.0]
        self._exact = {u0: 0.0}

    def __call__(self, u: float) -> float:
        with self._lock:
            hit = self._exact.get(u)
            if hit is not None:
                return hit
            i = bisect.bisect_left(self._us, u)
            if i == 0:
                j = 0
            elif i == len(self._us):
                j = i - 1
            else:
                j = i if self._us[i] - u < u - self._us[i - 1] else i - 1
            base_u = self._us[j]
            base_v = self._vals[j]
            val = base_v + integrate(self._f, base_u, u, self._tol).value
            self._us.insert(i, u)
            self._vals.insert(i, val)
            self._exact[u] = val
            return val


def cumulative(f: Callable[[float], float], u0: float,
               tol: float = DEFAULT_TOL) -> CumulativeIntegral:
    """Anchored antiderivative of f vanishing at u0."""
    return CumulativeIntegral(f, u0, tol)


def default_step(x: float) -> float:
    return 1e-4 * max(1.0, abs(x))


def central_derivative(g: Callable[[float], float], x: float,
                       h0: float | None = None):
    """First derivative of g at x by Richardson-extrapolated central
    differences (stencils at h0, h0/2, h0/4; two extrapolation levels).

    Works componentwise when g returns a numpy array.  Raises
    :class:`NonFiniteSampleError` if any stencil sample is not finite.
    """
    if h0 is None:
        h0 = default_step(x)
    if h0 <= 0.0:
        raise ValueError("h0 must be positive")
    diffs = []
    h = h0
    for _ in range(3):
        gp = g(x + h)
        gm = g(x - h)
        if not (np.all(np.isfinite(gp)) and np.all(np.isfinite(gm))):
            raise NonFiniteSampleError(f"difference stencil not finite near {x!r}")
        diffs.append((gp - gm) / (2.0 * h))
        h *= 0.5
    r1 = (4.0 * diffs[1] - diffs[0]) / 3.0
    r2 = (4.0 * diffs[2] - diffs[1]) / 3.0
    return (16.0 * r2 - r1) / 15.0
