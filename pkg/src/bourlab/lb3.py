"""Laplace-Beltrami operator of the third fundamental form.

For a scalar field f on the parameter domain the operator is

    D3 f = -(sqrt(det I)/det II) * [ d/du( (Z f_u - Y f_v) / (sqrt(det I) det II) )
                                   - d/dv( (Y f_u - X f_v) / (sqrt(det I) det II) ) ]

with the un-normalized third-form coefficients (X, Y, Z) from
:mod:`bourlab.forms`.  The quotient fields inside the brackets are exact
(order-2 jets suffice for them); only the two outer derivatives are taken
numerically, by Richardson central differences with base step
h*max(1, |coordinate|).  A surface is third-form minimal when D3 applied
to each coordinate of the immersion vanishes identically; the minimal
helicoid/catenoid pair has this property, generic surfaces do not.

det II appears twice in denominators, so the operator is undefined at
parabolic points (det II = 0); those raise :class:`ParabolicPointError`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .calculus import central_derivative
from .forms import first_form, second_form, third_form
from .surfaces import Surface

DEFAULT_OUTER_STEP = 1e-3
_PARABOLIC_FACTOR = 1e-10

GradientField = Callable[[float, float], tuple[float, float]]


class ParabolicPointError(ArithmeticError):
    """det II ~ 0: the third fundamental form is degenerate here."""


@dataclass
class Lb3Report:
    grid: list[tuple[float, float]]
    residual: list[np.ndarray]
    max_norm: float
    iii_minimal: bool
    tolerance: float
    parabolic: list[tuple[float, float]]


def _weights(surface: Surface, u: float, v: float):
    j = surface.jet(u, v)
    I = first_form(j)
    II = second_form(j)
    d2 = II.det
    # epsilon keeps the squared threshold positive for an exactly flat point
    scale = abs(II.L) + abs(II.M) + abs(II.N) + 1e-150
    if abs(d2) < _PARABOLIC_FACTOR * scale * scale:
        raise ParabolicPointError(
            f"parabolic point at (u, v)=({u}, {v}): det II={d2}")
    III = third_form(I, II)
    den = math.sqrt(I.det) * d2
    return j, III, den, I, II


def _steps(u: float, v: float, h: float | None) -> tuple[float, float]:
    base = DEFAULT_OUTER_STEP if h is None else float(h)
    return base * max(1.0, abs(u)), base * max(1.0, abs(v))


def delta3_scalar(surface: Surface, grad: GradientField, u: float, v: float,
                  h: float | None = None) -> float:
    """Apply the operator to a scalar field given by its first partials
    grad(u, v) -> (f_u, f_v)."""

    def along_u(t: float) -> float:
        _, III, den, _, _ = _weights(surface, t, v)
        fu, fv = grad(t, v)
        return (III.Z * fu - III.Y * fv) / den

    def along_v(t: float) -> float:
        _, III, den, _, _ = _weights(surface, u, t)
        fu, fv = grad(u, t)
        return (III.Y * fu - III.X * fv) / den

    hu, hv = _steps(u, v, h)
    du = central_derivative(along_u, u, hu)
    dv = central_derivative(along_v, v, hv)
    _, _, _, I, II = _weights(surface, u, v)
    return -(math.sqrt(I.det) / II.det) * (du - dv)


def _vector_fields(surface: Surface, h: float | None, u: float, v: float):
    def along_u(t: float) -> np.ndarray:
        j, III, den, _, _ = _weights(surface, t, v)
        return (III.Z * j.xu - III.Y * j.xv) / den

    def along_v(t: float) -> np.ndarray:
        j, III, den, _, _ = _weights(surface, u, t)
        return (III.Y * j.xu - III.X * j.xv) / den

    return along_u, along_v


def inner_field_derivatives(surface: Surface, u: float, v: float,
                            h: float | None = None
                            ) -> tuple[np.ndarray, np.ndarray]:
    """(d/du of the u-bracket, d/dv of the v-bracket) applied to the
    immersion coordinates.  The two agree componentwise exactly when the
    surface is third-form minimal."""
    along_u, along_v = _vector_fields(surface, h, u, v)
    hu, hv = _steps(u, v, h)
    return central_derivative(along_u, u, hu), central_derivative(along_v, v, hv)


def delta3_immersion(surface: Surface, u: float, v: float,
                     h: float | None = None) -> np.ndarray:
    """Operator applied to the three coordinate functions of the immersion."""
    du, dv = inner_field_derivatives(surface, u, v, h)
    _, _, _, I, II = _weights(surface, u, v)
    return -(math.sqrt(I.det) / II.det) * (du - dv)


def iii_minimality_scan(surface: Surface, grid: Sequence[tuple[float, float]],
                        tol: float = 1e-6, h: float | None = None) -> Lb3Report:
    """Evaluate the immersion residual over a parameter grid.

    Parabolic grid points are flagged and skipped rather than fatal; the
    verdict covers the evaluable points.
    """
    pts: list[tuple[float, float]] = []
    residuals: list[np.ndarray] = []
    parabolic: list[tuple[float, float]] = []
    max_norm = 0.0
    for (u, v) in grid:
        try:
            res = delta3_immersion(surface, u, v, h)
        except ParabolicPointError:
            parabolic.append((u, v))
            continue
        pts.append((u, v))
        residuals.append(res)
        max_norm = max(max_norm, float(np.linalg.norm(res)))
    return Lb3Report(grid=pts, residual=residuals, max_norm=max_norm,
                     iii_minimal=max_norm <= tol, tolerance=tol,
                     parabolic=parabolic)
