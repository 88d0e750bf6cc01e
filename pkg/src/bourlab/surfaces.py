"""Profile curves and the helicoidal/rotational immersions.

A helicoidal surface sweeps the planar profile (zeta(u), 0, phi(u)) around
the z-axis while climbing `pitch` per radian:

    (zeta(u) cos v,  zeta(u) sin v,  phi(u) + pitch*v)

A rotational surface is the pitch-free case, optionally with a u-dependent
angular offset ("twist") so that re-parametrized surfaces of revolution,
such as the Bour image of a helicoidal surface, evaluate through the same
code path:

    (radius(u) cos(v + twist(u)),  radius(u) sin(v + twist(u)),  height(u))

Evaluation returns every partial derivative through second order, exact to
round-off: u-derivatives ride on the order-2 jets of the scalar maps and
v-derivatives are trigonometric and taken analytically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from .expr import DomainError, Expression, Jet2, eval_jet, parse

ScalarMap = Callable[[float], Jet2]

_VALIDATION_SAMPLES = 64


def scalar_map(src: Union[str, Expression, ScalarMap]) -> ScalarMap:
    """Coerce expression text, a parsed expression, or a jet-valued
    callable into a ScalarMap."""
    if isinstance(src, str):
        e = parse(src)
        return lambda u: eval_jet(e, u)
    if callable(src):
        return src
    e = src
    return lambda u: eval_jet(e, u)


def constant_map(c: float) -> ScalarMap:
    return lambda u: Jet2.constant(c)


class QuadratureMap:
    """ScalarMap whose value channel is the anchored integral of its own
    closed-form slope channel.

    slope(u) must return (first, second derivative).  The value is only
    integrated when actually requested, so formulas that consume just the
    derivatives (every integrand in the Bour construction does) never
    trigger nested quadrature.
    """

    def __init__(self, slope: Callable[[float], tuple[float, float]],
                 u0: float, tol: float, offset: float = 0.0):
        from .calculus import cumulative

        self._slope = slope
        self._acc = cumulative(lambda u: slope(u)[0], u0, tol)
        self._offset = offset

    def derivatives(self, u: float) -> tuple[float, float]:
        return self._slope(u)

    def shifted(self, offset: float) -> "QuadratureMap":
        clone = object.__new__(QuadratureMap)
        clone._slope = self._slope
        clone._acc = self._acc
        clone._offset = self._offset + offset
        return clone

    def __call__(self, u: float) -> Jet2:
        d1, d2 = self._slope(u)
        return Jet2(self._offset + self._acc(u), d1, d2)


def map_derivatives(m: ScalarMap, u: float) -> tuple[float, float]:
    """(d1, d2) of a scalar map, skipping the value channel when the map
    offers a derivatives-only path."""
    if isinstance(m, QuadratureMap):
        return m.derivatives(u)
    j = m(u)
    return j.d1, j.d2


def _sample_points(domain: tuple[float, float]):
    lo, hi = domain
    n = _VALIDATION_SAMPLES
    return [lo + (hi - lo) * i / n for i in range(n + 1)]


@dataclass(frozen=True)
class ProfileCurve:
    """The pair (zeta, phi) generating a surface; zeta is the radial
    distance from the axis and must not vanish on the domain."""

    zeta: ScalarMap
    phi: ScalarMap
    domain: tuple[float, float]

    def __post_init__(self):
        lo, hi = self.domain
        if not (lo < hi):
            raise ValueError(f"empty profile domain [{lo}, {hi}]")
        for u in _sample_points(self.domain):
            if self.zeta(u).value == 0.0:
                raise ValueError(f"profile radius zeta vanishes at u={u}")

    @classmethod
    def from_expressions(cls, zeta: str, phi: str,
                         domain: tuple[float, float]) -> "ProfileCurve":
        return cls(scalar_map(zeta), scalar_map(phi), (float(domain[0]), float(domain[1])))


@dataclass
class SurfaceJet:
    """Position and all partials through order 2 at one parameter point."""

    x: np.ndarray
    xu: np.ndarray
    xv: np.ndarray
    xuu: np.ndarray
    xuv: np.ndarray
    xvv: np.ndarray

    def check_finite(self, u: float, v: float) -> "SurfaceJet":
        for arr in (self.x, self.xu, self.xv, self.xuu, self.xuv, self.xvv):
            if not np.all(np.isfinite(arr)):
                raise DomainError(f"surface jet not finite at (u, v)=({u}, {v})")
        return self


@dataclass(frozen=True)
class HelicoidalSurface:
    profile: ProfileCurve
    pitch: float

    def __post_init__(self):
        if self.pitch == 0.0:
            raise ValueError(
                "pitch must be nonzero; use RotationalSurface for pitch 0")

    @property
    def domain(self) -> tuple[float, float]:
        return self.profile.domain

    def jet(self, u: float, v: float) -> SurfaceJet:
        z = self.profile.zeta(u)
        f = self.profile.phi(u)
        a = self.pitch
        cv, sv = math.cos(v), math.sin(v)
        j = SurfaceJet(
            x=np.array([z.value * cv, z.value * sv, f.value + a * v]),
            xu=np.array([z.d1 * cv, z.d1 * sv, f.d1]),
            xv=np.array([-z.value * sv, z.value * cv, a]),
            xuu=np.array([z.d2 * cv, z.d2 * sv, f.d2]),
            xuv=np.array([-z.d1 * sv, z.d1 * cv, 0.0]),
            xvv=np.array([-z.value * cv, -z.value * sv, 0.0]),
        )
        return j.check_finite(u, v)


@dataclass(frozen=True)
class RotationalSurface:
    radius: ScalarMap
    height: ScalarMap
    domain: tuple[float, float]
    twist: ScalarMap = field(default_factory=lambda: constant_map(0.0))

    def __post_init__(self):
        lo, hi = self.domain
        if not (lo < hi):
            raise ValueError(f"empty surface domain [{lo}, {hi}]")
        for u in _sample_points(self.domain):
            if self.radius(u).value <= 0.0:
                raise ValueError(f"rotational radius not positive at u={u}")

    def jet(self, u: float, v: float) -> SurfaceJet:
        r = self.radius(u)
        h = self.height(u)
        t = self.twist(u)
        w = v + t.value
        cw, sw = math.cos(w), math.sin(w)
        swing = 2.0 * r.d1 * t.d1 + r.value * t.d2
        j = SurfaceJet(
            x=np.array([r.value * cw, r.value * sw, h.value]),
            xu=np.array([r.d1 * cw - r.value * t.d1 * sw,
                         r.d1 * sw + r.value * t.d1 * cw, h.d1]),
            xv=np.array([-r.value * sw, r.value * cw, 0.0]),
            xuu=np.array([r.d2 * cw - swing * sw - r.value * t.d1 ** 2 * cw,
                          r.d2 * sw + swing * cw - r.value * t.d1 ** 2 * sw,
                          h.d2]),
            xuv=np.array([-r.d1 * sw - r.value * t.d1 * cw,
                          r.d1 * cw - r.value * t.d1 * sw, 0.0]),
            xvv=np.array([-r.value * cw, -r.value * sw, 0.0]),
        )
        return j.check_finite(u, v)


Surface = Union[HelicoidalSurface, RotationalSurface]


def eval_helicoidal(surface: HelicoidalSurface, u: float, v: float) -> SurfaceJet:
    return surface.jet(u, v)


def eval_rotational(surface: RotationalSurface, u: float, v: float) -> SurfaceJet:
    return surface.jet(u, v)


# ------------------------------------------------------- stock surfaces


def right_helicoid(pitch: float, domain: tuple[float, float] = (0.5, 2.0)) -> HelicoidalSurface:
    """zeta = u, phi = 0: the minimal ruled surface."""
    return HelicoidalSurface(ProfileCurve.from_expressions("u", "0", domain), pitch)


def catenoid(a: float, domain: tuple[float, float] = (0.5, 2.0)) -> RotationalSurface:
    """radius sqrt(u^2 + a^2), height a*log(u + sqrt(u^2 + a^2)): the
    minimal surface of revolution, in the parametrization isometric to the
    right helicoid of pitch a."""
    if a == 0.0:
        raise ValueError("catenoid parameter a must be nonzero")
    a2 = repr(a * a)
    return RotationalSurface(
        radius=scalar_map(f"sqrt(u^2+{a2})"),
        height=scalar_map(f"{a!r}*log(u+sqrt(u^2+{a2}))"),
        domain=(float(domain[0]), float(domain[1])),
    )


def quadratic_cubic_helicoid(pitch: float = 1.0,
                             domain: tuple[float, float] = (0.5, 1.5)) -> HelicoidalSurface:
    """zeta = u^2, phi = u^3: the stock non-minimal test surface."""
    return HelicoidalSurface(ProfileCurve.from_expressions("u^2", "u^3", domain), pitch)
