"""The isometric rotational image of a helicoidal surface, and the
same-Gauss-map construction.

Bour's theorem: the helicoidal surface over (zeta, phi) with pitch a is
isometric to the rotational surface with

    radius k(u) = sqrt(zeta^2 + a^2)
    twist  T(u) = integral of a phi' / (zeta^2 + a^2)
    height z(u) = integral of sqrt(((a zeta')^2 + (zeta phi')^2) / (zeta^2 + a^2))

and the isometry is the identity on the (u, v) parameters: both surfaces
have first form (zeta'^2 + phi'^2, a phi', zeta^2 + a^2).  The free
integration constants are fixed by anchoring twist and height to 0 at a
chosen u0; any anchor produces a congruent surface.

Twist and height are :class:`~bourlab.surfaces.QuadratureMap` instances:
their first and second derivatives are closed-form in the profile jets
(so downstream curvature computations carry no quadrature error, and no
integral is ever evaluated inside another integrand) while their values
come from memoized adaptive quadrature on demand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .calculus import DEFAULT_TOL, integrate
from .expr import DomainError, Jet2
from .surfaces import (
    HelicoidalSurface,
    ProfileCurve,
    QuadratureMap,
    RotationalSurface,
    ScalarMap,
    constant_map,
    map_derivatives,
    scalar_map,
)

_NECK_SAMPLES = 64


@dataclass(frozen=True)
class BourImage(RotationalSurface):
    """Rotational surface produced by the isometry; remembers its source."""

    source: HelicoidalSurface = None

    @property
    def pitch(self) -> float:
        return self.source.pitch


def _default_anchor(domain: tuple[float, float], u0: float | None) -> float:
    if u0 is None:
        return 0.5 * (domain[0] + domain[1])
    lo, hi = domain
    if not (lo <= u0 <= hi):
        raise ValueError(f"anchor u0={u0} outside domain [{lo}, {hi}]")
    return float(u0)


def _radius_map(zeta: ScalarMap, a: float) -> ScalarMap:
    def radius(u: float) -> Jet2:
        z = zeta(u)
        s = z.value * z.value + a * a
        k = math.sqrt(s)
        kd = z.value * z.d1 / k
        kdd = (z.d1 * z.d1 + z.value * z.d2) / k - (z.value * z.d1) ** 2 / k ** 3
        return Jet2(k, kd, kdd)

    return radius


def _twist_slope(zeta: ScalarMap, phi: ScalarMap, a: float):
    def slope(u: float) -> tuple[float, float]:
        z = zeta(u)
        fd, fdd = map_derivatives(phi, u)
        s = z.value * z.value + a * a
        d1 = a * fd / s
        d2 = a * fdd / s - 2.0 * a * fd * z.value * z.d1 / (s * s)
        return d1, d2

    return slope


def _height_slope(zeta: ScalarMap, phi: ScalarMap, a: float):
    def slope(u: float) -> tuple[float, float]:
        z = zeta(u)
        fd, fdd = map_derivatives(phi, u)
        s = z.value * z.value + a * a
        w = (a * z.d1) ** 2 + (z.value * fd) ** 2
        if w <= 0.0:
            raise DomainError(
                f"singular profile point at u={u}: a zeta' and zeta phi' both vanish")
        val = math.sqrt(w / s)
        wd = (2.0 * a * a * z.d1 * z.d2
              + 2.0 * z.value * z.d1 * fd * fd
              + 2.0 * z.value * z.value * fd * fdd)
        d1 = (wd * s - 2.0 * z.value * z.d1 * w) / (2.0 * s * s * val)
        return val, d1

    return slope


def bour_image(surface: HelicoidalSurface, u0: float | None = None,
               tol: float = DEFAULT_TOL) -> BourImage:
    """Construct the isometric rotational image, anchored so that
    twist(u0) = height(u0) = 0."""
    profile = surface.profile
    a = surface.pitch
    u0 = _default_anchor(profile.domain, u0)
    zeta, phi = profile.zeta, profile.phi
    return BourImage(
        radius=_radius_map(zeta, a),
        height=QuadratureMap(_height_slope(zeta, phi, a), u0, tol),
        domain=profile.domain,
        twist=QuadratureMap(_twist_slope(zeta, phi, a), u0, tol),
        source=surface,
    )


def natural_parameters(surface: HelicoidalSurface, u: float, v: float,
                       u0: float | None = None,
                       tol: float = DEFAULT_TOL) -> tuple[float, float]:
    """Coordinates (ubar, vbar) in which the metric reads
    d ubar^2 + k(ubar)^2 d vbar^2: ubar is the arc-length-like integral of
    sqrt(zeta'^2 + zeta^2 phi'^2/(zeta^2+a^2)) anchored at u0, and
    vbar = v + twist(u)."""
    profile = surface.profile
    a = surface.pitch
    u0 = _default_anchor(profile.domain, u0)
    zeta, phi = profile.zeta, profile.phi

    def stretch(t: float) -> float:
        z = zeta(t)
        fd, _ = map_derivatives(phi, t)
        return math.sqrt(z.d1 * z.d1
                         + z.value * z.value * fd * fd / (z.value * z.value + a * a))

    twist_slope = _twist_slope(zeta, phi, a)
    ubar = integrate(stretch, u0, u, tol).value
    vbar = v + integrate(lambda t: twist_slope(t)[0], u0, u, tol).value
    return ubar, vbar


def catenoid_profile(b: float, uR: float) -> float:
    """Height of the catenoid with waist radius b at radial distance uR:
    b*acosh(uR/b), zero at the waist."""
    if b <= 0.0:
        raise ValueError("waist radius b must be positive")
    if uR < b:
        raise DomainError(f"radial distance {uR} inside the catenoid waist {b}")
    if uR == b:
        return 0.0
    return b * math.acosh(uR / b)


def _check_neck(zeta: ScalarMap, a: float, b: float,
                domain: tuple[float, float]) -> None:
    lo, hi = domain
    worst_u, worst = lo, math.inf
    for i in range(_NECK_SAMPLES + 1):
        u = lo + (hi - lo) * i / _NECK_SAMPLES
        margin = zeta(u).value ** 2 + a * a - b * b
        if margin < worst:
            worst_u, worst = u, margin
    if worst <= 0.0:
        raise DomainError(
            f"zeta^2 + a^2 must exceed b^2 on the domain; violated at u={worst_u}"
            f" (margin {worst})")


def same_gauss_profile(zeta: Union[str, ScalarMap], a: float, b: float,
                       domain: tuple[float, float], u0: float | None = None,
                       tol: float = DEFAULT_TOL) -> ProfileCurve:
    """Profile (zeta, phi) whose helicoidal surface of pitch a shares its
    Gauss map with its own rotational image (which is then a catenoid of
    waist b).  The height slope is

        phi' = sqrt(b^2-a^2) sqrt(zeta^2+a^2) zeta' / (zeta sqrt(zeta^2+a^2-b^2))

    integrated from u0; b = a degenerates to phi = 0, the right helicoid.
    Requires b >= a > 0 and zeta^2 + a^2 > b^2 throughout the domain.
    """
    zeta = scalar_map(zeta)
    if a <= 0.0:
        raise ValueError("pitch a must be positive")
    if b < a:
        raise DomainError(f"b={b} < a={a}: sqrt(b^2-a^2) would be imaginary")
    domain = (float(domain[0]), float(domain[1]))
    u0 = _default_anchor(domain, u0)
    if abs(b - a) < 1e-12 * max(1.0, a):
        return ProfileCurve(zeta, constant_map(0.0), domain)
    _check_neck(zeta, a, b, domain)
    r = math.sqrt(b * b - a * a)

    def slope(u: float) -> tuple[float, float]:
        z = zeta(u)
        s = z.value * z.value + a * a
        q = s - b * b
        if q <= 0.0:
            raise DomainError(f"zeta^2 + a^2 - b^2 <= 0 at u={u}")
        sq_s, sq_q = math.sqrt(s), math.sqrt(q)
        num = sq_s * z.d1
        den = z.value * sq_q
        numd = z.value * z.d1 * z.d1 / sq_s + sq_s * z.d2
        dend = z.d1 * sq_q + z.value * z.value * z.d1 / sq_q
        val = r * num / den
        d1 = r * (numd * den - num * dend) / (den * den)
        return val, d1

    return ProfileCurve(zeta, QuadratureMap(slope, u0, tol), domain)


def same_gauss_pair(zeta: Union[str, ScalarMap], a: float, b: float,
                    domain: tuple[float, float], u0: float | None = None,
                    tol: float = DEFAULT_TOL
                    ) -> tuple[HelicoidalSurface, RotationalSurface]:
    """The matched pair of Gauss-map-sharing surfaces.

    The rotational member is the Bour image of the helicoidal one with its
    free twist constant fixed to atan2(a zeta', zeta phi') at u0 -- the
    unique rotation for which the two unit normal fields coincide
    pointwise (for b = a this is the classical helicoid/catenoid pair and
    the constant is pi/2).
    """
    profile = same_gauss_profile(zeta, a, b, domain, u0, tol)
    u0 = _default_anchor(domain, u0)
    surface = HelicoidalSurface(profile, a)
    image = bour_image(surface, u0, tol)
    z0 = profile.zeta(u0)
    fd0, _ = map_derivatives(profile.phi, u0)
    phase = math.atan2(a * z0.d1, z0.value * fd0)

    base_twist = image.twist
    if isinstance(base_twist, QuadratureMap):
        twist = base_twist.shifted(phase)
    else:  # pragma: no cover - bour_image always builds a QuadratureMap
        twist = lambda u: Jet2(base_twist(u).value + phase,
                               base_twist(u).d1, base_twist(u).d2)

    rotated = RotationalSurface(radius=image.radius, height=image.height,
                                domain=domain, twist=twist)
    return surface, rotated
