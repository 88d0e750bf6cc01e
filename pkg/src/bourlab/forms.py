"""Fundamental forms, Gauss map, and curvatures.

Conventions: the normal is n = x_u x x_v / |x_u x x_v|; for a helicoidal
surface this is

    ( a z' sin v - z f' cos v,  -a z' cos v - z f' sin v,  z z' ) / sqrt(det I)

writing z = zeta(u), f = phi(u).  The third-form coefficients (X, Y, Z)
are kept in the un-normalized shape

    X = E M^2 - 2 F L M + G L^2
    Y = E M N - F L N + G L M - F M^2
    Z = G M^2 - 2 F N M + E N^2

so that the right helicoid and catenoid share (a^2/(u^2+a^2), 0, a^2);
the actual Gram matrix of the Gauss-map differential, <n_i, n_j>, is this
triple divided by det I (verified against finite differences of n in the
test suite).  The combination used by the third-form Laplacian consumes
the un-normalized triple.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .surfaces import ProfileCurve, SurfaceJet

DEGENERACY_FACTOR = 1e-14


class DegenerateSurfaceError(ArithmeticError):
    """det I vanished (the parametrization is not an immersion there)."""


@dataclass(frozen=True)
class FirstForm:
    E: float
    F: float
    G: float

    @property
    def det(self) -> float:
        return self.E * self.G - self.F * self.F

    @property
    def is_degenerate(self) -> bool:
        return self.det <= DEGENERACY_FACTOR * (self.E + self.G) ** 2


@dataclass(frozen=True)
class SecondForm:
    L: float
    M: float
    N: float

    @property
    def det(self) -> float:
        return self.L * self.N - self.M * self.M


@dataclass(frozen=True)
class ThirdForm:
    X: float
    Y: float
    Z: float


def first_form(j: SurfaceJet) -> FirstForm:
    return FirstForm(
        E=float(np.dot(j.xu, j.xu)),
        F=float(np.dot(j.xu, j.xv)),
        G=float(np.dot(j.xv, j.xv)),
    )


def _cross(j: SurfaceJet) -> np.ndarray:
    return np.cross(j.xu, j.xv)


def gauss_map(j: SurfaceJet) -> np.ndarray:
    """Unit normal n = x_u x x_v / |x_u x x_v|."""
    c = _cross(j)
    n2 = float(np.dot(c, c))  # equals det I by the Lagrange identity
    I = first_form(j)
    if I.is_degenerate or n2 <= 0.0:
        raise DegenerateSurfaceError("degenerate tangent plane: |x_u x x_v| ~ 0")
    return c / math.sqrt(n2)


def second_form(j: SurfaceJet) -> SecondForm:
    n = gauss_map(j)
    return SecondForm(
        L=float(np.dot(j.xuu, n)),
        M=float(np.dot(j.xuv, n)),
        N=float(np.dot(j.xvv, n)),
    )


def third_form(I: FirstForm, II: SecondForm) -> ThirdForm:
    E, F, G = I.E, I.F, I.G
    L, M, N = II.L, II.M, II.N
    return ThirdForm(
        X=E * M * M - 2.0 * F * L * M + G * L * L,
        Y=E * M * N - F * L * N + G * L * M - F * M * M,
        Z=G * M * M - 2.0 * F * N * M + E * N * N,
    )


def gaussian_curvature(I: FirstForm, II: SecondForm) -> float:
    if I.is_degenerate:
        raise DegenerateSurfaceError("metric is degenerate")
    return II.det / I.det


def mean_curvature(I: FirstForm, II: SecondForm) -> float:
    if I.is_degenerate:
        raise DegenerateSurfaceError("metric is degenerate")
    return (I.E * II.N - 2.0 * I.F * II.M + I.G * II.L) / (2.0 * I.det)


def _profile_jets(p: ProfileCurve, u: float):
    return p.zeta(u), p.phi(u)


def metric_det(p: ProfileCurve, a: float, u: float) -> float:
    """det I = (zeta^2 + a^2) zeta'^2 + zeta^2 phi'^2 of the helicoidal
    surface, straight from the profile jets."""
    z, f = _profile_jets(p, u)
    return (z.value ** 2 + a * a) * z.d1 ** 2 + z.value ** 2 * f.d1 ** 2


def gaussian_curvature_closed(p: ProfileCurve, a: float, u: float) -> float:
    """Gaussian curvature of the helicoidal surface from the profile alone:

        K = (z^3 z' f' f'' - z^3 z'' f'^2 - a^2 z'^4) / (det I)^2.

    Agrees with gaussian_curvature() on the evaluated jets to round-off,
    and reduces to the classical surface-of-revolution expression
    f'(z' f'' - z'' f') / (z (z'^2 + f'^2)^2) as a -> 0.
    """
    z, f = _profile_jets(p, u)
    den = (z.value ** 2 + a * a) * z.d1 ** 2 + z.value ** 2 * f.d1 ** 2
    if den <= 0.0:
        raise DegenerateSurfaceError(f"metric determinant vanishes at u={u}")
    num = (z.value ** 3 * z.d1 * f.d1 * f.d2
           - z.value ** 3 * z.d2 * f.d1 ** 2
           - a * a * z.d1 ** 4)
    return num / (den * den)


def phi_functional(p: ProfileCurve, a: float, u: float) -> float:
    """The minimality functional of the helicoidal surface,

        Phi = (z^2 z'^2 - z^3 z'' - a^2 z z'' + 2 a^2 z'^2) f'
              + z^2 f'^3 + (z^3 z' + a^2 z z') f'',

    which satisfies Phi = 2 H (det I)^(3/2); the surface is minimal at u
    exactly when Phi(u) = 0.
    """
    z, f = _profile_jets(p, u)
    zv, zd, zdd = z.value, z.d1, z.d2
    fd, fdd = f.d1, f.d2
    return ((zv * zv * zd * zd - zv ** 3 * zdd - a * a * zv * zdd
             + 2.0 * a * a * zd * zd) * fd
            + zv * zv * fd ** 3
            + (zv ** 3 * zd + a * a * zv * zd) * fdd)


def mean_curvature_rotational(p: ProfileCurve, a: float, u: float) -> float:
    """Mean curvature of the rotational surface isometric to the
    helicoidal surface over (zeta, phi) with the given pitch:

        H_R = z^2 f' Phi / (2 sqrt(z^2+a^2) sqrt((a z')^2 + (z f')^2) (det I)^(3/2)).

    Matches mean_curvature() on the jets of the isometric rotational
    image; in particular H_R = 0 exactly when Phi = 0.
    """
    z, f = _profile_jets(p, u)
    s = z.value ** 2 + a * a
    w2 = (a * z.d1) ** 2 + (z.value * f.d1) ** 2
    if w2 <= 0.0:
        raise DegenerateSurfaceError(
            f"rotational image is singular at u={u} (a z' and z f' both vanish)")
    det = s * z.d1 ** 2 + z.value ** 2 * f.d1 ** 2
    if det <= 0.0:
        raise DegenerateSurfaceError(f"metric determinant vanishes at u={u}")
    return (z.value ** 2 * f.d1 * phi_functional(p, a, u)
            / (2.0 * math.sqrt(s) * math.sqrt(w2) * det ** 1.5))
