"""Theorem-level checkers and independent curvature oracles.

The checkers compare quantities computed through unrelated code paths
(jets of the two isometric surfaces, intrinsic Brioschi curvature from
the metric alone, shape-operator eigenvalues straight from a jet) and
report the worst deviation over a parameter grid.  Normal-field
comparison reconciles one overall sign, chosen at the first grid point;
everything else is compared as-is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .bour import bour_image
from .calculus import DEFAULT_TOL
from .forms import (
    DegenerateSurfaceError,
    FirstForm,
    first_form,
    gauss_map,
    gaussian_curvature,
    gaussian_curvature_closed,
    second_form,
)
from .surfaces import HelicoidalSurface, RotationalSurface, Surface, SurfaceJet

TWO_PI = 2.0 * math.pi


@dataclass
class CheckReport:
    name: str
    points_checked: int
    max_abs_error: float
    tolerance: float
    passed: bool
    worst_point: tuple[float, float]

    @staticmethod
    def from_errors(name: str, errors, points, tolerance: float) -> "CheckReport":
        worst_i = max(range(len(errors)), key=lambda i: errors[i])
        worst = errors[worst_i]
        return CheckReport(name=name, points_checked=len(errors),
                           max_abs_error=worst, tolerance=tolerance,
                           passed=worst <= tolerance,
                           worst_point=points[worst_i])


def tensor_grid(domain: tuple[float, float], nu: int = 20, nv: int = 20
                ) -> list[tuple[float, float]]:
    """nu u-values inclusive of both endpoints, nv v-values over [0, 2*pi)."""
    if nu < 2 or nv < 2:
        raise ValueError("grid needs nu, nv >= 2")
    lo, hi = domain
    us = [lo + (hi - lo) * i / (nu - 1) for i in range(nu)]
    vs = [TWO_PI * j / nv for j in range(nv)]
    return [(u, v) for u in us for v in vs]


def check_isometry(surface: HelicoidalSurface,
                   grid: Sequence[tuple[float, float]] | None = None,
                   tol: float = 1e-7, u0: float | None = None,
                   quad_tol: float = DEFAULT_TOL) -> CheckReport:
    """First fundamental forms of the surface and of its rotational image
    must agree componentwise at identical (u, v)."""
    grid = tensor_grid(surface.domain) if grid is None else list(grid)
    image = bour_image(surface, u0, quad_tol)
    errors = []
    for (u, v) in grid:
        a = first_form(surface.jet(u, v))
        b = first_form(image.jet(u, v))
        errors.append(max(abs(a.E - b.E), abs(a.F - b.F), abs(a.G - b.G)))
    return CheckReport.from_errors("isometry_first_form", errors, grid, tol)


def check_curvature_correspondence(surface: HelicoidalSurface,
                                   grid: Sequence[tuple[float, float]] | None = None,
                                   tol: float = 1e-6, u0: float | None = None,
                                   quad_tol: float = DEFAULT_TOL) -> CheckReport:
    """Gaussian curvatures at corresponding points of the isometric pair,
    each computed from its own jets."""
    grid = tensor_grid(surface.domain) if grid is None else list(grid)
    image = bour_image(surface, u0, quad_tol)
    errors = []
    for (u, v) in grid:
        ja = surface.jet(u, v)
        jb = image.jet(u, v)
        ka = gaussian_curvature(first_form(ja), second_form(ja))
        kb = gaussian_curvature(first_form(jb), second_form(jb))
        errors.append(abs(ka - kb))
    return CheckReport.from_errors("curvature_correspondence", errors, grid, tol)


def check_gauss_map_coincidence(surface: HelicoidalSurface,
                                rotational: RotationalSurface,
                                grid: Sequence[tuple[float, float]] | None = None,
                                tol: float = 1e-6) -> CheckReport:
    """Unit normals at identical (u, v), compared after one global sign
    choice fixed at the first grid point (orientation is a convention;
    per-point sign flips would hide real disagreements)."""
    grid = tensor_grid(surface.domain) if grid is None else list(grid)
    sign = 1.0
    errors = []
    for idx, (u, v) in enumerate(grid):
        na = gauss_map(surface.jet(u, v))
        nb = gauss_map(rotational.jet(u, v))
        if idx == 0:
            same = float(np.max(np.abs(na - nb)))
            flipped = float(np.max(np.abs(na + nb)))
            sign = 1.0 if same <= flipped else -1.0
        errors.append(float(np.max(np.abs(na - sign * nb))))
    return CheckReport.from_errors("gauss_map_coincidence", errors, grid, tol)


def brioschi_curvature(I_field: Callable[[float, float], FirstForm],
                       u: float, v: float, h: float | None = None) -> float:
    """Gaussian curvature from the metric alone via the Brioschi
    determinant formula, with the metric derivatives taken by central
    differences of I_field at steps h and h/2 and one Richardson level.
    Independent of any second-form data.
    """
    base = 1e-3 if h is None else h
    k1 = _brioschi_once(I_field, u, v, base)
    k2 = _brioschi_once(I_field, u, v, 0.5 * base)
    return (4.0 * k2 - k1) / 3.0


def _brioschi_once(I_field, u, v, h):
    hu = h * max(1.0, abs(u))
    hv = h * max(1.0, abs(v))

    def efg(uu, vv):
        f = I_field(uu, vv)
        return np.array([f.E, f.F, f.G])

    c = efg(u, v)
    up, um = efg(u + hu, v), efg(u - hu, v)
    vp, vm = efg(u, v + hv), efg(u, v - hv)
    pp, pm = efg(u + hu, v + hv), efg(u + hu, v - hv)
    mp, mm = efg(u - hu, v + hv), efg(u - hu, v - hv)

    d_u = (up - um) / (2.0 * hu)
    d_v = (vp - vm) / (2.0 * hv)
    d_vv = (vp - 2.0 * c + vm) / (hv * hv)
    d_uu = (up - 2.0 * c + um) / (hu * hu)
    d_uv = (pp - pm - mp + mm) / (4.0 * hu * hv)

    E, F, G = c
    E_u, F_u, G_u = d_u
    E_v, F_v, G_v = d_v
    E_vv, G_uu, F_uv = d_vv[0], d_uu[2], d_uv[1]

    det_i = E * G - F * F
    if det_i <= 0.0:
        raise DegenerateSurfaceError("metric not positive definite")
    m1 = np.array([
        [-0.5 * E_vv + F_uv - 0.5 * G_uu, 0.5 * E_u, F_u - 0.5 * E_v],
        [F_v - 0.5 * G_u, E, F],
        [0.5 * G_v, F, G],
    ])
    m2 = np.array([
        [0.0, 0.5 * E_v, 0.5 * G_u],
        [0.5 * E_v, E, F],
        [0.5 * G_u, F, G],
    ])
    return float((np.linalg.det(m1) - np.linalg.det(m2)) / (det_i * det_i))


def shape_operator_eigen(j: SurfaceJet) -> tuple[float, float]:
    """Principal curvatures: eigenvalues of I^-1 II, computed directly
    from the jet's inner products (no curvature formulas involved).
    Returned in descending order."""
    E = float(np.dot(j.xu, j.xu))
    F = float(np.dot(j.xu, j.xv))
    G = float(np.dot(j.xv, j.xv))
    det_i = E * G - F * F
    if det_i <= 0.0:
        raise DegenerateSurfaceError("metric not positive definite")
    c = np.cross(j.xu, j.xv)
    n = c / math.sqrt(float(np.dot(c, c)))
    L = float(np.dot(j.xuu, n))
    M = float(np.dot(j.xuv, n))
    N = float(np.dot(j.xvv, n))
    # A = I^-1 II
    a11 = (G * L - F * M) / det_i
    a12 = (G * M - F * N) / det_i
    a21 = (E * M - F * L) / det_i
    a22 = (E * N - F * M) / det_i
    tr = a11 + a22
    det = a11 * a22 - a12 * a21
    disc = tr * tr - 4.0 * det
    if disc < 0.0:
        disc = 0.0  # umbilic up to round-off
    root = math.sqrt(disc)
    return (0.5 * (tr + root), 0.5 * (tr - root))


def surface_checks(surface: Surface, grid: Sequence[tuple[float, float]] | None = None,
                   u0: float | None = None, quad_tol: float = DEFAULT_TOL,
                   tolerances: dict[str, float] | None = None) -> list[CheckReport]:
    """The standard battery for a configured surface.

    Helicoidal surfaces get the full isometry/correspondence/minimality
    battery; rotational surfaces the intrinsic and spectral oracles only.
    """
    from .forms import mean_curvature, mean_curvature_rotational, phi_functional

    tols = {
        "isometry_first_form": 1e-7,
        "curvature_correspondence": 1e-6,
        "closed_form_gaussian": 1e-9,
        "minimality_equivalence": 1e-9,
        "rotational_mean_curvature": 1e-7,
        "brioschi_vs_jet": 1e-4,
        "shape_eigen_consistency": 1e-9,
        "normal_orthogonality": 1e-12,
    }
    if tolerances:
        tols.update(tolerances)
    grid = tensor_grid(surface.domain) if grid is None else list(grid)
    reports: list[CheckReport] = []

    def field(uu, vv):
        return first_form(surface.jet(uu, vv))

    helicoidal = isinstance(surface, HelicoidalSurface)
    if helicoidal:
        reports.append(check_isometry(surface, grid, tols["isometry_first_form"],
                                      u0, quad_tol))
        reports.append(check_curvature_correspondence(
            surface, grid, tols["curvature_correspondence"], u0, quad_tol))
        image = bour_image(surface, u0, quad_tol)

    closed_errs = []
    minimality_errs = []
    rot_mean_errs = []
    brioschi_errs = []
    eigen_errs = []
    ortho_errs = []
    for (u, v) in grid:
        j = surface.jet(u, v)
        I = first_form(j)
        II = second_form(j)
        n = gauss_map(j)
        K = gaussian_curvature(I, II)
        H = mean_curvature(I, II)
        ortho_errs.append(max(abs(float(np.dot(n, j.xu))),
                              abs(float(np.dot(n, j.xv)))))
        brioschi_errs.append(abs(brioschi_curvature(field, u, v) - K))
        k1, k2 = shape_operator_eigen(j)
        eigen_errs.append(max(abs(k1 * k2 - K), abs(0.5 * (k1 + k2) - H)))
        if helicoidal:
            p, a = surface.profile, surface.pitch
            closed_errs.append(abs(gaussian_curvature_closed(p, a, u) - K))
            phi = phi_functional(p, a, u)
            minimality_errs.append(abs(2.0 * H * I.det ** 1.5 - phi)
                                   / max(1.0, abs(phi)))
            jr = image.jet(u, v)
            hr = mean_curvature(first_form(jr), second_form(jr))
            rot_mean_errs.append(abs(mean_curvature_rotational(p, a, u) - hr))

    if helicoidal:
        reports.append(CheckReport.from_errors(
            "closed_form_gaussian", closed_errs, grid, tols["closed_form_gaussian"]))
        reports.append(CheckReport.from_errors(
            "minimality_equivalence", minimality_errs, grid,
            tols["minimality_equivalence"]))
        reports.append(CheckReport.from_errors(
            "rotational_mean_curvature", rot_mean_errs, grid,
            tols["rotational_mean_curvature"]))
    reports.append(CheckReport.from_errors(
        "brioschi_vs_jet", brioschi_errs, grid, tols["brioschi_vs_jet"]))
    reports.append(CheckReport.from_errors(
        "shape_eigen_consistency", eigen_errs, grid, tols["shape_eigen_consistency"]))
    reports.append(CheckReport.from_errors(
        "normal_orthogonality", ortho_errs, grid, tols["normal_orthogonality"]))
    return reports
