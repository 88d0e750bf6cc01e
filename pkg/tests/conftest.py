"""Shared fixtures: a reproducible corpus of random polynomial profiles.

Each corpus entry is a helicoidal surface over polynomial zeta/phi of
degree <= 4 with coefficients in [-2, 2], restricted to a domain window
where the immersion is comfortably regular (zeta bounded away from 0,
metric determinant bounded below, curvatures of moderate size) so that
absolute tolerances in the 1e-9 range are meaningful.
"""

from __future__ import annotations

import random

import pytest

from bourlab.surfaces import HelicoidalSurface, ProfileCurve

SCAN_POINTS = 801
MIN_WINDOW = 0.5


def poly_text(coeffs) -> str:
    terms = []
    for k, c in enumerate(coeffs):
        if k == 0:
            terms.append(f"({c!r})")
        elif k == 1:
            terms.append(f"({c!r})*u")
        else:
            terms.append(f"({c!r})*u^{k}")
    return "+".join(terms)


def _poly_eval(coeffs, u):
    val = d1 = d2 = 0.0
    for k, c in enumerate(coeffs):
        val += c * u**k
        if k >= 1:
            d1 += k * c * u ** (k - 1)
        if k >= 2:
            d2 += k * (k - 1) * c * u ** (k - 2)
    return val, d1, d2


def _point_ok(zc, pc, a, u) -> bool:
    z, zd, zdd = _poly_eval(zc, u)
    f, fd, fdd = _poly_eval(pc, u)
    if not (0.2 <= abs(z) <= 5.0):
        return False
    if max(abs(zd), abs(fd)) > 10.0 or max(abs(zdd), abs(fdd)) > 10.0:
        return False
    s = z * z + a * a
    det = s * zd * zd + z * z * fd * fd
    if not (0.5 <= det <= 1e4):
        return False
    if (a * zd) ** 2 + (z * fd) ** 2 < 1e-4:
        return False
    num_k = z**3 * zd * fd * fdd - z**3 * zdd * fd * fd - a * a * zd**4
    if abs(num_k / (det * det)) > 100.0:
        return False
    phi_fn = ((z * z * zd * zd - z**3 * zdd - a * a * z * zdd
               + 2 * a * a * zd * zd) * fd
              + z * z * fd**3 + (z**3 * zd + a * a * z * zd) * fdd)
    if abs(phi_fn / (2.0 * det**1.5)) > 100.0:  # mean curvature bound
        return False
    return True


def _find_window(zc, pc, a):
    lo, hi = -2.0, 2.0
    us = [lo + (hi - lo) * i / (SCAN_POINTS - 1) for i in range(SCAN_POINTS)]
    ok = [_point_ok(zc, pc, a, u) for u in us]
    best = None
    start = None
    for i, flag in enumerate(ok + [False]):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            length = us[i - 1] - us[start]
            if best is None or length > best[2]:
                best = (us[start], us[i - 1], length)
            start = None
    if best is None or best[2] < MIN_WINDOW:
        return None
    lo_w, hi_w, length = best
    margin = 0.05 * length
    return (lo_w + margin, hi_w - margin)


def random_profile_surfaces(n: int, seed: int = 20260809) -> list[HelicoidalSurface]:
    rng = random.Random(seed)
    out = []
    attempts = 0
    while len(out) < n:
        attempts += 1
        if attempts > 120 * n:
            raise RuntimeError("corpus generation failed to find enough windows")
        dz = rng.randint(1, 4)
        dp = rng.randint(0, 4)
        zc = [rng.uniform(-2.0, 2.0) for _ in range(dz + 1)]
        pc = [rng.uniform(-2.0, 2.0) for _ in range(dp + 1)]
        a = rng.uniform(0.5, 2.0)
        window = _find_window(zc, pc, a)
        if window is None:
            continue
        profile = ProfileCurve.from_expressions(poly_text(zc), poly_text(pc), window)
        out.append(HelicoidalSurface(profile, a))
    return out


@pytest.fixture(scope="session")
def corpus() -> list[HelicoidalSurface]:
    """20 random polynomial helicoidal surfaces, fixed seed."""
    return random_profile_surfaces(20)


@pytest.fixture(scope="session")
def small_corpus(corpus) -> list[HelicoidalSurface]:
    return corpus[:5]
