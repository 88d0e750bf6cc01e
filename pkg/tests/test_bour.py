import math

import numpy as np
import pytest

from bourlab.bour import (
    bour_image,
    catenoid_profile,
    natural_parameters,
    same_gauss_pair,
    same_gauss_profile,
)
from bourlab.calculus import central_derivative
from bourlab.expr import DomainError
from bourlab.forms import first_form, gauss_map, gaussian_curvature, phi_functional, second_form
from bourlab.surfaces import quadratic_cubic_helicoid, right_helicoid

LOG_1_SQRT2 = math.log(1.0 + math.sqrt(2.0))


class TestBourImage:
    @pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
    def test_right_helicoid_maps_to_catenoid(self, a):
        H = right_helicoid(a, (0.5, 2.0))
        img = bour_image(H, u0=1.0)
        for u in (0.5, 0.8, 1.0, 1.6, 2.0):
            assert img.radius(u).value == pytest.approx(
                math.sqrt(u * u + a * a), rel=1e-14)
            assert abs(img.twist(u).value) <= 1e-12
            want = a * math.log(u + math.sqrt(u * u + a * a)) \
                - a * math.log(1.0 + math.sqrt(1.0 + a * a))
            assert img.height(u).value == pytest.approx(want, abs=1e-8)

    def test_anchor_values_exact_zero(self):
        img = bour_image(quadratic_cubic_helicoid(1.0), u0=1.0)
        assert img.twist(1.0).value == 0.0
        assert img.height(1.0).value == 0.0

    def test_quadratic_cubic_height_integrand(self):
        # height slope must be sqrt((4u^2 + 9u^8)/(u^4 + 1)) for pitch 1
        img = bour_image(quadratic_cubic_helicoid(1.0))
        for u in (0.6, 1.0, 1.4):
            want = math.sqrt((4 * u**2 + 9 * u**8) / (u**4 + 1))
            assert img.height(u).d1 == pytest.approx(want, rel=1e-13)

    def test_radius_at_least_pitch(self):
        img = bour_image(quadratic_cubic_helicoid(1.3))
        for u in (0.5, 0.9, 1.5):
            assert img.radius(u).value >= 1.3

    def test_twist_monotone_for_positive_slope(self):
        # a phi' = 3u^2 > 0, so the angular offset increases with u;
        # the height integrand is a square root, so height rises as well
        img = bour_image(quadratic_cubic_helicoid(1.0), u0=0.5)
        us = np.linspace(0.5, 1.5, 9)
        twists = [img.twist(float(u)).value for u in us]
        heights = [img.height(float(u)).value for u in us]
        assert all(b > a for a, b in zip(twists, twists[1:]))
        assert all(b > a for a, b in zip(heights, heights[1:]))

    def test_anchor_outside_domain_rejected(self):
        with pytest.raises(ValueError):
            bour_image(quadratic_cubic_helicoid(1.0), u0=7.0)


class TestIsometry:
    def test_right_helicoid_first_forms_exact(self):
        H = right_helicoid(1.0)
        img = bour_image(H)
        for (u, v) in [(0.5, 0.0), (1.1, 2.0), (2.0, 5.0)]:
            a = first_form(H.jet(u, v))
            b = first_form(img.jet(u, v))
            assert (a.E, a.F, a.G) == pytest.approx((b.E, b.F, b.G), abs=1e-12)

    def test_corpus_isometry_and_curvature(self, small_corpus):
        for H in small_corpus:
            img = bour_image(H)
            lo, hi = H.domain
            for u in np.linspace(lo, hi, 8):
                for v in np.linspace(0.0, 2.0 * math.pi, 8, endpoint=False):
                    ja = H.jet(float(u), float(v))
                    jb = img.jet(float(u), float(v))
                    Ia, Ib = first_form(ja), first_form(jb)
                    assert max(abs(Ia.E - Ib.E), abs(Ia.F - Ib.F),
                               abs(Ia.G - Ib.G)) <= 1e-7
                    Ka = gaussian_curvature(Ia, second_form(ja))
                    Kb = gaussian_curvature(Ib, second_form(jb))
                    assert abs(Ka - Kb) <= 1e-6


class TestNaturalParameters:
    def test_right_helicoid(self):
        H = right_helicoid(1.0)
        ubar, vbar = natural_parameters(H, 1.7, 0.9, u0=1.0)
        assert ubar == pytest.approx(0.7, abs=1e-12)
        assert vbar == pytest.approx(0.9, abs=1e-12)

    @pytest.mark.parametrize("u,v", [(0.8, 0.5), (1.2, 3.0)])
    def test_pullback_metric(self, u, v):
        # finite-difference Jacobian of (ubar, vbar) pulls d ubar^2 + k^2 d vbar^2
        # back to the helicoidal first form
        H = quadratic_cubic_helicoid(1.0)
        img = bour_image(H, u0=1.0)

        def nat(uu, vv):
            return np.array(natural_parameters(H, uu, vv, u0=1.0))

        J_u = central_derivative(lambda t: nat(t, v), u, 1e-4)
        J_v = central_derivative(lambda t: nat(u, t), v, 1e-4)
        k2 = img.radius(u).value ** 2
        g = np.diag([1.0, k2])
        J = np.column_stack([J_u, J_v])
        pullback = J.T @ g @ J
        I = first_form(H.jet(u, v))
        np.testing.assert_allclose(
            pullback, [[I.E, I.F], [I.F, I.G]], rtol=1e-6, atol=1e-6)


class TestCatenoidProfile:
    def test_waist(self):
        assert catenoid_profile(2.0, 2.0) == 0.0

    def test_sqrt2(self):
        assert catenoid_profile(1.0, math.sqrt(2.0)) == pytest.approx(
            LOG_1_SQRT2, rel=1e-14)

    def test_inverse_identity(self):
        assert catenoid_profile(1.0, math.cosh(1.0)) == pytest.approx(1.0,
                                                                      rel=1e-14)

    def test_inside_waist_rejected(self):
        with pytest.raises(DomainError):
            catenoid_profile(1.0, 0.9)

    def test_bad_waist(self):
        with pytest.raises(ValueError):
            catenoid_profile(0.0, 1.0)


class TestSameGauss:
    def test_equal_constants_give_right_helicoid(self):
        p = same_gauss_profile("u", 1.0, 1.0, (0.5, 2.0))
        for u in (0.5, 1.1, 2.0):
            j = p.phi(u)
            assert (j.value, j.d1, j.d2) == (0.0, 0.0, 0.0)

    def test_slope_value(self):
        # zeta=u, a=1, b=sqrt(2) at u=sqrt(2): sqrt(1)*sqrt(3)*1/(sqrt(2)*1)
        p = same_gauss_profile("u", 1.0, math.sqrt(2.0), (1.1, 2.5))
        assert p.phi(math.sqrt(2.0)).d1 == pytest.approx(math.sqrt(1.5),
                                                         rel=1e-12)

    def test_neck_constraint_rejected(self):
        with pytest.raises(DomainError):
            same_gauss_profile("u", 1.0, 2.0, (1.0, 1.5))

    def test_b_below_a_rejected(self):
        with pytest.raises(DomainError):
            same_gauss_profile("u", 1.0, 0.5, (1.1, 2.5))

    def test_pair_shares_gauss_map(self):
        H, R = same_gauss_pair("u", 1.0, math.sqrt(2.0), (1.1, 2.5))
        worst = 0.0
        for u in np.linspace(1.1, 2.5, 10):
            for v in np.linspace(0.0, 2.0 * math.pi, 10, endpoint=False):
                na = gauss_map(H.jet(float(u), float(v)))
                nb = gauss_map(R.jet(float(u), float(v)))
                worst = max(worst, float(np.max(np.abs(na - nb))))
        assert worst <= 1e-6

    def test_pair_is_minimal(self):
        H, _ = same_gauss_pair("u", 1.0, 1.5, (1.2, 2.5))
        for u in np.linspace(1.2, 2.5, 15):
            assert abs(phi_functional(H.profile, 1.0, float(u))) <= 1e-7

    def test_image_height_is_catenoid(self):
        a, b = 1.0, math.sqrt(2.0)
        H, _ = same_gauss_pair("u", a, b, (1.1, 2.5))
        img = bour_image(H)
        us = np.linspace(1.1, 2.5, 12)
        deltas = [img.height(float(u)).value
                  - catenoid_profile(b, math.sqrt(u * u + a * a)) for u in us]
        assert max(deltas) - min(deltas) <= 1e-6

    def test_zero_pitch_not_constructible(self):
        with pytest.raises(ValueError):
            same_gauss_profile("u", 0.0, 1.0, (1.1, 2.5))
