import math
from concurrent.futures import ThreadPoolExecutor

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bourlab.calculus import (
    NonConvergenceError,
    NonFiniteSampleError,
    central_derivative,
    cumulative,
    integrate,
)

# closed-form antiderivative of 1/sqrt(u^2+1) is log(u+sqrt(u^2+1))
LOG_1_SQRT2 = math.log(1.0 + math.sqrt(2.0))


class TestIntegrate:
    def test_linear(self):
        r = integrate(lambda u: u, 0.0, 1.0, 1e-10)
        assert r.value == pytest.approx(0.5, abs=1e-14)

    def test_cubic_exact(self):
        # Simpson is exact through cubics: [u^4/4 - u^2 + u] from -1 to 2
        r = integrate(lambda u: u**3 - 2 * u + 1, -1.0, 2.0, 1e-10)
        assert r.value == pytest.approx(15.0 / 4.0, abs=1e-13)

    def test_inverse_sqrt_shifted(self):
        r = integrate(lambda u: 1.0 / math.sqrt(u * u + 1.0), 0.0, 1.0, 1e-10)
        assert r.value == pytest.approx(LOG_1_SQRT2, abs=1e-10)

    def test_empty_interval_exact_zero(self):
        r = integrate(math.exp, 2.0, 2.0, 1e-10)
        assert r.value == 0.0
        assert r.subdivisions == 0

    def test_orientation_antisymmetry(self):
        f = lambda u: math.sin(u) + u * u
        fwd = integrate(f, 0.3, 2.1, 1e-10)
        back = integrate(f, 2.1, 0.3, 1e-10)
        assert fwd.value == -back.value

    def test_error_estimate_within_budget(self):
        r = integrate(lambda u: math.exp(-u * u), 0.0, 3.0, 1e-10)
        assert r.error_estimate <= max(1e-10, 1e-10 * abs(r.value))
        assert r.value == pytest.approx(math.sqrt(math.pi) / 2 * math.erf(3.0),
                                        abs=1e-10)

    def test_relative_tolerance_on_large_values(self):
        r = integrate(lambda u: 1e8 * math.cos(u), 0.0, 1.0, 1e-12)
        assert r.value == pytest.approx(1e8 * math.sin(1.0), rel=1e-11)

    def test_non_finite_sample(self):
        f = lambda u: 1.0 / u if u != 0.0 else math.inf
        with pytest.raises(NonFiniteSampleError):
            integrate(f, 0.0, 1.0, 1e-10)

    def test_non_convergence_on_jump(self):
        f = lambda u: 0.0 if u < 1.0 / math.pi else 1.0
        with pytest.raises(NonConvergenceError):
            integrate(f, 0.0, 1.0, 1e-13)

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            integrate(lambda u: u, 0.0, 1.0, 0.0)


@given(st.floats(min_value=-2.0, max_value=2.0),
       st.floats(min_value=-2.0, max_value=2.0))
@settings(max_examples=40)
def test_cumulative_difference_matches_integral(a, b):
    tol = 1e-10
    f = lambda u: math.cos(u) + 0.5 * u
    F = cumulative(f, 0.3, tol)
    direct = integrate(f, a, b, tol).value
    assert F(b) - F(a) == pytest.approx(direct, abs=2 * tol)


class TestCumulative:
    def test_anchor_is_zero(self):
        F = cumulative(lambda u: u * u, 1.5, 1e-10)
        assert F(1.5) == 0.0

    def test_constant_one(self):
        F = cumulative(lambda u: 1.0, 0.0, 1e-10)
        assert F(3.0) == pytest.approx(3.0, abs=1e-12)

    def test_quadratic(self):
        F = cumulative(lambda u: 3.0 * u * u, 1.0, 1e-10)
        assert F(2.0) == pytest.approx(7.0, abs=1e-10)

    def test_catenoid_height_slope(self):
        F = cumulative(lambda u: 1.0 / math.sqrt(u * u + 1.0), 0.0, 1e-10)
        assert F(1.0) == pytest.approx(LOG_1_SQRT2, abs=1e-9)

    def test_repeat_calls_identical(self):
        F = cumulative(math.sin, 0.0, 1e-10)
        first = F(2.0)
        assert F(2.0) == first  # exact float equality via the memo

    def test_thread_safety(self):
        tol = 1e-10
        us = [0.1 * k for k in range(-30, 31)]
        ref = cumulative(lambda u: math.exp(-u * u), 0.0, tol)
        expected = {u: ref(u) for u in sorted(us)}
        shared = cumulative(lambda u: math.exp(-u * u), 0.0, tol)
        order = list(us)
        import random
        random.Random(7).shuffle(order)
        with ThreadPoolExecutor(max_workers=8) as pool:
            got = dict(zip(order, pool.map(shared, order)))
        for u in us:
            assert got[u] == pytest.approx(expected[u], abs=4 * tol)

    def test_propagates_integrand_failure(self):
        F = cumulative(lambda u: 1.0 / u if u != 0.0 else math.nan, 1.0, 1e-10)
        with pytest.raises(NonFiniteSampleError):
            F(-1.0)


class TestCentralDerivative:
    def test_square(self):
        assert central_derivative(lambda x: x * x, 3.0, 1e-3) == pytest.approx(
            6.0, abs=1e-9)

    def test_constant(self):
        assert central_derivative(lambda x: 4.25, 0.7) == pytest.approx(0.0,
                                                                        abs=1e-12)

    def test_sin_at_zero(self):
        assert central_derivative(math.sin, 0.0) == pytest.approx(1.0, abs=1e-9)

    def test_default_step_scales_with_x(self):
        # smooth but fast-growing; default step must stay accurate
        assert central_derivative(lambda x: x**3, 100.0) == pytest.approx(
            3e4, rel=1e-9)

    def test_non_finite(self):
        with pytest.raises(NonFiniteSampleError):
            central_derivative(lambda x: math.inf, 1.0, 1e-3)

    def test_vector_valued(self):
        import numpy as np

        g = lambda x: np.array([x * x, math.sin(x)])
        d = central_derivative(g, 0.5, 1e-3)
        assert d[0] == pytest.approx(1.0, abs=1e-10)
        assert d[1] == pytest.approx(math.cos(0.5), abs=1e-10)
