"""Closed-form field tests: frozen values, identities, and FD oracles."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from bathywave import (
    SolutionParams,
    bathymetry_euler,
    bathymetry_ns,
    bathymetry_slope_euler,
    bathymetry_slope_ns,
    elevation_euler,
    elevation_ns,
    ndim_fields,
    phase,
    phase_nd,
    total_depth,
    velocity,
    viscous_integral,
)

PI = math.pi


def raw_half_angle_form(s, c1):
    """The closed-form antiderivative exactly as printed (branch-local).

    Independent arithmetic path used only to pin the s = 0 anchor value of
    ``viscous_integral``.
    """
    T = math.tan(s / 2.0)
    r2 = c1 * c1 - 1.0
    return (2 * T + 2 * c1) / (r2 * (c1 * T * T + 2 * T + c1)) + 2 * math.atan(
        (c1 * T + 1) / math.sqrt(r2)
    ) * r2**-1.5


def integrand(s, c1):
    return math.cos(s) ** 2 / (c1 + math.sin(s)) ** 3


class TestPhase:
    def test_zero(self):
        assert phase(0.0, 0.0) == 0.0

    def test_quarter_period(self):
        assert phase(PI / 2, 0.0) == PI / 2

    def test_nd_sum(self):
        assert phase_nd([1.0, 2.0], 3.0) == 6.0

    def test_broadcast(self):
        x = np.array([0.0, 1.0, 2.0])
        np.testing.assert_allclose(phase(x, 1.0), x + 1.0)


class TestColumnAndVelocity:
    def test_depth_values(self):
        p = SolutionParams(c1=2.0)
        assert total_depth(0.0, 0.0, p) == 2.0
        assert total_depth(PI / 2, 0.0, p) == pytest.approx(3.0, abs=1e-15)
        p7 = SolutionParams(c1=7.0)
        assert total_depth(0.0, 3 * PI / 2, p7) == pytest.approx(6.0, abs=1e-14)

    def test_velocity_values(self):
        p = SolutionParams(c1=2.0)
        assert velocity(0.0, 0.0, p) == -0.5
        assert velocity(PI / 2, 0.0, p) == pytest.approx(-2.0 / 3.0, abs=1e-15)

    def test_velocity_2d_zero(self):
        p = SolutionParams(c1=2.0, ndim=2)
        fields = ndim_fields(np.zeros((1, 2)), 0.0, p)
        np.testing.assert_allclose(fields.u, 0.0, atol=1e-16)

    def test_positivity(self):
        for c1 in (2.0, 3.0, 5.0, 7.0):
            p = SolutionParams(c1=c1)
            s = np.linspace(-20.0, 20.0, 4001)
            assert np.all(total_depth(s, 0.0, p) >= c1 - 1.0)


class TestParamsValidation:
    @pytest.mark.parametrize("c1", [0.5, 1.0, 1.0 + 1e-10, -3.0])
    def test_c1_rejected(self, c1):
        with pytest.raises(ValueError, match="c1"):
            SolutionParams(c1=c1)

    def test_g_positive(self):
        with pytest.raises(ValueError, match="g"):
            SolutionParams(c1=2.0, g=0.0)

    def test_k_h_nonnegative(self):
        with pytest.raises(ValueError, match="k_h"):
            SolutionParams(c1=2.0, k_h=-0.1)

    def test_ndim_positive_integer(self):
        with pytest.raises(ValueError, match="ndim"):
            SolutionParams(c1=2.0, ndim=0)

    def test_valid_margin(self):
        SolutionParams(c1=1.001)  # close to 1 but above the hard margin


class TestEulerSplit:
    def test_bathymetry_values(self):
        p = SolutionParams(c1=2.0, g=1.0)
        assert bathymetry_euler(0.0, 0.0, p) == 2.125
        assert bathymetry_euler(PI / 2, 0.0, p) == pytest.approx(3 + 1 / 18, abs=1e-14)
        p4 = SolutionParams(c1=4.0, g=1.0)
        assert bathymetry_euler(0.0, 0.0, p4) == 4.03125

    def test_elevation_values(self):
        p = SolutionParams(c1=2.0, g=1.0)
        assert elevation_euler(0.0, 0.0, p) == -0.125
        assert elevation_euler(PI / 2, 0.0, p) == pytest.approx(-1 / 18, abs=1e-15)

    def test_splitting_identity(self):
        p = SolutionParams(c1=3.0, g=2.5)
        s = np.linspace(-10.0, 10.0, 997)
        total = bathymetry_euler(s, 0.0, p) + elevation_euler(s, 0.0, p)
        np.testing.assert_allclose(total, total_depth(s, 0.0, p), rtol=0, atol=1e-12)

    def test_slope_values(self):
        p = SolutionParams(c1=2.0, g=1.0)
        assert bathymetry_slope_euler(0.0, 0.0, p) == 0.875
        assert bathymetry_slope_euler(PI / 2, 0.0, p) == pytest.approx(0.0, abs=1e-15)
        assert bathymetry_slope_euler(PI, 0.0, p) == pytest.approx(-0.875, abs=1e-14)

    def test_slope_matches_fd(self):
        p = SolutionParams(c1=2.0, g=1.0)
        rng = np.random.default_rng(7)
        s = rng.uniform(-15.0, 15.0, 1000)
        eps = 1e-5
        fd = (bathymetry_euler(s + eps, 0.0, p) - bathymetry_euler(s - eps, 0.0, p)) / (
            2 * eps
        )
        np.testing.assert_allclose(fd, bathymetry_slope_euler(s, 0.0, p),
                                   rtol=0, atol=1e-8)

    @pytest.mark.parametrize(
        "fn", [bathymetry_euler, elevation_euler, bathymetry_slope_euler]
    )
    def test_rejects_viscous_params(self, fn):
        with pytest.raises(ValueError, match="k_h"):
            fn(0.0, 0.0, SolutionParams(c1=2.0, k_h=0.3))

    def test_periodicity(self):
        p = SolutionParams(c1=2.0, g=1.0)
        s = np.linspace(0.0, 2 * PI, 301)
        for fn in (total_depth, velocity, bathymetry_euler, elevation_euler):
            np.testing.assert_allclose(
                fn(s, 0.0, p), fn(s + 2 * PI, 0.0, p), rtol=0, atol=1e-12
            )


class TestViscousIntegral:
    @pytest.mark.parametrize("c1", [2.0, 3.0, 5.0, 7.0])
    def test_anchor_matches_half_angle_form(self, c1):
        p = SolutionParams(c1=c1)
        assert viscous_integral(0.0, 0.0, p) == pytest.approx(
            raw_half_angle_form(0.0, c1), abs=1e-14
        )

    def test_anchor_value_c1_2(self):
        # 2/3 + pi * 3^(-5/2), written out independently
        expected = 2.0 / 3.0 + PI / (9.0 * math.sqrt(3.0))
        p = SolutionParams(c1=2.0)
        assert viscous_integral(0.0, 0.0, p) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("upper", [0.1, 1.0, 3.0, 7.5, 13.0])
    def test_increments_match_quadrature(self, upper):
        c1 = 2.0
        p = SolutionParams(c1=c1)
        oracle, err = quad(
            integrand, 0.0, upper, args=(c1,), limit=500, epsabs=1e-13, epsrel=1e-13
        )
        assert err < 1e-11
        measured = viscous_integral(upper, 0.0, p) - viscous_integral(0.0, 0.0, p)
        assert measured == pytest.approx(oracle, abs=1e-10)

    @pytest.mark.parametrize("c1", [2.0, 5.0])
    def test_derivative_is_integrand(self, c1):
        p = SolutionParams(c1=c1)
        s = np.linspace(0.0, 4 * PI, 2000)
        s = np.concatenate([s, PI + np.array([-1e-3, -1e-7, 0.0, 1e-7, 1e-3]),
                            3 * PI + np.array([-1e-3, 0.0, 1e-3])])
        eps = 1e-6
        fd = (viscous_integral(s + eps, 0.0, p) - viscous_integral(s - eps, 0.0, p)) / (
            2 * eps
        )
        h = c1 + np.sin(s)
        np.testing.assert_allclose(fd, np.cos(s) ** 2 / h**3, rtol=0, atol=1e-8)

    def test_continuous_at_poles(self):
        p = SolutionParams(c1=2.0)
        for pole in (PI, 3 * PI, -PI):
            left = viscous_integral(pole - 1e-9, 0.0, p)
            at = viscous_integral(pole, 0.0, p)
            right = viscous_integral(pole + 1e-9, 0.0, p)
            assert abs(left - at) < 1e-8
            assert abs(right - at) < 1e-8

    @pytest.mark.parametrize("c1", [2.0, 5.0])
    def test_gain_per_period(self, c1):
        # integrand has period-mean (c1^2-1)^(-3/2) / 2, so the antiderivative
        # gains pi (c1^2-1)^(-3/2) per 2 pi
        p = SolutionParams(c1=c1)
        s = np.linspace(-5.0, 5.0, 101)
        gain = viscous_integral(s + 2 * PI, 0.0, p) - viscous_integral(s, 0.0, p)
        np.testing.assert_allclose(
            gain, PI * (c1 * c1 - 1.0) ** -1.5, rtol=0, atol=1e-12
        )


class TestViscousSplit:
    def test_inviscid_limit_bitwise(self):
        p0 = SolutionParams(c1=2.0, g=1.0, k_h=0.0)
        s = np.linspace(-12.0, 12.0, 1001)
        assert np.array_equal(bathymetry_ns(s, 0.0, p0), bathymetry_euler(s, 0.0, p0))
        assert np.array_equal(elevation_ns(s, 0.0, p0), elevation_euler(s, 0.0, p0))
        assert np.array_equal(
            bathymetry_slope_ns(s, 0.0, p0), bathymetry_slope_euler(s, 0.0, p0)
        )

    def test_bathymetry_at_zero(self):
        # 2.125 + k_h * (a(0) + 1/c1^2)
        p = SolutionParams(c1=2.0, g=1.0, k_h=1.0)
        expected = 2.125 + (raw_half_angle_form(0.0, 2.0) + 0.25)
        assert bathymetry_ns(0.0, 0.0, p) == pytest.approx(expected, abs=1e-14)
        assert bathymetry_ns(0.0, 0.0, p) == pytest.approx(3.24320, abs=5e-5)

    def test_elevation_at_zero(self):
        p = SolutionParams(c1=2.0, g=1.0, k_h=0.3)
        expected = -(0.125 + 0.3 * (raw_half_angle_form(0.0, 2.0) + 0.25))
        assert elevation_ns(0.0, 0.0, p) == pytest.approx(expected, abs=1e-14)
        assert elevation_ns(0.0, 0.0, p) == pytest.approx(-0.46046, abs=5e-5)

    def test_splitting_identity(self):
        p = SolutionParams(c1=2.0, g=1.0, k_h=0.3)
        s = np.linspace(-12.0, 12.0, 997)
        total = bathymetry_ns(s, 0.0, p) + elevation_ns(s, 0.0, p)
        np.testing.assert_allclose(total, total_depth(s, 0.0, p), rtol=0, atol=1e-12)

    def test_slope_at_zero(self):
        # cos(0) - k_h (0 + 1)/h^3 - cos(0)/h^3 with h = 2: 1 - 1/8 - 1/8
        p = SolutionParams(c1=2.0, g=1.0, k_h=1.0)
        assert bathymetry_slope_ns(0.0, 0.0, p) == pytest.approx(0.75, abs=1e-15)

    @pytest.mark.parametrize("k_h", [0.3, 1.0])
    def test_slope_matches_fd_of_bathymetry(self, k_h):
        # exercises the branch correction: the sample spans several periods
        p = SolutionParams(c1=2.0, g=1.0, k_h=k_h)
        rng = np.random.default_rng(11)
        s = rng.uniform(-15.0, 15.0, 1000)
        eps = 1e-5
        fd = (bathymetry_ns(s + eps, 0.0, p) - bathymetry_ns(s - eps, 0.0, p)) / (
            2 * eps
        )
        np.testing.assert_allclose(fd, bathymetry_slope_ns(s, 0.0, p),
                                   rtol=0, atol=1e-8)

    def test_secular_drift_per_period(self):
        # the column and velocity are periodic; the viscous bed is not, it
        # gains exactly (k_h/g) pi (c1^2-1)^(-3/2) per period
        p = SolutionParams(c1=5.0, g=1.0, k_h=1.0)
        s = np.linspace(0.0, 2 * PI, 64)
        drift = bathymetry_ns(s + 2 * PI, 0.0, p) - bathymetry_ns(s, 0.0, p)
        np.testing.assert_allclose(
            drift, PI * 24.0**-1.5, rtol=0, atol=1e-12
        )


class TestNdimFields:
    def test_reduces_to_1d(self):
        p = SolutionParams(c1=2.0, g=1.0, k_h=0.3, ndim=1)
        x = np.linspace(0.0, 6.0, 50)
        fields = ndim_fields(x[:, None], 0.0, p)
        np.testing.assert_allclose(fields.u[:, 0], velocity(x, 0.0, p), atol=1e-15)
        np.testing.assert_allclose(fields.h_b, bathymetry_ns(x, 0.0, p), atol=1e-15)
        np.testing.assert_allclose(fields.h_e, elevation_ns(x, 0.0, p), atol=1e-15)
        np.testing.assert_allclose(
            fields.dhb_dr[:, 0], bathymetry_slope_ns(x, 0.0, p), atol=1e-14
        )

    def test_three_dim_velocity(self):
        p = SolutionParams(c1=2.0, ndim=3)
        fields = ndim_fields(np.zeros(3), 0.0, p)
        np.testing.assert_allclose(fields.u, 1.0 / 2.0 - 1.0 / 3.0, atol=1e-16)
        assert fields.u.shape == (3,)

    def test_splitting_identity(self):
        p = SolutionParams(c1=2.0, g=1.0, k_h=0.3, ndim=2)
        rng = np.random.default_rng(3)
        r = rng.uniform(-6.0, 6.0, (200, 2))
        fields = ndim_fields(r, 1.5, p)
        np.testing.assert_allclose(
            fields.h_b + fields.h_e, fields.h, rtol=0, atol=1e-12
        )

    def test_shape_validation(self):
        p = SolutionParams(c1=2.0, ndim=2)
        with pytest.raises(ValueError, match="shape"):
            ndim_fields(np.zeros((5, 3)), 0.0, p)

    def test_slope_matches_fd(self):
        p = SolutionParams(c1=2.0, g=1.0, k_h=0.3, ndim=2)
        rng = np.random.default_rng(5)
        r = rng.uniform(0.0, 6.0, (300, 2))
        eps = 1e-5
        shifted = r.copy()
        shifted[:, 0] += eps
        shifted_m = r.copy()
        shifted_m[:, 0] -= eps
        fd = (ndim_fields(shifted, 0.0, p).h_b - ndim_fields(shifted_m, 0.0, p).h_b) / (
            2 * eps
        )
        np.testing.assert_allclose(
            fd, ndim_fields(r, 0.0, p).dhb_dr[:, 0], rtol=0, atol=1e-8
        )
