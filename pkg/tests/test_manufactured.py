"""Closure pipeline tests: residuals, slope extraction, bed integration."""

import numpy as np
import pytest

from bathywave import (
    Grid1D,
    SolutionParams,
    ClosurePair,
    bathymetry_euler,
    bathymetry_slope,
    bathymetry_slope_euler,
    bathymetry_slope_ns,
    continuity_residual,
    elevation_euler,
    estimate_rate,
    integrate_bathymetry,
    total_depth,
    traveling_wave_closures,
)

TABLE_GRID = Grid1D(n_cells=1000, dx=1e-2, dt=1e-3, n_steps=1)


def refined_grid(factor):
    return Grid1D(
        n_cells=(TABLE_GRID.n_cells - 1) * factor + 1,
        dx=TABLE_GRID.dx / factor,
        dt=TABLE_GRID.dt,
        n_steps=1,
    )


class TestContinuityResidual:
    def test_analytic_pair_small(self):
        pair = traveling_wave_closures(SolutionParams(c1=2.0))
        res = continuity_residual(pair, TABLE_GRID, t=0.7, step=1e-4)
        assert np.max(np.abs(res)) <= 1e-6

    def test_uniform_pair_zero(self):
        pair = ClosurePair(
            h_fn=lambda x, t: np.full_like(np.asarray(x, dtype=float), 2.5),
            u_fn=lambda x, t: np.full_like(np.asarray(x, dtype=float), -0.25),
            params=SolutionParams(c1=2.0),
        )
        res = continuity_residual(pair, TABLE_GRID, t=0.0)
        assert np.max(np.abs(res)) == 0.0

    def test_inconsistent_pair_flagged(self):
        # a column without motion cannot satisfy continuity; residual is the
        # column's own time derivative
        p = SolutionParams(c1=2.0)
        pair = ClosurePair(
            h_fn=lambda x, t: total_depth(x, t, p),
            u_fn=lambda x, t: np.zeros_like(np.asarray(x, dtype=float)),
            params=p,
        )
        t = 0.3
        res = continuity_residual(pair, TABLE_GRID, t)
        np.testing.assert_allclose(
            res, np.cos(TABLE_GRID.cells() + t), rtol=0, atol=1e-8
        )
        assert np.max(np.abs(res)) > 0.5


class TestBathymetrySlope:
    def test_matches_inviscid_formula(self):
        p = SolutionParams(c1=2.0, g=1.0)
        pair = traveling_wave_closures(p)
        assert bathymetry_slope(pair, 0.0, 0.0) == pytest.approx(0.875, abs=1e-6)
        x = np.linspace(0.0, 10.0, 500)
        np.testing.assert_allclose(
            bathymetry_slope(pair, x, 2.1),
            bathymetry_slope_euler(x, 2.1, p),
            rtol=0,
            atol=1e-6,
        )

    @pytest.mark.parametrize("k_h", [0.3, 1.0])
    def test_matches_viscous_formula(self, k_h):
        p = SolutionParams(c1=2.0, g=1.0, k_h=k_h)
        pair = traveling_wave_closures(p)
        x = np.linspace(0.0, 10.0, 500)
        np.testing.assert_allclose(
            bathymetry_slope(pair, x, 1.4),
            bathymetry_slope_ns(x, 1.4, p),
            rtol=0,
            atol=1e-6,
        )

    def test_flat_lake_zero(self):
        pair = ClosurePair(
            h_fn=lambda x, t: np.full_like(np.asarray(x, dtype=float), 2.0),
            u_fn=lambda x, t: np.zeros_like(np.asarray(x, dtype=float)),
            params=SolutionParams(c1=2.0),
        )
        x = np.linspace(0.0, 10.0, 100)
        np.testing.assert_allclose(bathymetry_slope(pair, x, 0.0), 0.0, atol=1e-10)

    def test_nonpositive_column_rejected(self):
        pair = ClosurePair(
            h_fn=lambda x, t: np.asarray(x, dtype=float) - 5.0,
            u_fn=lambda x, t: np.zeros_like(np.asarray(x, dtype=float)),
            params=SolutionParams(c1=2.0),
        )
        with pytest.raises(ValueError, match="positive"):
            bathymetry_slope(pair, np.array([1.0, 6.0]), 0.0)


class TestIntegrateBathymetry:
    def test_zero_slope_constant(self):
        trace = integrate_bathymetry(
            lambda x, t: np.zeros_like(np.asarray(x, dtype=float)),
            TABLE_GRID,
            t=0.0,
            anchor_value=3.25,
        )
        np.testing.assert_array_equal(trace.hb, 3.25)
        assert trace.anchor_value == 3.25
        assert trace.anchor_x == 0.0

    def test_table_grid_error_bound(self):
        # first-order rule on the benchmark grid: error well under 5 dx
        p = SolutionParams(c1=2.0, g=1.0)
        trace = integrate_bathymetry(
            lambda x, t: bathymetry_slope_euler(x, t, p),
            TABLE_GRID,
            t=0.0,
            anchor_value=float(bathymetry_euler(0.0, 0.0, p)),
        )
        err = np.max(np.abs(trace.hb - bathymetry_euler(trace.x, 0.0, p)))
        assert err <= 0.05

    def test_halving_dx_halves_error(self):
        p = SolutionParams(c1=2.0, g=1.0)
        errors = []
        for factor in (1, 2):
            grid = refined_grid(factor)
            trace = integrate_bathymetry(
                lambda x, t: bathymetry_slope_euler(x, t, p),
                grid,
                t=0.0,
                anchor_value=float(bathymetry_euler(0.0, 0.0, p)),
            )
            errors.append(np.max(np.abs(trace.hb - bathymetry_euler(trace.x, 0.0, p))))
        ratio = errors[0] / errors[1]
        assert 1.5 <= ratio <= 3.0

    def test_first_order_rate(self):
        p = SolutionParams(c1=2.0, g=1.0)
        dxs, errs = [], []
        for factor in (1, 2, 4, 8):
            grid = refined_grid(factor)
            trace = integrate_bathymetry(
                lambda x, t: bathymetry_slope_euler(x, t, p),
                grid,
                t=0.0,
                anchor_value=float(bathymetry_euler(0.0, 0.0, p)),
            )
            dxs.append(grid.dx)
            errs.append(np.max(np.abs(trace.hb - bathymetry_euler(trace.x, 0.0, p))))
        rate, exact = estimate_rate(dxs, errs)
        assert not exact
        assert 0.8 <= rate <= 1.2

    def test_pipeline_recovers_elevation(self):
        # h minus the integrated bed reproduces the closed-form elevation to
        # first order in dx
        p = SolutionParams(c1=2.0, g=1.0)
        pair = traveling_wave_closures(p)
        t = 0.9
        trace = integrate_bathymetry(
            lambda x, tt: bathymetry_slope(pair, x, tt),
            TABLE_GRID,
            t=t,
            anchor_value=float(
                total_depth(0.0, t, p) - elevation_euler(0.0, t, p)
            ),
        )
        recovered = total_depth(trace.x, t, p) - trace.hb
        err = np.max(np.abs(recovered - elevation_euler(trace.x, t, p)))
        assert err <= 5 * TABLE_GRID.dx

    def test_trapezoid_beats_left_rule(self):
        p = SolutionParams(c1=2.0, g=1.0)
        anchor = float(bathymetry_euler(0.0, 0.0, p))
        slope_fn = lambda x, t: bathymetry_slope_euler(x, t, p)  # noqa: E731
        left = integrate_bathymetry(slope_fn, TABLE_GRID, 0.0, anchor)
        trap = integrate_bathymetry(slope_fn, TABLE_GRID, 0.0, anchor,
                                    rule="trapezoid")
        exact = bathymetry_euler(left.x, 0.0, p)
        assert np.max(np.abs(trap.hb - exact)) < 0.1 * np.max(np.abs(left.hb - exact))

    def test_unknown_rule_rejected(self):
        with pytest.raises(ValueError, match="rule"):
            integrate_bathymetry(
                lambda x, t: np.zeros_like(x), TABLE_GRID, 0.0, 0.0, rule="simpson"
            )
