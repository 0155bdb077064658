"""Regression baselines for the benchmark-configuration runs.

The benchmark only overlays curves, so pass thresholds come from this
implementation's own measurements: each entry is the final-time (t = 10 s)
interior max-norm velocity error measured on the tabulated grid, and the
acceptance threshold is that measurement times a 1.5 safety factor.  A run
exceeding its threshold means a regression, not a tolerance choice.

Measured with version 0.1.0 (upwind advection, forward Euler); values are
recorded next to their thresholds so drift is visible in review.
"""

from __future__ import annotations

__all__ = ["MEASURED_LINF", "baseline_for"]

_MARGIN = 1.5

# (case, c1, bathymetry_source) -> measured final-time L-inf velocity error.
# The inviscid c1 = 2 and c1 = 7 entries sit near 1e-1: with dt = 1e-3 the
# forward-Euler/central pressure coupling is only marginally damped by the
# upwind advection at those wave speeds, which is a property of the scheme
# being validated, not of the closed-form solution (the viscous table, run
# at dt = 1e-4, is an order of magnitude cleaner).
MEASURED_LINF = {
    ("euler", 2.0, "analytic"): 6.2959e-02,
    ("euler", 4.0, "analytic"): 1.6665e-03,
    ("euler", 7.0, "analytic"): 9.2162e-02,
    ("euler", 2.0, "integrated"): 1.3736e-01,
    ("euler", 4.0, "integrated"): 1.9477e-03,
    ("euler", 7.0, "integrated"): 1.2383e-01,
    ("ns", 2.0, "analytic"): 4.8500e-03,
    ("ns", 3.0, "analytic"): 2.3065e-03,
    ("ns", 5.0, "analytic"): 1.7123e-03,
    ("ns", 7.0, "analytic"): 1.5541e-03,
    ("ns", 2.0, "integrated"): 9.2948e-03,
    ("ns", 3.0, "integrated"): 4.6229e-03,
    ("ns", 5.0, "integrated"): 2.0826e-03,
    ("ns", 7.0, "integrated"): 2.1604e-03,
}


def baseline_for(case: str, c1: float, source: str = "analytic") -> float | None:
    """Acceptance threshold for a tabulated run, or None if unmeasured."""
    measured = MEASURED_LINF.get((case, float(c1), source))
    return None if measured is None else _MARGIN * measured
