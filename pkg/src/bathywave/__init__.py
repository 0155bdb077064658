"""Traveling-wave shallow-water benchmarks on a dynamic bathymetry.

Closed-form column/velocity/bed fields (inviscid and eddy-viscous, any
spatial dimension), a manufactured-solution pipeline that reverse-engineers
the bed from arbitrary closures, an explicit finite-difference solver
validated against the closed forms, and the error/residual machinery that
quantifies the agreement.
"""

from .analytic import (
    AnalyticFields,
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
from .config import ConfigError, PRESETS, RunConfig, parse_config, preset_config
from .manufactured import (
    BathymetryTrace,
    ClosurePair,
    bathymetry_slope,
    continuity_residual,
    integrate_bathymetry,
    traveling_wave_closures,
)
from .solver import (
    FieldState,
    Grid1D,
    NegativeDepthError,
    NonFiniteError,
    RunResult,
    SchemeConfig,
    Snapshot,
    SolverBlowupError,
    apply_bcs,
    initial_state,
    run,
    step_euler,
    step_ns,
)
from .validation import (
    ConvergenceResult,
    ErrorReport,
    ResidualSummary,
    convergence_study,
    estimate_rate,
    norms,
    residual_audit,
    residual_audit_ndim,
)

__version__ = "0.1.0"

__all__ = [
    "AnalyticFields",
    "BathymetryTrace",
    "ClosurePair",
    "ConfigError",
    "ConvergenceResult",
    "ErrorReport",
    "FieldState",
    "Grid1D",
    "NegativeDepthError",
    "NonFiniteError",
    "PRESETS",
    "ResidualSummary",
    "RunConfig",
    "RunResult",
    "SchemeConfig",
    "Snapshot",
    "SolutionParams",
    "SolverBlowupError",
    "apply_bcs",
    "bathymetry_euler",
    "bathymetry_ns",
    "bathymetry_slope",
    "bathymetry_slope_euler",
    "bathymetry_slope_ns",
    "continuity_residual",
    "convergence_study",
    "elevation_euler",
    "elevation_ns",
    "estimate_rate",
    "initial_state",
    "integrate_bathymetry",
    "ndim_fields",
    "norms",
    "parse_config",
    "phase",
    "phase_nd",
    "preset_config",
    "residual_audit",
    "residual_audit_ndim",
    "run",
    "step_euler",
    "step_ns",
    "total_depth",
    "traveling_wave_closures",
    "velocity",
    "viscous_integral",
    "__version__",
]
