"""Closed-form traveling-wave fields for free-surface flow over a moving bed.

Every quantity in this family depends on space and time only through the
phase s = x + t (sum of all spatial coordinates plus time in higher
dimensions).  The water column is h = c1 + sin(s) and the velocity is
u = 1/h - 1/n; both satisfy the continuity balance identically.  The
nonlinearity of momentum transport is absorbed by splitting the column into
a surface elevation h_E and a bed depth h_B = h - h_E whose shape evolves in
time exactly so that the momentum balance also holds.  With eddy viscosity
the bed depth involves a special antiderivative of cos(s)^2 (c1+sin s)^-3,
provided here with its branch discontinuities removed.

All functions accept scalars or numpy arrays and broadcast; they are pure
and safe to call from any thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "SolutionParams",
    "AnalyticFields",
    "phase",
    "phase_nd",
    "total_depth",
    "velocity",
    "bathymetry_euler",
    "elevation_euler",
    "bathymetry_slope_euler",
    "viscous_integral",
    "bathymetry_ns",
    "elevation_ns",
    "bathymetry_slope_ns",
    "ndim_fields",
]

_TWO_PI = 2.0 * math.pi

# c1 must exceed 1 by a real margin: h > 0 and sqrt(c1^2 - 1) both degenerate
# at c1 = 1, and values within 1e-9 of it are numerically meaningless.
_C1_MARGIN = 1e-9


@dataclass(frozen=True)
class SolutionParams:
    """Parameters selecting one member of the solution family.

    c1    dimensionless offset of the water column; must exceed 1
    g     gravitational acceleration [m s^-2]
    k_h   horizontal eddy viscosity [m^2 s^-1]; 0 selects the inviscid case
    ndim  number of spatial dimensions (the one-dimensional solver and the
          explicit bed formulas require ndim == 1)
    """

    c1: float
    g: float = 1.0
    k_h: float = 0.0
    ndim: int = 1

    def __post_init__(self):
        if not self.c1 > 1.0 + _C1_MARGIN:
            raise ValueError(f"c1 must exceed 1 (got c1={self.c1!r})")
        if not self.g > 0.0:
            raise ValueError(f"g must be positive (got g={self.g!r})")
        if not self.k_h >= 0.0:
            raise ValueError(f"k_h must be non-negative (got k_h={self.k_h!r})")
        if int(self.ndim) != self.ndim or self.ndim < 1:
            raise ValueError(f"ndim must be a positive integer (got ndim={self.ndim!r})")


@dataclass(frozen=True)
class AnalyticFields:
    """Field bundle returned by :func:`ndim_fields`.

    ``u`` and ``dhb_dr`` carry one entry per spatial dimension in their last
    axis; the time velocity component is fixed to one and not stored.
    h = h_e + h_b holds exactly.
    """

    h: np.ndarray
    u: np.ndarray
    h_e: np.ndarray
    h_b: np.ndarray
    dhb_dr: np.ndarray


def phase(x, t):
    """Phase variable s = x + t."""
    return np.asarray(x, dtype=float) + t


def phase_nd(r, t):
    """Phase s = sum_i r_i + t for points ``r`` of shape (..., ndim)."""
    return np.asarray(r, dtype=float).sum(axis=-1) + t


def total_depth(x, t, p: SolutionParams):
    """Water column h = c1 + sin(x + t).  Bounded below by c1 - 1 > 0."""
    return p.c1 + np.sin(phase(x, t))


def velocity(x, t, p: SolutionParams):
    """Velocity component u = (c1 + sin(x + t))^-1 - 1/ndim.

    Identical for every spatial direction; together with ``total_depth`` it
    satisfies the continuity balance exactly.
    """
    return 1.0 / (p.c1 + np.sin(phase(x, t))) - 1.0 / p.ndim


def bathymetry_euler(x, t, p: SolutionParams):
    """Inviscid bed depth h_B = c1 + sin(s) + (c1 + sin(s))^-2 / (2 g)."""
    _require_inviscid_1d(p)
    return (p.c1 + np.sin(phase(x, t))) + _split_excess(phase(x, t), p)


def elevation_euler(x, t, p: SolutionParams):
    """Inviscid surface elevation h_E = -(c1 + sin(s))^-2 / (2 g)."""
    _require_inviscid_1d(p)
    return -_split_excess(phase(x, t), p)


def bathymetry_slope_euler(x, t, p: SolutionParams):
    """Inviscid bed slope d h_B/d x = cos(s) - cos(s) / (g (c1 + sin s)^3)."""
    _require_inviscid_1d(p)
    s = phase(x, t)
    h = p.c1 + np.sin(s)
    return np.cos(s) - np.cos(s) / (p.g * h**3)


def viscous_integral(x, t, p: SolutionParams):
    """Continuous antiderivative of cos(s)^2 (c1 + sin s)^-3 in the phase s.

    The closed form mixes a rational function of tan(s/2) with an arctan of
    the same argument, so evaluated naively it jumps wherever tan(s/2)
    crosses a pole (s an odd multiple of pi).  Only a continuous branch is a
    valid antiderivative; see :func:`_arctan_branch` for how the branch is
    selected.  The integration constant is pinned so that the value at s = 0
    equals that of the tangent half-angle closed form,
    2/(c1^2-1) + 2 arctan(1/sqrt(c1^2-1)) (c1^2-1)^{-3/2}.

    Grows without bound: the integrand has positive mean, so the value gains
    pi (c1^2-1)^{-3/2} per period.  Only differences enter the physics.
    """
    return _viscous_integral_phase(phase(x, t), p.c1)


def bathymetry_ns(x, t, p: SolutionParams):
    """Bed depth with eddy viscosity.

    h_B = c1 + sin(s) + (2g)^-1 (c1+sin s)^-2
             + (k_h/g) (a(s) + cos(s) (c1+sin s)^-2)

    with a(s) = :func:`viscous_integral`.  Reduces exactly to
    :func:`bathymetry_euler` for k_h = 0.  Not periodic in s for k_h > 0:
    the viscous term drifts by (k_h/g) pi (c1^2-1)^{-3/2} per period.
    """
    _require_1d(p)
    s = phase(x, t)
    return (p.c1 + np.sin(s)) + _split_excess(s, p)


def elevation_ns(x, t, p: SolutionParams):
    """Surface elevation with eddy viscosity.

    h_E = -(1/g) ((c1+sin s)^-2 / 2 + k_h (a(s) + cos(s) (c1+sin s)^-2)),
    the exact complement of :func:`bathymetry_ns` in the column split.
    """
    _require_1d(p)
    return -_split_excess(phase(x, t), p)


def bathymetry_slope_ns(x, t, p: SolutionParams):
    """Bed slope with eddy viscosity.

    d h_B/d x = cos(s)
              - (k_h/g) (sin(s)(sin(s)+c1) + cos(s)^2) / (sin(s)+c1)^3
              - (1/g) cos(s) / (c1+sin(s))^3
    """
    _require_1d(p)
    s = phase(x, t)
    h = p.c1 + np.sin(s)
    visc = (np.sin(s) * h + np.cos(s) ** 2) / h**3
    return np.cos(s) - (p.k_h / p.g) * visc - np.cos(s) / (p.g * h**3)


def ndim_fields(r, t, p: SolutionParams) -> AnalyticFields:
    """Evaluate the full field set at spatial points ``r`` of shape (..., ndim).

    The n-dimensional split scales the one-dimensional excess terms by the
    dimension count:

        h_B = c1 + sin(s) + n (2g)^-1 (c1+sin s)^-2
                 + n (k_h/g) (a(s) + cos(s) (c1+sin s)^-2)

    with s = sum_i r_i + t.  Both the continuity and the momentum balances
    vanish on these fields for every n (the residual audit checks this).
    """
    r = np.asarray(r, dtype=float)
    if r.ndim == 0 or r.shape[-1] != p.ndim:
        raise ValueError(
            f"r must have shape (..., {p.ndim}) for ndim={p.ndim}, got {r.shape}"
        )
    s = phase_nd(r, t)
    h = p.c1 + np.sin(s)
    u_component = 1.0 / h - 1.0 / p.ndim
    excess = p.ndim * _split_excess(s, p)
    slope = np.cos(s) - p.ndim * (
        np.cos(s) + p.k_h * (np.sin(s) * h + np.cos(s) ** 2)
    ) / (p.g * h**3)
    stack = lambda f: np.stack([f] * p.ndim, axis=-1)  # noqa: E731
    return AnalyticFields(
        h=h,
        u=stack(u_component),
        h_e=np.asarray(-excess),
        h_b=h + excess,
        dhb_dr=stack(slope),
    )


def _split_excess(s, p: SolutionParams):
    """Excess X in the column split h_B = c1 + sin(s) + X, h_E = -X.

    The k_h = 0 branch takes the identical arithmetic path as the viscous
    branch with its k_h term dropped, so the inviscid limit of the viscous
    formulas agrees bitwise with the inviscid formulas.
    """
    h = p.c1 + np.sin(s)
    x_term = 1.0 / (2.0 * p.g) * h**-2
    if p.k_h != 0.0:
        x_term = x_term + (p.k_h / p.g) * (
            _viscous_integral_phase(s, p.c1) + np.cos(s) * h**-2
        )
    return x_term


def _viscous_integral_phase(s, c1: float):
    s = np.asarray(s, dtype=float)
    h = c1 + np.sin(s)
    r2 = c1 * c1 - 1.0
    raw = (
        -np.cos(s) / (2.0 * h * h)
        + c1 * np.cos(s) / (2.0 * r2 * h)
        + _arctan_branch(s, c1) * r2**-1.5
    )
    return raw + _integral_anchor(c1)


def _arctan_branch(s, c1: float):
    """Continuous branch of arctan((c1 tan(s/2) + 1) / sqrt(c1^2 - 1)).

    The raw arctan drops by pi whenever s crosses an odd multiple of pi.  Its
    derivative, sqrt(c1^2-1) / (2 (c1+sin s)), has mean 1/2 over a period, so
    the continuous branch is s/2 plus a 2 pi periodic remainder; evaluating
    the remainder on the wrapped phase removes the jumps without any pole
    bookkeeping and stays finite at the poles themselves (tan overflows to a
    huge but finite float there and the arctan saturates at pi/2).
    """
    root = math.sqrt(c1 * c1 - 1.0)
    w = s - _TWO_PI * np.round(s / _TWO_PI)
    return 0.5 * s + np.arctan((c1 * np.tan(0.5 * w) + 1.0) / root) - 0.5 * w


def _integral_anchor(c1: float) -> float:
    """Integration constant pinning :func:`viscous_integral` at s = 0."""
    r2 = c1 * c1 - 1.0
    beta = math.atan(1.0 / math.sqrt(r2))
    value_at_zero = 2.0 / r2 + 2.0 * beta * r2**-1.5
    branch_at_zero = -1.0 / (2.0 * c1 * c1) + 1.0 / (2.0 * r2) + beta * r2**-1.5
    return value_at_zero - branch_at_zero


def _require_1d(p: SolutionParams) -> None:
    if p.ndim != 1:
        raise ValueError(f"operation is one-dimensional, got ndim={p.ndim}")


def _require_inviscid_1d(p: SolutionParams) -> None:
    _require_1d(p)
    if p.k_h != 0.0:
        raise ValueError(
            f"inviscid formula called with k_h={p.k_h!r}; use the ns variant"
        )
