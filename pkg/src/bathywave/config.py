"""Run configuration: flat key=value files and the benchmark grid presets.

Config grammar (one setting per line, ``#`` starts a comment)::

    preset = table1          # optional; loads a preset before other keys
    case = euler             # euler | ns
    n_cells = 1000
    dx = 1e-2
    dt = 1e-3
    n_steps = 10000
    x0 = 0.0
    c1 = 2, 4, 7             # sweep values, each > 1
    g = 1.0
    k_h = 0.0
    advection = upwind       # upwind | central
    bathymetry_source = analytic   # analytic | integrated
    cfl_guard = 1.0
    out_dir = out
    formats = csv, svg
    snapshot_times = 0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10

Unknown keys are rejected with their line number; a silently ignored typo in
a verification harness is worse than a hard failure.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .analytic import SolutionParams
from .solver import Grid1D, SchemeConfig

__all__ = ["RunConfig", "ConfigError", "parse_config", "preset_config", "PRESETS"]


class ConfigError(ValueError):
    """Malformed or invalid run configuration."""


@dataclass(frozen=True)
class RunConfig:
    case: str
    grid: Grid1D
    scheme: SchemeConfig
    params_list: tuple
    out_dir: Path
    formats: tuple = ("csv",)
    snapshot_times: tuple = tuple(float(k) for k in range(11))


# Benchmark grids: a 10 m domain of 1000 cells; the inviscid table runs 1e4
# steps of 1e-3 s and the viscous table 1e5 steps of 1e-4 s.
PRESETS = {
    "table1": {
        "case": "euler",
        "n_cells": 1000,
        "dx": 1e-2,
        "dt": 1e-3,
        "n_steps": 10_000,
        "c1": (2.0, 4.0, 7.0),
        "g": 1.0,
        "k_h": 0.0,
    },
    "table2": {
        "case": "ns",
        "n_cells": 1000,
        "dx": 1e-2,
        "dt": 1e-4,
        "n_steps": 100_000,
        "c1": (2.0, 3.0, 5.0, 7.0),
        "g": 1.0,
        "k_h": 0.3,
    },
}

_DEFAULTS = {
    "x0": 0.0,
    "advection": "upwind",
    "bathymetry_source": "analytic",
    "cfl_guard": 1.0,
    "out_dir": "out",
    "formats": ("csv",),
    "snapshot_times": tuple(float(k) for k in range(11)),
}

_KEY_PARSERS = {
    "preset": str,
    "case": str,
    "n_cells": int,
    "dx": float,
    "dt": float,
    "n_steps": int,
    "x0": float,
    "c1": "float_list",
    "g": float,
    "k_h": float,
    "advection": str,
    "bathymetry_source": str,
    "cfl_guard": float,
    "out_dir": str,
    "formats": "str_list",
    "snapshot_times": "float_list",
}

_REQUIRED = ("case", "n_cells", "dx", "dt", "n_steps", "c1", "g", "k_h")


def parse_config(text: str) -> RunConfig:
    """Parse and validate a flat key=value configuration."""
    settings: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in _KEY_PARSERS:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        if key in settings:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        try:
            settings[key] = _parse_value(_KEY_PARSERS[key], value)
        except ValueError as exc:
            raise ConfigError(f"line {lineno}: bad value for {key!r}: {exc}") from exc
    return build_config(settings)


def preset_config(name: str, **overrides) -> RunConfig:
    """A RunConfig for a named preset, with optional keyword overrides."""
    if name not in PRESETS:
        raise ConfigError(f"unknown preset {name!r}; choose from {sorted(PRESETS)}")
    settings = {"preset": name, **overrides}
    return build_config(settings)


def build_config(settings: dict) -> RunConfig:
    """Assemble and validate a RunConfig from a flat settings mapping."""
    merged = dict(_DEFAULTS)
    preset = settings.pop("preset", None)
    if preset is not None:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        merged.update(PRESETS[preset])
    merged.update(settings)

    missing = [key for key in _REQUIRED if key not in merged]
    if missing:
        raise ConfigError(f"missing required keys: {', '.join(missing)}")

    case = merged["case"]
    if case not in ("euler", "ns"):
        raise ConfigError(f"case: must be 'euler' or 'ns', got {case!r}")
    if case == "euler" and merged["k_h"] != 0.0:
        raise ConfigError(f"k_h: case 'euler' requires k_h = 0, got {merged['k_h']}")

    try:
        grid = Grid1D(
            n_cells=merged["n_cells"],
            dx=merged["dx"],
            dt=merged["dt"],
            n_steps=merged["n_steps"],
            x0=merged["x0"],
        )
    except ValueError as exc:
        raise ConfigError(f"grid: {exc}") from exc
    try:
        scheme = SchemeConfig(
            advection=merged["advection"],
            bathymetry_source=merged["bathymetry_source"],
            cfl_guard=merged["cfl_guard"],
        )
    except ValueError as exc:
        raise ConfigError(f"scheme: {exc}") from exc

    c1_values = merged["c1"]
    if isinstance(c1_values, (int, float)):
        c1_values = (float(c1_values),)
    if len(c1_values) == 0:
        raise ConfigError("c1: at least one sweep value is required")
    params_list = []
    for c1 in c1_values:
        try:
            params_list.append(SolutionParams(c1=c1, g=merged["g"], k_h=merged["k_h"]))
        except ValueError as exc:
            raise ConfigError(f"c1: {exc}") from exc

    formats = tuple(merged["formats"])
    for fmt in formats:
        if fmt not in ("csv", "svg"):
            raise ConfigError(f"formats: unknown format {fmt!r}")

    return RunConfig(
        case=case,
        grid=grid,
        scheme=scheme,
        params_list=tuple(params_list),
        out_dir=Path(merged["out_dir"]),
        formats=formats,
        snapshot_times=tuple(float(t) for t in merged["snapshot_times"]),
    )


def _parse_value(parser, value: str):
    if parser == "float_list":
        return tuple(float(item) for item in _split_list(value))
    if parser == "str_list":
        return tuple(_split_list(value))
    return parser(value)


def _split_list(value: str):
    items = [item.strip() for item in value.split(",")]
    return [item for item in items if item]
