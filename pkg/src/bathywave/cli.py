"""Command-line entry point.

Subcommands:

    run         integrate a configured case, emit CSV/SVG artifacts, and
                check the velocity error against the recorded baselines
    audit       residual audit of the 1-D closed-form fields
    converge    grid-refinement study of the solver's order of accuracy
    ndim-audit  residual audit of the n-dimensional closed-form fields

Exit codes: 0 on pass, 1 on a tolerance failure, 2 on a configuration or
runtime error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import baselines, output, validation
from .analytic import SolutionParams
from .config import ConfigError, PRESETS, build_config, parse_config
from .solver import Grid1D, SchemeConfig, SolverBlowupError, run as run_solver

__all__ = ["main"]

PASS, FAIL, ERROR = 0, 1, 2


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return ERROR
    except SolverBlowupError as exc:
        print(f"solver blow-up: {exc}", file=sys.stderr)
        return ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bathywave",
        description="Traveling-wave shallow-water benchmarks on a dynamic bed",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="integrate a case and emit artifacts")
    run_p.add_argument("--config", type=Path, help="path to a key=value config file")
    run_p.add_argument("--preset", choices=sorted(PRESETS), help="benchmark preset")
    run_p.add_argument("--out", type=Path, help="output directory")
    run_p.add_argument("--format", dest="formats",
                       help="comma list of output formats (csv,svg)")
    run_p.add_argument("--c1", help="comma list overriding the c1 sweep")
    run_p.add_argument("--bathymetry-source", choices=("analytic", "integrated"),
                       help="override the bed source")
    run_p.set_defaults(func=_cmd_run)

    audit_p = sub.add_parser("audit", help="1-D residual audit of the closed forms")
    audit_p.add_argument("--tol", type=float, default=validation.RESIDUAL_TOL)
    audit_p.add_argument("--points", type=int, default=1000)
    audit_p.set_defaults(func=_cmd_audit)

    conv_p = sub.add_parser("converge", help="solver grid-refinement study")
    conv_p.add_argument("--c1", type=float, default=4.0)
    conv_p.add_argument("--levels", type=int, default=4)
    conv_p.add_argument("--t-end", type=float, default=0.5)
    conv_p.add_argument("--rate-window", type=float, nargs=2, default=(0.8, 1.3),
                        metavar=("LO", "HI"))
    conv_p.set_defaults(func=_cmd_converge)

    nd_p = sub.add_parser("ndim-audit",
                          help="n-dimensional residual audit of the closed forms")
    nd_p.add_argument("--n", type=int, nargs="+", default=(2, 3))
    nd_p.add_argument("--c1", type=float, default=2.0)
    nd_p.add_argument("--k-h", type=float, default=0.3)
    nd_p.add_argument("--tol", type=float, default=validation.RESIDUAL_TOL)
    nd_p.set_defaults(func=_cmd_ndim_audit)
    return parser


def _cmd_run(args) -> int:
    if args.config is not None:
        cfg = parse_config(args.config.read_text())
        cfg = _apply_overrides(cfg, args)
    elif args.preset is not None:
        overrides = _override_settings(args)
        cfg = build_config({"preset": args.preset, **overrides})
    else:
        raise ConfigError("run needs --config or --preset")

    status = PASS
    final_snaps = []
    for params in cfg.params_list:
        result = run_solver(cfg.case, cfg.grid, cfg.scheme, params,
                            snapshot_times=cfg.snapshot_times)
        if cfg.snapshot_times and "csv" in cfg.formats:
            output.emit_csv(result.snapshots, cfg.case, params, cfg.out_dir)
        if result.snapshots:
            final_snaps.append((params, result.snapshots[-1]))
        threshold = (
            baselines.baseline_for(cfg.case, params.c1,
                                   cfg.scheme.bathymetry_source)
            if _is_benchmark_grid(cfg)
            else None  # baselines are tied to the tabulated grids
        )
        linf = result.report.linf
        if threshold is None:
            verdict = "SKIP (no baseline)"
        elif linf <= threshold:
            verdict = f"PASS (<= {threshold:.3e})"
        else:
            verdict = f"FAIL (> {threshold:.3e})"
            status = FAIL
        mismatch = (
            f"  right-end bed mismatch {result.right_end_mismatch:.3e}"
            if result.right_end_mismatch is not None
            else ""
        )
        print(
            f"{cfg.case} c1={params.c1:g} [{cfg.scheme.bathymetry_source}]: "
            f"Linf(u)={linf:.4e} L2(u)={result.report.l2:.4e} "
            f"at t={cfg.grid.t_end:g}s  {verdict}{mismatch}"
        )
    if "svg" in cfg.formats and final_snaps:
        path = Path(cfg.out_dir) / f"{cfg.case}_overlay.svg"
        output.emit_plot(final_snaps, cfg.case, path)
        print(f"wrote {path}")
    return status


def _cmd_audit(args) -> int:
    status = PASS
    cases = [("euler", c1, 0.0) for c1 in (2.0, 4.0, 7.0)]
    cases += [("ns", c1, k_h) for c1 in (2.0, 3.0, 5.0, 7.0) for k_h in (0.3, 1.0)]
    for case, c1, k_h in cases:
        summary = validation.residual_audit(
            case, SolutionParams(c1=c1, k_h=k_h), n_points=args.points
        )
        ok = summary.passed(args.tol)
        status = status if ok else FAIL
        print(
            f"{case} c1={c1:g} k_h={k_h:g}: continuity={summary.max_continuity:.3e} "
            f"momentum={summary.max_momentum:.3e}  {'PASS' if ok else 'FAIL'}"
        )
    return status


def _cmd_converge(args) -> int:
    base = Grid1D(n_cells=1000, dx=1e-2, dt=1e-3,
                  n_steps=round(args.t_end / 1e-3))
    result = validation.convergence_study(
        "euler", base, SolutionParams(c1=args.c1), SchemeConfig(),
        levels=args.levels, t_end=args.t_end,
    )
    for dx, dt, err, blew in zip(result.dx, result.dt, result.linf, result.blowups):
        note = "BLOW-UP" if blew else f"Linf(u)={err:.4e}"
        print(f"dx={dx:.3e} dt={dt:.3e}: {note}")
    if result.exact or result.rate is None:
        print("rate: indeterminate (errors vanished or too few finite levels)")
        return FAIL
    lo, hi = args.rate_window
    ok = lo <= result.rate <= hi
    print(f"fitted order: {result.rate:.3f}  "
          f"{'PASS' if ok else 'FAIL'} (window [{lo:g}, {hi:g}])")
    return PASS if ok else FAIL


def _cmd_ndim_audit(args) -> int:
    status = PASS
    for n in args.n:
        params = SolutionParams(c1=args.c1, k_h=args.k_h, ndim=n)
        summary = validation.residual_audit_ndim(params)
        ok = summary.passed(args.tol)
        print(
            f"n={n} c1={args.c1:g} k_h={args.k_h:g}: "
            f"continuity={summary.max_continuity:.3e} "
            f"momentum={summary.max_momentum:.3e}  {'PASS' if ok else 'FAIL'}"
        )
        if not ok:
            status = FAIL
            print(
                f"  DIAGNOSTIC: the n-dimensional bed split is sensitive to the\n"
                f"  grouping of its antiderivative terms; this package uses the\n"
                f"  re-derived grouping h_B = c1 + sin(s) + n/(2g) h^-2\n"
                f"  + (n k_h/g)(a(s) + cos(s) h^-2), which passes this audit at\n"
                f"  {validation.RESIDUAL_TOL:g}. A residual above tolerance means\n"
                f"  the evaluated fields no longer satisfy the momentum balance\n"
                f"  (formula regression), not an audit artifact."
            )
    return status


def _is_benchmark_grid(cfg) -> bool:
    preset = PRESETS["table1" if cfg.case == "euler" else "table2"]
    return cfg.grid == Grid1D(
        n_cells=preset["n_cells"],
        dx=preset["dx"],
        dt=preset["dt"],
        n_steps=preset["n_steps"],
    )


def _override_settings(args) -> dict:
    overrides: dict = {}
    if getattr(args, "out", None) is not None:
        overrides["out_dir"] = str(args.out)
    if getattr(args, "formats", None):
        overrides["formats"] = tuple(
            f.strip() for f in args.formats.split(",") if f.strip()
        )
    if getattr(args, "c1", None):
        overrides["c1"] = tuple(float(v) for v in args.c1.split(","))
    if getattr(args, "bathymetry_source", None):
        overrides["bathymetry_source"] = args.bathymetry_source
    return overrides


def _apply_overrides(cfg, args):
    from dataclasses import replace

    overrides = _override_settings(args)
    if "out_dir" in overrides:
        cfg = replace(cfg, out_dir=Path(overrides["out_dir"]))
    if "formats" in overrides:
        cfg = replace(cfg, formats=overrides["formats"])
    if "c1" in overrides:
        params_list = tuple(
            SolutionParams(c1=c1, g=cfg.params_list[0].g, k_h=cfg.params_list[0].k_h)
            for c1 in overrides["c1"]
        )
        cfg = replace(cfg, params_list=params_list)
    if "bathymetry_source" in overrides:
        cfg = replace(
            cfg,
            scheme=replace(cfg.scheme,
                           bathymetry_source=overrides["bathymetry_source"]),
        )
    return cfg


if __name__ == "__main__":
    sys.exit(main())
