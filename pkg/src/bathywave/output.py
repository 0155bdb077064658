"""Artifact emission: per-snapshot CSV files and static SVG overlay plots.

CSV files carry full double precision (17 significant digits) so a parsed
file reproduces the arrays bit-exactly, and identical runs produce
byte-identical files.  Plots follow the overlay convention of the benchmark
figures: closed-form solution as lines, numerical solution as markers.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import analytic  # noqa: E402
from .analytic import SolutionParams  # noqa: E402

__all__ = [
    "CSV_COLUMNS",
    "snapshot_csv_path",
    "emit_csv",
    "read_csv",
    "emit_plot",
    "emit_bathymetry_history",
]

CSV_COLUMNS = ("x", "u_num", "u_exact", "h_num", "h_exact", "hE_num", "hE_exact", "hB")


def snapshot_csv_path(out_dir: Path, case: str, c1: float, t: float) -> Path:
    return Path(out_dir) / f"{case}_c1-{c1:g}_t{round(t, 6):g}.csv"


def emit_csv(snapshots, case: str, params: SolutionParams, out_dir) -> list[Path]:
    """Write one CSV per snapshot; returns the created paths.

    Columns: x, u_num, u_exact, h_num, h_exact, hE_num, hE_exact, hB.  The
    exact fields are evaluated from the closed forms at the snapshot time.
    """
    if not snapshots:
        raise ValueError("no snapshots to emit")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    elevation = (
        analytic.elevation_euler if case == "euler" else analytic.elevation_ns
    )
    paths = []
    for snap in snapshots:
        columns = (
            snap.x,
            snap.u,
            analytic.velocity(snap.x, snap.t, params),
            snap.h,
            analytic.total_depth(snap.x, snap.t, params),
            snap.h_e,
            elevation(snap.x, snap.t, params),
            snap.h_b,
        )
        path = snapshot_csv_path(out_dir, case, params.c1, snap.t)
        lines = [",".join(CSV_COLUMNS)]
        for row in zip(*columns):
            lines.append(",".join(f"{value:.17g}" for value in row))
        path.write_text("\n".join(lines) + "\n", encoding="ascii")
        paths.append(path)
    return paths


def read_csv(path) -> dict[str, np.ndarray]:
    """Parse a file written by :func:`emit_csv` back into arrays."""
    lines = Path(path).read_text(encoding="ascii").splitlines()
    header = tuple(lines[0].split(","))
    data = np.array(
        [[float(value) for value in line.split(",")] for line in lines[1:]]
    )
    return {name: data[:, k] for k, name in enumerate(header)}


def emit_plot(tagged_snapshots, case: str, out_path) -> Path:
    """Two-panel overlay (velocity left, bed depth right) as a vector file.

    ``tagged_snapshots`` is a sequence of (params, snapshot) pairs, one per
    sweep member; closed forms are drawn as lines and the numerical fields
    as sparse markers.
    """
    if not tagged_snapshots:
        raise ValueError("no snapshots to plot")
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)

    fig, (ax_u, ax_b) = plt.subplots(1, 2, figsize=(11, 4.2))
    for params, snap in tagged_snapshots:
        bathymetry = (
            analytic.bathymetry_euler if case == "euler" else analytic.bathymetry_ns
        )
        dense = np.linspace(snap.x[0], snap.x[-1], 600)
        mark = slice(0, None, max(1, snap.x.size // 40))
        label = f"c1={params.c1:g}"
        (line,) = ax_u.plot(
            dense, analytic.velocity(dense, snap.t, params), lw=1.2, label=label
        )
        ax_u.plot(snap.x[mark], snap.u[mark], "o", ms=3.5, mfc="none",
                  color=line.get_color())
        ax_b.plot(dense, bathymetry(dense, snap.t, params), lw=1.2,
                  color=line.get_color(), label=label)
        ax_b.plot(snap.x[mark], snap.h_b[mark], "o", ms=3.5, mfc="none",
                  color=line.get_color())
    t_label = f"t = {tagged_snapshots[0][1].t:.3g} s"
    ax_u.set(xlabel="x [m]", ylabel="u [m/s]", title=f"velocity, {t_label}")
    ax_b.set(xlabel="x [m]", ylabel="h_B [m]", title=f"bed depth, {t_label}")
    ax_u.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(out_path, format=out_path.suffix.lstrip(".") or "svg")
    plt.close(fig)
    return out_path


def emit_bathymetry_history(
    c1: float,
    g: float,
    k_h_late: float,
    out_path,
    t_switch: float = 5.0,
    times=None,
    x=None,
) -> Path:
    """Bed-depth evolution with the viscosity switched on mid-way.

    Draws h_B(x) at a sequence of times: inviscid up to ``t_switch``, then
    with eddy viscosity ``k_h_late``, visualizing how the bed must deform
    differently to carry the same surface solution.
    """
    out_path = Path(out_path)
    out_path.parent.mkdir(parents=True, exist_ok=True)
    if times is None:
        times = np.arange(0.0, 2.0 * t_switch + 0.25, 0.5)
    if x is None:
        x = np.linspace(0.0, 10.0, 400)

    inviscid = SolutionParams(c1=c1, g=g, k_h=0.0)
    viscous = SolutionParams(c1=c1, g=g, k_h=k_h_late)

    fig, ax = plt.subplots(figsize=(7.5, 4.2))
    cmap = plt.get_cmap("viridis")
    for t in times:
        if t < t_switch:
            hb = analytic.bathymetry_euler(x, t, inviscid)
            style = "--"
        else:
            hb = analytic.bathymetry_ns(x, t, viscous)
            style = "-"
        ax.plot(x, hb, style, lw=1.0, color=cmap(t / max(times)))
    sm = plt.cm.ScalarMappable(cmap=cmap,
                               norm=plt.Normalize(vmin=0.0, vmax=max(times)))
    fig.colorbar(sm, ax=ax, label="t [s]")
    ax.set(
        xlabel="x [m]",
        ylabel="h_B [m]",
        title=(f"bed depth, inviscid for t < {t_switch:g} s, "
               f"k_h = {k_h_late:g} after"),
    )
    fig.tight_layout()
    fig.savefig(out_path, format=out_path.suffix.lstrip(".") or "svg")
    plt.close(fig)
    return out_path
