"""Render benchmark curve CSVs as convergence plots.

The input contract is the benchmark harness curve file: a CSV with header
``algorithm,iteration,mean_error,stderr`` and one row per (algorithm,
iteration). Any deviation from that schema aborts rendering; nothing is
plotted from partially valid data.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

EXPECTED_HEADER = ["algorithm", "iteration", "mean_error", "stderr"]

FIGURE_SIZE = (8.0, 5.0)
# tab10 covers the usual sweep (7 entrants); cycles for larger ones.
COLOR_CYCLE = plt.get_cmap("tab10").colors


class CurveFormatError(ValueError):
    """The input file does not follow the curve-CSV contract."""


@dataclass(frozen=True)
class PlotSpec:
    input_csv: Path
    output_image: Path
    log_y: bool = False
    only: tuple[str, ...] | None = None


@dataclass(frozen=True)
class Curve:
    algorithm: str
    iterations: np.ndarray
    mean_error: np.ndarray
    stderr: np.ndarray


def read_curves(path: Path) -> list[Curve]:
    """Parse and validate a curve CSV; curves come back sorted by name."""
    path = Path(path)
    if not path.exists():
        raise CurveFormatError(f"{path}: no such file")
    with path.open(newline="") as handle:
        rows = list(csv.reader(handle))
    if not rows:
        raise CurveFormatError(f"{path}: empty file")
    if rows[0] != EXPECTED_HEADER:
        raise CurveFormatError(
            f"{path}: bad header {rows[0]!r}, expected {EXPECTED_HEADER!r}"
        )
    if len(rows) == 1:
        raise CurveFormatError(f"{path}: no data rows")
    series: dict[str, list[tuple[int, float, float]]] = {}
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 4:
            raise CurveFormatError(f"{path}:{lineno}: expected 4 fields, got {len(row)}")
        algorithm, raw_iter, raw_mean, raw_stderr = row
        if not algorithm:
            raise CurveFormatError(f"{path}:{lineno}: empty algorithm name")
        try:
            iteration = int(raw_iter)
            mean_error = float(raw_mean)
            stderr = float(raw_stderr)
        except ValueError as exc:
            raise CurveFormatError(f"{path}:{lineno}: non-numeric field: {exc}") from exc
        if iteration < 1:
            raise CurveFormatError(f"{path}:{lineno}: iteration must be >= 1")
        if not (mean_error >= 0.0) or not (stderr >= 0.0):
            raise CurveFormatError(
                f"{path}:{lineno}: mean_error and stderr must be nonnegative finite"
            )
        series.setdefault(algorithm, []).append((iteration, mean_error, stderr))
    curves = []
    for algorithm in sorted(series):
        points = series[algorithm]
        iterations = np.array([p[0] for p in points])
        if len(set(iterations.tolist())) != len(points):
            raise CurveFormatError(f"{path}: duplicate iteration for {algorithm!r}")
        order = np.argsort(iterations)
        curves.append(
            Curve(
                algorithm=algorithm,
                iterations=iterations[order],
                mean_error=np.array([p[1] for p in points])[order],
                stderr=np.array([p[2] for p in points])[order],
            )
        )
    return curves


def render_convergence_plot(spec: PlotSpec) -> list[str]:
    """Write the plot described by ``spec``; returns the plotted curve names.

    One line per algorithm (mean error vs iteration) with a shaded band of
    one standard error. Colors follow the lexicographic order of algorithm
    names, so renders are deterministic for a given CSV and spec.
    """
    curves = read_curves(spec.input_csv)
    if spec.only is not None:
        wanted = set(spec.only)
        known = {c.algorithm for c in curves}
        missing = wanted - known
        if missing:
            raise CurveFormatError(
                f"no curves match filter entries {sorted(missing)}; "
                f"available: {sorted(known)}"
            )
        curves = [c for c in curves if c.algorithm in wanted]
    fig, ax = plt.subplots(figsize=FIGURE_SIZE)
    try:
        for index, curve in enumerate(curves):
            color = COLOR_CYCLE[index % len(COLOR_CYCLE)]
            ax.plot(curve.iterations, curve.mean_error, label=curve.algorithm,
                    color=color, linewidth=1.6)
            ax.fill_between(
                curve.iterations,
                curve.mean_error - curve.stderr,
                curve.mean_error + curve.stderr,
                color=color, alpha=0.2, linewidth=0,
            )
        if spec.log_y:
            ax.set_yscale("log")
        ax.set_xlabel("iteration")
        ax.set_ylabel("mean error")
        ax.legend()
        ax.grid(True, alpha=0.3)
        fig.tight_layout()
        spec.output_image.parent.mkdir(parents=True, exist_ok=True)
        fig.savefig(spec.output_image)
    finally:
        plt.close(fig)
    return [c.algorithm for c in curves]
