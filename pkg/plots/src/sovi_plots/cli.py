"""Command line for turning benchmark curve CSVs into figures."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import CurveFormatError, PlotSpec, render_convergence_plot


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sovi-plot",
        description="Plot mean error vs iteration, one curve per algorithm, "
        "from a benchmark curve CSV.",
    )
    parser.add_argument("--input", type=Path, required=True, help="curve CSV file")
    parser.add_argument("--output", type=Path, required=True,
                        help="image file to write (format from the extension)")
    parser.add_argument("--log-y", action="store_true",
                        help="logarithmic error axis")
    parser.add_argument("--only", action="append", default=None, metavar="NAME",
                        help="plot only this algorithm (repeatable)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    spec = PlotSpec(
        input_csv=args.input,
        output_image=args.output,
        log_y=args.log_y,
        only=tuple(args.only) if args.only is not None else None,
    )
    try:
        plotted = render_convergence_plot(spec)
    except CurveFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"{args.output}: {len(plotted)} curves ({', '.join(plotted)})")
    return 0


def entry_point() -> None:
    sys.exit(main())
