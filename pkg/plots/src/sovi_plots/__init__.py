"""Plotting companion for the MDP solver benchmark harness: reads the
public curve-CSV contract and renders convergence figures."""

from .render import Curve, CurveFormatError, PlotSpec, read_curves, render_convergence_plot

__version__ = "0.1.0"

__all__ = [
    "Curve",
    "CurveFormatError",
    "PlotSpec",
    "read_curves",
    "render_convergence_plot",
]
