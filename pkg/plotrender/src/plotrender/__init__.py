"""Heatmap rendering for parameter-sweep CSV grids."""

from ._version import __version__
from .reader import MalformedCsvError, SweepGrid, read_sweep_csv
from .render import DEFAULT_CONTOUR_LEVEL, PlotJob, contour_segments, render_heatmap

__all__ = [
    "DEFAULT_CONTOUR_LEVEL",
    "MalformedCsvError",
    "PlotJob",
    "SweepGrid",
    "__version__",
    "contour_segments",
    "read_sweep_csv",
    "render_heatmap",
]
