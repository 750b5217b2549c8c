"""Heatmap rendering and level-set contours for sweep grids.

The heatmap is drawn cell-per-pixel-bin with no interpolation, so the
image carries exactly the CSV values; discontinuous jumps between
neighboring cells stay sharp. Contours are extracted by marching squares
on the grid points themselves: every contour vertex lies on an edge
between two adjacent grid points whose values straddle the level.
"""

import math
from dataclasses import dataclass

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be pinned first)
from matplotlib.collections import LineCollection  # noqa: E402

from .reader import read_sweep_csv

DEFAULT_CONTOUR_LEVEL = 8.0 / 3.0
_CONTOUR_COLOR = "red"

Point = tuple[float, float]
Segment = tuple[Point, Point]


@dataclass(frozen=True)
class PlotJob:
    """One rendering task: CSV in, PNG out.

    vmin/vmax clamp the color range (data range when omitted); a contour
    column requests a level-set overlay, by default at 8/3.
    """

    csv_path: str
    quantity: str
    out_path: str
    x_label: str = "x"
    y_label: str = "y"
    vmin: float | None = None
    vmax: float | None = None
    contour_column: str | None = None
    contour_level: float = DEFAULT_CONTOUR_LEVEL
    cmap: str = "viridis"
    title: str | None = None
    dpi: int = 100

    def __post_init__(self) -> None:
        for name in ("vmin", "vmax"):
            bound = getattr(self, name)
            if bound is not None and not math.isfinite(bound):
                raise ValueError(f"{name} must be finite, got {bound!r}")
        if self.vmin is not None and self.vmax is not None and not self.vmin < self.vmax:
            raise ValueError(f"need vmin < vmax, got [{self.vmin}, {self.vmax}]")
        if not math.isfinite(self.contour_level):
            raise ValueError(f"contour level must be finite, got {self.contour_level!r}")
        if self.dpi < 10:
            raise ValueError(f"dpi too small: {self.dpi!r}")


# Marching-squares lookup. Corners of a cell, counterclockwise from the
# low-x/low-y one: 0=(i,j) 1=(i+1,j) 2=(i+1,j+1) 3=(i,j+1); edges:
# 0=bottom(c0-c1) 1=right(c1-c2) 2=top(c3-c2) 3=left(c0-c3). The case key
# sets bit k when corner k lies above the level; values are the edge
# pairs joined by one segment. Cases 5 and 10 are saddles, resolved by
# the cell-center average.
_SEGMENT_TABLE = {
    1: [(3, 0)],
    2: [(0, 1)],
    3: [(3, 1)],
    4: [(1, 2)],
    6: [(0, 2)],
    7: [(3, 2)],
    8: [(3, 2)],
    9: [(0, 2)],
    11: [(1, 2)],
    12: [(3, 1)],
    13: [(0, 1)],
    14: [(3, 0)],
}
_SADDLE = {
    (5, True): [(0, 1), (3, 2)],
    (5, False): [(3, 0), (1, 2)],
    (10, True): [(3, 0), (1, 2)],
    (10, False): [(0, 1), (3, 2)],
}


def _edge_point(edge, i, j, xs, ys, values, level) -> Point:
    """Linear interpolation of the level crossing on one cell edge."""

    def lerp(a, b, va, vb):
        return a + (b - a) * (level - va) / (vb - va)

    v = values
    if edge == 0:
        return (lerp(xs[i], xs[i + 1], v[j, i], v[j, i + 1]), ys[j])
    if edge == 1:
        return (xs[i + 1], lerp(ys[j], ys[j + 1], v[j, i + 1], v[j + 1, i + 1]))
    if edge == 2:
        return (lerp(xs[i], xs[i + 1], v[j + 1, i], v[j + 1, i + 1]), ys[j + 1])
    return (xs[i], lerp(ys[j], ys[j + 1], v[j, i], v[j + 1, i]))


def contour_segments(xs, ys, values, level) -> list[Segment]:
    """Level-set segments of a (ny, nx) grid by marching squares.

    Segment endpoints sit exactly on grid edges whose endpoint values
    straddle the level; a constant grid (or any grid never crossing the
    level) yields no segments.
    """
    values = np.asarray(values, dtype=float)
    ny, nx = values.shape
    if (xs.size, ys.size) != (nx, ny):
        raise ValueError(f"axis sizes {xs.size} x {ys.size} do not match grid {nx} x {ny}")
    above = values > level
    segments: list[Segment] = []
    for j in range(ny - 1):
        for i in range(nx - 1):
            case = (
                int(above[j, i])
                | int(above[j, i + 1]) << 1
                | int(above[j + 1, i + 1]) << 2
                | int(above[j + 1, i]) << 3
            )
            if case in (0, 15):
                continue
            if case in (5, 10):
                center = 0.25 * (
                    values[j, i] + values[j, i + 1] + values[j + 1, i] + values[j + 1, i + 1]
                )
                pairs = _SADDLE[(case, bool(center > level))]
            else:
                pairs = _SEGMENT_TABLE[case]
            for e1, e2 in pairs:
                segments.append(
                    (
                        _edge_point(e1, i, j, xs, ys, values, level),
                        _edge_point(e2, i, j, xs, ys, values, level),
                    )
                )
    return segments


def _extent(xs, ys) -> tuple[float, float, float, float]:
    """Image bounds placing each value at the center of its pixel bin."""

    def lo(axis):
        return axis[0] - 0.5 * (axis[1] - axis[0])

    def hi(axis):
        return axis[-1] + 0.5 * (axis[-1] - axis[-2])

    return (lo(xs), hi(xs), lo(ys), hi(ys))


def render_heatmap(job: PlotJob) -> np.ndarray:
    """Render one PlotJob to PNG; returns the exact (ny, nx) grid drawn."""
    grid = read_sweep_csv(job.csv_path)
    values = grid.grid(job.quantity)
    overlay = None
    if job.contour_column is not None:
        overlay = contour_segments(
            grid.xs, grid.ys, grid.grid(job.contour_column), job.contour_level
        )

    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    try:
        image = ax.imshow(
            values,
            origin="lower",
            interpolation="nearest",
            aspect="auto",
            extent=_extent(grid.xs, grid.ys),
            cmap=job.cmap,
            vmin=job.vmin,
            vmax=job.vmax,
        )
        fig.colorbar(image, ax=ax, label=job.quantity)
        if overlay:
            ax.add_collection(LineCollection(overlay, colors=_CONTOUR_COLOR, linewidths=1.5))
        ax.set_xlabel(job.x_label)
        ax.set_ylabel(job.y_label)
        if job.title:
            ax.set_title(job.title)
        fig.savefig(
            job.out_path,
            dpi=job.dpi,
            format="png",
            metadata={"Software": "plotrender"},
        )
    finally:
        plt.close(fig)
    return values
