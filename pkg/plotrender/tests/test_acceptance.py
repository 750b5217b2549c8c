"""Rendering fidelity checks against CSV grids produced by the sweep tool."""

import csv
import subprocess
import sys

import numpy as np

from plotrender import PlotJob, contour_segments, read_sweep_csv, render_heatmap

STEERING_BOUND = 8.0 / 3.0


def parse_grid_by_row_order(path, column_index):
    """Rebuild the (ny, nx) grid straight from the file's x-major row order.

    Independent of the package reader: relies only on the sweep tool's
    documented ordering (x varies slowest, axes ascending).
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))[1:]
    x = np.array([float(row[0]) for row in rows])
    y = np.array([float(row[1]) for row in rows])
    nx = np.unique(x).size
    ny = np.unique(y).size
    assert nx * ny == len(rows)
    values = np.array([float(row[column_index]) for row in rows])
    return values.reshape(nx, ny).T, np.unique(x), np.unique(y)


class TestLosslessRendering:
    def test_pixel_bins_equal_csv_values_exactly(self, zero_t_map_csv, tmp_path):
        out = tmp_path / "map.png"
        job = PlotJob(
            csv_path=str(zero_t_map_csv),
            quantity="negativity",
            out_path=str(out),
            vmin=0.0,
            vmax=1.0,
            x_label="field",
            y_label="single-ion anisotropy",
        )
        binned = render_heatmap(job)
        expected, xs, ys = parse_grid_by_row_order(str(zero_t_map_csv), 4)
        assert binned.shape == (201, 201)
        assert np.array_equal(binned, expected)
        assert out.read_bytes().startswith(b"\x89PNG")


def on_crossing_edge(point, xs, ys, values, level):
    """True when the point sits on a grid edge whose endpoint values
    straddle the level."""
    x, y = point
    above = values > level

    ix = np.searchsorted(xs, x)
    if ix < xs.size and xs[ix] == x:
        jy = np.searchsorted(ys, y, side="right") - 1
        if 0 <= jy < ys.size - 1 and ys[jy] <= y <= ys[jy + 1]:
            if above[jy, ix] != above[jy + 1, ix]:
                return True

    jy = np.searchsorted(ys, y)
    if jy < ys.size and ys[jy] == y:
        ix = np.searchsorted(xs, x, side="right") - 1
        if 0 <= ix < xs.size - 1 and xs[ix] <= x <= xs[ix + 1]:
            if above[jy, ix] != above[jy, ix + 1]:
                return True
    return False


class TestSteeringContour:
    def test_contour_lies_only_on_crossing_cell_edges(self, steering_map_csv):
        grid = read_sweep_csv(str(steering_map_csv))
        values = grid.grid("steering_s")
        assert values.max() > STEERING_BOUND > values.min()
        segments = contour_segments(grid.xs, grid.ys, values, STEERING_BOUND)
        assert segments
        for segment in segments:
            for point in segment:
                assert on_crossing_edge(point, grid.xs, grid.ys, values, STEERING_BOUND), (
                    f"contour vertex {point} is not on a level-crossing grid edge"
                )

    def test_cli_draws_the_contour_overlay(self, steering_map_csv, tmp_path):
        out = tmp_path / "steering.png"
        proc = subprocess.run(
            [
                sys.executable, "-m", "plotrender", str(steering_map_csv),
                "--quantity", "steering_s", "--contour", "--out", str(out),
            ],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert out.read_bytes().startswith(b"\x89PNG")
