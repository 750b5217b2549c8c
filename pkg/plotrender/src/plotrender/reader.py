"""Reader for sweep CSV grids.

Input files carry the fixed header ``x_name,y_name,c_l1,c_r,negativity,
steering_s,steerable,phase`` (unused columns left empty) and one row per
point of a full rectangular grid. The reader rebuilds the two axes and
exposes any numeric column as a (ny, nx) array without touching the
values.
"""

import csv
from dataclasses import dataclass

import numpy as np

X_COLUMN = "x_name"
Y_COLUMN = "y_name"


class MalformedCsvError(ValueError):
    """The input file is not a complete, well-formed sweep grid."""


@dataclass(frozen=True)
class SweepGrid:
    """A rectangular sweep grid with lazy per-column parsing.

    xs and ys are the sorted distinct axis values; cells[name] holds the
    raw text cells in (ny, nx) layout, so grid() parses numbers exactly
    once per requested column.
    """

    path: str
    xs: np.ndarray
    ys: np.ndarray
    cells: dict[str, np.ndarray]

    @property
    def columns(self) -> tuple[str, ...]:
        return tuple(self.cells)

    def grid(self, column: str) -> np.ndarray:
        """Values of one numeric column as a (ny, nx) float array."""
        if column in (X_COLUMN, Y_COLUMN):
            raise ValueError(f"{column!r} is an axis, not a plottable column")
        if column not in self.cells:
            raise KeyError(
                f"column {column!r} not in {self.path} (has {', '.join(self.cells)})"
            )
        raw = self.cells[column]
        out = np.empty(raw.shape)
        for (jy, ix), text in np.ndenumerate(raw):
            if text == "":
                raise MalformedCsvError(
                    f"{self.path}: column {column!r} is empty at "
                    f"x={self.xs[ix]!r}, y={self.ys[jy]!r}"
                )
            try:
                out[jy, ix] = float(text)
            except ValueError:
                raise MalformedCsvError(
                    f"{self.path}: column {column!r} has non-numeric cell {text!r}"
                ) from None
        return out


def _parse_float(text: str, what: str, path: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise MalformedCsvError(f"{path}: {what} cell {text!r} is not a number") from None


def read_sweep_csv(path: str) -> SweepGrid:
    """Load a sweep CSV and rebuild its rectangular grid.

    Row order is not assumed; every (x, y) pair must appear exactly once
    and the pairs must fill the full cartesian product of the axis values.
    """
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            rows = list(csv.reader(fh))
    except (UnicodeDecodeError, csv.Error) as exc:
        raise MalformedCsvError(f"{path}: not a text CSV file ({exc})") from None
    if not rows:
        raise MalformedCsvError(f"{path}: empty file")
    header = rows[0]
    if len(header) < 3 or header[0] != X_COLUMN or header[1] != Y_COLUMN:
        raise MalformedCsvError(
            f"{path}: expected a header starting with {X_COLUMN},{Y_COLUMN}, got {header[:3]}"
        )
    if len(set(header)) != len(header):
        raise MalformedCsvError(f"{path}: duplicate column names in header")
    body = rows[1:]
    if not body:
        raise MalformedCsvError(f"{path}: no data rows")
    for k, row in enumerate(body):
        if len(row) != len(header):
            raise MalformedCsvError(
                f"{path}: row {k + 2} has {len(row)} cells, header has {len(header)}"
            )

    x = np.array([_parse_float(row[0], X_COLUMN, path) for row in body])
    y = np.array([_parse_float(row[1], Y_COLUMN, path) for row in body])
    xs = np.unique(x)
    ys = np.unique(y)
    nx, ny = xs.size, ys.size
    if nx * ny != len(body):
        raise MalformedCsvError(
            f"{path}: {len(body)} rows cannot tile a {nx} x {ny} grid "
            "(duplicate or missing points)"
        )

    # Map each row to its grid cell; searchsorted is exact because xs/ys
    # came from these same values. Full coverage plus the row-count check
    # above rules out duplicates.
    ix = np.searchsorted(xs, x)
    jy = np.searchsorted(ys, y)
    seen = np.zeros((ny, nx), dtype=bool)
    seen[jy, ix] = True
    if not seen.all():
        raise MalformedCsvError(f"{path}: grid has duplicate or missing (x, y) points")

    cells = {}
    for col, name in enumerate(header[2:], start=2):
        raw = np.empty((ny, nx), dtype=object)
        raw[jy, ix] = [row[col] for row in body]
        cells[name] = raw
    return SweepGrid(path=path, xs=xs, ys=ys, cells=cells)
