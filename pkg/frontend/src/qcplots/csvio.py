"""Readers for the comparison CSV formats.

Grid files carry columns x,y,value in x-major order over a full
product grid; empty value cells mean Undefined and become NaN. Slice
files carry columns y,truth,qc,dk,ll. Readers validate shape and
column names and never modify the files.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

SLICE_COLUMNS = ("y", "truth", "qc", "dk", "ll")


@dataclass(frozen=True)
class GridSurface:
    """Values on a product grid; values[i, j] sits at (xs[i], ys[j])."""

    xs: np.ndarray
    ys: np.ndarray
    values: np.ndarray

    def same_grid(self, other: "GridSurface") -> bool:
        return (self.xs.shape == other.xs.shape and self.ys.shape == other.ys.shape
                and np.array_equal(self.xs, other.xs) and np.array_equal(self.ys, other.ys))


def _read_columns(path, expected_header):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or tuple(rows[0]) != tuple(expected_header):
        raise ValueError("%s: expected header %s, found %s"
                         % (path, ",".join(expected_header), ",".join(rows[0]) if rows else "nothing"))
    body = rows[1:]
    if not body:
        raise ValueError("%s: no data rows" % (path,))
    if any(len(r) != len(expected_header) for r in body):
        raise ValueError("%s: ragged rows" % (path,))
    cols = []
    for k in range(len(expected_header)):
        cols.append(np.array([float(r[k]) if r[k] != "" else np.nan for r in body]))
    return cols


def read_grid_csv(path) -> GridSurface:
    """Load one x,y,value grid file, reconstructing the axes."""
    xcol, ycol, vcol = _read_columns(path, ("x", "y", "value"))
    xs = np.unique(xcol)
    ys = np.unique(ycol)
    if xs.size * ys.size != xcol.size:
        raise ValueError("%s: rows do not form a full product grid" % (path,))
    if not np.array_equal(np.repeat(xs, ys.size), xcol) \
            or not np.array_equal(np.tile(ys, xs.size), ycol):
        raise ValueError("%s: rows are not in x-major grid order" % (path,))
    return GridSurface(xs, ys, vcol.reshape(xs.size, ys.size))


def read_slice_csv(path) -> dict:
    """Load a slice file as a column-name -> array mapping."""
    cols = _read_columns(path, SLICE_COLUMNS)
    return dict(zip(SLICE_COLUMNS, cols))
