"""Figure builders and file renderers for grids and slices.

Surfaces are drawn as 2x2 (by default) 3D panels sharing one z-range;
Undefined cells appear as gaps. The slice chart draws the truth with
the heaviest stroke. Output size is fixed by the layout, so image
dimensions are deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass

import matplotlib
import numpy as np

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .csvio import SLICE_COLUMNS, read_grid_csv, read_slice_csv  # noqa: E402

SURFACE_PANEL_LABELS = ("truth", "quantile-copula", "double kernel", "local polynomial")
TRUTH_LINEWIDTH = 3.0
ESTIMATE_LINEWIDTH = 1.5
_DPI = 100


@dataclass(frozen=True)
class PlotJob:
    """A surface-panel rendering task: inputs, output path, layout."""

    inputs: tuple
    out: str
    layout: tuple = (2, 2)
    labels: tuple = SURFACE_PANEL_LABELS

    def __post_init__(self):
        rows, cols = self.layout
        if rows * cols < len(self.inputs):
            raise ValueError("layout %dx%d cannot hold %d panels"
                             % (rows, cols, len(self.inputs)))
        if len(self.labels) != len(self.inputs):
            raise ValueError("need one label per input")

    def run(self) -> str:
        grids = [read_grid_csv(p) for p in self.inputs]
        for path, grid in zip(self.inputs[1:], grids[1:]):
            if not grids[0].same_grid(grid):
                raise ValueError("grid mismatch: %s and %s cover different (x, y) grids"
                                 % (self.inputs[0], path))
        fig = build_surfaces_figure(grids, self.labels, self.layout)
        fig.savefig(self.out, dpi=_DPI)
        plt.close(fig)
        return self.out


def build_surfaces_figure(grids, labels, layout=(2, 2)):
    rows, cols = layout
    fig = plt.figure(figsize=(5.0 * cols, 4.0 * rows))
    # symmetric margins with panel edges on whole pixels, so equal
    # inputs render as pixel-equal panels
    fig.subplots_adjust(left=0.06, right=0.94, bottom=0.06, top=0.94,
                        wspace=0.2, hspace=0.2)
    finite = [g.values[np.isfinite(g.values)] for g in grids]
    lo = min((v.min() for v in finite if v.size), default=0.0)
    hi = max((v.max() for v in finite if v.size), default=1.0)
    if hi <= lo:
        hi = lo + 1.0
    for k, (grid, label) in enumerate(zip(grids, labels)):
        ax = fig.add_subplot(rows, cols, k + 1, projection="3d")
        gx, gy = np.meshgrid(grid.xs, grid.ys, indexing="ij")
        if grid.xs.size < 2 or grid.ys.size < 2:
            ax.scatter(gx.ravel(), gy.ravel(), grid.values.ravel())
        else:
            ax.plot_surface(gx, gy, grid.values, cmap="viridis",
                            vmin=lo, vmax=hi, linewidth=0)
        ax.set_zlim(lo, hi)
        ax.set_xlabel("x")
        ax.set_ylabel("y")
        ax.set_title(label)
    return fig


def render_surfaces(grid_paths, out, layout=(2, 2), labels=None) -> str:
    """Render grid CSVs (truth, qc, dk, ll) into one panel image."""
    if labels is None:
        labels = SURFACE_PANEL_LABELS[:len(grid_paths)]
    return PlotJob(tuple(grid_paths), str(out), tuple(layout), tuple(labels)).run()


def build_slice_figure(data):
    fig, ax = plt.subplots(figsize=(8.0, 5.0))
    ax.plot(data["y"], data["truth"], color="black", linewidth=TRUTH_LINEWIDTH,
            label="truth")
    for name in SLICE_COLUMNS[2:]:
        ax.plot(data["y"], data[name], linewidth=ESTIMATE_LINEWIDTH, label=name)
    ax.set_xlabel("y")
    ax.set_ylabel("density")
    ax.legend()
    return fig


def render_slice(slice_path, out) -> str:
    """Render a y,truth,qc,dk,ll slice CSV as a line chart."""
    fig = build_slice_figure(read_slice_csv(slice_path))
    fig.savefig(str(out), dpi=_DPI)
    plt.close(fig)
    return str(out)
