"""Renderers for conditional-density comparison CSV outputs."""

from .csvio import SLICE_COLUMNS, GridSurface, read_grid_csv, read_slice_csv
from .render import (ESTIMATE_LINEWIDTH, SURFACE_PANEL_LABELS, TRUTH_LINEWIDTH,
                     PlotJob, build_slice_figure, build_surfaces_figure,
                     render_slice, render_surfaces)

__version__ = "0.1.0"

__all__ = [
    "SLICE_COLUMNS",
    "GridSurface",
    "read_grid_csv",
    "read_slice_csv",
    "PlotJob",
    "SURFACE_PANEL_LABELS",
    "TRUTH_LINEWIDTH",
    "ESTIMATE_LINEWIDTH",
    "build_slice_figure",
    "build_surfaces_figure",
    "render_slice",
    "render_surfaces",
    "__version__",
]
