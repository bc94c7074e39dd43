"""Script entry points: qcplot-surfaces and qcplot-slice.

Positional CSV inputs plus --out. Bad usage exits 2 (argparse);
unreadable or mismatched inputs exit 1 with a message on stderr.
"""

from __future__ import annotations

import argparse
import sys

from .render import render_slice, render_surfaces


def main_surfaces(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qcplot-surfaces",
        description="render truth/qc/dk/ll grid CSVs as one 2x2 surface-panel image")
    parser.add_argument("grids", nargs=4, metavar="GRID_CSV",
                        help="grid files in panel order: truth, qc, dk, ll")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        render_surfaces(args.grids, args.out)
    except (ValueError, OSError) as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return 1
    return 0


def main_slice(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="qcplot-slice",
        description="render a y,truth,qc,dk,ll slice CSV as a line chart")
    parser.add_argument("slice_csv", metavar="SLICE_CSV")
    parser.add_argument("--out", required=True, help="output image path")
    args = parser.parse_args(argv)
    try:
        render_slice(args.slice_csv, args.out)
    except (ValueError, OSError) as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main_surfaces())
