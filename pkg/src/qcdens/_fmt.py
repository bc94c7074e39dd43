"""Numeric formatting and atomic file output shared by bench and cli.

All floats are printed with 17 significant digits so CSV/JSON round-trip
to the same double. Undefined (NaN) becomes an empty CSV cell and a JSON
null. Files are written to a temp name and renamed into place.
"""

from __future__ import annotations

import json
import math
import os


def fmt_float(x) -> str:
    x = float(x)
    if math.isnan(x):
        return ""
    return format(x, ".17g")


def json_safe(obj):
    """Recursively replace NaN floats with None for strict JSON."""
    if isinstance(obj, dict):
        return {k: json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [json_safe(v) for v in obj]
    if isinstance(obj, float) and math.isnan(obj):
        return None
    return obj


def atomic_write_text(path: str, text: str) -> None:
    tmp = "%s.%d.tmp" % (path, os.getpid())
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def write_csv_atomic(path: str, header, rows) -> None:
    """Write rows of already-stringified cells under a header line."""
    lines = [",".join(header)]
    lines.extend(",".join(row) for row in rows)
    atomic_write_text(path, "\n".join(lines) + "\n")


def write_json_atomic(path: str, obj) -> None:
    atomic_write_text(path, json.dumps(json_safe(obj), indent=2) + "\n")
