"""End-to-end tests: real comparison outputs in, images out.

The estimation package is exercised only through its CLI, the same way
a user would chain the two tools.
"""

import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[2]
GRID_NAMES = ("grid_truth.csv", "grid_qc.csv", "grid_dk.csv", "grid_ll.csv")


def run(cmd, **kw):
    env = dict(os.environ, QCDENS_BACKEND="numpy")
    return subprocess.run(cmd, capture_output=True, text=True, env=env, **kw)


def run_compare(config_obj, out_dir, config_path):
    config_path.write_text(json.dumps(config_obj))
    res = run([sys.executable, "-m", "qcdens", "compare",
               "--config", str(config_path), "--out-dir", str(out_dir)])
    assert res.returncode == 0, res.stderr
    return out_dir


@pytest.fixture(scope="module")
def compare_dir(tmp_path_factory):
    base = tmp_path_factory.mktemp("cmp")
    cfg = {"model": {"theta": 100.0}, "ns": [100], "reps": 1, "base_seed": 0,
           "grid": {"xmin": -5.0, "xmax": 5.0, "nx": 21,
                    "ymin": -3.0, "ymax": 3.0, "ny": 13},
           "slice_x": 2.0}
    return run_compare(cfg, base / "out", base / "cfg.json")


@pytest.fixture(scope="module")
def other_grid_dir(tmp_path_factory):
    base = tmp_path_factory.mktemp("cmp_other")
    cfg = {"model": {"theta": 100.0}, "ns": [100], "reps": 1, "base_seed": 0,
           "grid": {"xmin": -4.0, "xmax": 4.0, "nx": 9,
                    "ymin": -2.0, "ymax": 2.0, "ny": 7},
           "slice_x": 2.0}
    return run_compare(cfg, base / "out", base / "cfg.json")


def grid_paths(out_dir):
    return [str(out_dir / name) for name in GRID_NAMES]


def test_surfaces_from_comparison_run(compare_dir, tmp_path):
    out = tmp_path / "panels.png"
    res = run(["qcplot-surfaces", *grid_paths(compare_dir), "--out", str(out)])
    assert res.returncode == 0, res.stderr
    assert out.stat().st_size > 0


def test_slice_from_comparison_run(compare_dir, tmp_path):
    out = tmp_path / "slice.png"
    res = run(["qcplot-slice", str(compare_dir / "slice_x2.csv"), "--out", str(out)])
    assert res.returncode == 0, res.stderr
    assert out.stat().st_size > 0


def test_default_comparison_config_renders(tmp_path):
    cfg_path = REPO_ROOT / "configs" / "compare_default.json"
    out_dir = run_compare(json.loads(cfg_path.read_text()), tmp_path / "out",
                          tmp_path / "cfg.json")
    panels = tmp_path / "panels.png"
    slice_img = tmp_path / "slice.png"
    res = run(["qcplot-surfaces", *grid_paths(out_dir), "--out", str(panels)])
    assert res.returncode == 0, res.stderr
    res = run(["qcplot-slice", str(out_dir / "slice_x2.csv"), "--out", str(slice_img)])
    assert res.returncode == 0, res.stderr
    assert panels.stat().st_size > 0
    assert slice_img.stat().st_size > 0


def test_grid_mismatch_exits_nonzero(compare_dir, other_grid_dir, tmp_path):
    mixed = grid_paths(compare_dir)[:3] + [str(other_grid_dir / "grid_ll.csv")]
    res = run(["qcplot-surfaces", *mixed, "--out", str(tmp_path / "x.png")])
    assert res.returncode == 1
    assert res.stderr.startswith("error:")
    assert "mismatch" in res.stderr
    assert not (tmp_path / "x.png").exists()


def test_wrong_file_kind_exits_nonzero(compare_dir, tmp_path):
    res = run(["qcplot-slice", str(compare_dir / "grid_qc.csv"),
               "--out", str(tmp_path / "x.png")])
    assert res.returncode == 1
    assert res.stderr.startswith("error:")


def test_usage_errors_exit_2(compare_dir, tmp_path):
    res = run(["qcplot-surfaces", *grid_paths(compare_dir)])  # no --out
    assert res.returncode == 2
    res = run(["qcplot-surfaces", str(compare_dir / "grid_qc.csv"),
               "--out", str(tmp_path / "x.png")])  # needs four inputs
    assert res.returncode == 2
