"""Command line interface.

Subcommands: simulate, fit-eval, grid, compare, convergence,
variance-check, bias-scaling. All numeric output uses 17 significant
digits; Undefined estimates become empty CSV cells (JSON null), and
fit-eval prints the word "undefined". Usage errors exit 2, runtime
failures (unreadable files, invalid values) exit 1.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from ._fmt import fmt_float, write_csv_atomic
from .bench import (EstimatorSpec, ExperimentConfig, run_bias_scaling,
                    run_comparison, run_convergence, run_variance_check)
from .conditional_density import is_undefined
from .simulation import FrankCopula, SimulationModel


def _common_flags(sub):
    sub.add_argument("--seed", type=int, default=None,
                     help="RNG seed (default 0; overrides config base_seed when given)")
    sub.add_argument("--threads", type=int, default=1,
                     help="worker threads for replicate loops (results do not depend on this)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcdens",
        description="conditional density estimation and Monte Carlo benchmarks")
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("simulate", help="draw (x, y) pairs from the Frank-copula model")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--theta", type=float, default=100.0)
    p.add_argument("--out", required=True)
    _common_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = subs.add_parser("fit-eval", help="fit an estimator on a CSV sample and evaluate one point")
    _estimator_flags(p)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--y", type=float, required=True)
    _common_flags(p)
    p.set_defaults(func=cmd_fit_eval)

    p = subs.add_parser("grid", help="evaluate an estimator on a product grid")
    _estimator_flags(p)
    p.add_argument("--xmin", type=float, required=True)
    p.add_argument("--xmax", type=float, required=True)
    p.add_argument("--nx", type=int, required=True)
    p.add_argument("--ymin", type=float, required=True)
    p.add_argument("--ymax", type=float, required=True)
    p.add_argument("--ny", type=int, required=True)
    p.add_argument("--out", required=True)
    _common_flags(p)
    p.set_defaults(func=cmd_grid)

    for name, fn, help_text in (
            ("compare", cmd_compare, "qc/dk/ll against truth on one sample"),
            ("convergence", cmd_convergence, "error versus sample size"),
            ("variance-check", cmd_variance, "empirical variance versus the asymptotic constant"),
            ("bias-scaling", cmd_bias, "bias versus copula bandwidth")):
        p = subs.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="experiment config JSON")
        p.add_argument("--out-dir", required=True)
        _common_flags(p)
        p.set_defaults(func=fn)

    return parser


def _estimator_flags(p):
    p.add_argument("--in", dest="infile", required=True, help="CSV with header x,y")
    p.add_argument("--method", choices=("qc", "dk", "ll"), required=True)
    p.add_argument("--kernel", default="epanechnikov",
                   help="smoothing kernel family (epanechnikov, gaussian, uniform)")
    p.add_argument("--copula-kernel", default="beta",
                   help="qc copula smoother: beta or a product kernel family")
    p.add_argument("--degree", type=int, default=1, help="local polynomial degree (0 or 1)")
    clip = p.add_mutually_exclusive_group()
    clip.add_argument("--clip", type=float, default=None,
                      help="clipping threshold on the x-denominator density")
    clip.add_argument("--no-clip", action="store_true",
                      help="leave zero denominators Undefined")
    p.add_argument("--fallback", choices=("zero", "marginal_kde"), default="marginal_kde",
                   help="value substituted below the clipping threshold")


def _estimator_spec(args) -> EstimatorSpec:
    obj = {"method": args.method, "kernel": args.kernel,
           "copula_kernel": args.copula_kernel, "degree": args.degree,
           "fallback": args.fallback}
    if args.no_clip:
        obj["clip"] = None
    elif args.clip is not None:
        obj["clip"] = args.clip
    return EstimatorSpec.from_obj(obj)


def _read_sample(path):
    from .empirical import PairedSample
    data = np.loadtxt(path, delimiter=",", skiprows=1, ndmin=2)
    if data.shape[1] != 2:
        raise ValueError("input CSV must have two columns (x, y)")
    return PairedSample(data[:, 0], data[:, 1])


def _fit(args):
    from .bench import _fit_spec
    sample = _read_sample(args.infile)
    return _fit_spec(_estimator_spec(args), sample)


def _load_config(args) -> ExperimentConfig:
    with open(args.config) as fh:
        obj = json.load(fh)
    cfg = ExperimentConfig.from_dict(obj)
    if args.seed is not None:
        cfg = ExperimentConfig(**{**cfg.__dict__, "base_seed": args.seed})
    return cfg


def cmd_simulate(args) -> int:
    seed = 0 if args.seed is None else args.seed
    model = SimulationModel(FrankCopula(args.theta))
    sample = model.sample_xy(args.n, seed)
    rows = [[fmt_float(x), fmt_float(y)] for x, y in zip(sample.xs, sample.ys)]
    write_csv_atomic(args.out, ("x", "y"), rows)
    return 0


def cmd_fit_eval(args) -> int:
    est = _fit(args)
    value = est.eval(args.x, args.y)
    print("undefined" if is_undefined(value) else fmt_float(value))
    return 0


def cmd_grid(args) -> int:
    est = _fit(args)
    xs = np.linspace(args.xmin, args.xmax, args.nx)
    ys = np.linspace(args.ymin, args.ymax, args.ny)
    grid = est.eval_grid(xs, ys)
    rows = []
    for i, xv in enumerate(xs):
        for j, yv in enumerate(ys):
            rows.append([fmt_float(xv), fmt_float(yv), fmt_float(grid[i, j])])
    write_csv_atomic(args.out, ("x", "y", "estimate"), rows)
    return 0


def cmd_compare(args) -> int:
    report = run_comparison(_load_config(args), threads=args.threads)
    report.write_outputs(args.out_dir)
    return 0


def _write_experiment(report, out_dir: str) -> None:
    import os
    os.makedirs(out_dir, exist_ok=True)
    report.write_csv(os.path.join(out_dir, "report.csv"))
    report.write_records_csv(os.path.join(out_dir, "records.csv"))
    report.write_summary_json(os.path.join(out_dir, "summary.json"))


def cmd_convergence(args) -> int:
    _write_experiment(run_convergence(_load_config(args), threads=args.threads), args.out_dir)
    return 0


def cmd_variance(args) -> int:
    _write_experiment(run_variance_check(_load_config(args), threads=args.threads), args.out_dir)
    return 0


def cmd_bias(args) -> int:
    _write_experiment(run_bias_scaling(_load_config(args), threads=args.threads), args.out_dir)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print("error: %s" % (exc,), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
