"""Monte Carlo benchmark harness for the conditional density estimators.

Experiments are driven by an ExperimentConfig (usually parsed from a
JSON file) and are deterministic: replicate r always uses seed
base_seed + r, jobs are keyed by (n, replicate), and results are merged
in key order, so reports are identical regardless of --threads.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ._fmt import fmt_float, write_csv_atomic, write_json_atomic
from .conditional_density import (ClippingPolicy, QuantileCopulaEstimator,
                                  fit_double_kernel, fit_local_polynomial,
                                  fit_quantile_copula)
from .copula_density import BetaKernelMode, CopulaDensityEstimate, ProductKernelMode
from .empirical import Ecdf, pseudo_observations
from .kde import BandwidthRule, UnivariateKde, bandwidth
from .kernels import KernelSpec, kernel_l2
from .simulation import FrankCopula, SimulationModel

CONVERGENCE_H_ALPHA = 0.2        # h = n^(-1/5), the univariate-optimal power
COPULA_A_ALPHA = 1.0 / 6.0       # a = n^(-1/6), the bivariate-optimal power

# variance-check defaults, frozen after a pilot run (see README):
# at n=8000, h=n^(-1/5), a=n^(-1/6), point (0,0), 200 replications the
# empirical-to-theoretical ratio came out 1.70; second-order terms
# (marginal-KDE variance, pseudo-observation noise) keep it above 1.
VARIANCE_CHECK_H_ALPHA = 0.2
VARIANCE_CHECK_POINT = (0.0, 0.0)

# bias-scaling sign check points: interior, nonzero copula curvature
BIAS_CHECK_POINTS = ((0.0, 0.0), (0.5, 0.0), (0.0, 0.5), (-0.5, 0.5), (0.5, -0.5))


@dataclass(frozen=True)
class GridSpec:
    xmin: float
    xmax: float
    nx: int
    ymin: float
    ymax: float
    ny: int

    def __post_init__(self):
        if not (self.xmin < self.xmax) or not (self.ymin < self.ymax):
            raise ValueError("grid bounds must satisfy min < max")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 points per axis")

    def xs(self) -> np.ndarray:
        return np.linspace(self.xmin, self.xmax, self.nx)

    def ys(self) -> np.ndarray:
        return np.linspace(self.ymin, self.ymax, self.ny)


@dataclass(frozen=True)
class EstimatorSpec:
    """Configurable estimator: method qc, dk or ll plus its knobs.

    clip None means no clipping (zero denominators stay Undefined);
    a positive clip substitutes the fallback below that threshold.
    Shorthand defaults: "dk" is unclipped, "ll" is clipped at 1e-5 with
    the marginal-KDE fallback, mirroring the reference experiment.
    """

    method: str
    kernel: str = "epanechnikov"
    copula_kernel: str = "beta"
    clip: float | None = None
    fallback: str = "marginal_kde"
    degree: int = 1

    def __post_init__(self):
        if self.method not in ("qc", "dk", "ll"):
            raise ValueError("estimator method must be qc, dk or ll")

    @classmethod
    def from_obj(cls, obj) -> "EstimatorSpec":
        if isinstance(obj, str):
            obj = {"method": obj}
        if not isinstance(obj, dict) or "method" not in obj:
            raise ValueError("estimator entry must be a method name or an object with 'method'")
        known = {"method", "kernel", "copula_kernel", "clip", "fallback", "degree"}
        extra = set(obj) - known
        if extra:
            raise ValueError("unknown estimator keys: %s" % (sorted(extra),))
        method = obj["method"]
        kwargs = dict(obj)
        if "clip" not in obj and method == "ll":
            kwargs["clip"] = 1e-5
        return cls(**kwargs)

    def clipping(self) -> ClippingPolicy:
        if self.clip is None:
            return ClippingPolicy.none()
        return ClippingPolicy.threshold(self.clip, self.fallback)

    def copula_mode(self):
        if self.copula_kernel == "beta":
            return BetaKernelMode()
        return ProductKernelMode(KernelSpec(self.copula_kernel))

    def to_dict(self) -> dict:
        return {"method": self.method, "kernel": self.kernel,
                "copula_kernel": self.copula_kernel, "clip": self.clip,
                "fallback": self.fallback, "degree": self.degree}


_DEFAULT_ESTIMATORS = (EstimatorSpec("qc"),
                       EstimatorSpec("dk"),
                       EstimatorSpec("ll", clip=1e-5))


@dataclass(frozen=True)
class ExperimentConfig:
    theta: float = 100.0
    marginal: str = "normal"
    estimators: tuple = _DEFAULT_ESTIMATORS
    grid: GridSpec | None = None
    ns: tuple = (250, 500, 1000, 2000, 4000, 8000)
    reps: int = 100
    base_seed: int = 0
    points: tuple = ((0.0, 0.0),)
    a_grid: tuple = (0.35, 0.25, 0.18, 0.12)
    h_alpha: float = VARIANCE_CHECK_H_ALPHA
    slice_x: float = 2.0

    def __post_init__(self):
        if self.marginal != "normal":
            raise ValueError("only the normal marginal is wired up")
        if len(self.ns) < 1 or any(int(n) != n or n < 1 for n in self.ns):
            raise ValueError("ns must be positive integers")
        if any(b <= a for a, b in zip(self.ns, self.ns[1:])):
            raise ValueError("ns must be strictly increasing")
        if self.reps < 1:
            raise ValueError("reps must be at least 1")
        if len(self.points) < 1:
            raise ValueError("at least one evaluation point is required")
        if len(self.a_grid) < 1 or any(not (a > 0.0) for a in self.a_grid):
            raise ValueError("a_grid values must be positive")
        FrankCopula(self.theta)  # validates theta

    @classmethod
    def from_dict(cls, obj: dict) -> "ExperimentConfig":
        if not isinstance(obj, dict):
            raise ValueError("config must be a JSON object")
        known = {"model", "estimators", "grid", "ns", "reps", "base_seed",
                 "points", "a_grid", "h_alpha", "slice_x"}
        extra = set(obj) - known
        if extra:
            raise ValueError("unknown config keys: %s" % (sorted(extra),))
        for key in ("model", "ns", "reps", "base_seed"):
            if key not in obj:
                raise ValueError("config is missing required key %r" % (key,))
        model = obj["model"]
        if not isinstance(model, dict) or "theta" not in model:
            raise ValueError("config model must carry a theta")
        kwargs = {
            "theta": float(model["theta"]),
            "marginal": model.get("marginal", "normal"),
            "ns": tuple(int(n) for n in obj["ns"]),
            "reps": int(obj["reps"]),
            "base_seed": int(obj["base_seed"]),
        }
        if "estimators" in obj:
            kwargs["estimators"] = tuple(EstimatorSpec.from_obj(e) for e in obj["estimators"])
        if "grid" in obj:
            g = obj["grid"]
            kwargs["grid"] = GridSpec(float(g["xmin"]), float(g["xmax"]), int(g["nx"]),
                                      float(g["ymin"]), float(g["ymax"]), int(g["ny"]))
        if "points" in obj:
            kwargs["points"] = tuple((float(p[0]), float(p[1])) for p in obj["points"])
        if "a_grid" in obj:
            kwargs["a_grid"] = tuple(float(a) for a in obj["a_grid"])
        if "h_alpha" in obj:
            kwargs["h_alpha"] = float(obj["h_alpha"])
        if "slice_x" in obj:
            kwargs["slice_x"] = float(obj["slice_x"])
        return cls(**kwargs)

    def model(self) -> SimulationModel:
        return SimulationModel(FrankCopula(self.theta))


def _run_jobs(fn, jobs, threads: int):
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(fn, jobs))
    return [fn(job) for job in jobs]


def _fit_spec(spec: EstimatorSpec, sample, h=None, a=None):
    """Fit an estimator spec; h/a override the Scott-rule defaults."""
    kern = KernelSpec(spec.kernel)
    if spec.method == "qc":
        return fit_quantile_copula(
            sample, kern, spec.copula_mode(),
            h if h is not None else BandwidthRule.scott_univariate(),
            a if a is not None else BandwidthRule.scott_bivariate())
    if spec.method == "dk":
        return fit_double_kernel(sample, kern, kern, clipping=spec.clipping())
    return fit_local_polynomial(sample, spec.degree, kern, kern,
                                clipping=spec.clipping())


def aggregate_records(records):
    """Aggregate (n, rep, point_id, estimate, truth) rows.

    Returns rows keyed by (n, point_id) with median absolute error,
    RMSE, bias and variance over the defined replicates plus the count
    of Undefined ones. Pure function of the per-replicate dump.
    """
    by_key = {}
    for n, rep, point_id, estimate, truth in records:
        by_key.setdefault((n, point_id), []).append((estimate, truth))
    rows = []
    for (n, point_id) in sorted(by_key):
        vals = np.array([e for e, _ in by_key[(n, point_id)]], dtype=float)
        truth = by_key[(n, point_id)][0][1]
        defined = vals[~np.isnan(vals)]
        undefined = int(np.isnan(vals).sum())
        if defined.size:
            err = defined - truth
            med = float(np.median(np.abs(err)))
            rmse = float(np.sqrt(np.mean(err * err)))
            bias = float(np.mean(defined) - truth)
            var = float(np.var(defined, ddof=1)) if defined.size > 1 else float("nan")
        else:
            med = rmse = bias = var = float("nan")
        rows.append({"n": n, "point_id": point_id, "median_abs_err": med,
                     "rmse": rmse, "bias": bias, "variance": var,
                     "undefined_count": undefined})
    return rows


def _loglog_slope(xvals, yvals):
    """OLS slope and its standard error for log(y) on log(x)."""
    x = np.asarray(xvals, dtype=float)
    y = np.asarray(yvals, dtype=float)
    keep = np.isfinite(y) & (y > 0.0)
    if keep.sum() < 2:
        return float("nan"), float("nan")
    lx = np.log(x[keep])
    ly = np.log(y[keep])
    slope, intercept = np.polyfit(lx, ly, 1)
    if keep.sum() == 2:
        return float(slope), float("nan")
    resid = ly - (slope * lx + intercept)
    s2 = float(resid @ resid) / (keep.sum() - 2)
    se = math.sqrt(s2 / float(((lx - lx.mean()) ** 2).sum()))
    return float(slope), se


_REPORT_HEADER = ("n", "point_id", "median_abs_err", "rmse", "bias",
                  "variance", "undefined_count")
_RECORDS_HEADER = ("n", "rep", "point_id", "estimate", "truth")


@dataclass
class ConvergenceReport:
    config: ExperimentConfig
    records: list
    rows: list
    slopes: dict = field(default_factory=dict)

    def write_csv(self, path: str) -> None:
        out = [[str(r["n"]), str(r["point_id"]), fmt_float(r["median_abs_err"]),
                fmt_float(r["rmse"]), fmt_float(r["bias"]), fmt_float(r["variance"]),
                str(r["undefined_count"])] for r in self.rows]
        write_csv_atomic(path, _REPORT_HEADER, out)

    def write_records_csv(self, path: str) -> None:
        out = [[str(n), str(rep), str(pid), fmt_float(est), fmt_float(tr)]
               for n, rep, pid, est, tr in self.records]
        write_csv_atomic(path, _RECORDS_HEADER, out)

    def summary_dict(self) -> dict:
        return {"experiment": "convergence",
                "theta": self.config.theta,
                "ns": list(self.config.ns),
                "reps": self.config.reps,
                "base_seed": self.config.base_seed,
                "estimator": self.config.estimators[0].to_dict(),
                "points": self.slopes}

    def write_summary_json(self, path: str) -> None:
        write_json_atomic(path, self.summary_dict())


def run_convergence(config: ExperimentConfig, threads: int = 1) -> ConvergenceReport:
    """Error of the first configured estimator across sample sizes.

    Bandwidths follow the optimal-rate powers h = n^(-1/5) and
    a = n^(-1/6). Replicate r uses seed base_seed + r.
    """
    spec = config.estimators[0]
    if spec.method != "qc":
        raise ValueError("convergence experiment runs the quantile-copula estimator")
    model = config.model()
    truths = [model.true_conditional_density(x, y) for x, y in config.points]
    jobs = [(n, r) for n in config.ns for r in range(config.reps)]

    def one(job):
        n, r = job
        sample = model.sample_xy(n, config.base_seed + r)
        est = _fit_spec(spec, sample,
                        h=float(n) ** -CONVERGENCE_H_ALPHA,
                        a=float(n) ** -COPULA_A_ALPHA)
        return [est.eval(x, y) for x, y in config.points]

    results = _run_jobs(one, jobs, threads)
    records = []
    for (n, r), vals in zip(jobs, results):
        for pid, est in enumerate(vals):
            records.append((n, r, pid, est, truths[pid]))
    rows = aggregate_records(records)
    slopes = {}
    for pid, (x, y) in enumerate(config.points):
        sub = [row for row in rows if row["point_id"] == pid]
        ns = [row["n"] for row in sub]
        rmse_slope, rmse_se = _loglog_slope(ns, [row["rmse"] for row in sub])
        med_slope, med_se = _loglog_slope(ns, [row["median_abs_err"] for row in sub])
        slopes[str(pid)] = {"x": x, "y": y, "truth": truths[pid],
                            "rmse_slope": rmse_slope, "rmse_slope_stderr": rmse_se,
                            "median_abs_err_slope": med_slope,
                            "median_abs_err_slope_stderr": med_se}
    return ConvergenceReport(config, records, rows, slopes)


@dataclass
class VarianceCheckReport:
    config: ExperimentConfig
    records: list
    rows: list

    def write_csv(self, path: str) -> None:
        header = ("point_id", "x", "y", "n", "h", "a", "empirical_variance",
                  "scaled_variance", "theory", "ratio")
        out = [[str(r["point_id"]), fmt_float(r["x"]), fmt_float(r["y"]), str(r["n"]),
                fmt_float(r["h"]), fmt_float(r["a"]), fmt_float(r["empirical_variance"]),
                fmt_float(r["scaled_variance"]), fmt_float(r["theory"]),
                fmt_float(r["ratio"])] for r in self.rows]
        write_csv_atomic(path, header, out)

    def write_records_csv(self, path: str) -> None:
        out = [[str(n), str(rep), str(pid), fmt_float(est), fmt_float(tr)]
               for n, rep, pid, est, tr in self.records]
        write_csv_atomic(path, _RECORDS_HEADER, out)

    def summary_dict(self) -> dict:
        return {"experiment": "variance_check",
                "theta": self.config.theta,
                "n": self.rows[0]["n"] if self.rows else None,
                "reps": self.config.reps,
                "base_seed": self.config.base_seed,
                "estimator": self.config.estimators[0].to_dict(),
                "points": self.rows}

    def write_summary_json(self, path: str) -> None:
        write_json_atomic(path, self.summary_dict())


def run_variance_check(config: ExperimentConfig, threads: int = 1) -> VarianceCheckReport:
    """Empirical variance of the estimator against the asymptotic constant.

    Uses the largest configured n, a = n^(-1/6) and h = n^(-h_alpha);
    the theory column is g(y) f(y|x) ||K1||_2^2 ||K2||_2^2, which is the
    product-kernel constant, so the estimator must use a product copula
    kernel for the ratio to be meaningful.
    """
    spec = config.estimators[0]
    if spec.method != "qc":
        raise ValueError("variance check runs the quantile-copula estimator")
    if not isinstance(spec.copula_mode(), ProductKernelMode):
        raise ValueError("variance check needs a product copula kernel")
    model = config.model()
    n = config.ns[-1]
    h = float(n) ** -config.h_alpha
    a = float(n) ** -COPULA_A_ALPHA
    truths = [model.true_conditional_density(x, y) for x, y in config.points]

    def one(r):
        sample = model.sample_xy(n, config.base_seed + r)
        est = _fit_spec(spec, sample, h=h, a=a)
        return [est.eval(x, y) for x, y in config.points]

    results = _run_jobs(one, list(range(config.reps)), threads)
    records = []
    for r, vals in enumerate(results):
        for pid, est in enumerate(vals):
            records.append((n, r, pid, est, truths[pid]))
    l2 = kernel_l2(KernelSpec(spec.copula_kernel))
    rows = []
    for pid, (x, y) in enumerate(config.points):
        vals = np.array([est for nn, r, p, est, _ in records if p == pid], dtype=float)
        emp = float(np.var(vals, ddof=1)) if vals.size > 1 else float("nan")
        g = model.y_marginal.pdf(y)
        theory = g * truths[pid] * l2 * l2
        scaled = n * a * a * emp
        rows.append({"point_id": pid, "x": x, "y": y, "n": n, "h": h, "a": a,
                     "empirical_variance": emp, "scaled_variance": scaled,
                     "theory": theory,
                     "ratio": scaled / theory if theory > 0 else float("nan")})
    return VarianceCheckReport(config, records, rows)


@dataclass
class BiasScalingReport:
    config: ExperimentConfig
    records: list   # (a, rep, point_id, estimate, truth)
    rows: list      # per (point_id, a)
    slopes: dict    # per point_id
    sign_matches: dict

    def write_csv(self, path: str) -> None:
        header = ("point_id", "x", "y", "a", "mean_estimate", "truth", "bias", "abs_bias")
        out = [[str(r["point_id"]), fmt_float(r["x"]), fmt_float(r["y"]), fmt_float(r["a"]),
                fmt_float(r["mean_estimate"]), fmt_float(r["truth"]),
                fmt_float(r["bias"]), fmt_float(r["abs_bias"])] for r in self.rows]
        write_csv_atomic(path, header, out)

    def write_records_csv(self, path: str) -> None:
        out = [[fmt_float(a), str(rep), str(pid), fmt_float(est), fmt_float(tr)]
               for a, rep, pid, est, tr in self.records]
        write_csv_atomic(path, ("a", "rep", "point_id", "estimate", "truth"), out)

    def summary_dict(self) -> dict:
        return {"experiment": "bias_scaling",
                "theta": self.config.theta,
                "n": self.config.ns[-1],
                "reps": self.config.reps,
                "base_seed": self.config.base_seed,
                "a_grid": list(self.config.a_grid),
                "estimator": self.config.estimators[0].to_dict(),
                "slopes": self.slopes,
                "sign_matches": self.sign_matches}

    def write_summary_json(self, path: str) -> None:
        write_json_atomic(path, self.summary_dict())


def _copula_curvature(model: SimulationModel, x: float, y: float, delta: float = 1e-4) -> float:
    """Finite-difference c_uu + c_vv of the true copula at (F(x), G(y))."""
    u = model.x_marginal.cdf(x)
    v = model.y_marginal.cdf(y)
    c = model.copula.density
    cuu = (c(u + delta, v) - 2.0 * c(u, v) + c(u - delta, v)) / delta ** 2
    cvv = (c(u, v + delta) - 2.0 * c(u, v) + c(u, v - delta)) / delta ** 2
    return float(cuu + cvv)


def run_bias_scaling(config: ExperimentConfig, threads: int = 1) -> BiasScalingReport:
    """Mean bias of the estimator across copula bandwidths a.

    Uses the largest configured n. Within a replicate the same sample,
    marginal KDE (Scott rule) and pseudo-observations are reused for
    every a, so the a-scaling is measured on common random numbers.
    """
    spec = config.estimators[0]
    if spec.method != "qc":
        raise ValueError("bias scaling runs the quantile-copula estimator")
    model = config.model()
    n = config.ns[-1]
    truths = [model.true_conditional_density(x, y) for x, y in config.points]
    mode = spec.copula_mode()
    kern = KernelSpec(spec.kernel)

    def one(r):
        sample = model.sample_xy(n, config.base_seed + r)
        pseudo = pseudo_observations(sample, rescale=True)
        h = bandwidth(BandwidthRule.scott_univariate(), sample.ys)
        marginal = UnivariateKde(sample.ys, h, kern)
        fx = Ecdf(sample.xs, rescale=True)
        gy = Ecdf(sample.ys, rescale=True)
        out = []
        for a in config.a_grid:
            cop = CopulaDensityEstimate(pseudo, a, mode)
            est = QuantileCopulaEstimator(sample, marginal, cop, fx, gy)
            out.append([est.eval(x, y) for x, y in config.points])
        return out

    results = _run_jobs(one, list(range(config.reps)), threads)
    records = []
    for r, per_a in enumerate(results):
        for ai, vals in enumerate(per_a):
            for pid, est in enumerate(vals):
                records.append((config.a_grid[ai], r, pid, est, truths[pid]))
    rows = []
    for pid, (x, y) in enumerate(config.points):
        for a in config.a_grid:
            vals = np.array([est for aa, r, p, est, _ in records
                             if p == pid and aa == a], dtype=float)
            mean_est = float(np.mean(vals))
            biasval = mean_est - truths[pid]
            rows.append({"point_id": pid, "x": x, "y": y, "a": a,
                         "mean_estimate": mean_est, "truth": truths[pid],
                         "bias": biasval, "abs_bias": abs(biasval)})
    slopes = {}
    sign_matches = {}
    for pid, (x, y) in enumerate(config.points):
        sub = [row for row in rows if row["point_id"] == pid]
        slope, se = _loglog_slope([row["a"] for row in sub],
                                  [row["abs_bias"] for row in sub])
        slopes[str(pid)] = {"x": x, "y": y, "slope": slope, "stderr": se}
        smallest = min(sub, key=lambda row: row["a"])
        curv = _copula_curvature(model, x, y)
        sign_matches[str(pid)] = {
            "x": x, "y": y, "curvature": curv,
            "bias_at_smallest_a": smallest["bias"],
            "match": bool(np.sign(smallest["bias"]) == np.sign(curv)),
        }
    return BiasScalingReport(config, records, rows, slopes, sign_matches)


@dataclass
class ComparisonReport:
    config: ExperimentConfig
    xs: np.ndarray
    ys: np.ndarray
    grids: dict          # label -> 2d array, plus "truth"
    slice_ys: np.ndarray
    slice_cols: dict     # label -> 1d array along slice_ys, plus "truth"
    summary: dict

    def write_outputs(self, out_dir: str) -> None:
        import os
        os.makedirs(out_dir, exist_ok=True)
        for label in ("truth", "qc", "dk", "ll"):
            self._write_grid(os.path.join(out_dir, "grid_%s.csv" % label), self.grids[label])
        header = ("y", "truth", "qc", "dk", "ll")
        rows = []
        for j, yv in enumerate(self.slice_ys):
            rows.append([fmt_float(yv)] + [fmt_float(self.slice_cols[lab][j])
                                           for lab in ("truth", "qc", "dk", "ll")])
        write_csv_atomic(os.path.join(out_dir, "slice_x2.csv"), header, rows)
        write_json_atomic(os.path.join(out_dir, "summary.json"), self.summary)

    def _write_grid(self, path: str, grid: np.ndarray) -> None:
        rows = []
        for i, xv in enumerate(self.xs):
            for j, yv in enumerate(self.ys):
                rows.append([fmt_float(xv), fmt_float(yv), fmt_float(grid[i, j])])
        write_csv_atomic(path, ("x", "y", "value"), rows)


def run_comparison(config: ExperimentConfig, threads: int = 1) -> ComparisonReport:
    """One-sample comparison of qc, dk and ll against the model truth.

    Fits each estimator with its Scott-rule defaults on a single sample
    of size ns[0] (seed base_seed), evaluates everything on the config
    grid plus a y-slice at slice_x, and summarizes Undefined counts and
    the integrated squared error over cells where all estimators are
    defined.
    """
    if config.grid is None:
        raise ValueError("comparison needs a grid in the config")
    methods = [s.method for s in config.estimators]
    if methods != ["qc", "dk", "ll"]:
        raise ValueError("comparison expects the estimators [qc, dk, ll]")
    model = config.model()
    n = config.ns[0]
    sample = model.sample_xy(n, config.base_seed)
    xs = config.grid.xs()
    ys = config.grid.ys()

    truth_grid = np.empty((xs.size, ys.size))
    for i, xv in enumerate(xs):
        truth_grid[i, :] = model.true_conditional_density(xv, ys)

    grids = {"truth": truth_grid}
    fitted = {}
    for spec in config.estimators:
        est = _fit_spec(spec, sample)
        fitted[spec.method] = est
        grids[spec.method] = est.eval_grid(xs, ys)

    slice_cols = {"truth": model.true_conditional_density(config.slice_x, ys)}
    for spec in config.estimators:
        slice_cols[spec.method] = fitted[spec.method]._eval_pairs(
            np.full(ys.size, config.slice_x), ys)

    cell = (xs[1] - xs[0]) * (ys[1] - ys[0])
    all_defined = np.ones_like(truth_grid, dtype=bool)
    for label in ("qc", "dk", "ll"):
        all_defined &= ~np.isnan(grids[label])
    summary = {
        "experiment": "comparison",
        "theta": config.theta,
        "n": n,
        "base_seed": config.base_seed,
        "grid": {"xmin": config.grid.xmin, "xmax": config.grid.xmax, "nx": config.grid.nx,
                 "ymin": config.grid.ymin, "ymax": config.grid.ymax, "ny": config.grid.ny},
        "slice_x": config.slice_x,
        "defined_cells": int(all_defined.sum()),
        "total_cells": int(truth_grid.size),
        "estimators": {},
    }
    for spec in config.estimators:
        grid = grids[spec.method]
        err = grid - truth_grid
        ise = float(np.nansum(np.where(all_defined, err * err, 0.0)) * cell)
        summary["estimators"][spec.method] = {
            "spec": spec.to_dict(),
            "undefined_count": int(np.isnan(grid).sum()),
            "ise_on_defined_cells": ise,
        }
    slice_ys = ys.copy()
    return ComparisonReport(config, xs, ys, grids, slice_ys, slice_cols, summary)
