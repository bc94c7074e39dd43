"""Conditional density estimators f(y | x) for paired samples.

Three methods share the eval/eval_grid interface:

* quantile-copula: marginal KDE of y times a copula density fitted on
  rank pseudo-observations, evaluated at the rescaled ecdf transforms
  of the query. Defined and finite everywhere.
* double kernel: ratio of a product-kernel joint density to a marginal
  density in x. The denominator can vanish (compact kernels, sparse x
  regions), in which case the value is Undefined unless a clipping
  policy substitutes a fallback.
* local polynomial (degree 0 or 1): weighted least squares fit of
  kernel-smoothed responses; degree 0 reproduces the double kernel
  ratio, degree 1 can go negative in thin regions.

Undefined is a value-level outcome represented as NaN; use
is_undefined() rather than comparing against the constant.
"""

from __future__ import annotations

from dataclasses import dataclass

import math

import numpy as np

from ._backend import impl
from .copula_density import BetaKernelMode, CopulaDensityEstimate, ProductKernelMode
from .empirical import Ecdf, PairedSample, pseudo_observations
from .kde import BandwidthRule, UnivariateKde, bandwidth
from .kernels import EPANECHNIKOV, KernelSpec

UNDEFINED = float("nan")

# relative determinant floor for the degree-1 normal equations
_SINGULAR_REL = 1e-12


def is_undefined(value) -> bool:
    """True when a scalar estimate is the Undefined outcome."""
    return math.isnan(value)


@dataclass(frozen=True)
class ClippingPolicy:
    """What to do when the x-denominator density falls at or below c.

    kind 'none' leaves zero denominators Undefined; kind 'threshold'
    substitutes the fallback ('zero' or 'marginal_kde', the marginal
    KDE of y) whenever the denominator estimate is <= c.
    """

    kind: str = "none"
    c: float = 0.0
    fallback: str = "zero"

    @classmethod
    def none(cls) -> "ClippingPolicy":
        return cls("none")

    @classmethod
    def threshold(cls, c: float, fallback: str = "marginal_kde") -> "ClippingPolicy":
        return cls("threshold", c=c, fallback=fallback)

    def __post_init__(self):
        if self.kind not in ("none", "threshold"):
            raise ValueError("unknown clipping kind: %r" % (self.kind,))
        if self.fallback not in ("zero", "marginal_kde"):
            raise ValueError("unknown clipping fallback: %r" % (self.fallback,))
        if self.kind == "threshold" and not (self.c > 0.0):
            raise ValueError("clipping threshold must be positive")


def _resolve_bw(bw, data) -> float:
    if isinstance(bw, BandwidthRule):
        return bandwidth(bw, data)
    h = float(bw)
    if not (h > 0.0):
        raise ValueError("bandwidth must be positive")
    return h


class ConditionalDensityEstimator:
    """Common eval interface; subclasses implement _eval_pairs."""

    method = "?"

    def eval(self, x: float, y: float) -> float:
        out = self._eval_pairs(np.array([float(x)]), np.array([float(y)]))
        return float(out[0])

    def eval_grid(self, xs, ys) -> np.ndarray:
        """Estimates on the product grid, row i <-> xs[i], column j <-> ys[j]."""
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.ndim != 1 or ys.ndim != 1:
            raise ValueError("grid axes must be one-dimensional")
        qx = np.repeat(xs, ys.shape[0])
        qy = np.tile(ys, xs.shape[0])
        return self._eval_pairs(qx, qy).reshape(xs.shape[0], ys.shape[0])

    def _eval_pairs(self, qx, qy) -> np.ndarray:
        raise NotImplementedError


class QuantileCopulaEstimator(ConditionalDensityEstimator):
    """g_hat(y) times c_hat at the rescaled ecdf transforms of (x, y)."""

    method = "quantile_copula"

    def __init__(self, sample: PairedSample, marginal_kde: UnivariateKde,
                 copula: CopulaDensityEstimate, fx: Ecdf, gy: Ecdf):
        self.sample = sample
        self.marginal_kde = marginal_kde
        self.copula = copula
        self.fx = fx
        self.gy = gy

    def _eval_pairs(self, qx, qy):
        u = np.atleast_1d(self.fx(qx))
        v = np.atleast_1d(self.gy(qy))
        return np.atleast_1d(self.marginal_kde(qy)) * self.copula.eval(u, v)


class DoubleKernelEstimator(ConditionalDensityEstimator):
    """Joint product-kernel density over marginal x density, with clipping."""

    method = "double_kernel"

    def __init__(self, sample, kernel_x, kernel_y, h1, h2, clipping, fallback_kde):
        self.sample = sample
        self.kernel_x = kernel_x
        self.kernel_y = kernel_y
        self.h1 = h1
        self.h2 = h2
        self.clipping = clipping
        self._fallback_kde = fallback_kde

    def _eval_pairs(self, qx, qy):
        qx = np.ascontiguousarray(qx, dtype=float)
        qy = np.ascontiguousarray(qy, dtype=float)
        num, den = impl.dk_components(
            np.ascontiguousarray(self.sample.xs), np.ascontiguousarray(self.sample.ys),
            self.h1, self.h2, self.kernel_x.kernel_id, self.kernel_y.kernel_id, qx, qy)
        if self.clipping.kind == "none":
            with np.errstate(divide="ignore", invalid="ignore"):
                return np.where(den > 0.0, num / np.where(den > 0.0, den, 1.0), UNDEFINED)
        ok = den > self.clipping.c
        safe_den = np.where(ok, den, 1.0)
        return np.where(ok, num / safe_den, self._fallback_values(qy))

    def _fallback_values(self, qy):
        if self.clipping.fallback == "zero":
            return np.zeros_like(qy)
        return np.atleast_1d(self._fallback_kde(qy))


class LocalPolynomialEstimator(ConditionalDensityEstimator):
    """Degree r in {0, 1} weighted polynomial fit of smoothed responses."""

    method = "local_polynomial"

    def __init__(self, sample, degree, kernel_x, kernel_y, h1, h2, clipping, fallback_kde):
        self.sample = sample
        self.degree = degree
        self.kernel_x = kernel_x
        self.kernel_y = kernel_y
        self.h1 = h1
        self.h2 = h2
        self.clipping = clipping
        self._fallback_kde = fallback_kde

    def _eval_pairs(self, qx, qy):
        qx = np.ascontiguousarray(qx, dtype=float)
        qy = np.ascontiguousarray(qy, dtype=float)
        s0, s1, s2, t0, t1 = impl.ll_components(
            np.ascontiguousarray(self.sample.xs), np.ascontiguousarray(self.sample.ys),
            self.h1, self.h2, self.kernel_x.kernel_id, self.kernel_y.kernel_id, qx, qy)
        n = self.sample.n
        with np.errstate(divide="ignore", invalid="ignore"):
            if self.degree == 0:
                good = s0 > 0.0
                theta0 = np.where(good, t0 / np.where(good, s0, 1.0), UNDEFINED)
            else:
                det = s0 * s2 - s1 * s1
                scale2 = s0 * s2 + s1 * s1
                good = np.abs(det) > _SINGULAR_REL * scale2
                safe = np.where(good, det, 1.0)
                theta0 = np.where(good, (s2 * t0 - s1 * t1) / safe, UNDEFINED)
        if self.clipping.kind == "none":
            return theta0
        ok = good & (s0 / n > self.clipping.c)
        return np.where(ok, theta0, self._fallback_values(qy))

    def _fallback_values(self, qy):
        if self.clipping.fallback == "zero":
            return np.zeros_like(qy)
        return np.atleast_1d(self._fallback_kde(qy))


def fit_quantile_copula(sample: PairedSample,
                        marginal_kernel: KernelSpec = EPANECHNIKOV,
                        mode=BetaKernelMode(),
                        h=BandwidthRule.scott_univariate(),
                        a=BandwidthRule.scott_bivariate()) -> QuantileCopulaEstimator:
    """Fit the quantile-copula conditional density estimator.

    h smooths the y-marginal KDE (rule applied to the raw ys); a smooths
    the copula density (rule applied to the pseudo-u coordinates). The
    copula is fitted on rescaled rank pseudo-observations and queried at
    the rescaled ecdf transforms, so evaluation is finite for every
    real (x, y).
    """
    pseudo = pseudo_observations(sample, rescale=True)
    h_val = _resolve_bw(h, sample.ys)
    a_val = _resolve_bw(a, pseudo[:, 0])
    marginal = UnivariateKde(sample.ys, h_val, marginal_kernel)
    cop = CopulaDensityEstimate(pseudo, a_val, mode)
    fx = Ecdf(sample.xs, rescale=True)
    gy = Ecdf(sample.ys, rescale=True)
    return QuantileCopulaEstimator(sample, marginal, cop, fx, gy)


def fit_double_kernel(sample: PairedSample,
                      kernel_x: KernelSpec = EPANECHNIKOV,
                      kernel_y: KernelSpec = EPANECHNIKOV,
                      h1=BandwidthRule.scott_univariate(),
                      h2=BandwidthRule.scott_univariate(),
                      clipping: ClippingPolicy = ClippingPolicy.threshold(1e-5),
                      ) -> DoubleKernelEstimator:
    """Fit the double-kernel (Nadaraya-Watson style) conditional density."""
    h1_val = _resolve_bw(h1, sample.xs)
    h2_val = _resolve_bw(h2, sample.ys)
    fallback = _make_fallback(sample, kernel_y, h2_val, clipping)
    return DoubleKernelEstimator(sample, kernel_x, kernel_y, h1_val, h2_val,
                                 clipping, fallback)


def fit_local_polynomial(sample: PairedSample,
                         degree: int = 1,
                         kernel_x: KernelSpec = EPANECHNIKOV,
                         kernel_y: KernelSpec = EPANECHNIKOV,
                         h1=BandwidthRule.scott_univariate(),
                         h2=BandwidthRule.scott_univariate(),
                         clipping: ClippingPolicy = ClippingPolicy.threshold(1e-5),
                         ) -> LocalPolynomialEstimator:
    """Fit the local polynomial conditional density, degree 0 or 1.

    Degree 0 coincides with the double-kernel ratio. Degree 1 returns
    Undefined where the weighted design is numerically singular (all
    window weight on one x value) unless clipping substitutes a
    fallback there.
    """
    if degree not in (0, 1):
        raise ValueError("degree must be 0 or 1")
    h1_val = _resolve_bw(h1, sample.xs)
    h2_val = _resolve_bw(h2, sample.ys)
    fallback = _make_fallback(sample, kernel_y, h2_val, clipping)
    return LocalPolynomialEstimator(sample, degree, kernel_x, kernel_y,
                                    h1_val, h2_val, clipping, fallback)


def _make_fallback(sample, kernel_y, h2_val, clipping):
    if clipping.kind == "threshold" and clipping.fallback == "marginal_kde":
        return UnivariateKde(sample.ys, h2_val, kernel_y)
    return None
