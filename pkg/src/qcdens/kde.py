"""Univariate kernel density estimation with plug-in bandwidth rules."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import impl
from .kernels import EPANECHNIKOV, KernelSpec


@dataclass(frozen=True)
class BandwidthRule:
    """A data-to-bandwidth rule.

    kind is one of 'scott_univariate' (sd * n^(-1/5)), 'scott_bivariate'
    (sd * n^(-1/6)), 'power' (c * n^(-alpha)) or 'fixed' (constant h).
    """

    kind: str
    c: float = 1.0
    alpha: float = 0.0
    h: float = 0.0

    @classmethod
    def scott_univariate(cls) -> "BandwidthRule":
        return cls("scott_univariate")

    @classmethod
    def scott_bivariate(cls) -> "BandwidthRule":
        return cls("scott_bivariate")

    @classmethod
    def power(cls, c: float, alpha: float) -> "BandwidthRule":
        if not (c > 0.0):
            raise ValueError("power rule coefficient must be positive")
        return cls("power", c=c, alpha=alpha)

    @classmethod
    def fixed(cls, h: float) -> "BandwidthRule":
        if not (h > 0.0):
            raise ValueError("fixed bandwidth must be positive")
        return cls("fixed", h=h)

    def __post_init__(self):
        if self.kind not in ("scott_univariate", "scott_bivariate", "power", "fixed"):
            raise ValueError("unknown bandwidth rule: %r" % (self.kind,))


def bandwidth(rule: BandwidthRule, data) -> float:
    """Apply a bandwidth rule to data; the result is strictly positive."""
    data = np.asarray(data, dtype=float)
    n = data.shape[0]
    if n < 1:
        raise ValueError("data must be nonempty")
    if rule.kind == "fixed":
        return rule.h
    if rule.kind == "power":
        h = rule.c * n ** (-rule.alpha)
        if not (h > 0.0):
            raise ValueError("power rule produced a nonpositive bandwidth")
        return h
    if n < 2:
        raise ValueError("Scott rules need at least two observations")
    sd = float(np.std(data, ddof=1))
    if not (sd > 0.0):
        raise ValueError("Scott rules need nonconstant data")
    exponent = -0.2 if rule.kind == "scott_univariate" else -1.0 / 6.0
    return sd * n ** exponent


class UnivariateKde:
    """Kernel density estimate (1/(n h)) sum K((y - Y_i)/h)."""

    def __init__(self, data, h: float, kernel: KernelSpec = EPANECHNIKOV):
        data = np.asarray(data, dtype=float)
        if data.ndim != 1 or data.shape[0] < 1:
            raise ValueError("data must be a nonempty 1-d array")
        if not np.isfinite(data).all():
            raise ValueError("data values must be finite")
        if not (h > 0.0):
            raise ValueError("h must be positive")
        self.data = np.ascontiguousarray(data)
        self.h = float(h)
        self.kernel = kernel

    def eval(self, q):
        q = np.asarray(q, dtype=float)
        scalar = q.ndim == 0
        qq = np.ascontiguousarray(np.atleast_1d(q))
        out = impl.kde_sum(self.data, self.h, self.kernel.kernel_id, qq)
        if scalar:
            return float(out[0])
        return out

    __call__ = eval


def kde_fit(data, bw, kernel: KernelSpec = EPANECHNIKOV) -> UnivariateKde:
    """Fit a KDE; bw is a BandwidthRule or a fixed positive number."""
    if isinstance(bw, BandwidthRule):
        h = bandwidth(bw, data)
    else:
        h = float(bw)
    return UnivariateKde(data, h, kernel)


def kde_eval(kde: UnivariateKde, q):
    """Evaluate a fitted KDE at scalar or array queries."""
    return kde.eval(q)
