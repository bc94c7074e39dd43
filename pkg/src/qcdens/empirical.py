"""Empirical distribution functions, rank pseudo-observations, KS distance."""

from __future__ import annotations

import numpy as np


class PairedSample:
    """An (x, y) sample of n >= 1 finite pairs."""

    def __init__(self, xs, ys):
        xs = np.asarray(xs, dtype=float)
        ys = np.asarray(ys, dtype=float)
        if xs.ndim != 1 or ys.ndim != 1:
            raise ValueError("xs and ys must be one-dimensional")
        if xs.shape[0] != ys.shape[0]:
            raise ValueError("xs and ys must have equal length")
        if xs.shape[0] < 1:
            raise ValueError("sample must contain at least one pair")
        if not (np.isfinite(xs).all() and np.isfinite(ys).all()):
            raise ValueError("sample values must be finite")
        self.xs = xs
        self.ys = ys

    @property
    def n(self) -> int:
        return self.xs.shape[0]


class Ecdf:
    """Right-continuous empirical cdf, optionally rescaled by n/(n+1).

    The rescaled variant keeps values in [0, n/(n+1)], strictly inside
    the unit interval, which is what rank transforms feed to copula
    estimators with unbounded corner behaviour.
    """

    def __init__(self, data, rescale: bool = False):
        data = np.asarray(data, dtype=float)
        if data.ndim != 1 or data.shape[0] < 1:
            raise ValueError("data must be a nonempty 1-d array")
        if not np.isfinite(data).all():
            raise ValueError("data values must be finite")
        self.sorted = np.sort(data)
        self.rescale = bool(rescale)
        self.n = data.shape[0]

    def eval(self, q):
        q = np.asarray(q, dtype=float)
        counts = np.searchsorted(self.sorted, q, side="right")
        out = counts / self.n
        if self.rescale:
            out = out * (self.n / (self.n + 1.0))
        if out.ndim == 0:
            return float(out)
        return out

    __call__ = eval


def ecdf_fit(data, rescale: bool = False) -> Ecdf:
    """Fit an empirical cdf; rescale multiplies values by n/(n+1)."""
    return Ecdf(data, rescale=rescale)


def pseudo_observations(sample: PairedSample, rescale: bool = True) -> np.ndarray:
    """Rank-transform a paired sample into [0, 1]^2.

    Returns an (n, 2) array whose rows are (F_n(X_i), G_n(Y_i)), each
    margin's own ecdf evaluated at its data points (ties share the count
    of values <= the point). With rescale, values are k/(n+1).
    """
    fx = Ecdf(sample.xs, rescale=rescale)
    gy = Ecdf(sample.ys, rescale=rescale)
    return np.column_stack([fx(sample.xs), gy(sample.ys)])


def ks_statistic(data, cdf) -> float:
    """Kolmogorov-Smirnov sup distance between the ecdf of data and cdf.

    The supremum is attained at a jump point, so it is computed exactly
    from the order statistics: max over i of max(i/n - F(x_(i)),
    F(x_(i)) - (i-1)/n).
    """
    data = np.asarray(data, dtype=float)
    if data.ndim != 1 or data.shape[0] < 1:
        raise ValueError("data must be a nonempty 1-d array")
    srt = np.sort(data)
    f = np.asarray(cdf(srt), dtype=float)
    n = srt.shape[0]
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - f)
    d_minus = np.max(f - (i - 1) / n)
    return float(max(d_plus, d_minus))
