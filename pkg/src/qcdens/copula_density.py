"""Copula density estimation on the unit square.

Two smoothing modes share one bandwidth a for both coordinates:

* product kernels, (1/(n a^2)) sum K((u - u_i)/a) K((v - v_i)/a), with
  no boundary correction (mass leaks outside [0,1]^2 as a grows);
* beta kernels located at the query, (1/n) sum B_{u,a}(u_i) B_{v,a}(v_i),
  whose support never leaves the unit square.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._backend import impl
from .kernels import EPANECHNIKOV, KernelSpec


@dataclass(frozen=True)
class ProductKernelMode:
    kernel: KernelSpec = EPANECHNIKOV


@dataclass(frozen=True)
class BetaKernelMode:
    pass


class CopulaDensityEstimate:
    """Fitted copula density smoother over points in the unit square."""

    def __init__(self, points, a: float, mode=BetaKernelMode()):
        points = np.asarray(points, dtype=float)
        if points.ndim != 2 or points.shape[1] != 2 or points.shape[0] < 1:
            raise ValueError("points must be a nonempty (n, 2) array")
        if not np.isfinite(points).all():
            raise ValueError("points must be finite")
        if (points < 0.0).any() or (points > 1.0).any():
            raise ValueError("points must lie in the unit square")
        if not (a > 0.0):
            raise ValueError("bandwidth a must be positive")
        if not isinstance(mode, (ProductKernelMode, BetaKernelMode)):
            raise ValueError("mode must be ProductKernelMode or BetaKernelMode")
        self.us = np.ascontiguousarray(points[:, 0])
        self.vs = np.ascontiguousarray(points[:, 1])
        self.a = float(a)
        self.mode = mode

    @property
    def n(self) -> int:
        return self.us.shape[0]

    def eval(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        scalar = u.ndim == 0 and v.ndim == 0
        uu, vv = np.broadcast_arrays(np.atleast_1d(u), np.atleast_1d(v))
        uu = np.ascontiguousarray(uu, dtype=float)
        vv = np.ascontiguousarray(vv, dtype=float)
        if (uu < 0.0).any() or (uu > 1.0).any() or (vv < 0.0).any() or (vv > 1.0).any():
            raise ValueError("query must lie in the unit square")
        if isinstance(self.mode, ProductKernelMode):
            out = impl.copula_product_sum(self.us, self.vs, self.a,
                                          self.mode.kernel.kernel_id, uu, vv)
        else:
            out = impl.copula_beta_sum(self.us, self.vs, self.a, uu, vv)
        if scalar:
            return float(out[0])
        return out

    __call__ = eval


def copula_fit(points, a: float, mode=BetaKernelMode()) -> CopulaDensityEstimate:
    """Fit a copula density smoother on (n, 2) points with bandwidth a."""
    return CopulaDensityEstimate(points, a, mode)


def copula_eval(estimate: CopulaDensityEstimate, u, v):
    """Evaluate a fitted copula density at (u, v) in the unit square."""
    return estimate.eval(u, v)
