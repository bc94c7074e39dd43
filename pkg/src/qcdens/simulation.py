"""Frank-copula ground truth with standard normal margins.

The copula is parameterized as C(u, v) = log_theta of
(theta + theta^(u+v) - theta^u - theta^v) / (theta - 1), theta > 0,
theta != 1. Writing L = ln theta and R = expm1(uL) expm1(vL)/(theta - 1)
gives the cancellation-free forms used throughout:

    C(u, v)      = log1p(R) / L
    c(u, v)      = |L| / |theta - 1| * exp((u + v) L - 2 log1p(R))
    dC/du (v|u)  = exp(uL) * expm1(vL) / ((theta - 1) (1 + R))

and the conditional quantile in v solves dC/du = p in closed form.
theta > 1 yields negative dependence, theta < 1 positive. Values of
theta within 1e-6 of 1 are treated as the independence copula.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr, ndtri

from .empirical import PairedSample

_INDEP_TOL = 1e-6
_SQRT_2PI = np.sqrt(2.0 * np.pi)


class StandardNormal:
    """Standard normal margin: pdf, cdf and quantile."""

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        out = np.exp(-0.5 * x * x) / _SQRT_2PI
        return float(out) if out.ndim == 0 else out

    def cdf(self, x):
        out = ndtr(np.asarray(x, dtype=float))
        return float(out) if np.ndim(out) == 0 else out

    def quantile(self, p):
        out = ndtri(np.asarray(p, dtype=float))
        return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class FrankCopula:
    """Frank copula in base-theta form, theta > 0 and theta != 1."""

    theta: float

    def __post_init__(self):
        if not (self.theta > 0.0):
            raise ValueError("theta must be positive")
        if self.theta == 1.0:
            raise ValueError("theta must differ from 1")

    @property
    def _independent(self) -> bool:
        return abs(self.theta - 1.0) < _INDEP_TOL

    def _r(self, u, v):
        ln_t = np.log(self.theta)
        return np.expm1(u * ln_t) * np.expm1(v * ln_t) / (self.theta - 1.0)

    def cdf(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        self._check_unit(u, v)
        if self._independent:
            out = u * v
        else:
            out = np.log1p(self._r(u, v)) / np.log(self.theta)
        return float(out) if np.ndim(out) == 0 else out

    def density(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        self._check_unit(u, v)
        if self._independent:
            out = np.ones(np.broadcast(u, v).shape)
            return float(out) if u.ndim == 0 and v.ndim == 0 else out
        ln_t = np.log(self.theta)
        log_c = (np.log(abs(ln_t)) - np.log(abs(self.theta - 1.0))
                 + (u + v) * ln_t - 2.0 * np.log1p(self._r(u, v)))
        out = np.exp(log_c)
        return float(out) if np.ndim(out) == 0 else out

    def conditional_cdf(self, u, v):
        """P(V <= v | U = u), the partial derivative of C in u."""
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        self._check_unit(u, v)
        if self._independent:
            out = np.broadcast_arrays(u, v)[1].copy()
            return float(out) if np.ndim(v) == 0 and np.ndim(u) == 0 else out
        ln_t = np.log(self.theta)
        out = (np.exp(u * ln_t) * np.expm1(v * ln_t)
               / ((self.theta - 1.0) * (1.0 + self._r(u, v))))
        return float(out) if np.ndim(out) == 0 else out

    def conditional_quantile(self, u, p):
        """Inverse of conditional_cdf in v at probability p."""
        u = np.asarray(u, dtype=float)
        p = np.asarray(p, dtype=float)
        if (p < 0.0).any() or (p > 1.0).any():
            raise ValueError("p must lie in [0, 1]")
        if (u < 0.0).any() or (u > 1.0).any():
            raise ValueError("u must lie in [0, 1]")
        if self._independent:
            out = np.broadcast_arrays(u, p)[1].copy()
            return float(out) if np.ndim(out) == 0 else out
        ln_t = np.log(self.theta)
        out = (np.log1p(p * np.expm1((1.0 - u) * ln_t))
               - np.log1p(p * np.expm1(-u * ln_t))) / ln_t
        return float(out) if np.ndim(out) == 0 else out

    def sample(self, n: int, seed: int):
        """Draw n (U, V) pairs by conditional inversion; deterministic in seed."""
        if n < 1:
            raise ValueError("n must be at least 1")
        rng = np.random.default_rng(seed)
        u = rng.random(n)
        p = rng.random(n)
        v = self.conditional_quantile(u, p)
        return u, v

    @staticmethod
    def _check_unit(u, v):
        if (u < 0.0).any() or (u > 1.0).any() or (v < 0.0).any() or (v > 1.0).any():
            raise ValueError("(u, v) must lie in the unit square")


@dataclass(frozen=True)
class SimulationModel:
    """Copula plus margins; only standard normal margins are wired up."""

    copula: FrankCopula
    x_marginal: StandardNormal = StandardNormal()
    y_marginal: StandardNormal = StandardNormal()

    def sample_xy(self, n: int, seed: int) -> PairedSample:
        u, v = self.copula.sample(n, seed)
        return PairedSample(self.x_marginal.quantile(u), self.y_marginal.quantile(v))

    def true_conditional_density(self, x, y):
        """f(y | x) = g(y) c(F(x), G(y)) for the model's margins and copula."""
        u = self.x_marginal.cdf(x)
        v = self.y_marginal.cdf(y)
        out = np.asarray(self.y_marginal.pdf(y)) * np.asarray(self.copula.density(u, v))
        return float(out) if np.ndim(out) == 0 else out


def frank_cdf(theta: float, u, v):
    """Frank copula cdf C(u, v) at base theta."""
    return FrankCopula(theta).cdf(u, v)


def frank_density(theta: float, u, v):
    """Frank copula density c(u, v) at base theta."""
    return FrankCopula(theta).density(u, v)


def frank_sample(theta: float, n: int, seed: int):
    """Sample n (U, V) pairs from the Frank copula by conditional inversion."""
    return FrankCopula(theta).sample(n, seed)


def sample_xy(model: SimulationModel, n: int, seed: int) -> PairedSample:
    """Sample n (X, Y) pairs by pushing copula draws through the margins."""
    return model.sample_xy(n, seed)


def true_conditional_density(model: SimulationModel, x, y):
    """Model conditional density f(y | x) = g(y) c(F(x), G(y))."""
    return model.true_conditional_density(x, y)
