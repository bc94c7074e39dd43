"""Smoothing kernels and their moment/L2 constants.

Conventions: kernels are symmetric probability densities. The uniform
kernel takes the jump-midpoint value 1/4 at |u| = 1 so that evaluation
at the support edge is the average of the one-sided limits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

EPANECHNIKOV_ID = 0
GAUSSIAN_ID = 1
UNIFORM_ID = 2

_FAMILIES = {"epanechnikov": EPANECHNIKOV_ID, "gaussian": GAUSSIAN_ID, "uniform": UNIFORM_ID}

_SQRT_2PI = math.sqrt(2.0 * math.pi)

# closed-form constants: moments m0, m1, m2 and the L2 norm ||K||_2^2
_MOMENTS = {
    "epanechnikov": (1.0, 0.0, 0.2),
    "gaussian": (1.0, 0.0, 1.0),
    "uniform": (1.0, 0.0, 1.0 / 3.0),
}
_L2 = {
    "epanechnikov": 0.6,
    "gaussian": 1.0 / (2.0 * math.sqrt(math.pi)),
    "uniform": 0.5,
}


@dataclass(frozen=True)
class KernelSpec:
    """A named symmetric kernel on the real line."""

    family: str

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError("unknown kernel family: %r" % (self.family,))

    @property
    def kernel_id(self) -> int:
        return _FAMILIES[self.family]

    @property
    def support(self) -> tuple[float, float]:
        if self.family == "gaussian":
            return (-math.inf, math.inf)
        return (-1.0, 1.0)


EPANECHNIKOV = KernelSpec("epanechnikov")
GAUSSIAN = KernelSpec("gaussian")
UNIFORM = KernelSpec("uniform")


def eval_kernel(spec: KernelSpec, u):
    """Evaluate K(u); accepts scalars or arrays, zero outside the support."""
    u = np.asarray(u, dtype=float)
    if spec.family == "epanechnikov":
        out = np.where(np.abs(u) <= 1.0, 0.75 * (1.0 - u * u), 0.0)
    elif spec.family == "gaussian":
        out = np.exp(-0.5 * u * u) / _SQRT_2PI
    else:  # uniform, midpoint value at the jump
        au = np.abs(u)
        out = np.where(au < 1.0, 0.5, np.where(au == 1.0, 0.25, 0.0))
    if out.ndim == 0:
        return float(out)
    return out


def kernel_moment(spec: KernelSpec, i: int) -> float:
    """i-th moment of the kernel, i in {0, 1, 2}, from closed forms."""
    if i not in (0, 1, 2):
        raise ValueError("moment order must be 0, 1 or 2")
    return _MOMENTS[spec.family][i]


def kernel_l2(spec: KernelSpec) -> float:
    """Squared L2 norm of the kernel, integral of K(u)^2 over the support."""
    return _L2[spec.family]


@dataclass(frozen=True)
class BetaKernelSpec:
    """Beta smoothing kernel located at x in [0, 1] with bandwidth b > 0.

    The kernel is the Beta(x/b + 1, (1 - x)/b + 1) density, so both shape
    parameters are >= 1 and the density stays bounded on [0, 1].
    """

    location: float
    bandwidth: float

    def __post_init__(self):
        if not (0.0 <= self.location <= 1.0):
            raise ValueError("location must lie in [0, 1]")
        if not (self.bandwidth > 0.0):
            raise ValueError("bandwidth must be positive")

    @property
    def alpha(self) -> float:
        return self.location / self.bandwidth + 1.0

    @property
    def beta(self) -> float:
        return (1.0 - self.location) / self.bandwidth + 1.0


def eval_beta_kernel(spec: BetaKernelSpec, t):
    """Evaluate the beta kernel density at t; zero outside [0, 1]."""
    a, b = spec.alpha, spec.beta
    lnorm = math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
    t_arr = np.asarray(t, dtype=float)
    scalar = t_arr.ndim == 0
    t_arr = np.atleast_1d(t_arr)
    out = np.zeros_like(t_arr)
    inside = (t_arr > 0.0) & (t_arr < 1.0)
    ti = t_arr[inside]
    out[inside] = np.exp((a - 1.0) * np.log(ti) + (b - 1.0) * np.log1p(-ti) + lnorm)
    # edges: finite only when the corresponding exponent vanishes
    if a == 1.0:
        out[t_arr == 0.0] = b
    if b == 1.0:
        out[t_arr == 1.0] = a
    if scalar:
        return float(out[0])
    return out
