"""Pure-numpy implementations of the hot estimator sums.

Vectorized twins of the numba kernels in _impl_numba; selected via the
QCDENS_BACKEND environment variable (see _backend). Query batches are
chunked to bound the (queries x data) intermediate.
"""

from __future__ import annotations

import numpy as np
from scipy.special import gammaln

from .kernels import EPANECHNIKOV_ID, GAUSSIAN_ID

_SQRT_2PI = np.sqrt(2.0 * np.pi)
_CHUNK = 256


def _kvals(kid, u):
    if kid == EPANECHNIKOV_ID:
        return np.where(np.abs(u) <= 1.0, 0.75 * (1.0 - u * u), 0.0)
    if kid == GAUSSIAN_ID:
        return np.exp(-0.5 * u * u) / _SQRT_2PI
    au = np.abs(u)
    return np.where(au < 1.0, 0.5, np.where(au == 1.0, 0.25, 0.0))


def kde_sum(data, h, kid, q):
    n = data.shape[0]
    out = np.empty(q.shape[0])
    for lo in range(0, q.shape[0], _CHUNK):
        qc = q[lo:lo + _CHUNK]
        u = (qc[:, None] - data[None, :]) / h
        out[lo:lo + _CHUNK] = _kvals(kid, u).sum(axis=1) / (n * h)
    return out


def copula_product_sum(us, vs, a, kid, qu, qv):
    n = us.shape[0]
    out = np.empty(qu.shape[0])
    for lo in range(0, qu.shape[0], _CHUNK):
        ku = _kvals(kid, (qu[lo:lo + _CHUNK, None] - us[None, :]) / a)
        kv = _kvals(kid, (qv[lo:lo + _CHUNK, None] - vs[None, :]) / a)
        out[lo:lo + _CHUNK] = (ku * kv).sum(axis=1) / (n * a * a)
    return out


def _beta_vals(loc, a, t):
    # beta kernel located at loc (one per row) evaluated at data t (columns)
    al = loc / a + 1.0
    be = (1.0 - loc) / a + 1.0
    lnorm = gammaln(al + be) - gammaln(al) - gammaln(be)
    tt = t[None, :]
    inside = (tt > 0.0) & (tt < 1.0)
    ts = np.where(inside, tt, 0.5)  # placeholder keeps log finite
    vals = np.exp((al[:, None] - 1.0) * np.log(ts)
                  + (be[:, None] - 1.0) * np.log1p(-ts) + lnorm[:, None])
    vals = np.where(inside, vals, 0.0)
    at_zero = tt == 0.0
    if at_zero.any():
        vals = np.where(at_zero & (al[:, None] == 1.0),
                        np.broadcast_to(be[:, None], vals.shape), vals)
    at_one = tt == 1.0
    if at_one.any():
        vals = np.where(at_one & (be[:, None] == 1.0),
                        np.broadcast_to(al[:, None], vals.shape), vals)
    return vals


def copula_beta_sum(us, vs, a, qu, qv):
    n = us.shape[0]
    out = np.empty(qu.shape[0])
    for lo in range(0, qu.shape[0], _CHUNK):
        bu = _beta_vals(qu[lo:lo + _CHUNK], a, us)
        bv = _beta_vals(qv[lo:lo + _CHUNK], a, vs)
        out[lo:lo + _CHUNK] = (bu * bv).sum(axis=1) / n
    return out


def dk_components(xs, ys, h1, h2, kidx, kidy, qx, qy):
    n = xs.shape[0]
    num = np.empty(qx.shape[0])
    den = np.empty(qx.shape[0])
    for lo in range(0, qx.shape[0], _CHUNK):
        kx = _kvals(kidx, (xs[None, :] - qx[lo:lo + _CHUNK, None]) / h1)
        ky = _kvals(kidy, (ys[None, :] - qy[lo:lo + _CHUNK, None]) / h2)
        den[lo:lo + _CHUNK] = kx.sum(axis=1) / (n * h1)
        num[lo:lo + _CHUNK] = (kx * ky).sum(axis=1) / (n * h1 * h2)
    return num, den


def ll_components(xs, ys, h1, h2, kidx, kidy, qx, qy):
    m = qx.shape[0]
    s0 = np.empty(m); s1 = np.empty(m); s2 = np.empty(m)
    t0 = np.empty(m); t1 = np.empty(m)
    for lo in range(0, m, _CHUNK):
        d = xs[None, :] - qx[lo:lo + _CHUNK, None]
        w = _kvals(kidx, d / h1) / h1
        r = _kvals(kidy, (ys[None, :] - qy[lo:lo + _CHUNK, None]) / h2) / h2
        s0[lo:lo + _CHUNK] = w.sum(axis=1)
        s1[lo:lo + _CHUNK] = (w * d).sum(axis=1)
        s2[lo:lo + _CHUNK] = (w * d * d).sum(axis=1)
        t0[lo:lo + _CHUNK] = (w * r).sum(axis=1)
        t1[lo:lo + _CHUNK] = (w * r * d).sum(axis=1)
    return s0, s1, s2, t0, t1
