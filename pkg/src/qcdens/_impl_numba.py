"""Numba implementations of the hot estimator sums.

Each query's inner sum runs sequentially in index order, so results do
not depend on how callers split query batches across threads.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from .kernels import EPANECHNIKOV_ID, GAUSSIAN_ID

_SQRT_2PI = math.sqrt(2.0 * math.pi)

_JIT = dict(cache=True, nogil=True, fastmath=False)


@njit(**_JIT)
def _kval(kid, u):
    if kid == 0:  # epanechnikov
        if abs(u) <= 1.0:
            return 0.75 * (1.0 - u * u)
        return 0.0
    elif kid == 1:  # gaussian
        return math.exp(-0.5 * u * u) / _SQRT_2PI
    else:  # uniform, midpoint value at the jump
        au = abs(u)
        if au < 1.0:
            return 0.5
        elif au == 1.0:
            return 0.25
        return 0.0


@njit(**_JIT)
def kde_sum(data, h, kid, q):
    n = data.shape[0]
    out = np.empty(q.shape[0])
    for j in range(q.shape[0]):
        acc = 0.0
        for i in range(n):
            acc += _kval(kid, (q[j] - data[i]) / h)
        out[j] = acc / (n * h)
    return out


@njit(**_JIT)
def copula_product_sum(us, vs, a, kid, qu, qv):
    n = us.shape[0]
    out = np.empty(qu.shape[0])
    for j in range(qu.shape[0]):
        acc = 0.0
        for i in range(n):
            acc += _kval(kid, (qu[j] - us[i]) / a) * _kval(kid, (qv[j] - vs[i]) / a)
        out[j] = acc / (n * a * a)
    return out


@njit(**_JIT)
def _beta_val(t, lt, l1t, al, be, lnorm):
    # lt/l1t are log(t) and log1p(-t), precomputed for interior t
    if t < 0.0 or t > 1.0:
        return 0.0
    if t == 0.0:
        return be if al == 1.0 else 0.0
    if t == 1.0:
        return al if be == 1.0 else 0.0
    return math.exp((al - 1.0) * lt + (be - 1.0) * l1t + lnorm)


@njit(**_JIT)
def copula_beta_sum(us, vs, a, qu, qv):
    n = us.shape[0]
    lu = np.zeros(n)
    l1u = np.zeros(n)
    lv = np.zeros(n)
    l1v = np.zeros(n)
    for i in range(n):
        if 0.0 < us[i] < 1.0:
            lu[i] = math.log(us[i])
            l1u[i] = math.log1p(-us[i])
        if 0.0 < vs[i] < 1.0:
            lv[i] = math.log(vs[i])
            l1v[i] = math.log1p(-vs[i])
    out = np.empty(qu.shape[0])
    for j in range(qu.shape[0]):
        alu = qu[j] / a + 1.0
        beu = (1.0 - qu[j]) / a + 1.0
        lnu = math.lgamma(alu + beu) - math.lgamma(alu) - math.lgamma(beu)
        alv = qv[j] / a + 1.0
        bev = (1.0 - qv[j]) / a + 1.0
        lnv = math.lgamma(alv + bev) - math.lgamma(alv) - math.lgamma(bev)
        acc = 0.0
        for i in range(n):
            acc += (_beta_val(us[i], lu[i], l1u[i], alu, beu, lnu)
                    * _beta_val(vs[i], lv[i], l1v[i], alv, bev, lnv))
        out[j] = acc / n
    return out


@njit(**_JIT)
def dk_components(xs, ys, h1, h2, kidx, kidy, qx, qy):
    n = xs.shape[0]
    num = np.empty(qx.shape[0])
    den = np.empty(qx.shape[0])
    for j in range(qx.shape[0]):
        accn = 0.0
        accd = 0.0
        for i in range(n):
            kx = _kval(kidx, (xs[i] - qx[j]) / h1)
            if kx != 0.0:
                accd += kx
                accn += kx * _kval(kidy, (ys[i] - qy[j]) / h2)
        num[j] = accn / (n * h1 * h2)
        den[j] = accd / (n * h1)
    return num, den


@njit(**_JIT)
def ll_components(xs, ys, h1, h2, kidx, kidy, qx, qy):
    n = xs.shape[0]
    m = qx.shape[0]
    s0 = np.empty(m); s1 = np.empty(m); s2 = np.empty(m)
    t0 = np.empty(m); t1 = np.empty(m)
    for j in range(m):
        a0 = 0.0; a1 = 0.0; a2 = 0.0; b0 = 0.0; b1 = 0.0
        for i in range(n):
            d = xs[i] - qx[j]
            w = _kval(kidx, d / h1) / h1
            if w != 0.0:
                r = _kval(kidy, (ys[i] - qy[j]) / h2) / h2
                a0 += w
                a1 += w * d
                a2 += w * d * d
                b0 += w * r
                b1 += w * r * d
        s0[j] = a0; s1[j] = a1; s2[j] = a2
        t0[j] = b0; t1[j] = b1
    return s0, s1, s2, t0, t1
