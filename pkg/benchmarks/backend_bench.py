"""Timing comparison of the compiled and pure-numpy backends.

Runs the three hot evaluation paths (marginal KDE, copula density,
double-kernel components) on identical inputs through both backend
modules and prints a table of per-call times and speedups. The numbers
are informational; correctness equivalence is covered by the test
suite.

Usage: python3 benchmarks/backend_bench.py [--n 20000] [--queries 2000]
"""

import argparse
import time

import numpy as np

from qcdens import _impl_numpy
from qcdens.kernels import EPANECHNIKOV_ID

try:
    from qcdens import _impl_numba
except ImportError:
    _impl_numba = None


def best_of(fn, repeats=5):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=20000, help="sample size")
    parser.add_argument("--queries", type=int, default=2000, help="evaluation points")
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    xs = rng.normal(size=args.n)
    ys = rng.normal(size=args.n)
    us = rng.random(args.n)
    vs = rng.random(args.n)
    qx = rng.uniform(-3, 3, args.queries)
    qy = rng.uniform(-3, 3, args.queries)
    qu = rng.random(args.queries)
    qv = rng.random(args.queries)
    eid = EPANECHNIKOV_ID

    cases = [
        ("kde_sum", lambda impl: impl.kde_sum(xs, 0.2, eid, qx)),
        ("copula_product_sum", lambda impl: impl.copula_product_sum(us, vs, 0.1, eid, qu, qv)),
        ("copula_beta_sum", lambda impl: impl.copula_beta_sum(us, vs, 0.05, qu, qv)),
        ("dk_components", lambda impl: impl.dk_components(xs, ys, 0.3, 0.3, eid, eid, qx, qy)),
        ("ll_components", lambda impl: impl.ll_components(xs, ys, 0.3, 0.3, eid, eid, qx, qy)),
    ]

    print("n=%d queries=%d" % (args.n, args.queries))
    print("%-20s %12s %12s %9s" % ("function", "numpy [ms]", "numba [ms]", "speedup"))
    for name, call in cases:
        t_np = best_of(lambda: call(_impl_numpy))
        if _impl_numba is None:
            print("%-20s %12.2f %12s %9s" % (name, t_np * 1e3, "n/a", "n/a"))
            continue
        call(_impl_numba)  # compile before timing
        t_nb = best_of(lambda: call(_impl_numba))
        print("%-20s %12.2f %12.2f %8.1fx" % (name, t_np * 1e3, t_nb * 1e3, t_np / t_nb))


if __name__ == "__main__":
    main()
