import math

import numpy as np
import pytest

from qcdens.conditional_density import (ClippingPolicy, fit_double_kernel,
                                        fit_local_polynomial,
                                        fit_quantile_copula, is_undefined)
from qcdens.copula_density import ProductKernelMode
from qcdens.empirical import PairedSample
from qcdens.kde import UnivariateKde
from qcdens.kernels import EPANECHNIKOV, GAUSSIAN, eval_kernel
from qcdens.simulation import FrankCopula, SimulationModel

MODEL = SimulationModel(FrankCopula(100.0))


def test_quantile_copula_two_point_hand_expansion():
    # n=2 sample {(0,0),(1,1)}, h=1, a=0.5, all Epanechnikov product:
    # g_hat(0) = (K(0) + K(-1))/2 = 3/8
    # pseudo-observations (1/3,1/3), (2/3,2/3); F'(0) = G'(0) = 1/3
    # c_hat(1/3,1/3) = 2 [K(0)^2 + K(-2/3)^2] = 53/36
    s = PairedSample([0.0, 1.0], [0.0, 1.0])
    est = fit_quantile_copula(s, EPANECHNIKOV, ProductKernelMode(EPANECHNIKOV),
                              h=1.0, a=0.5)
    k0 = eval_kernel(EPANECHNIKOV, 0.0)
    k23 = eval_kernel(EPANECHNIKOV, -2.0 / 3.0)
    g0 = (k0 + eval_kernel(EPANECHNIKOV, -1.0)) / 2.0
    want = g0 * (k0 ** 2 + k23 ** 2) / (2.0 * 0.5 ** 2)
    assert est.eval(0.0, 0.0) == pytest.approx(53.0 / 96.0, rel=1e-14)
    assert est.eval(0.0, 0.0) == pytest.approx(want, rel=1e-14)


def test_quantile_copula_finite_everywhere():
    sample = MODEL.sample_xy(100, 5)
    est = fit_quantile_copula(sample)
    xs = np.linspace(-6.0, 6.0, 11)
    ys = np.linspace(-4.0, 4.0, 11)
    grid = est.eval_grid(xs, ys)
    assert np.isfinite(grid).all()
    assert (grid >= 0.0).all()


def test_x_enters_through_rank_only():
    sample = MODEL.sample_xy(60, 9)
    est = fit_quantile_copula(sample)
    srt = np.sort(sample.xs)
    # between consecutive order statistics the estimate is constant in x
    for k in (10, 30, 50):
        lo, hi = srt[k], srt[k + 1]
        if hi - lo < 1e-9:
            continue
        x1 = lo + 0.25 * (hi - lo)
        x2 = lo + 0.75 * (hi - lo)
        assert est.eval(x1, 0.3) == est.eval(x2, 0.3)


def test_quantile_copula_normalizes_approximately():
    sample = MODEL.sample_xy(1000, 13)
    est = fit_quantile_copula(sample)  # beta-kernel default
    ys = np.linspace(-8.0, 8.0, 801)
    for x in (-1.0, 0.0, 1.0):
        vals = est._eval_pairs(np.full(ys.size, x), ys)
        mass = np.trapezoid(vals, ys)
        assert 0.85 <= mass <= 1.15


def test_double_kernel_single_point_window():
    # one observation: ratio collapses to K_h2(Y_1 - y)
    s = PairedSample([0.0], [0.5])
    est = fit_double_kernel(s, h1=1.0, h2=0.8, clipping=ClippingPolicy.none())
    got = est.eval(0.2, 0.1)
    want = eval_kernel(EPANECHNIKOV, (0.5 - 0.1) / 0.8) / 0.8
    assert got == pytest.approx(want, rel=1e-12)


def test_double_kernel_undefined_outside_data_reach():
    sample = MODEL.sample_xy(100, 21)
    est = fit_double_kernel(sample, clipping=ClippingPolicy.none())
    xmax = np.abs(sample.xs).max()
    assert is_undefined(est.eval(xmax + est.h1 + 0.5, 0.0))
    assert is_undefined(est.eval(-(xmax + est.h1 + 0.5), 0.0))


def test_double_kernel_gaussian_never_undefined_nearby():
    sample = MODEL.sample_xy(50, 2)
    est = fit_double_kernel(sample, GAUSSIAN, GAUSSIAN, clipping=ClippingPolicy.none())
    assert np.isfinite(est.eval(3.0, 0.0))


def test_clipping_threshold_fallbacks():
    sample = MODEL.sample_xy(100, 21)
    far_x = np.abs(sample.xs).max() + 2.0
    zero = fit_double_kernel(sample, clipping=ClippingPolicy.threshold(1e-5, "zero"))
    assert zero.eval(far_x, 0.4) == 0.0
    marg = fit_double_kernel(sample, clipping=ClippingPolicy.threshold(1e-5, "marginal_kde"))
    ghat = UnivariateKde(sample.ys, marg.h2, EPANECHNIKOV)
    assert marg.eval(far_x, 0.4) == pytest.approx(ghat.eval(0.4), rel=1e-12)
    # inside the data range the clipped and raw versions agree
    raw = fit_double_kernel(sample, clipping=ClippingPolicy.none())
    assert marg.eval(0.1, 0.2) == pytest.approx(raw.eval(0.1, 0.2), rel=1e-14)


def test_local_poly_degree0_equals_double_kernel():
    sample = MODEL.sample_xy(50, 7)
    dk = fit_double_kernel(sample, clipping=ClippingPolicy.none())
    ll0 = fit_local_polynomial(sample, 0, clipping=ClippingPolicy.none())
    rng = np.random.default_rng(123)
    lo, hi = sample.xs.min(), sample.xs.max()
    for _ in range(100):
        x = float(rng.uniform(lo - 0.5, hi + 0.5))
        y = float(rng.uniform(-3.0, 3.0))
        a, b = dk.eval(x, y), ll0.eval(x, y)
        if is_undefined(a) or is_undefined(b):
            assert is_undefined(a) and is_undefined(b)
        else:
            assert abs(a - b) <= 1e-12 * max(1.0, abs(a))


def test_local_linear_singular_design_is_undefined():
    # every in-window x identical: the degree-1 system is singular
    s = PairedSample([0.0, 0.0, 0.0, 5.0], [0.1, 0.2, 0.3, 0.4])
    est = fit_local_polynomial(s, 1, h1=1.0, h2=1.0, clipping=ClippingPolicy.none())
    assert is_undefined(est.eval(0.0, 0.2))
    clipped = fit_local_polynomial(s, 1, h1=1.0, h2=1.0,
                                   clipping=ClippingPolicy.threshold(1e-5, "zero"))
    assert clipped.eval(0.0, 0.2) == 0.0


def test_local_linear_matches_normal_equations_oracle():
    sample = MODEL.sample_xy(80, 3)
    est = fit_local_polynomial(sample, 1, h1=0.5, h2=0.5, clipping=ClippingPolicy.none())
    x, y = 0.3, -0.2
    w = eval_kernel(EPANECHNIKOV, (sample.xs - x) / 0.5) / 0.5
    r = eval_kernel(EPANECHNIKOV, (sample.ys - y) / 0.5) / 0.5
    d = sample.xs - x
    A = np.array([[w.sum(), (w * d).sum()], [(w * d).sum(), (w * d * d).sum()]])
    b = np.array([(w * r).sum(), (w * r * d).sum()])
    theta = np.linalg.solve(A, b)
    assert est.eval(x, y) == pytest.approx(theta[0], rel=1e-10)


def test_local_linear_goes_negative_somewhere():
    sample = MODEL.sample_xy(100, 31)
    est = fit_local_polynomial(sample, 1, clipping=ClippingPolicy.none())
    grid = est.eval_grid(np.linspace(-3, 3, 41), np.linspace(-3, 3, 41))
    vals = grid[np.isfinite(grid)]
    assert (vals < 0.0).any()


def test_eval_grid_layout():
    sample = MODEL.sample_xy(40, 1)
    est = fit_quantile_copula(sample)
    xs = np.array([-1.0, 0.0, 2.0])
    ys = np.array([-0.5, 0.5])
    grid = est.eval_grid(xs, ys)
    assert grid.shape == (3, 2)
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            assert grid[i, j] == pytest.approx(est.eval(x, y), rel=1e-15)


def test_validation_errors():
    sample = MODEL.sample_xy(30, 1)
    with pytest.raises(ValueError):
        fit_local_polynomial(sample, 2)
    with pytest.raises(ValueError):
        ClippingPolicy.threshold(0.0)
    with pytest.raises(ValueError):
        ClippingPolicy("clamp")
    with pytest.raises(ValueError):
        ClippingPolicy.threshold(1e-5, "nearest")
    with pytest.raises(ValueError):
        fit_quantile_copula(sample, h=-1.0)


def test_undefined_marker():
    assert is_undefined(float("nan"))
    assert not is_undefined(0.0)
    assert not is_undefined(math.inf)
