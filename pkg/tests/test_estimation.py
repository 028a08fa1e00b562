import numpy as np
import pytest

from ordext import (BivariateSeries, FitConfig, GevmParams, InputError,
                    TrendSpec, StudyConfig, estimate_c_hat, fit_restricted,
                    make_model, pickands_curve, pickands_modified,
                    pickands_raw, run_study, sample_pairs, trend_penalized)
from ordext.estimation import ridge_trend, roughness


def test_pickands_raw_basics():
    xe = np.array([0.5, 1.5])
    ye = np.array([1.2, 0.8])
    assert pickands_raw(xe, ye, 0.0) == pytest.approx(1.0, rel=1e-14)
    assert pickands_raw(xe, ye, 1.0) == pytest.approx(1.0, rel=1e-14)
    assert pickands_raw(np.array([1.0]), np.array([1.0]), 0.5) == \
        pytest.approx(0.5, rel=1e-14)


def test_pickands_raw_endpoint_defect():
    rng = np.random.default_rng(0)
    xe = rng.exponential(size=500)
    ye = rng.exponential(size=500)
    assert pickands_raw(xe, ye, 0.0) == pytest.approx(1.0 / np.mean(xe), rel=1e-12)
    assert pickands_raw(xe, ye, 1.0) == pytest.approx(1.0 / np.mean(ye), rel=1e-12)


def test_pickands_raw_perfect_dependence():
    xe = np.full(50, 1.0)
    assert pickands_raw(xe, xe, 0.5) == pytest.approx(0.5, rel=1e-14)


def test_pickands_modified_endpoints_exact():
    rng = np.random.default_rng(1)
    xe, ye = rng.exponential(size=200), rng.exponential(size=200) * 3.0
    assert pickands_modified(xe, ye, 0.0) == 1.0
    assert pickands_modified(xe, ye, 1.0) == 1.0


def test_pickands_modified_scale_invariance():
    rng = np.random.default_rng(2)
    xe, ye = rng.exponential(size=100), rng.exponential(size=100)
    grid = np.linspace(0.0, 1.0, 41)
    a = pickands_modified(xe, ye, grid)
    b = pickands_modified(3.0 * xe, ye, grid)
    assert np.allclose(a, b, rtol=1e-12)


def test_pickands_modified_lower_bound_fuzz():
    rng = np.random.default_rng(3)
    grid = np.linspace(0.0, 1.0, 101)
    bound = np.maximum(grid, 1.0 - grid)
    for _ in range(60):
        n = int(rng.integers(2, 80))
        xe = rng.exponential(rng.uniform(0.5, 3.0), size=n)
        ye = rng.lognormal(0.0, rng.uniform(0.3, 1.0), size=n)
        vals = pickands_modified(xe, ye, grid)
        assert np.all(vals >= bound)
        assert vals[0] == 1.0 and vals[-1] == 1.0


def test_raw_and_modified_agree_for_unit_mean_samples():
    xe = np.array([0.5, 1.0, 1.5])
    ye = np.array([2.0, 0.5, 0.5])
    grid = np.linspace(0.0, 1.0, 21)
    raw = pickands_raw(xe, ye, grid)
    mod = pickands_modified(xe, ye, grid)
    keep = (grid > 0) & (grid < 1)
    assert np.allclose(raw[keep], mod[keep], atol=1e-12)


def test_pickands_consistency_on_model_sample():
    model = make_model("restricted", c=0.25, s=2.0)
    rng = np.random.default_rng(10)
    xe, ye = sample_pairs(model, 5000, rng)
    grid = np.linspace(0.0, 1.0, 101)
    est = pickands_modified(xe, ye, grid)
    assert float(np.max(np.abs(est - model.a(grid)))) <= 0.05


def test_pickands_empty_sample():
    with pytest.raises(InputError):
        pickands_raw(np.array([]), np.array([]), 0.5)
    with pytest.raises(InputError):
        estimate_c_hat(np.array([]), np.array([]))


def test_pickands_curve_object():
    rng = np.random.default_rng(4)
    xe, ye = rng.exponential(size=50), rng.exponential(size=50)
    curve = pickands_curve(xe, ye)
    assert len(curve.omegas) == 201
    assert curve.variant == "modified"
    assert curve.values[0] == 1.0


def test_estimate_c_hat_minimum():
    xe = np.array([4.0, 6.5, 4.0])
    ye = np.array([1.0, 3.5, 6.0])
    assert estimate_c_hat(xe, ye) == pytest.approx(0.2, rel=1e-14)


def test_estimate_c_hat_bias_and_shrinkage():
    model = make_model("restricted", c=0.25, s=2.0)
    rng = np.random.default_rng(11)
    lows_small, lows_big = [], []
    for _ in range(30):
        xe, ye = sample_pairs(model, 50, rng)
        lows_small.append(estimate_c_hat(xe, ye))
        xe, ye = sample_pairs(model, 5000, rng)
        lows_big.append(estimate_c_hat(xe, ye))
    assert all(v >= 0.25 for v in lows_small + lows_big)
    assert np.median(lows_big) < np.median(lows_small)


def test_trend_penalized_toy_objectives():
    rng = np.random.default_rng(5)
    y = rng.normal(size=30) + np.linspace(0.0, 4.0, 30)
    times = np.arange(30.0)

    def obj(g):
        return -0.5 * (g - y) ** 2

    assert np.allclose(trend_penalized(obj, 0.0, times, np.zeros(30)), y,
                       atol=1e-10)
    lam = 6.0
    assert np.allclose(trend_penalized(obj, lam, times, np.zeros(30)),
                       ridge_trend(y, lam), atol=1e-8)
    flat = trend_penalized(obj, 1e9, times, np.zeros(30))
    assert float(np.max(np.abs(np.diff(flat, 2)))) <= 1e-6
    with pytest.raises(InputError):
        trend_penalized(obj, -1.0, times)


def make_series(n=120, seed=8, s=2.0):
    mx = GevmParams(100.0, 4.0, 0.2)
    my = GevmParams(150.0, 2.0, 0.2)
    model = make_model("restricted", c=1.0 / 33.0, s=s)
    cfg = StudyConfig(n_reps=1, times=np.linspace(0.0, 1.0, n),
                      margin_x=mx, margin_y=my, model=model,
                      trend_x=TrendSpec.linear(100.0, -40.0),
                      trend_y=TrendSpec.linear(150.0, -40.0), seed=seed)
    return run_study(cfg)[0][0]


def test_fit_rejects_bad_input():
    series = make_series(40)
    swapped = BivariateSeries(series.t, series.y, series.x)
    with pytest.raises(InputError):
        fit_restricted(swapped, 10.0, 10.0)
    with pytest.raises(InputError):
        fit_restricted(series, -1.0, 10.0)


DEEP = FitConfig(max_outer=200, outer_tol=1e-13)


@pytest.fixture(scope="module")
def reference_fit():
    series = make_series(150, seed=21)
    return series, fit_restricted(series, 1000.0, 1000.0, DEEP)


def test_fit_recovers_reference_design(reference_fit):
    _, fit = reference_fit
    assert 1.0 <= fit.s <= 4.0
    assert 2.0 <= fit.sigma_x <= 6.0
    assert 1.0 <= fit.sigma_y <= 3.0
    assert -0.1 <= fit.xi <= 0.5
    assert fit.loglik > -np.inf
    assert len(fit.trace) >= 2


def test_fit_trace_monotone(reference_fit):
    _, fit = reference_fit
    pl = [r["penalized_loglik"] for r in fit.trace]
    for a, b in zip(pl, pl[1:]):
        assert b >= a - 1e-9 * (1.0 + abs(a))


def test_fit_boundary_estimates_ordered(reference_fit):
    _, fit = reference_fit
    assert 0.0 < fit.c_hat <= fit.c_hat_pickands < 1.0


def test_fit_is_fixed_point(reference_fit):
    series, fit = reference_fit
    start = dict(s=fit.s, sigma_x=fit.sigma_x, sigma_y=fit.sigma_y,
                 xi=fit.xi, g_x=fit.g_x, g_y=fit.g_y)
    refit = fit_restricted(series, 1000.0, 1000.0,
                           FitConfig(max_outer=200, outer_tol=1e-13,
                                     start=start))
    assert abs(refit.s - fit.s) <= 1e-6
    assert abs(refit.sigma_x - fit.sigma_x) <= 1e-6
    assert abs(refit.sigma_y - fit.sigma_y) <= 1e-6
    assert abs(refit.xi - fit.xi) <= 1e-6
    assert float(np.max(np.abs(refit.g_x - fit.g_x))) <= 1e-6
    assert float(np.max(np.abs(refit.g_y - fit.g_y))) <= 1e-6


def test_fit_large_lambda_gives_straight_trends():
    series = make_series(80, seed=13)
    fit = fit_restricted(series, 1e8, 1e8, FitConfig(max_outer=15))
    scale = float(np.ptp(series.x))
    assert roughness(fit.g_x) ** 0.5 <= 1e-3 * scale
    assert roughness(fit.g_y) ** 0.5 <= 1e-3 * scale
