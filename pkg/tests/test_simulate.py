import math

import numpy as np
import pytest
from scipy.special import gamma as gamma_fn
from scipy.stats import chi2, kstest, spearmanr

from ordext import (GevmParams, ParameterError, PointMassModel, StudyConfig,
                    TrendSpec, joint_log_density_gevm, make_model, run_study,
                    sample_pair, sample_pairs)


def study_config(n_reps=1, n_times=200, seed=5, s=2.0):
    mx = GevmParams(100.0, 4.0, 0.2)
    my = GevmParams(150.0, 2.0, 0.2)
    return StudyConfig(
        n_reps=n_reps, times=np.linspace(0.0, 1.0, n_times),
        margin_x=mx, margin_y=my,
        model=make_model("restricted", c=1.0 / 33.0, s=s),
        trend_x=TrendSpec.linear(100.0, -40.0),
        trend_y=TrendSpec.linear(150.0, -40.0), seed=seed)


def test_sample_pair_scalar():
    model = make_model("restricted", c=0.25, s=2.0)
    rng = np.random.default_rng(0)
    x, y = sample_pair(model, rng)
    assert x > 0 and y > 0
    assert y / (x + y) > 0.25


def test_restricted_sampler_respects_ordering_region():
    model = make_model("restricted", c=0.25, s=2.0)
    rng = np.random.default_rng(1)
    xe, ye = sample_pairs(model, 10_000, rng)
    assert float(np.min(ye / (xe + ye))) > 0.25


def test_independence_sampler_uncorrelated():
    rng = np.random.default_rng(2)
    xe, ye = sample_pairs(PointMassModel.independence(), 10_000, rng)
    rho = spearmanr(xe, ye).statistic
    assert abs(rho) < 0.05


def test_sampler_marginals_exponential():
    rng = np.random.default_rng(3)
    for model in (make_model("restricted", c=0.25, s=2.0),
                  make_model("interval", c1=0.25, c2=0.75, s=2.0)):
        xe, ye = sample_pairs(model, 2000, rng)
        assert kstest(xe, "expon").pvalue > 0.01
        assert kstest(ye, "expon").pvalue > 0.01


def test_sampler_size_validation():
    with pytest.raises(ParameterError):
        sample_pairs(make_model("restricted", c=0.25, s=2.0), 0,
                     np.random.default_rng(0))


def test_run_study_deterministic():
    series_a, summary_a = run_study(study_config(n_reps=3, n_times=50))
    series_b, summary_b = run_study(study_config(n_reps=3, n_times=50))
    for sa, sb in zip(series_a, series_b):
        assert np.array_equal(sa.x, sb.x)
        assert np.array_equal(sa.y, sb.y)
    assert np.array_equal(summary_a.mean_x, summary_b.mean_x)
    # distinct replicate streams produce distinct draws
    assert not np.allclose(series_a[0].x, series_a[1].x)


def test_run_study_orders_every_point():
    series, summary = run_study(study_config(n_reps=2, n_times=500))
    for s in series:
        assert s.is_ordered()
    assert np.all(summary.ordering_fraction == 1.0)


def test_run_study_tracks_mean_trajectory():
    cfg = study_config(n_reps=50, n_times=60, seed=9)
    _, summary = run_study(cfg)
    sigma, xi = 4.0, 0.2
    offset = (sigma / xi) * (1.0 - gamma_fn(1.0 - xi))
    sd = (sigma / xi) * math.sqrt(gamma_fn(1.0 - 2 * xi) - gamma_fn(1.0 - xi) ** 2)
    se = sd / math.sqrt(50)
    target = 100.0 - 40.0 * summary.times + offset
    within = np.abs(summary.mean_x - target) <= 3.0 * se
    assert float(np.mean(within)) >= 0.95


def chi_square_density_check(n_samples, seed, bins=10):
    """Histogram of sampled data-scale pairs against density cell masses.

    Builds a box whose cells sit strictly inside the positive-density
    region, integrates exp(joint_log_density) over each cell with a
    Gauss-Legendre rule, and lumps everything outside the box into one
    extra category.  Returns the chi-square p-value.
    """
    mx = GevmParams(100.0, 4.0, 0.2)
    my = GevmParams(150.0, 2.0, 0.2)
    c = 1.0 / 33.0
    model = make_model("restricted", c=c, s=2.0)
    cfg = StudyConfig(n_reps=1, times=np.zeros(n_samples), margin_x=mx,
                      margin_y=my, model=model, seed=seed)
    series, _ = run_study(cfg)
    x, y = series[0].x, series[0].y

    x_edges = np.linspace(np.quantile(x, 0.06), np.quantile(x, 0.94), bins + 1)
    y_edges = np.linspace(np.quantile(y, 0.06), np.quantile(y, 0.94), bins + 1)

    nodes, weights = np.polynomial.legendre.leggauss(16)
    masses = np.zeros((bins, bins))
    for i in range(bins):
        xs = 0.5 * (x_edges[i] + x_edges[i + 1]) + \
            0.5 * (x_edges[i + 1] - x_edges[i]) * nodes
        wx = 0.5 * (x_edges[i + 1] - x_edges[i]) * weights
        for j in range(bins):
            ys = 0.5 * (y_edges[j] + y_edges[j + 1]) + \
                0.5 * (y_edges[j + 1] - y_edges[j]) * nodes
            wy = 0.5 * (y_edges[j + 1] - y_edges[j]) * weights
            xg, yg = np.meshgrid(xs, ys, indexing="ij")
            ld = joint_log_density_gevm(xg.ravel(), yg.ravel(), mx, my, model)
            dens = np.where(np.isfinite(ld), np.exp(ld), 0.0).reshape(16, 16)
            masses[i, j] = float(wx @ dens @ wy)

    counts, _, _ = np.histogram2d(x, y, bins=[x_edges, y_edges])
    observed = np.append(counts.ravel(), n_samples - counts.sum())
    expected = np.append(masses.ravel(), 1.0 - masses.sum()) * n_samples
    stat = float(np.sum((observed - expected) ** 2 / expected))
    return float(chi2.sf(stat, df=observed.size - 1))


def test_sampler_matches_density_cells():
    assert chi_square_density_check(30_000, seed=17) > 0.001


def test_sampler_reproduces_dependence_curve():
    model = make_model("restricted", c=0.25, s=2.0)
    rng = np.random.default_rng(23)
    xe, ye = sample_pairs(model, 5000, rng)
    from ordext import pickands_modified
    grid = np.linspace(0.0, 1.0, 101)
    assert float(np.max(np.abs(pickands_modified(xe, ye, grid) - model.a(grid)))) <= 0.05
