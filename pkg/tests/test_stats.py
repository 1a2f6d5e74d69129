import numpy as np
import pytest
import scipy.special
import scipy.stats
from hypothesis import given, settings
from hypothesis import strategies as st

from uavthz.errors import EmptySamples, LengthMismatch, TooFewSamples, ZeroVariance
from uavthz.geometry import UavPose
from uavthz.stats import (correlate_columns, correlation_matrix, correlation_p_value,
                          empirical_cdf, ks_statistic, pearson_correlation,
                          regularized_incomplete_beta, t_two_tailed_p)
from uavthz.trajectory import FlightLog


# -- empirical CDF -------------------------------------------------------------

def test_ecdf_rank_construction():
    v, p = empirical_cdf([3, 1, 2])
    np.testing.assert_array_equal(v, [1, 2, 3])
    np.testing.assert_allclose(p, [1 / 3, 2 / 3, 1])


def test_ecdf_single_and_ties():
    v, p = empirical_cdf([7.5])
    assert v.tolist() == [7.5] and p.tolist() == [1.0]
    v, p = empirical_cdf([1, 1, 2])
    np.testing.assert_allclose(p, [2 / 3, 1])
    assert v.tolist() == [1, 2]


def test_ecdf_empty():
    with pytest.raises(EmptySamples):
        empirical_cdf([])


# -- Pearson -------------------------------------------------------------------

def test_pearson_examples():
    x = np.arange(10.0)
    assert pearson_correlation(x, 2 * x + 1) == pytest.approx(1.0, abs=1e-15)
    assert pearson_correlation(x, -x) == pytest.approx(-1.0, abs=1e-15)
    assert pearson_correlation([0, 1, 2], [0, 1, 4]) == pytest.approx(0.96077, abs=5e-6)


def test_pearson_errors():
    with pytest.raises(LengthMismatch):
        pearson_correlation([1, 2, 3], [1, 2])
    with pytest.raises(ZeroVariance):
        pearson_correlation([1, 2, 3], [4, 4, 4])
    with pytest.raises(ZeroVariance):
        pearson_correlation([0.1] * 5, [1, 2, 3, 4, 5])
    with pytest.raises(TooFewSamples):
        pearson_correlation([1, 2], [2, 1])


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000), st.floats(0.1, 100), st.floats(-50, 50),
       st.floats(0.1, 100), st.floats(-50, 50))
def test_pearson_affine_invariance(seed, a, b, c, d):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(50)
    y = 0.5 * x + rng.standard_normal(50)
    r = pearson_correlation(x, y)
    assert pearson_correlation(a * x + b, c * y + d) == pytest.approx(r, abs=1e-10)
    assert pearson_correlation(-x, y) == pytest.approx(-r, abs=1e-12)


def test_pearson_matches_numpy(rng):
    x = rng.standard_normal(200)
    y = x ** 2 + rng.standard_normal(200)
    assert pearson_correlation(x, y) == pytest.approx(np.corrcoef(x, y)[0, 1], abs=1e-13)


# -- significance --------------------------------------------------------------

@pytest.mark.parametrize("x, a, b", [(0.3, 2.0, 3.0), (0.9, 0.5, 0.5), (0.01, 10, 0.5),
                                      (0.999, 400, 0.5), (0.5, 1.0, 1.0)])
def test_incomplete_beta_vs_scipy(x, a, b):
    assert regularized_incomplete_beta(x, a, b) == pytest.approx(
        scipy.special.betainc(a, b, x), abs=1e-12)


@pytest.mark.parametrize("t, df", [(0.5, 3), (2.1, 10), (-3.0, 25), (6.0, 998), (0.0, 5)])
def test_t_p_value_vs_scipy(t, df):
    assert t_two_tailed_p(t, df) == pytest.approx(2 * scipy.stats.t.sf(abs(t), df), abs=1e-10)


def test_correlation_p_value_vs_pearsonr(rng):
    for n in (5, 12, 100):
        x = rng.standard_normal(n)
        y = 0.3 * x + rng.standard_normal(n)
        res = scipy.stats.pearsonr(x, y)
        assert correlation_p_value(pearson_correlation(x, y), n) == pytest.approx(
            res.pvalue, abs=1e-10)


def test_p_value_monotone_in_abs_r():
    rs = np.linspace(0, 0.999, 60)
    ps = [correlation_p_value(r, 30) for r in rs]
    assert np.all(np.diff(ps) < 0)
    assert correlation_p_value(1.0, 30) == 0.0
    assert correlation_p_value(0.0, 30) == pytest.approx(1.0)


# -- correlation report --------------------------------------------------------

def _log_from(rng, n, power_fn):
    a = rng.normal(0, 0.05, n)
    b = rng.normal(0, 0.05, n)
    z = 2.9 + rng.normal(0, 0.03, n)
    pitch = -8 + rng.normal(0, 1.0, n)
    yaw = 180 + rng.normal(0, 1.0, n)
    power = power_fn(a, b, z, pitch, yaw) + rng.normal(0, 0.05, n)
    # station bearing 0: a is the north offset, b the east offset
    return FlightLog(np.arange(n) * 0.1, b, 9.9 + a, z, pitch, np.zeros(n), yaw, power)


def test_correlation_sign_pattern(rng):
    log = _log_from(rng, 1000, lambda a, b, z, p, y: 40 + 30 * a)
    nominal = UavPose((0.0, 9.9, 2.9), -8.0, 0.0, 180.0)
    rep = correlation_matrix(log, nominal)
    names = rep.names
    vi, oi, pi = (names.index(k) for k in ("vertical_movement", "antenna_orientation", "power"))
    assert rep.r[vi, pi] > 0.9 and rep.significant[vi, pi]
    assert abs(rep.r[oi, pi]) < 0.2 and not rep.significant[oi, pi]
    assert rep.n == 1000


def test_report_structure(rng):
    log = _log_from(rng, 50, lambda a, b, z, p, y: 40 - 10 * b)
    rep = correlation_matrix(log)
    np.testing.assert_array_equal(np.diag(rep.r), 1.0)
    np.testing.assert_allclose(rep.r, rep.r.T)
    assert np.all(np.isnan(np.diag(rep.p)))
    assert not rep.significant.diagonal().any()
    off = ~np.eye(5, dtype=bool)
    assert np.all((rep.p[off] >= 0) & (rep.p[off] <= 1))
    doc = rep.to_dict()
    assert doc["schema_version"] == "1" and doc["p"][0][0] is None


def test_identical_and_constant_columns():
    x = np.linspace(0, 1, 20)
    rep = correlate_columns([x, x.copy(), np.full(20, 3.0)], ["u", "v", "c"])
    assert rep.r[0, 1] == pytest.approx(1.0)
    assert np.isnan(rep.r[0, 2]) and not rep.significant[0, 2]
    assert ("u", "c", "ZeroVariance") in rep.errors


def test_step_movement_columns(rng):
    log = _log_from(rng, 40, lambda a, b, z, p, y: 40 + 30 * a)
    assert correlation_matrix(log, movement="step").n == 39


def test_correlation_needs_eight_samples(rng):
    log = _log_from(rng, 7, lambda a, b, z, p, y: 40 + a)
    with pytest.raises(TooFewSamples):
        correlation_matrix(log)


# -- KS ------------------------------------------------------------------------

def uniform_cdf(x):
    return np.clip(x, 0.0, 1.0)


def test_ks_quantile_construction():
    n = 9
    x = np.arange(1, n + 1) / (n + 1)
    d = ks_statistic(x, uniform_cdf)
    assert d == pytest.approx(1 / (n + 1), abs=1e-15)
    assert d <= 2 / (n + 1)


def test_ks_examples():
    assert ks_statistic([0.5], uniform_cdf) == pytest.approx(0.5)
    assert ks_statistic([0.25, 0.75], uniform_cdf) == pytest.approx(0.25)
    with pytest.raises(EmptySamples):
        ks_statistic([], uniform_cdf)


def test_ks_matches_scipy(rng):
    x = rng.standard_normal(300)
    assert ks_statistic(x, scipy.stats.norm.cdf) == pytest.approx(
        scipy.stats.kstest(x, "norm").statistic, abs=1e-14)


def test_ks_consistency():
    ds = []
    for seed in range(100):
        x = np.random.default_rng(seed).standard_normal(10_000)
        ds.append(ks_statistic(x, scipy.stats.norm.cdf))
    assert np.median(ds) < 0.02


def test_ks_probability_integral_transform(rng):
    x = rng.exponential(2.0, 500)
    cdf = lambda v: 1 - np.exp(-v / 2.0)
    assert ks_statistic(cdf(x), uniform_cdf) == pytest.approx(ks_statistic(x, cdf), abs=1e-15)
