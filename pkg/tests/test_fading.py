import math

import numpy as np
import pytest
import scipy.special
import scipy.stats
from scipy import integrate

from uavthz.errors import DegenerateSamples, TooFewSamples
from uavthz.fading import (RicianParams, WeibullParams, bessel_i0, classify_fading,
                           fit_fading, rician_cdf, rician_fit_moments, rician_pdf,
                           rician_sample, weibull_cdf, weibull_fit_mle, weibull_pdf,
                           weibull_ppf, weibull_sample, weibull_shape_residual)

HOVER = WeibullParams(5.01, 57.40)
# scale * Gamma(1 + 1/shape) with Gamma from quadrature of t^(1/k) e^-t
HOVER_MEAN = 4.961099689619002
HOVER_STD = 0.10948229601203767


# -- Weibull density / CDF -----------------------------------------------------

def test_weibull_pdf_examples():
    assert weibull_pdf(-1.0, HOVER) == 0.0
    assert weibull_pdf(0.0, WeibullParams(2.0, 1.0)) == pytest.approx(0.5)
    for k in (0.7, 1.0, 3.3, 57.4):
        p = WeibullParams(2.5, k)
        assert weibull_pdf(2.5, p) == pytest.approx(k / 2.5 * math.exp(-1), rel=1e-14)


def test_weibull_cdf_examples():
    assert weibull_cdf(0.0, HOVER) == 0.0
    assert weibull_cdf(-3.0, HOVER) == 0.0
    assert weibull_cdf(5.01, HOVER) == pytest.approx(1 - math.exp(-1), abs=1e-15)
    assert weibull_cdf(1.0, WeibullParams(1.0, 2.0)) == pytest.approx(1 - math.exp(-1), abs=1e-15)


def test_weibull_cdf_matches_quadrature_of_pdf():
    rng = np.random.default_rng(11)
    for _ in range(20):
        phi = rng.uniform(0.5, 10)
        kappa = rng.uniform(0.8, 60)
        omega = rng.uniform(0.05, 2.0) * phi
        p = WeibullParams(phi, kappa)
        pts = [phi] if phi < omega else None
        q, _ = integrate.quad(lambda w: weibull_pdf(w, p), 0, omega, points=pts,
                              epsabs=1e-13, epsrel=1e-13, limit=200)
        assert weibull_cdf(omega, p) == pytest.approx(q, abs=1e-8)


def test_weibull_cdf_limits_and_monotone():
    w = np.linspace(0, 40, 2001)
    f = weibull_cdf(w, WeibullParams(3.0, 1.7))
    assert np.all(np.diff(f) >= 0)
    assert f[0] == 0.0 and f[-1] == pytest.approx(1.0, abs=1e-12)


# -- sampling ------------------------------------------------------------------

def test_inverse_cdf_at_scale_point():
    assert weibull_ppf(1 - math.exp(-1), HOVER) == pytest.approx(5.01, rel=1e-14)


def test_weibull_sample_moments():
    draws = weibull_sample(HOVER, np.random.default_rng(1), 1_000_000)
    assert draws.mean() == pytest.approx(HOVER_MEAN, rel=0.01)
    assert HOVER.mean == pytest.approx(HOVER_MEAN, rel=1e-12)
    unit = weibull_sample(WeibullParams(1.0, 1.0), np.random.default_rng(2), 1_000_000)
    assert unit.mean() == pytest.approx(1.0, rel=0.01)


def test_weibull_sample_reproducible():
    a = weibull_sample(HOVER, np.random.default_rng(5), 100)
    b = weibull_sample(HOVER, np.random.default_rng(5), 100)
    np.testing.assert_array_equal(a, b)
    g = np.random.default_rng(5)
    scalar = [weibull_sample(HOVER, g) for _ in range(3)]
    np.testing.assert_array_equal(scalar, a[:3])


def test_cv_decreases_with_shape():
    cvs = []
    for k in (0.8, 1.5, 3.0, 8.0, 20.0, 57.4):
        x = weibull_sample(WeibullParams(5.0, k), np.random.default_rng(3), 200_000)
        cvs.append(x.std() / x.mean())
    assert np.all(np.diff(cvs) < 0)


# -- MLE -----------------------------------------------------------------------

def test_mle_round_trip_hover():
    x = weibull_sample(HOVER, np.random.default_rng(7), 100_000)
    fit = weibull_fit_mle(x)
    assert fit.scale == pytest.approx(5.01, rel=0.02)
    assert fit.shape == pytest.approx(57.40, rel=0.05)
    assert abs(weibull_shape_residual(x, fit.shape)) < 1e-10


def test_mle_exponential():
    x = np.random.default_rng(8).exponential(1.0, 100_000)
    assert weibull_fit_mle(x).shape == pytest.approx(1.0, rel=0.05)


def test_mle_matches_scipy(rng):
    x = weibull_sample(WeibullParams(2.0, 3.5), rng, 500)
    c, _, scale = scipy.stats.weibull_min.fit(x, floc=0)
    fit = weibull_fit_mle(x)
    assert fit.shape == pytest.approx(c, rel=1e-4)
    assert fit.scale == pytest.approx(scale, rel=1e-4)


@pytest.mark.parametrize("samples, exc", [
    ([3.0] * 20, DegenerateSamples),
    ([1.0, 2.0, -0.5] + [1.5] * 10, DegenerateSamples),
    ([0.0, 1.0, 2.0] + [1.5] * 10, DegenerateSamples),
    ([1.0, 2.0, 3.0], TooFewSamples),
])
def test_mle_rejects(samples, exc):
    with pytest.raises(exc):
        weibull_fit_mle(samples)


# -- Rician --------------------------------------------------------------------

def test_bessel_i0_vs_scipy(backend):
    x = np.concatenate([np.linspace(0, 50, 401), [100.0, 700.0]])
    np.testing.assert_allclose(bessel_i0(x[:300]), scipy.special.i0(x[:300]), rtol=1e-14)
    from uavthz import _backend
    np.testing.assert_allclose(_backend.bessel_i0e(x), scipy.special.i0e(x), rtol=5e-15)


def test_rician_pdf_rayleigh_limit():
    sigma = 1.7
    p = RicianParams(0.0, sigma)
    r = np.linspace(0.1, 8, 10)
    rayleigh = r / sigma ** 2 * np.exp(-r ** 2 / (2 * sigma ** 2))
    np.testing.assert_allclose(rician_pdf(r, p), rayleigh, rtol=0, atol=1e-12)


def test_rician_pdf_support_and_scipy():
    p = RicianParams.from_k_factor(6.66, sigma=0.8)
    assert rician_pdf(-0.1, p) == 0.0
    r = np.linspace(0, 8, 50)
    ref = scipy.stats.rice.pdf(r, p.los_amplitude / p.sigma, scale=p.sigma)
    np.testing.assert_allclose(rician_pdf(r, p), ref, rtol=1e-12, atol=1e-300)


@pytest.mark.parametrize("nu, sigma", [(0.0, 1.0), (3.65, 1.0), (40.0, 0.5), (4.96, 0.114)])
def test_rician_pdf_normalised(nu, sigma):
    p = RicianParams(nu, sigma)
    q, _ = integrate.quad(lambda r: rician_pdf(r, p), 0, nu + 10 * sigma,
                          points=[nu] if nu > 0 else None, epsabs=1e-12, limit=200)
    assert q == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("k, sigma", [(0.0, 1.0), (6.66, 1.0), (950.0, 0.11)])
def test_rician_cdf_vs_scipy(k, sigma):
    p = RicianParams.from_k_factor(k, sigma)
    hi = p.los_amplitude + 6 * sigma
    r = np.random.default_rng(4).uniform(0, hi, 300)
    ref = scipy.stats.rice.cdf(r, p.los_amplitude / sigma, scale=sigma)
    np.testing.assert_allclose(rician_cdf(r, p), ref, rtol=0, atol=1e-8)
    assert rician_cdf(-1.0, p) == 0.0


def test_rician_sample_limits():
    g = np.random.default_rng(9)
    x = rician_sample(RicianParams(3.0, 1e-12), g, 1000)
    np.testing.assert_allclose(x, 3.0, atol=1e-9)
    ray = rician_sample(RicianParams(0.0, 1.0), np.random.default_rng(10), 1_000_000)
    assert ray.mean() == pytest.approx(math.sqrt(math.pi / 2), rel=0.01)


def test_k_factor_from_amplitude():
    p = RicianParams(math.sqrt(2 * 6.66), 1.0)
    assert p.k_factor == pytest.approx(6.66, rel=1e-14)


def test_rician_fit_round_trips():
    ray = rician_sample(RicianParams(0.0, 1.0), np.random.default_rng(12), 100_000)
    assert rician_fit_moments(ray).k_factor < 0.1
    x = rician_sample(RicianParams.from_k_factor(6.66), np.random.default_rng(13), 100_000)
    assert rician_fit_moments(x).k_factor == pytest.approx(6.66, rel=0.10)
    with pytest.raises(DegenerateSamples):
        rician_fit_moments([2.0] * 50)


def test_rician_sampling_reproducible():
    p = RicianParams.from_k_factor(6.66)
    np.testing.assert_array_equal(rician_sample(p, np.random.default_rng(1), 20),
                                  rician_sample(p, np.random.default_rng(1), 20))


# -- classification ------------------------------------------------------------

def test_classify_weibull():
    x = weibull_sample(HOVER, np.random.default_rng(21), 2000)
    rep = classify_fading(x)
    assert rep.model == "weibull"
    assert rep.ks_statistic == rep.ks_weibull < rep.ks_rician
    assert 0 <= rep.ks_statistic <= 1 and rep.sample_count == 2000


def test_classify_rician():
    x = rician_sample(RicianParams.from_k_factor(6.66), np.random.default_rng(22), 2000)
    rep = classify_fading(x)
    assert rep.model == "rician"
    assert rep.ks_rician < rep.ks_weibull


def test_classify_needs_30_samples():
    with pytest.raises(TooFewSamples):
        classify_fading(np.linspace(1, 2, 20))


def test_classify_reports_failed_fit():
    x = rician_sample(RicianParams.from_k_factor(2.0), np.random.default_rng(23), 200)
    x[0] = 0.0   # the Weibull likelihood is unbounded with a zero sample
    rep = classify_fading(x)
    assert rep.model == "rician"
    assert "weibull" in rep.failures and rep.weibull is None


def test_fit_fading_single_family():
    x = weibull_sample(HOVER, np.random.default_rng(24), 500)
    rep = fit_fading(x, "weibull")
    assert rep.model == "weibull" and rep.ks_rician is None
    assert rep.to_dict()["weibull"]["shape"] == rep.params.shape
