"""Weibull and Rician fading: densities, CDFs, samplers, estimators, model choice."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import DegenerateSamples, NoConvergence, TooFewSamples
from .stats import ks_statistic

MIN_FIT_SAMPLES = 8
MIN_CLASSIFY_SAMPLES = 30

# Reported Rician scale of the hovering-state fit; units are not given, so it
# is carried as metadata and never used in computation.
REPORTED_RICIAN_SCALE = 9.78e-4


@dataclass(frozen=True)
class WeibullParams:
    scale: float
    shape: float

    def __post_init__(self):
        if not (self.scale > 0 and math.isfinite(self.scale)):
            raise ValueError("Weibull scale must be > 0")
        if not (self.shape > 0 and math.isfinite(self.shape)):
            raise ValueError("Weibull shape must be > 0")

    @property
    def mean(self):
        return self.scale * math.gamma(1.0 + 1.0 / self.shape)

    @property
    def std(self):
        g1 = math.gamma(1.0 + 1.0 / self.shape)
        g2 = math.gamma(1.0 + 2.0 / self.shape)
        return self.scale * math.sqrt(max(g2 - g1 * g1, 0.0))


@dataclass(frozen=True)
class RicianParams:
    """Envelope r = |nu + sigma*(z1 + j z2)|; K = nu^2 / (2 sigma^2)."""

    los_amplitude: float
    sigma: float

    def __post_init__(self):
        if not (self.los_amplitude >= 0 and math.isfinite(self.los_amplitude)):
            raise ValueError("los_amplitude must be >= 0")
        if not (self.sigma > 0 and math.isfinite(self.sigma)):
            raise ValueError("sigma must be > 0")

    @property
    def k_factor(self):
        return self.los_amplitude ** 2 / (2.0 * self.sigma ** 2)

    @classmethod
    def from_k_factor(cls, k_factor, sigma=1.0):
        if k_factor < 0:
            raise ValueError("K-factor must be >= 0")
        return cls(sigma * math.sqrt(2.0 * k_factor), sigma)


# -- Weibull ---------------------------------------------------------------

def weibull_pdf(omega, params):
    w = np.asarray(omega, dtype=float)
    phi, kappa = params.scale, params.shape
    z = np.where(w >= 0, w, 0.0) / phi
    with np.errstate(divide="ignore", invalid="ignore"):
        dens = (kappa / phi) * z ** (kappa - 1.0) * np.exp(-(z ** kappa))
    out = np.where(w >= 0, dens, 0.0)
    return float(out) if out.ndim == 0 else out


def weibull_cdf(omega, params):
    w = np.asarray(omega, dtype=float)
    z = np.where(w >= 0, w, 0.0) / params.scale
    out = np.where(w >= 0, -np.expm1(-(z ** params.shape)), 0.0)
    return float(out) if out.ndim == 0 else out


def weibull_ppf(p, params):
    """Inverse CDF: scale * (-ln(1 - p))**(1/shape)."""
    p = np.asarray(p, dtype=float)
    out = params.scale * (-np.log1p(-p)) ** (1.0 / params.shape)
    return float(out) if out.ndim == 0 else out


def weibull_sample(params, rng, size=None):
    """Inverse-CDF draw(s); ``rng`` is a caller-owned ``numpy.random.Generator``."""
    return weibull_ppf(rng.random(size), params)


def _check_fit_samples(samples, what):
    x = np.asarray(samples, dtype=float).ravel()
    if x.size < MIN_FIT_SAMPLES:
        raise TooFewSamples(f"{what} needs >= {MIN_FIT_SAMPLES} samples, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DegenerateSamples(f"{what}: samples must be finite")
    if np.any(x < 0):
        raise DegenerateSamples(f"{what}: samples must be non-negative")
    if np.all(x == x[0]):
        raise DegenerateSamples(f"{what}: all samples are equal")
    return x


def weibull_shape_residual(samples, shape):
    """Left minus right side of the Weibull MLE shape equation."""
    x = np.asarray(samples, dtype=float)
    lny = np.log(x / x.max())
    s0, s1, _ = _backend.weibull_shape_sums(lny, shape)
    return s1 / s0 - 1.0 / shape - float(lny.mean())


def weibull_fit_mle(samples, max_iter=200, bracket=(1e-3, 1e3)):
    """Maximum-likelihood Weibull fit.

    The shape solves ``sum(x^k ln x)/sum(x^k) - 1/k = mean(ln x)``, found by
    Newton steps kept inside a shrinking bisection bracket. Samples are
    normalised by their maximum first so ``x^k`` cannot overflow.
    """
    x = _check_fit_samples(samples, "weibull_fit_mle")
    if np.any(x == 0):
        raise DegenerateSamples("weibull_fit_mle: zero samples make the likelihood unbounded")
    m = float(x.max())
    lny = np.log(x / m)
    mean_l = float(lny.mean())

    def equation(k):
        s0, s1, s2 = _backend.weibull_shape_sums(lny, k)
        ratio = s1 / s0
        g = ratio - 1.0 / k - mean_l
        dg = s2 / s0 - ratio * ratio + 1.0 / (k * k)
        return g, dg, s0

    lo, hi = bracket
    if equation(lo)[0] >= 0 or equation(hi)[0] <= 0:
        raise NoConvergence(f"Weibull shape lies outside the bracket [{lo:g}, {hi:g}]")

    std_l = float(lny.std())
    k = math.pi / (math.sqrt(6.0) * std_l) if std_l > 0 else 1.0
    k = min(max(k, lo * 1.01), hi * 0.99)
    g, dg, s0 = equation(k)
    for _ in range(max_iter):
        if abs(g) < 1e-13:
            break
        if g < 0:
            lo = k
        else:
            hi = k
        step = k - g / dg if dg > 0 else 0.5 * (lo + hi)
        k = step if lo < step < hi else 0.5 * (lo + hi)
        g, dg, s0 = equation(k)
        if hi - lo <= 4e-16 * k:
            break
    if not abs(g) < 1e-10:
        raise NoConvergence(f"Weibull MLE residual {g:.3g} after {max_iter} iterations")
    scale = m * (s0 / x.size) ** (1.0 / k)
    return WeibullParams(scale=scale, shape=k)


# -- Rician ----------------------------------------------------------------

def bessel_i0(x):
    """Modified Bessel function of the first kind, order zero."""
    x = np.asarray(x, dtype=float)
    with np.errstate(over="ignore"):
        out = _backend.bessel_i0e(x) * np.exp(np.abs(x))
    return float(out) if out.ndim == 0 else out


def rician_pdf(r, params):
    r = np.asarray(r, dtype=float)
    nu, s2 = params.los_amplitude, params.sigma ** 2
    rp = np.where(r >= 0, r, 0.0)
    # exp(-(r^2+nu^2)/2s2) * I0(r nu/s2) == exp(-(r-nu)^2/2s2) * I0e(r nu/s2)
    dens = (rp / s2) * np.exp(-((rp - nu) ** 2) / (2.0 * s2)) * _backend.bessel_i0e(rp * nu / s2)
    out = np.where(r >= 0, dens, 0.0)
    return float(out) if out.ndim == 0 else out


_GL20 = np.polynomial.legendre.leggauss(20)
_GL10 = np.polynomial.legendre.leggauss(10)


def _gauss_legendre(f, lo, hi, rule):
    nodes, weights = rule
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    pts = mid[:, None] + half[:, None] * nodes[None, :]
    return half * (f(pts) @ weights)


def _adaptive_integrals(f, lo, hi, tol, max_depth=40):
    """Integrals of ``f`` over each [lo_i, hi_i] with total error about ``tol``."""
    lo = np.asarray(lo, dtype=float)
    hi = np.asarray(hi, dtype=float)
    out = np.zeros(lo.size)
    owner = np.arange(lo.size)
    span = float(np.sum(hi - lo)) or 1.0
    for _ in range(max_depth):
        if lo.size == 0:
            break
        fine = _gauss_legendre(f, lo, hi, _GL20)
        coarse = _gauss_legendre(f, lo, hi, _GL10)
        budget = tol * (hi - lo) / span + 1e-300
        done = np.abs(fine - coarse) <= budget
        np.add.at(out, owner[done], fine[done])
        lo, hi, owner = lo[~done], hi[~done], owner[~done]
        mid = 0.5 * (lo + hi)
        lo, hi = np.concatenate([lo, mid]), np.concatenate([mid, hi])
        owner = np.concatenate([owner, owner])
    else:
        if lo.size:
            np.add.at(out, owner, _gauss_legendre(f, lo, hi, _GL20))
    return out


def rician_cdf(r, params, tol=1e-8):
    """Rician CDF by adaptive Gauss-Legendre quadrature of the density.

    Evaluation points are sorted and the density is integrated piecewise
    between neighbours, so a whole sample costs one sweep.
    """
    r = np.asarray(r, dtype=float)
    flat = r.ravel()
    order = np.argsort(flat, kind="stable")
    pts = np.maximum(flat[order], 0.0)
    edges = np.concatenate([[0.0], pts])
    pieces = _adaptive_integrals(lambda t: rician_pdf(t, params), edges[:-1], edges[1:], tol)
    cdf_sorted = np.minimum(np.cumsum(pieces), 1.0)
    out = np.empty_like(flat)
    out[order] = cdf_sorted
    out = np.where(flat >= 0, out, 0.0).reshape(r.shape)
    return float(out) if out.ndim == 0 else out


def rician_sample(params, rng, size=None):
    """Envelope draw(s) sqrt((nu + sigma z1)^2 + (sigma z2)^2)."""
    z = rng.standard_normal((2,) if size is None else (2,) + tuple(np.atleast_1d(size)))
    out = np.hypot(params.los_amplitude + params.sigma * z[0], params.sigma * z[1])
    return float(out) if size is None else out


def rician_fit_moments(samples):
    """Moment-based Rician fit from E[r^2] and Var(r^2)."""
    x = _check_fit_samples(samples, "rician_fit_moments")
    p = x * x
    m2 = float(p.mean())
    gamma = float(p.var()) / (m2 * m2)
    if gamma <= 0:
        raise DegenerateSamples("rician_fit_moments: zero power variance")
    if gamma >= 1.0:
        k = 0.0
    else:
        root = math.sqrt(1.0 - gamma)
        k = root / (1.0 - root)
    sigma2 = m2 / (2.0 * (k + 1.0))
    return RicianParams(los_amplitude=math.sqrt(2.0 * k * sigma2), sigma=math.sqrt(sigma2))


# -- model selection -------------------------------------------------------

@dataclass
class FitReport:
    model: str
    params: WeibullParams | RicianParams
    ks_statistic: float
    sample_count: int
    ks_weibull: float | None = None
    ks_rician: float | None = None
    weibull: WeibullParams | None = None
    rician: RicianParams | None = None
    failures: dict[str, str] = field(default_factory=dict)

    def to_dict(self):
        doc = {
            "schema_version": "1",
            "model": self.model,
            "ks_statistic": self.ks_statistic,
            "sample_count": self.sample_count,
            "ks_weibull": self.ks_weibull,
            "ks_rician": self.ks_rician,
            "weibull": None,
            "rician": None,
            "failures": dict(self.failures),
        }
        if self.weibull is not None:
            doc["weibull"] = {"scale": self.weibull.scale, "shape": self.weibull.shape}
        if self.rician is not None:
            doc["rician"] = {
                "los_amplitude": self.rician.los_amplitude,
                "sigma": self.rician.sigma,
                "k_factor": self.rician.k_factor,
            }
        return doc


def fit_fading(samples, model="weibull"):
    """Fit a single family and attach its KS statistic."""
    x = np.asarray(samples, dtype=float).ravel()
    if model == "weibull":
        p = weibull_fit_mle(x)
        d = ks_statistic(x, lambda v: weibull_cdf(v, p))
        return FitReport("weibull", p, d, x.size, ks_weibull=d, weibull=p)
    if model == "rician":
        p = rician_fit_moments(x)
        d = ks_statistic(x, lambda v: rician_cdf(v, p))
        return FitReport("rician", p, d, x.size, ks_rician=d, rician=p)
    raise ValueError(f"unknown fading model {model!r}")


def classify_fading(samples):
    """Fit both families and keep the one with the smaller KS statistic.

    If one fit fails the other is returned and the failure is recorded in
    ``FitReport.failures``; if both fail the Weibull error propagates.
    """
    x = np.asarray(samples, dtype=float).ravel()
    if x.size < MIN_CLASSIFY_SAMPLES:
        raise TooFewSamples(
            f"classify_fading needs >= {MIN_CLASSIFY_SAMPLES} samples, got {x.size}"
        )
    reports, failures = {}, {}
    first_error = None
    for model in ("weibull", "rician"):
        try:
            reports[model] = fit_fading(x, model)
        except (DegenerateSamples, NoConvergence) as exc:
            failures[model] = f"{type(exc).__name__}: {exc}"
            first_error = first_error or exc
    if not reports:
        raise first_error
    best = min(reports.values(), key=lambda rep: rep.ks_statistic)
    w, r = reports.get("weibull"), reports.get("rician")
    return FitReport(
        model=best.model,
        params=best.params,
        ks_statistic=best.ks_statistic,
        sample_count=x.size,
        ks_weibull=w.ks_statistic if w else None,
        ks_rician=r.ks_statistic if r else None,
        weibull=w.params if w else None,
        rician=r.params if r else None,
        failures=failures,
    )
