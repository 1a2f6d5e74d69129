"""Empirical CDFs, Pearson correlation with two-tailed significance, KS statistic."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EmptySamples, LengthMismatch, TooFewSamples, ZeroVariance
from .geometry import angle_between, boresight_vector, horizontal_offsets

SIGNIFICANCE_LEVEL = 0.01
TABLE_VARIABLES = (
    "horizontal_movement",
    "vertical_movement",
    "height",
    "antenna_orientation",
    "power",
)


def empirical_cdf(samples):
    """Right-continuous step points of the empirical CDF.

    Returns ``(values, probs)`` where ``values`` are the distinct sorted
    samples and ``probs[i]`` is the fraction of samples ``<= values[i]``.
    """
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = x.size
    if n == 0:
        raise EmptySamples("empirical_cdf needs at least one sample")
    values, counts = np.unique(x, return_counts=True)
    return values, np.cumsum(counts) / n


def pearson_correlation(x, y):
    x = np.asarray(x, dtype=float).ravel()
    y = np.asarray(y, dtype=float).ravel()
    if x.size != y.size:
        raise LengthMismatch(f"series lengths differ: {x.size} vs {y.size}")
    if x.size < 3:
        raise TooFewSamples("pearson_correlation needs at least 3 pairs")
    dx = x - x.mean()
    dy = y - y.mean()
    sxx = float(np.dot(dx, dx))
    syy = float(np.dot(dy, dy))
    # a constant series can leave rounding residue in dx; compare to the data scale
    if sxx <= (1e-14 * np.abs(x).max()) ** 2 * x.size:
        raise ZeroVariance("first series has zero variance")
    if syy <= (1e-14 * np.abs(y).max()) ** 2 * y.size:
        raise ZeroVariance("second series has zero variance")
    r = float(np.dot(dx, dy)) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def _beta_continued_fraction(a, b, x, eps=1e-16, max_iter=10_000):
    # modified Lentz evaluation of the incomplete-beta continued fraction
    tiny = 1e-300
    qab, qap, qam = a + b, a + 1.0, a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    d = tiny if abs(d) < tiny else d
    d = 1.0 / d
    h = d
    for m in range(1, max_iter + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        d = tiny if abs(d) < tiny else d
        c = 1.0 + aa / c
        c = tiny if abs(c) < tiny else c
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < eps:
            return h
    raise ArithmeticError("incomplete beta continued fraction did not converge")


def regularized_incomplete_beta(x, a, b):
    """I_x(a, b) for a, b > 0 and x in [0, 1]."""
    if not 0.0 <= x <= 1.0:
        raise ValueError("x must lie in [0, 1]")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (
        math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
        + a * math.log(x) + b * math.log1p(-x)
    )
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _beta_continued_fraction(a, b, x) / a
    return 1.0 - front * _beta_continued_fraction(b, a, 1.0 - x) / b


def t_two_tailed_p(t, df):
    """Two-tailed p-value of Student's t with ``df`` degrees of freedom."""
    if math.isinf(t):
        return 0.0
    return regularized_incomplete_beta(df / (df + t * t), 0.5 * df, 0.5)


def correlation_p_value(r, n):
    """Two-tailed p for H0: rho = 0, via t = r*sqrt((n-2)/(1-r^2))."""
    df = n - 2
    # df/(df+t^2) simplifies to 1 - r^2, which stays exact as |r| -> 1
    return regularized_incomplete_beta(max(0.0, 1.0 - r * r), 0.5 * df, 0.5)


@dataclass
class CorrelationReport:
    names: list[str]
    r: np.ndarray
    p: np.ndarray
    significant: np.ndarray
    n: int
    level: float = SIGNIFICANCE_LEVEL
    errors: list[tuple[str, str, str]] = field(default_factory=list)

    def to_dict(self):
        def clean(m):
            return [[None if not np.isfinite(v) else float(v) for v in row] for row in m]

        return {
            "schema_version": "1",
            "names": list(self.names),
            "r": clean(self.r),
            "p": clean(self.p),
            "flags": [[bool(v) for v in row] for row in self.significant],
            "n": int(self.n),
            "level": self.level,
            "errors": [list(e) for e in self.errors],
        }


def correlate_columns(columns, names=None, level=SIGNIFICANCE_LEVEL):
    """Pairwise Pearson r, two-tailed p and significance flags.

    Pairs whose correlation is undefined (zero variance) get ``nan`` entries
    and an entry in ``errors`` instead of aborting the whole matrix.
    """
    if names is None:
        names = [f"v{i}" for i in range(len(columns))]
    cols = [np.asarray(c, dtype=float).ravel() for c in columns]
    n = cols[0].size
    if any(c.size != n for c in cols):
        raise LengthMismatch("all columns must have equal length")
    if n < 3:
        raise TooFewSamples("correlation needs at least 3 samples")
    k = len(cols)
    r = np.full((k, k), np.nan)
    p = np.full((k, k), np.nan)
    errors = []
    for i in range(k):
        for j in range(i, k):
            try:
                rij = pearson_correlation(cols[i], cols[j])
            except ZeroVariance:
                errors.append((names[i], names[j], "ZeroVariance"))
                continue
            if i == j:
                r[i, i] = 1.0
                continue
            r[i, j] = r[j, i] = rij
            p[i, j] = p[j, i] = correlation_p_value(rij, n)
    with np.errstate(invalid="ignore"):
        flags = np.where(np.isnan(p), False, p < level)
    return CorrelationReport(list(names), r, p, flags, n, level, errors)


def movement_columns(log, nominal=None, azimuth=0.0, movement="offset"):
    """Derive the five analysis variables from a flight log.

    Horizontal/vertical movement are the ``b``/``a`` offsets of the UAV from
    the nominal hover point (``movement="offset"``) or their per-step
    increments (``movement="step"``). Antenna orientation is the angle in
    degrees between the instantaneous and the nominal receiver boresight.
    """
    pos = np.column_stack([log.x, log.y, log.z])
    if nominal is None:
        ref_pos = pos.mean(axis=0)
        yaw_rad = np.radians(log.yaw)
        ref_yaw = math.degrees(math.atan2(np.sin(yaw_rad).mean(), np.cos(yaw_rad).mean())) % 360.0
        ref_dir = boresight_vector(ref_yaw, float(np.mean(log.pitch)))
    else:
        ref_pos = np.asarray(nominal.position)
        ref_dir = nominal.boresight
    a, b, _ = horizontal_offsets(azimuth, pos - ref_pos)
    orientation = angle_between(boresight_vector(log.yaw, log.pitch), ref_dir)
    height = np.asarray(log.z, dtype=float)
    power = np.asarray(log.power, dtype=float)
    if movement == "step":
        a, b, height = np.diff(a), np.diff(b), height[1:]
        orientation, power = orientation[1:], power[1:]
    elif movement != "offset":
        raise ValueError(f"movement must be 'offset' or 'step', got {movement!r}")
    return [b, a, height, orientation, power]


def correlation_matrix(log, nominal=None, azimuth=0.0, movement="offset",
                       level=SIGNIFICANCE_LEVEL):
    """Correlation report over horizontal, vertical, height, orientation, power.

    Samples without measured power are dropped; at least 8 must remain.
    """
    cols = movement_columns(log, nominal, azimuth, movement)
    keep = np.isfinite(cols[-1])
    cols = [c[keep] for c in cols]
    if cols[0].size < 8:
        raise TooFewSamples(
            f"correlation analysis needs >= 8 samples with measured power, got {cols[0].size}"
        )
    return correlate_columns(cols, TABLE_VARIABLES, level)


def ks_statistic(samples, model_cdf):
    """One-sample Kolmogorov-Smirnov distance between samples and ``model_cdf``."""
    x = np.sort(np.asarray(samples, dtype=float).ravel())
    n = x.size
    if n == 0:
        raise EmptySamples("ks_statistic needs at least one sample")
    f = np.asarray(model_cdf(x), dtype=float)
    i = np.arange(1, n + 1)
    d_plus = np.max(i / n - f)
    d_minus = np.max(f - (i - 1) / n)
    return float(min(1.0, max(d_plus, d_minus, 0.0)))
