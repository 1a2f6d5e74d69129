"""Pure-Python/numpy versions of the compiled kernels in _kernels.pyx.

Each function keeps the same floating-point operation order as its compiled
twin so both backends agree to the last few ulps.
"""

import numpy as np
from scipy.signal import lfilter


def ar1_filter(c, u):
    """y[0] = u[0]; y[k] = c * y[k-1] + u[k]."""
    u = np.ascontiguousarray(u, dtype=np.float64)
    return lfilter([1.0], [1.0, -c], u)


def weibull_shape_sums(lny, k):
    """Return (sum w, sum w*lny, sum w*lny**2) with w = exp(k*lny)."""
    lny = np.asarray(lny, dtype=np.float64)
    w = np.exp(k * lny)
    wl = w * lny
    return float(w.sum()), float(wl.sum()), float((wl * lny).sum())


def bessel_i0e(x):
    """Exponentially scaled modified Bessel function of order zero."""
    ax = np.abs(np.asarray(x, dtype=np.float64))
    out = np.empty_like(ax)

    small = ax <= 25.0
    xs = ax[small]
    q = 0.25 * xs * xs
    term = np.ones_like(xs)
    total = np.ones_like(xs)
    active = np.ones(xs.shape, dtype=bool)
    k = 1
    while active.any() and k < 500:
        idx = np.nonzero(active)[0]
        term[idx] = term[idx] * q[idx] / (float(k) * float(k))
        total[idx] = total[idx] + term[idx]
        active[idx] = term[idx] > 1e-17 * total[idx]
        k += 1
    out[small] = total * np.exp(-xs)

    xl = ax[~small]
    inv8x = 1.0 / (8.0 * xl)
    term = np.ones_like(xl)
    total = np.ones_like(xl)
    active = np.ones(xl.shape, dtype=bool)
    k = 1
    while active.any() and k < 60:
        idx = np.nonzero(active)[0]
        term[idx] = term[idx] * (2.0 * k - 1.0) * (2.0 * k - 1.0) * inv8x[idx] / k
        total[idx] = total[idx] + term[idx]
        active[idx] = term[idx] > 1e-17 * total[idx]
        k += 1
    out[~small] = total / np.sqrt(2.0 * np.pi * xl)
    return out
