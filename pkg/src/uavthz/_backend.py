"""Kernel backend selection.

The compiled Cython module is used when it imported cleanly; otherwise the
numpy implementations take over. ``use_backend`` switches at runtime (tests
and the benchmark run both).
"""

import numpy as np

from . import _kernels_py

try:
    from . import _kernels as _kernels_c
except ImportError:
    _kernels_c = None

AVAILABLE = ("cython", "python") if _kernels_c is not None else ("python",)

_active = _kernels_c if _kernels_c is not None else _kernels_py


def use_backend(name):
    """Select ``"cython"`` or ``"python"`` kernels; returns the previous name."""
    global _active
    previous = backend_name()
    if name == "python":
        _active = _kernels_py
    elif name == "cython":
        if _kernels_c is None:
            raise RuntimeError("compiled kernels are not built")
        _active = _kernels_c
    else:
        raise ValueError(f"unknown backend {name!r}")
    return previous


def backend_name():
    return "cython" if _active is _kernels_c and _kernels_c is not None else "python"


def ar1_filter(c, u):
    return _active.ar1_filter(float(c), np.ascontiguousarray(u, dtype=np.float64))


def weibull_shape_sums(lny, k):
    return _active.weibull_shape_sums(np.ascontiguousarray(lny, dtype=np.float64), float(k))


def bessel_i0e(x):
    x = np.asarray(x, dtype=np.float64)
    return _active.bessel_i0e(np.ascontiguousarray(x.ravel())).reshape(x.shape)
