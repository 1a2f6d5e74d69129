"""Time the compiled and numpy kernel backends side by side.

Usage: python benchmarks/bench_kernels.py [--size N] [--repeat R]
"""

import argparse
import timeit

import numpy as np

from uavthz import _backend


def cases(size):
    rng = np.random.default_rng(0)
    u = rng.standard_normal(size)
    lny = np.log(rng.uniform(0.5, 1.0, size))
    x = rng.uniform(0.0, 60.0, size)
    return {
        "ar1_filter": lambda: _backend.ar1_filter(0.95, u),
        "weibull_shape_sums": lambda: _backend.weibull_shape_sums(lny, 57.4),
        "bessel_i0e": lambda: _backend.bessel_i0e(x),
    }


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=100_000, help="array length (default 1e5)")
    parser.add_argument("--repeat", type=int, default=5, help="best-of repeats (default 5)")
    args = parser.parse_args(argv)

    table = cases(args.size)
    timings = {}
    for name in _backend.AVAILABLE:
        previous = _backend.use_backend(name)
        try:
            for kernel, fn in table.items():
                fn()
                number = 10
                best = min(timeit.repeat(fn, number=number, repeat=args.repeat)) / number
                timings[kernel, name] = best
        finally:
            _backend.use_backend(previous)

    print(f"n = {args.size}, best of {args.repeat}")
    header = f"{'kernel':<20}" + "".join(f"{b:>14}" for b in _backend.AVAILABLE)
    if "cython" in _backend.AVAILABLE:
        header += f"{'speedup':>10}"
    print(header)
    for kernel in table:
        row = f"{kernel:<20}" + "".join(f"{timings[kernel, b] * 1e3:>11.3f} ms"
                                        for b in _backend.AVAILABLE)
        if "cython" in _backend.AVAILABLE:
            row += f"{timings[kernel, 'python'] / timings[kernel, 'cython']:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
