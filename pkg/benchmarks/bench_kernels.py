"""Benchmark the compiled kernel backend against the pure-numpy fallback.

Run:  python benchmarks/bench_kernels.py
"""

import time

import numpy as np

from hewfit._kernels import pure

try:
    from hewfit._kernels import _core as compiled
except ImportError:
    compiled = None

PARAMS = (0.1, 0.13, 10.0, 1.0)
SIZES = (25, 50, 100, 200, 1000)
REPEAT = 2000

KERNELS = ("neg_log_likelihood", "hew_cdf", "ols_objective", "wls_objective",
           "mps_log_objective", "ad_objective", "cvm_objective")


def time_kernel(mod, name, x):
    fn = getattr(mod, name)
    fn(*PARAMS, x)  # warm up
    t0 = time.perf_counter()
    for _ in range(REPEAT):
        fn(*PARAMS, x)
    return (time.perf_counter() - t0) / REPEAT


def main():
    rng = np.random.default_rng(0)
    print(f"{'kernel':<22}{'n':>6}{'pure (us)':>12}{'cython (us)':>13}{'speedup':>9}")
    for n in SIZES:
        u = rng.random(n)
        x = np.sort(pure.hew_quantile(*PARAMS, np.clip(u, 1e-12, 1 - 1e-12)))
        for name in KERNELS:
            tp = time_kernel(pure, name, x)
            if compiled is None:
                print(f"{name:<22}{n:>6}{tp * 1e6:>12.2f}{'n/a':>13}{'':>9}")
                continue
            tc = time_kernel(compiled, name, x)
            print(f"{name:<22}{n:>6}{tp * 1e6:>12.2f}{tc * 1e6:>13.2f}"
                  f"{tp / tc:>8.1f}x")


if __name__ == "__main__":
    main()
