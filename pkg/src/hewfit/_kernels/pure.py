"""Pure-numpy implementations of the hot kernels.

Semantics must stay bit-compatible in contract (not bit-identical in
floating point) with the Cython backend in ``_core.pyx``; the test suite
cross-checks both.  Everything here takes raw positive parameters plus a
float64 array and returns floats/arrays; validation lives in the calling
modules.
"""

import numpy as np

BACKEND_NAME = "pure"

_AD_EPS = 1e-15


def _inner_power(beta, alpha, x):
    # alpha * x**beta evaluated in log space: survives beta=10 at large x
    return np.exp(np.log(alpha) + beta * np.log(x))


def hew_log_pdf(theta, k, beta, alpha, x):
    x = np.asarray(x, dtype=np.float64)
    t = _inner_power(beta, alpha, x)
    u = (1.0 - theta) * np.exp(-k * t)
    return (np.log(theta) / k + np.log(alpha) + np.log(beta)
            + (beta - 1.0) * np.log(x) - t
            - ((k + 1.0) / k) * np.log1p(-u))


def hew_log_sf(theta, k, beta, alpha, x):
    x = np.asarray(x, dtype=np.float64)
    t = _inner_power(beta, alpha, np.where(x > 0.0, x, 1.0))
    t = np.where(x > 0.0, t, 0.0)
    u = (1.0 - theta) * np.exp(-k * t)
    return (np.log(theta) - k * t - np.log1p(-u)) / k


def hew_sf(theta, k, beta, alpha, x):
    return np.exp(hew_log_sf(theta, k, beta, alpha, x))


def hew_cdf(theta, k, beta, alpha, x):
    return -np.expm1(hew_log_sf(theta, k, beta, alpha, x))


def hew_quantile(theta, k, beta, alpha, u):
    # closed-form inversion: s = 1-u, y = s^k / (theta + (1-theta) s^k),
    # x = (-ln y / (k alpha))^(1/beta)
    u = np.asarray(u, dtype=np.float64)
    s = 1.0 - u
    log_s = np.log(s)
    log_y = k * log_s - np.log(theta + (1.0 - theta) * np.exp(k * log_s))
    return np.exp((np.log(-log_y) - np.log(k) - np.log(alpha)) / beta)


def neg_log_likelihood(theta, k, beta, alpha, x):
    lp = hew_log_pdf(theta, k, beta, alpha, x)
    total = lp.sum()
    if not np.isfinite(total):
        return np.inf
    return -float(total)


def ols_objective(theta, k, beta, alpha, x_sorted):
    n = x_sorted.shape[0]
    f = hew_cdf(theta, k, beta, alpha, x_sorted)
    i = np.arange(1, n + 1, dtype=np.float64)
    return float(((f - i / (n + 1.0)) ** 2).sum())


def wls_objective(theta, k, beta, alpha, x_sorted):
    n = x_sorted.shape[0]
    f = hew_cdf(theta, k, beta, alpha, x_sorted)
    i = np.arange(1, n + 1, dtype=np.float64)
    w = (n + 1.0) ** 2 * (n + 2.0) / (i * (n - i + 1.0))
    return float((w * (f - i / (n + 1.0)) ** 2).sum())


def mps_log_objective(theta, k, beta, alpha, x_sorted):
    """Mean log spacing over the n+1 consecutive cdf gaps.

    Zero spacings (tied observations or cdf underflow) contribute the
    log-density at the offending point instead; the substitution count is
    returned alongside the value.
    """
    n = x_sorted.shape[0]
    f = hew_cdf(theta, k, beta, alpha, x_sorted)
    d = np.empty(n + 1)
    d[0] = f[0]
    d[1:n] = np.diff(f)
    d[n] = 1.0 - f[n - 1]
    log_d = np.empty(n + 1)
    bad = d <= 0.0
    ok = ~bad
    log_d[ok] = np.log(d[ok])
    ties = int(bad.sum())
    if ties:
        # index i of d (1..n-1) corresponds to gap ending at x_sorted[i]
        idx = np.nonzero(bad)[0]
        pts = x_sorted[np.minimum(idx, n - 1)]
        log_d[bad] = hew_log_pdf(theta, k, beta, alpha, pts)
    return float(log_d.sum() / (n + 1.0)), ties


def ad_objective(theta, k, beta, alpha, x_sorted):
    n = x_sorted.shape[0]
    f = hew_cdf(theta, k, beta, alpha, x_sorted)
    f = np.clip(f, _AD_EPS, 1.0 - _AD_EPS)
    i = np.arange(1, n + 1, dtype=np.float64)
    return float(-n - ((2.0 * i - 1.0)
                       * (np.log(f) + np.log1p(-f[::-1]))).sum() / n)


def cvm_objective(theta, k, beta, alpha, x_sorted):
    n = x_sorted.shape[0]
    f = hew_cdf(theta, k, beta, alpha, x_sorted)
    i = np.arange(1, n + 1, dtype=np.float64)
    return float(1.0 / (12.0 * n) + ((f - (2.0 * i - 1.0) / (2.0 * n)) ** 2).sum())
