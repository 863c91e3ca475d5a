# cython: boundscheck=False, wraparound=False, cdivision=True
"""Cython implementations of the hot kernels.

Same contracts as ``pure.py``; scalar C loops instead of numpy
vectorization, which pays off for the small samples (n = 25..200) hit
millions of times inside the optimizers and the Monte-Carlo study.
"""

import numpy as np

from libc.math cimport exp, log, log1p, expm1, isfinite, INFINITY

BACKEND_NAME = "cython"

cdef double AD_EPS = 1e-15


cdef inline double _inner_power(double beta, double log_alpha, double x) noexcept nogil:
    return exp(log_alpha + beta * log(x))


cdef inline double _log_pdf1(double theta, double k, double beta,
                             double log_alpha, double log_beta,
                             double log_theta, double x) noexcept nogil:
    cdef double t = _inner_power(beta, log_alpha, x)
    cdef double u = (1.0 - theta) * exp(-k * t)
    return (log_theta / k + log_alpha + log_beta
            + (beta - 1.0) * log(x) - t
            - ((k + 1.0) / k) * log1p(-u))


cdef inline double _log_sf1(double theta, double k, double beta,
                            double log_alpha, double log_theta,
                            double x) noexcept nogil:
    cdef double t
    if x > 0.0:
        t = _inner_power(beta, log_alpha, x)
    else:
        t = 0.0
    cdef double u = (1.0 - theta) * exp(-k * t)
    return (log_theta - k * t - log1p(-u)) / k


def hew_log_pdf(double theta, double k, double beta, double alpha, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], i
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef double la = log(alpha), lb = log(beta), lt = log(theta)
    for i in range(n):
        ov[i] = _log_pdf1(theta, k, beta, la, lb, lt, xv[i])
    return out


def hew_log_sf(double theta, double k, double beta, double alpha, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], i
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef double la = log(alpha), lt = log(theta)
    for i in range(n):
        ov[i] = _log_sf1(theta, k, beta, la, lt, xv[i])
    return out


def hew_sf(double theta, double k, double beta, double alpha, x):
    return np.exp(hew_log_sf(theta, k, beta, alpha, x))


def hew_cdf(double theta, double k, double beta, double alpha, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], i
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef double la = log(alpha), lt = log(theta)
    for i in range(n):
        ov[i] = -expm1(_log_sf1(theta, k, beta, la, lt, xv[i]))
    return out


def hew_quantile(double theta, double k, double beta, double alpha, u):
    cdef double[::1] uv = np.ascontiguousarray(u, dtype=np.float64)
    cdef Py_ssize_t n = uv.shape[0], i
    out = np.empty(n)
    cdef double[::1] ov = out
    cdef double la = log(alpha), lk = log(k)
    cdef double log_s, log_y
    for i in range(n):
        log_s = log(1.0 - uv[i])
        log_y = k * log_s - log(theta + (1.0 - theta) * exp(k * log_s))
        ov[i] = exp((log(-log_y) - lk - la) / beta)
    return out


def neg_log_likelihood(double theta, double k, double beta, double alpha, x):
    cdef double[::1] xv = np.ascontiguousarray(x, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], i
    cdef double la = log(alpha), lb = log(beta), lt = log(theta)
    cdef double total = 0.0
    for i in range(n):
        total += _log_pdf1(theta, k, beta, la, lb, lt, xv[i])
    if not isfinite(total):
        return INFINITY
    return -total


def ols_objective(double theta, double k, double beta, double alpha, x_sorted):
    cdef double[::1] xv = np.ascontiguousarray(x_sorted, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], i
    cdef double la = log(alpha), lt = log(theta)
    cdef double total = 0.0, f, d
    for i in range(n):
        f = -expm1(_log_sf1(theta, k, beta, la, lt, xv[i]))
        d = f - (i + 1.0) / (n + 1.0)
        total += d * d
    return total


def wls_objective(double theta, double k, double beta, double alpha, x_sorted):
    cdef double[::1] xv = np.ascontiguousarray(x_sorted, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], i
    cdef double la = log(alpha), lt = log(theta)
    cdef double total = 0.0, f, d, w, rank
    for i in range(n):
        rank = i + 1.0
        f = -expm1(_log_sf1(theta, k, beta, la, lt, xv[i]))
        d = f - rank / (n + 1.0)
        w = (n + 1.0) * (n + 1.0) * (n + 2.0) / (rank * (n - rank + 1.0))
        total += w * d * d
    return total


def mps_log_objective(double theta, double k, double beta, double alpha, x_sorted):
    cdef double[::1] xv = np.ascontiguousarray(x_sorted, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], i
    cdef double la = log(alpha), lb = log(beta), lt = log(theta)
    cdef double total = 0.0, f_prev = 0.0, f, d
    cdef int ties = 0
    for i in range(n + 1):
        if i < n:
            f = -expm1(_log_sf1(theta, k, beta, la, lt, xv[i]))
        else:
            f = 1.0
        d = f - f_prev
        if d <= 0.0:
            total += _log_pdf1(theta, k, beta, la, lb, lt, xv[i if i < n else n - 1])
            ties += 1
        else:
            total += log(d)
        f_prev = f
    return total / (n + 1.0), ties


def ad_objective(double theta, double k, double beta, double alpha, x_sorted):
    cdef double[::1] xv = np.ascontiguousarray(x_sorted, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], i
    cdef double la = log(alpha), lt = log(theta)
    cdef double total = 0.0, fi, fr
    for i in range(n):
        fi = -expm1(_log_sf1(theta, k, beta, la, lt, xv[i]))
        fr = -expm1(_log_sf1(theta, k, beta, la, lt, xv[n - 1 - i]))
        if fi < AD_EPS:
            fi = AD_EPS
        elif fi > 1.0 - AD_EPS:
            fi = 1.0 - AD_EPS
        if fr < AD_EPS:
            fr = AD_EPS
        elif fr > 1.0 - AD_EPS:
            fr = 1.0 - AD_EPS
        total += (2.0 * (i + 1.0) - 1.0) * (log(fi) + log1p(-fr))
    return -n - total / n


def cvm_objective(double theta, double k, double beta, double alpha, x_sorted):
    cdef double[::1] xv = np.ascontiguousarray(x_sorted, dtype=np.float64)
    cdef Py_ssize_t n = xv.shape[0], i
    cdef double la = log(alpha), lt = log(theta)
    cdef double total = 0.0, f, d
    for i in range(n):
        f = -expm1(_log_sf1(theta, k, beta, la, lt, xv[i]))
        d = f - (2.0 * (i + 1.0) - 1.0) / (2.0 * n)
        total += d * d
    return 1.0 / (12.0 * n) + total
