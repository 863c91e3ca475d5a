"""Harris extended Weibull distribution and the three comparison models.

The four-parameter family has density

    f(x) = theta^(1/k) * alpha * beta * x^(beta-1) * exp(-alpha x^beta)
           / [1 - (1-theta) exp(-k alpha x^beta)]^((k+1)/k)

with survival function

    S(x) = { theta exp(-k alpha x^beta) / (1 - (1-theta) exp(-k alpha x^beta)) }^(1/k)

At theta = k = 1 this collapses to Weibull(beta, alpha) (rate
parametrization, F = 1 - exp(-alpha x^beta)); additionally beta = 1 gives
the exponential with rate alpha.  theta > 1 is allowed: the denominator
1 - (1-theta) e^(...) then exceeds 1 and stays positive.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


@dataclass(frozen=True)
class HewParams:
    """Parameter vector (theta, k, beta shapes; alpha rate), all > 0."""

    theta: float
    k: float
    beta: float
    alpha: float

    def __post_init__(self):
        for name in ("theta", "k", "beta", "alpha"):
            v = getattr(self, name)
            if not (np.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be a positive finite real, got {v!r}")

    def as_tuple(self):
        return (self.theta, self.k, self.beta, self.alpha)

    def as_array(self):
        return np.array(self.as_tuple())


def _check_positive(x, name="x"):
    if np.any(np.asarray(x) <= 0):
        raise DomainError(f"{name} must be > 0")


def _check_nonnegative(x, name="x"):
    if np.any(np.asarray(x) < 0):
        raise DomainError(f"{name} must be >= 0")


def _dispatch(fn, p, x):
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    out = fn(*p.as_tuple(), arr)
    return float(out[0]) if np.isscalar(x) or np.ndim(x) == 0 else out


def hew_log_pdf(p: HewParams, x):
    """Log-density; raises on non-finite results (x^beta overflow)."""
    _check_positive(x)
    out = _dispatch(_kernels.hew_log_pdf, p, x)
    if not np.all(np.isfinite(out)):
        raise DomainError("hew_log_pdf overflowed at extreme input")
    return out


def hew_pdf(p: HewParams, x):
    return np.exp(hew_log_pdf(p, x))


def hew_sf(p: HewParams, x):
    _check_nonnegative(x)
    return _dispatch(_kernels.hew_sf, p, x)


def hew_cdf(p: HewParams, x):
    _check_nonnegative(x)
    return _dispatch(_kernels.hew_cdf, p, x)


def hew_quantile(p: HewParams, u):
    """Closed-form inverse cdf, valid for u in (0, 1)."""
    ua = np.asarray(u, dtype=np.float64)
    if np.any(ua <= 0) or np.any(ua >= 1):
        raise DomainError("u must lie strictly inside (0, 1)")
    return _dispatch(_kernels.hew_quantile, p, u)


# --- comparison models (Table of baseline-variant cdfs) -------------------

@dataclass(frozen=True)
class Weibull:
    """F(x) = 1 - exp(-alpha x^beta)."""

    beta: float
    alpha: float

    n_params = 2

    def __post_init__(self):
        if self.beta <= 0 or self.alpha <= 0:
            raise DomainError("Weibull parameters must be > 0")

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        return np.where(x > 0, -np.expm1(-self.alpha * np.abs(x) ** self.beta), 0.0)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        if np.any(x <= 0):
            raise DomainError("x must be > 0")
        return (np.log(self.alpha) + np.log(self.beta)
                + (self.beta - 1) * np.log(x) - self.alpha * x ** self.beta)

    def quantile(self, u):
        u = np.asarray(u, dtype=np.float64)
        return (-np.log1p(-u) / self.alpha) ** (1.0 / self.beta)


@dataclass(frozen=True)
class TruncatedWeibull:
    """Weibull conditioned on (0, gamma]; gamma is fixed, not estimated."""

    beta: float
    alpha: float
    gamma: float

    n_params = 2

    def __post_init__(self):
        if self.beta <= 0 or self.alpha <= 0 or self.gamma <= 0:
            raise DomainError("TruncatedWeibull parameters must be > 0")

    def _norm(self):
        return -np.expm1(-self.alpha * self.gamma ** self.beta)

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        raw = -np.expm1(-self.alpha * np.abs(x) ** self.beta) / self._norm()
        return np.clip(np.where(x > 0, raw, 0.0), 0.0, 1.0)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        if np.any(x <= 0) or np.any(x > self.gamma):
            raise DomainError("x must lie in (0, gamma]")
        return (np.log(self.alpha) + np.log(self.beta)
                + (self.beta - 1) * np.log(x) - self.alpha * x ** self.beta
                - np.log(self._norm()))

    def quantile(self, u):
        u = np.asarray(u, dtype=np.float64)
        return (-np.log1p(-u * self._norm()) / self.alpha) ** (1.0 / self.beta)


@dataclass(frozen=True)
class ExponentiatedWeibull:
    """F(x) = (1 - exp(-x^theta))^alpha (unit scale)."""

    theta: float
    alpha: float

    n_params = 2

    def __post_init__(self):
        if self.theta <= 0 or self.alpha <= 0:
            raise DomainError("ExponentiatedWeibull parameters must be > 0")

    def cdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        inner = -np.expm1(-np.abs(x) ** self.theta)
        return np.where(x > 0, inner ** self.alpha, 0.0)

    def log_pdf(self, x):
        x = np.asarray(x, dtype=np.float64)
        if np.any(x <= 0):
            raise DomainError("x must be > 0")
        t = x ** self.theta
        return (np.log(self.alpha) + np.log(self.theta)
                + (self.theta - 1) * np.log(x) - t
                + (self.alpha - 1) * np.log(-np.expm1(-t)))

    def quantile(self, u):
        u = np.asarray(u, dtype=np.float64)
        return (-np.log1p(-u ** (1.0 / self.alpha))) ** (1.0 / self.theta)


def comparison_cdf(model, x):
    return model.cdf(x)


def comparison_log_pdf(model, x):
    return model.log_pdf(x)
