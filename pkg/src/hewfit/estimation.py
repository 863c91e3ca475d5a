"""Frequentist estimation of the HEW parameters.

Six objectives (maximum likelihood, ordinary/weighted least squares on
plotting positions, maximum product of spacings, and the Anderson-Darling
and Cramer-von Mises minimum-distance criteria) driven by either the
Nelder-Mead simplex or a real-coded genetic algorithm, always over
log-parameters so positivity holds by construction.
"""

import math
from dataclasses import dataclass
from statistics import NormalDist

import numpy as np

from . import _kernels
from .distributions import DomainError, HewParams
from .optimizers import genetic, nelder_mead
from .sampling import Sample

OBJECTIVES = ("mle", "ols", "wls", "mps", "ad", "cvm")
# direction of the natural-form objective; the optimizer always minimizes
MAXIMIZED = {"mle", "mps"}

N_HEW_PARAMS = 4


class EstimationError(RuntimeError):
    """Raised when every optimizer restart diverged."""


@dataclass
class FitConfig:
    objective: str = "mle"
    optimizer: str = "nelder-mead"  # or "genetic"
    start: HewParams | None = None  # None = automatic Weibull-based start
    max_evaluations: int = 20000
    tolerance: float = 1e-8
    restarts: int = 5
    seed: int = 0
    # optional box constraint: reject points with any log-parameter further
    # than this from the start (the likelihood can rise without bound along
    # a (theta, alpha) ridge at small n, so simulation fits need a box the
    # way a bounded genetic search has one)
    bound_span: float | None = None

    def __post_init__(self):
        if self.objective not in OBJECTIVES:
            raise ValueError(f"unknown objective {self.objective!r}")
        if self.optimizer not in ("nelder-mead", "genetic"):
            raise ValueError(f"unknown optimizer {self.optimizer!r}")
        if self.max_evaluations < 100:
            raise ValueError("max_evaluations must be >= 100")
        if self.tolerance <= 0:
            raise ValueError("tolerance must be > 0")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")


@dataclass
class FitResult:
    estimates: HewParams
    loglik: float
    objective: str
    objective_value: float
    aic: float
    bic: float
    converged: bool
    evaluations: int
    n: int
    std_errors: tuple | None = None
    ci: tuple | None = None  # four (lo, hi) pairs when std_errors present
    mps_ties: int = 0


# --- objective evaluations -------------------------------------------------

def neg_log_likelihood(p: HewParams, s: Sample) -> float:
    return _kernels.neg_log_likelihood(*p.as_tuple(), s.values)


def plotting_moments(i: int, n: int):
    """Mean and variance of the model cdf at the i-th of n order statistics."""
    if not 1 <= i <= n:
        raise DomainError(f"rank {i} outside 1..{n}")
    mean = i / (n + 1)
    var = i * (n - i + 1) / ((n + 1) ** 2 * (n + 2))
    return mean, var


def ols_objective(p: HewParams, s: Sample) -> float:
    return _kernels.ols_objective(*p.as_tuple(), s.values)


def wls_objective(p: HewParams, s: Sample) -> float:
    return _kernels.wls_objective(*p.as_tuple(), s.values)


def mps_log_objective(p: HewParams, s: Sample) -> float:
    value, _ties = _kernels.mps_log_objective(*p.as_tuple(), s.values)
    return value


def ad_objective(p: HewParams, s: Sample) -> float:
    return _kernels.ad_objective(*p.as_tuple(), s.values)


def cvm_objective(p: HewParams, s: Sample) -> float:
    return _kernels.cvm_objective(*p.as_tuple(), s.values)


def _minimized_form(objective, x_sorted):
    """Objective as minimize-me callable over raw parameter tuples."""
    if objective == "mle":
        return lambda t: _kernels.neg_log_likelihood(*t, x_sorted)
    if objective == "ols":
        return lambda t: _kernels.ols_objective(*t, x_sorted)
    if objective == "wls":
        return lambda t: _kernels.wls_objective(*t, x_sorted)
    if objective == "mps":
        return lambda t: -_kernels.mps_log_objective(*t, x_sorted)[0]
    if objective == "ad":
        return lambda t: _kernels.ad_objective(*t, x_sorted)
    if objective == "cvm":
        return lambda t: _kernels.cvm_objective(*t, x_sorted)
    raise ValueError(objective)


# --- optimization ----------------------------------------------------------

def _weibull_mle_start(x):
    """2-parameter Weibull MLE, used as the theta=k=1 interior start."""
    logx = np.log(x)

    def nll(z):
        b, a = np.exp(z)
        t = np.exp(np.log(a) + b * logx)
        val = -(np.log(a) + np.log(b) + (b - 1) * logx - t).sum()
        return val if np.isfinite(val) else np.inf

    z0 = np.array([0.0, -math.log(float(np.mean(x)))])
    res = nelder_mead(nll, z0, tolerance=1e-10, max_evaluations=4000)
    beta, alpha = np.exp(res.x)
    return beta, alpha


def optimize(cfg: FitConfig, s: Sample) -> FitResult:
    """Best parameter vector over all restarts for the configured
    objective; log-likelihood is always reported at the returned point."""
    x = s.values
    g = _minimized_form(cfg.objective, x)

    anchor = None
    if cfg.start is not None and cfg.bound_span is not None:
        anchor = np.log(cfg.start.as_array())

    def f(z):
        if np.any(np.abs(z) > 50):  # exp overflow guard
            return np.inf
        if anchor is not None and np.max(np.abs(z - anchor)) > cfg.bound_span:
            return np.inf
        return g(tuple(np.exp(z)))

    if cfg.start is not None:
        starts = [np.log(cfg.start.as_array())]
    else:
        # the (theta, k) plane is multimodal; anchor restarts across it,
        # keeping the Weibull-MLE (beta, alpha) as the baseline-scale start
        wb, wa = _weibull_mle_start(x)
        starts = [np.log(np.array([t0, k0, wb, wa]))
                  for t0, k0 in ((1.0, 1.0), (10.0, 5.0), (0.1, 0.1),
                                 (5.0, 0.5), (0.5, 5.0))]

    rng = np.random.default_rng(cfg.seed)
    budget = max(cfg.max_evaluations // cfg.restarts, 100)
    best = None
    total_evals = 0
    for r in range(cfg.restarts):
        start = starts[r % len(starts)]
        z0 = start if r < len(starts) else start + np.log(rng.uniform(0.7, 1.3, 4))
        if cfg.optimizer == "nelder-mead":
            # rebuild a fresh simplex at each local optimum until the
            # objective stops improving; plain NM stalls easily in 4-d
            res = nelder_mead(f, z0, tolerance=cfg.tolerance,
                              max_evaluations=budget)
            used = res.evaluations
            while used < budget:
                again = nelder_mead(f, res.x, tolerance=cfg.tolerance,
                                    max_evaluations=budget - used)
                used += again.evaluations
                if again.fun < res.fun - 1e-10:
                    res = again
                else:
                    if again.fun < res.fun:
                        res = again
                    break
            res.evaluations = used
        else:
            res = genetic(f, z0, seed=cfg.seed + r, tolerance=cfg.tolerance,
                          max_evaluations=budget)
        total_evals += res.evaluations
        if best is None or res.fun < best.fun:
            best = res

    if not np.isfinite(best.fun):
        raise EstimationError(
            f"all {cfg.restarts} restarts diverged for objective "
            f"{cfg.objective!r} (n={s.n}, start={np.exp(start)})")

    est = HewParams(*np.exp(best.x))
    loglik = -neg_log_likelihood(est, s)
    obj_value = -best.fun if cfg.objective in MAXIMIZED else best.fun
    mps_ties = 0
    if cfg.objective == "mps":
        _, mps_ties = _kernels.mps_log_objective(*est.as_tuple(), x)

    aic = -2.0 * loglik + 2.0 * N_HEW_PARAMS
    bic = -2.0 * loglik + N_HEW_PARAMS * math.log(s.n)

    std_errors = ci = None
    if cfg.objective == "mle" and np.isfinite(loglik):
        try:
            h = numeric_hessian(est, s)
            cov = np.linalg.inv(h)
            diag = np.diag(cov)
            if np.all(diag > 0):
                std_errors = tuple(float(v) for v in np.sqrt(diag))
                ci = tuple(asymptotic_ci(e, se, 0.95)
                           for e, se in zip(est.as_tuple(), std_errors))
        except (np.linalg.LinAlgError, DomainError, ValueError):
            pass

    return FitResult(
        estimates=est, loglik=float(loglik), objective=cfg.objective,
        objective_value=float(obj_value), aic=float(aic), bic=float(bic),
        converged=best.converged, evaluations=total_evals, n=s.n,
        std_errors=std_errors, ci=ci, mps_ties=mps_ties)


def numeric_hessian(p: HewParams, s: Sample, rel_step=1e-4) -> np.ndarray:
    """Central-difference Hessian of the negative log-likelihood,
    symmetrized by averaging with its transpose."""
    p0 = p.as_array()
    h = np.minimum(rel_step * np.maximum(np.abs(p0), 1.0), p0 / 20.0)

    def f(v):
        return _kernels.neg_log_likelihood(*v, s.values)

    f0 = f(p0)
    hess = np.empty((4, 4))
    for i in range(4):
        ei = np.zeros(4)
        ei[i] = h[i]
        hess[i, i] = (f(p0 + ei) - 2.0 * f0 + f(p0 - ei)) / h[i] ** 2
        for j in range(i + 1, 4):
            ej = np.zeros(4)
            ej[j] = h[j]
            hess[i, j] = hess[j, i] = (
                f(p0 + ei + ej) - f(p0 + ei - ej)
                - f(p0 - ei + ej) + f(p0 - ei - ej)
            ) / (4.0 * h[i] * h[j])
    if not np.all(np.isfinite(hess)):
        bad = np.argwhere(~np.isfinite(hess))[0]
        names = ("theta", "k", "beta", "alpha")
        raise DomainError(
            f"non-finite Hessian entry at ({names[bad[0]]}, {names[bad[1]]})")
    return (hess + hess.T) / 2.0


def asymptotic_ci(estimate: float, std_error: float, level: float):
    """Wald interval estimate +- z * std_error (z = 1.96 at level 0.95)."""
    if std_error < 0:
        raise DomainError("std_error must be >= 0")
    if not 0 < level < 1:
        raise DomainError("level must be in (0, 1)")
    z = NormalDist().inv_cdf((1.0 + level) / 2.0)
    return (estimate - z * std_error, estimate + z * std_error)


# --- comparison-model fitting (2-parameter MLE) ----------------------------

def fit_comparison(kind: str, s: Sample):
    """MLE of a comparison model; returns (model, loglik).  ``kind`` is
    weibull | truncated-weibull | exponentiated-weibull.  The truncation
    point is pinned to max(x)."""
    from .distributions import ExponentiatedWeibull, TruncatedWeibull, Weibull

    x = s.values
    gamma = float(x[-1])

    def make(kind, params):
        if kind == "weibull":
            return Weibull(*params)
        if kind == "truncated-weibull":
            return TruncatedWeibull(params[0], params[1], gamma)
        if kind == "exponentiated-weibull":
            return ExponentiatedWeibull(*params)
        raise ValueError(kind)

    def nll(z):
        try:
            m = make(kind, np.exp(z))
            val = -float(m.log_pdf(x).sum())
        except (DomainError, FloatingPointError, OverflowError):
            return np.inf
        return val if np.isfinite(val) else np.inf

    z0 = np.array([0.0, -math.log(float(np.mean(x)))])
    best = None
    for z in (z0, np.array([0.5, z0[1]]), np.array([0.0, 0.0])):
        res = nelder_mead(nll, z, tolerance=1e-10, max_evaluations=6000)
        if best is None or res.fun < best.fun:
            best = res
    if not np.isfinite(best.fun):
        raise EstimationError(f"comparison fit diverged for {kind}")
    return make(kind, np.exp(best.x)), -best.fun
