"""Bayesian inference for the HEW parameters.

Independent Gamma priors on (theta, k, beta, alpha), elicited by moment
matching from a frequentist fit or supplied directly, sampled by
random-walk Metropolis-Hastings with componentwise Gaussian increments
(default sd 0.1, i.e. proposal covariance 0.01 * I).  Point estimate is
the componentwise posterior median (absolute-error loss); intervals are
empirical shortest-window HPD intervals.
"""

import csv
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .distributions import DomainError, HewParams
from .sampling import Sample

PARAM_NAMES = ("theta", "k", "beta", "alpha")


@dataclass(frozen=True)
class GammaPrior:
    shape: float
    rate: float

    def __post_init__(self):
        if self.shape <= 0 or self.rate <= 0:
            raise DomainError("Gamma hyperparameters must be > 0")

    @property
    def mean(self):
        return self.shape / self.rate

    @property
    def variance(self):
        return self.shape / self.rate ** 2

    def log_pdf(self, x):
        if x <= 0:
            return -np.inf
        return (self.shape * math.log(self.rate) - math.lgamma(self.shape)
                + (self.shape - 1.0) * math.log(x) - self.rate * x)


@dataclass(frozen=True)
class PriorSet:
    theta: GammaPrior
    k: GammaPrior
    beta: GammaPrior
    alpha: GammaPrior

    def as_tuple(self):
        return (self.theta, self.k, self.beta, self.alpha)


@dataclass
class Chain:
    draws: np.ndarray          # (retained, 4)
    accepted_flags: np.ndarray  # per retained draw, whether its iteration moved
    accepted: int
    proposed: int
    burn_in: int
    thinning: int
    seed: int
    proposal_scale: tuple
    warning: str | None = None

    @property
    def acceptance_rate(self):
        return self.accepted / self.proposed


@dataclass
class PosteriorSummary:
    median: HewParams
    hpd: tuple  # four (lo, hi) at the stated level
    level: float
    acceptance_rate: float


def elicit_gamma(mean: float, sd: float) -> GammaPrior:
    """Moment-matched Gamma: shape = mean^2/sd^2, rate = mean/sd^2."""
    if mean <= 0 or sd <= 0:
        raise DomainError("mean and sd must be > 0")
    return GammaPrior(shape=mean ** 2 / sd ** 2, rate=mean / sd ** 2)


def elicit_priors(estimates, std_errors) -> PriorSet:
    """One moment-matched Gamma per parameter from (estimate, se) pairs."""
    return PriorSet(*(elicit_gamma(m, s) for m, s in zip(estimates, std_errors)))


def log_posterior(p: HewParams, priors: PriorSet, s: Sample | None) -> float:
    """Unnormalized log posterior; -inf outside the positive orthant.
    ``s=None`` drops the likelihood (prior-only mode, used for chain
    validation)."""
    lp = sum(pr.log_pdf(v) for pr, v in zip(priors.as_tuple(), p.as_tuple()))
    if s is not None:
        lp -= _kernels.neg_log_likelihood(*p.as_tuple(), s.values)
    if not np.isfinite(lp):
        return -np.inf
    return float(lp)


def _log_posterior_raw(vec, priors, values):
    if np.any(vec <= 0):
        return -np.inf
    lp = sum(pr.log_pdf(v) for pr, v in zip(priors.as_tuple(), vec))
    if values is not None:
        lp -= _kernels.neg_log_likelihood(vec[0], vec[1], vec[2], vec[3], values)
    return lp if np.isfinite(lp) else -np.inf


def mh_sample(priors: PriorSet, s: Sample | None, iterations=50_000,
              burn_in=10_000, thinning=5, seed=0,
              proposal_scale=(0.1, 0.1, 0.1, 0.1), init=None) -> Chain:
    """Random-walk Metropolis-Hastings.  Proposals with any non-positive
    component are rejected outright; the symmetric Gaussian increment
    cancels in the acceptance ratio."""
    if iterations <= burn_in:
        raise ValueError("iterations must exceed burn_in")
    scale = np.asarray(proposal_scale, dtype=np.float64)
    if scale.shape != (4,) or np.any(scale <= 0):
        raise ValueError("proposal_scale must be four positive reals")

    values = s.values if s is not None else None
    rng = np.random.default_rng(seed)

    if init is None:
        init = HewParams(*(pr.mean for pr in priors.as_tuple()))
    cur = init.as_array()
    lp_cur = _log_posterior_raw(cur, priors, values)
    if not np.isfinite(lp_cur):
        raise EstimationInitError("initial state has zero posterior density")

    retained = (iterations - burn_in) // thinning
    draws = np.empty((retained, 4))
    flags = np.empty(retained, dtype=bool)
    accepted = 0
    j = 0
    for it in range(1, iterations + 1):
        prop = cur + rng.normal(0.0, scale)
        moved = False
        if np.all(prop > 0):
            lp_prop = _log_posterior_raw(prop, priors, values)
            if lp_prop - lp_cur >= 0 or math.log(rng.random()) < lp_prop - lp_cur:
                cur, lp_cur = prop, lp_prop
                accepted += 1
                moved = True
        if it > burn_in and (it - burn_in) % thinning == 0:
            draws[j] = cur
            flags[j] = moved
            j += 1

    rate = accepted / iterations
    warning = None
    if rate < 0.01 or rate > 0.99:
        warning = f"extreme acceptance rate {rate:.4f}; retune proposal_scale"
    return Chain(draws=draws, accepted_flags=flags, accepted=accepted,
                 proposed=iterations, burn_in=burn_in, thinning=thinning,
                 seed=seed, proposal_scale=tuple(float(v) for v in scale),
                 warning=warning)


class EstimationInitError(RuntimeError):
    pass


def posterior_median(c: Chain) -> HewParams:
    if c.draws.shape[0] < 100:
        raise ValueError("need at least 100 retained draws")
    return HewParams(*np.median(c.draws, axis=0))


def empirical_hpd(draws, level: float):
    """Shortest window containing ceil(level * N) sorted draws; leftmost
    window wins ties.  Never wider than the equal-tailed interval."""
    if not 0 < level < 1:
        raise DomainError("level must be in (0, 1)")
    d = np.sort(np.asarray(draws, dtype=np.float64))
    n = d.size
    if n < 100:
        raise ValueError("need at least 100 draws")
    m = math.ceil(level * n)
    widths = d[m - 1:] - d[:n - m + 1]
    j = int(np.argmin(widths))  # argmin returns the first minimum
    return (float(d[j]), float(d[j + m - 1]))


def summarize(c: Chain, level=0.95) -> PosteriorSummary:
    med = posterior_median(c)
    hpd = tuple(empirical_hpd(c.draws[:, i], level) for i in range(4))
    return PosteriorSummary(median=med, hpd=hpd, level=level,
                            acceptance_rate=c.acceptance_rate)


def chain_to_csv(c: Chain, path):
    """Trace export: iteration, theta, k, beta, alpha, accepted-flag."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["iteration", *PARAM_NAMES, "accepted"])
        for i, (row, flag) in enumerate(zip(c.draws, c.accepted_flags)):
            iteration = c.burn_in + (i + 1) * c.thinning
            w.writerow([iteration, *(repr(float(v)) for v in row), int(flag)])
