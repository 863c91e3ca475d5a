"""Bayesian machinery: prior densities against scipy, prior-only chain
validation, HPD interval properties, and chain plumbing."""

import csv
import math

import numpy as np
import pytest
from scipy import stats

from hewfit import HewParams, sample_hew
from hewfit.bayes import (
    Chain,
    GammaPrior,
    PriorSet,
    chain_to_csv,
    elicit_gamma,
    elicit_priors,
    empirical_hpd,
    log_posterior,
    mh_sample,
    posterior_median,
    summarize,
)
from hewfit.distributions import DomainError


def batch_means_se(draws, batches=40):
    """Monte-Carlo standard error of the chain mean by batch means."""
    n = (len(draws) // batches) * batches
    means = np.asarray(draws[:n]).reshape(batches, -1).mean(axis=1)
    return float(means.std(ddof=1) / math.sqrt(batches))


class TestGammaPrior:
    def test_log_pdf_matches_scipy(self):
        pr = GammaPrior(shape=2.5, rate=1.3)
        for x in (0.1, 0.7, 2.0, 9.0):
            want = stats.gamma.logpdf(x, 2.5, scale=1 / 1.3)
            assert pr.log_pdf(x) == pytest.approx(want, rel=1e-12)

    def test_support(self):
        pr = GammaPrior(shape=2.0, rate=1.0)
        assert pr.log_pdf(0.0) == -np.inf
        assert pr.log_pdf(-1.0) == -np.inf

    def test_moments(self):
        pr = GammaPrior(shape=6.0, rate=2.0)
        assert pr.mean == 3.0
        assert pr.variance == 1.5

    def test_validation(self):
        with pytest.raises(DomainError):
            GammaPrior(shape=0, rate=1)
        with pytest.raises(DomainError):
            GammaPrior(shape=1, rate=-1)


class TestElicitation:
    def test_moment_match_roundtrip(self):
        pr = elicit_gamma(3.0, 0.5)
        assert pr.mean == pytest.approx(3.0)
        assert math.sqrt(pr.variance) == pytest.approx(0.5)

    def test_elicit_priors(self):
        ps = elicit_priors((1, 2, 3, 4), (0.1, 0.2, 0.3, 0.4))
        for pr, m, s in zip(ps.as_tuple(), (1, 2, 3, 4), (0.1, 0.2, 0.3, 0.4)):
            assert pr.mean == pytest.approx(m)
            assert math.sqrt(pr.variance) == pytest.approx(s)

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            elicit_gamma(-1.0, 0.5)
        with pytest.raises(DomainError):
            elicit_gamma(1.0, 0.0)


PRIORS = PriorSet(elicit_gamma(2.0, 0.5), elicit_gamma(1.0, 0.3),
                  elicit_gamma(1.5, 0.4), elicit_gamma(0.5, 0.2))


class TestLogPosterior:
    def test_prior_only_is_prior_sum(self):
        p = HewParams(1.8, 0.9, 1.4, 0.6)
        want = sum(pr.log_pdf(v) for pr, v in zip(PRIORS.as_tuple(), p.as_tuple()))
        assert log_posterior(p, PRIORS, None) == pytest.approx(want, rel=1e-14)

    def test_likelihood_added(self):
        from hewfit.estimation import neg_log_likelihood
        s = sample_hew(HewParams(1, 1, 2, 1), 30, 0)
        p = HewParams(1.8, 0.9, 1.4, 0.6)
        want = log_posterior(p, PRIORS, None) - neg_log_likelihood(p, s)
        assert log_posterior(p, PRIORS, s) == pytest.approx(want, rel=1e-13)


@pytest.fixture(scope="module")
def prior_chain():
    return mh_sample(PRIORS, None, iterations=60_000, burn_in=10_000,
                     thinning=5, seed=3)


class TestMHSampler:
    def test_prior_only_recovers_means(self, prior_chain):
        # the stationary distribution with no likelihood is the prior
        for j, pr in enumerate(PRIORS.as_tuple()):
            d = prior_chain.draws[:, j]
            se = batch_means_se(d)
            assert abs(float(d.mean()) - pr.mean) < 3 * se

    def test_deterministic(self):
        a = mh_sample(PRIORS, None, iterations=3000, burn_in=500, seed=9)
        b = mh_sample(PRIORS, None, iterations=3000, burn_in=500, seed=9)
        assert np.array_equal(a.draws, b.draws)
        assert a.accepted == b.accepted

    def test_chain_shape_and_rate(self, prior_chain):
        assert prior_chain.draws.shape == ((60_000 - 10_000) // 5, 4)
        assert 0.0 < prior_chain.acceptance_rate < 1.0
        assert np.all(prior_chain.draws > 0)

    def test_extreme_rate_warning(self):
        c = mh_sample(PRIORS, None, iterations=2000, burn_in=500,
                      proposal_scale=(1e-9,) * 4, seed=0)
        assert c.warning is not None and "acceptance rate" in c.warning

    def test_validation(self):
        with pytest.raises(ValueError):
            mh_sample(PRIORS, None, iterations=100, burn_in=100)
        with pytest.raises(ValueError):
            mh_sample(PRIORS, None, proposal_scale=(0.1, 0.1))

    def test_posterior_concentrates_with_data(self):
        truth = HewParams(1, 1, 2, 1)
        s = sample_hew(truth, 300, 5)
        c = mh_sample(PRIORS, s, iterations=20_000, burn_in=4_000,
                      thinning=4, seed=2, init=HewParams(2, 1, 1.5, 0.5))
        post_sd = float(c.draws[:, 2].std())
        prior_sd = math.sqrt(PRIORS.beta.variance)
        assert post_sd < prior_sd  # the data tighten beta


class TestSummaries:
    def test_posterior_median_needs_draws(self):
        c = Chain(draws=np.ones((10, 4)), accepted_flags=np.ones(10, bool),
                  accepted=5, proposed=10, burn_in=0, thinning=1, seed=0,
                  proposal_scale=(0.1,) * 4)
        with pytest.raises(ValueError):
            posterior_median(c)

    def test_median_matches_numpy(self):
        rng = np.random.default_rng(0)
        draws = rng.gamma(2.0, 1.0, size=(500, 4))
        c = Chain(draws=draws, accepted_flags=np.ones(500, bool), accepted=1,
                  proposed=1, burn_in=0, thinning=1, seed=0,
                  proposal_scale=(0.1,) * 4)
        med = posterior_median(c)
        assert np.allclose(med.as_array(), np.median(draws, axis=0))


class TestHPD:
    def test_never_wider_than_equal_tailed(self):
        rng = np.random.default_rng(1)
        for dist in (rng.gamma(2, 1, 4000), rng.normal(0, 1, 4000) + 10,
                     rng.exponential(1, 4000) + 0.1):
            lo, hi = empirical_hpd(dist, 0.95)
            q = np.quantile(dist, [0.025, 0.975])
            assert hi - lo <= q[1] - q[0] + 1e-12

    def test_coverage(self):
        rng = np.random.default_rng(2)
        d = rng.normal(5, 1, 10_000)
        lo, hi = empirical_hpd(d, 0.9)
        inside = np.mean((d >= lo) & (d <= hi))
        assert inside >= 0.9
        assert inside < 0.92

    def test_skewed_hpd_shifts_toward_mode(self):
        rng = np.random.default_rng(3)
        d = rng.exponential(1.0, 20_000)
        lo, hi = empirical_hpd(d, 0.95)
        q = np.quantile(d, [0.025, 0.975])
        assert lo < q[0]  # the short interval hugs the mode at zero

    def test_validation(self):
        with pytest.raises(DomainError):
            empirical_hpd(np.ones(200), 1.0)
        with pytest.raises(ValueError):
            empirical_hpd(np.ones(10), 0.9)

    def test_summarize_bundles(self):
        c = mh_sample(PRIORS, None, iterations=5000, burn_in=1000, seed=4)
        summ = summarize(c, level=0.9)
        assert summ.level == 0.9
        assert len(summ.hpd) == 4
        for (lo, hi), m in zip(summ.hpd, summ.median.as_tuple()):
            assert lo <= m <= hi


class TestChainCSV:
    def test_roundtrip(self, tmp_path):
        c = mh_sample(PRIORS, None, iterations=2000, burn_in=500,
                      thinning=5, seed=6)
        path = tmp_path / "chain.csv"
        chain_to_csv(c, path)
        with open(path, newline="") as fh:
            rows = list(csv.reader(fh))
        assert rows[0] == ["iteration", "theta", "k", "beta", "alpha", "accepted"]
        assert len(rows) - 1 == c.draws.shape[0]
        got = np.array([[float(v) for v in r[1:5]] for r in rows[1:]])
        assert np.array_equal(got, c.draws)
