"""Monte-Carlo study harness: exact RMSE/bias arithmetic via stub
estimators, determinism, failure accounting, and report serialization."""

import json

import numpy as np
import pytest

from hewfit import HewParams
from hewfit.estimation import EstimationError
from hewfit.montecarlo import Cell, StudyConfig, StudyReport, run_study

TRUTH = HewParams(0.1, 0.13, 10.0, 1.0)


def make_cfg(**kw):
    base = dict(truth=TRUTH, sample_sizes=(10,), replications=4,
                methods=("mle",), seed=0)
    base.update(kw)
    return StudyConfig(**base)


class TestConfigValidation:
    def test_rejects_bad_values(self):
        with pytest.raises(ValueError):
            make_cfg(replications=1)
        with pytest.raises(ValueError):
            make_cfg(sample_sizes=())
        with pytest.raises(ValueError):
            make_cfg(sample_sizes=(5,))
        with pytest.raises(ValueError):
            make_cfg(methods=("mle", "magic"))


class TestStubArithmetic:
    def test_perfect_estimator_zero_error(self):
        rep = run_study(make_cfg(), estimator=lambda m, c, s, seed: TRUTH)
        cell = rep.cells[("mle", 10)]
        assert np.all(cell.rmse == 0.0)
        assert np.all(cell.bias == 0.0)
        assert cell.failures == 0
        assert cell.valid

    def test_constant_offset(self):
        # estimator always truth + (0.5, 0, 0, 0): rmse = |bias| = 0.5 on
        # the first coordinate, zero elsewhere
        off = HewParams(TRUTH.theta + 0.5, TRUTH.k, TRUTH.beta, TRUTH.alpha)
        rep = run_study(make_cfg(), estimator=lambda m, c, s, seed: off)
        cell = rep.cells[("mle", 10)]
        assert cell.rmse[0] == pytest.approx(0.5)
        assert cell.bias[0] == pytest.approx(0.5)
        assert np.all(cell.rmse[1:] == 0.0)

    def test_alternating_signs(self):
        # +d, -d alternating: bias 0, rmse d
        d = 0.25
        seen = {"i": 0}

        def est(m, c, s, seed):
            seen["i"] += 1
            sign = 1.0 if seen["i"] % 2 else -1.0
            return HewParams(TRUTH.theta, TRUTH.k, TRUTH.beta + sign * d,
                             TRUTH.alpha)

        rep = run_study(make_cfg(replications=4), estimator=est)
        cell = rep.cells[("mle", 10)]
        assert cell.bias[2] == pytest.approx(0.0, abs=1e-15)
        assert cell.rmse[2] == pytest.approx(d)

    def test_rmse_dominates_bias(self):
        rng = np.random.default_rng(0)

        def est(m, c, s, seed):
            return HewParams(*(TRUTH.as_array() * rng.uniform(0.5, 2.0, 4)))

        rep = run_study(make_cfg(replications=20), estimator=est)
        cell = rep.cells[("mle", 10)]
        assert np.all(cell.rmse >= np.abs(cell.bias) - 1e-15)


class TestFailureAccounting:
    def _failing(self, every):
        def est(m, c, s, seed):
            if seed % every == 0:
                raise EstimationError("diverged")
            return TRUTH
        return est

    def test_failures_counted_and_excluded(self):
        rep = run_study(make_cfg(replications=10), estimator=self._failing(5))
        cell = rep.cells[("mle", 10)]
        assert cell.failures == 2
        assert np.all(cell.rmse == 0.0)  # survivors are exact

    def test_invalid_above_20_percent(self):
        rep = run_study(make_cfg(replications=10), estimator=self._failing(3))
        cell = rep.cells[("mle", 10)]
        assert cell.failures == 4
        assert not cell.valid

    def test_all_failures_nan(self):
        def est(m, c, s, seed):
            raise EstimationError("always")
        rep = run_study(make_cfg(), estimator=est)
        cell = rep.cells[("mle", 10)]
        assert np.all(np.isnan(cell.rmse))
        assert not cell.valid


class TestDeterminism:
    def test_same_seed_same_report(self):
        cfg = make_cfg(replications=3, sample_sizes=(15,), methods=("ols",),
                       max_evaluations=1500, restarts=1)
        a = run_study(cfg)
        b = run_study(cfg)
        ca, cb = a.cells[("ols", 15)], b.cells[("ols", 15)]
        assert np.array_equal(ca.rmse, cb.rmse)
        assert np.array_equal(ca.bias, cb.bias)

    def test_samples_derive_from_seed_plus_index(self):
        seeds = []

        def est(m, c, s, seed):
            seeds.append(seed)
            return TRUTH

        run_study(make_cfg(seed=100, replications=3), estimator=est)
        assert seeds == [100, 101, 102]


class TestSerialization:
    @pytest.fixture
    def report(self):
        return run_study(make_cfg(methods=("mle", "ad")),
                         estimator=lambda m, c, s, seed: TRUTH)

    def test_rows(self, report):
        rows = report.to_rows()
        assert len(rows) == 2 * 1 * 4  # methods x sizes x parameters
        assert {r["method"] for r in rows} == {"mle", "ad"}
        assert all(r["rmse"] == 0.0 for r in rows)

    def test_csv(self, report, tmp_path):
        path = tmp_path / "study.csv"
        report.to_csv(path)
        text = path.read_text().splitlines()
        assert text[0] == "method,n,parameter,rmse,bias,failures,valid"
        assert len(text) == 1 + 8

    def test_json_timing_toggle(self, report):
        with_t = report.to_json_dict(include_timing=True)
        without = report.to_json_dict(include_timing=False)
        assert "mean_seconds_per_iteration" in with_t["cells"][0]
        assert "mean_seconds_per_iteration" not in without["cells"][0]
        json.dumps(without)  # serializable

    def test_truth_embedded(self, report):
        d = report.to_json_dict()
        assert d["truth"] == {"theta": 0.1, "k": 0.13, "beta": 10.0,
                              "alpha": 1.0}


class TestRealFit:
    def test_tiny_real_study_runs(self):
        cfg = make_cfg(sample_sizes=(20,), replications=2, methods=("ols",),
                       max_evaluations=1200, restarts=1)
        rep = run_study(cfg)
        cell = rep.cells[("ols", 20)]
        assert cell.failures == 0
        assert np.all(np.isfinite(cell.rmse))
        assert cell.mean_seconds > 0
