import numpy as np
import pytest

from discordlab.errors import DegenerateDataError, DomainError
from discordlab.imperfections import ImperfectionConfig, model_rates
from discordlab.montecarlo import (
    SampleConfig,
    estimate_mi_gaussian,
    mc_protocol_check,
    simulate_runs,
)
from discordlab.protocol import encoded_state, incoherent_limit, practical_rates


class TestConfig:
    def test_too_few_samples(self):
        with pytest.raises(DomainError):
            SampleConfig(n_samples=999)

    def test_negative_variance(self):
        with pytest.raises(DomainError):
            SampleConfig(v=-1.0)

    def test_partitions(self):
        with pytest.raises(DomainError):
            SampleConfig(n_samples=1000, partitions=0)


class TestSimulate:
    def test_deterministic(self):
        a = simulate_runs(SampleConfig(n_samples=5000, seed=3))
        b = simulate_runs(SampleConfig(n_samples=5000, seed=3))
        assert np.array_equal(a.outputs, b.outputs) and np.array_equal(a.signal, b.signal)

    def test_seed_matters(self):
        a = simulate_runs(SampleConfig(n_samples=5000, seed=3))
        b = simulate_runs(SampleConfig(n_samples=5000, seed=4))
        assert not np.array_equal(a.outputs, b.outputs)

    def test_partitioned_deterministic(self):
        cfg = SampleConfig(n_samples=10_001, seed=5, partitions=4)
        a, b = simulate_runs(cfg), simulate_runs(cfg)
        assert a.n_samples == 10_001
        assert np.array_equal(a.outputs, b.outputs)

    def test_signal_scaling(self):
        s = simulate_runs(SampleConfig(vs=4.0, n_samples=2000))
        assert np.allclose(s.signal, 2.0 * s.signal_unit)

    def test_pre_interference_covariance(self):
        n = 10**6
        beams = simulate_runs(SampleConfig(n_samples=n, seed=11)).beams
        emp = np.cov(beams, rowvar=False)
        exact = encoded_state(10, 9.1)
        # standard error of a Gaussian sample covariance entry
        se = np.sqrt((np.outer(np.diag(exact), np.diag(exact)) + exact**2) / n)
        assert np.all(np.abs(emp - exact) < 5 * se)

    def test_imperfect_chain_runs(self):
        s = simulate_runs(SampleConfig(n_samples=2000, imperfection=ImperfectionConfig()))
        assert s.outputs.shape == (2000, 2)
        assert any("det_A" in label for label in s.input_labels)


class TestEstimator:
    def test_independent(self):
        rng = np.random.default_rng(0)
        est = estimate_mi_gaussian(rng.standard_normal((50_000, 2)), rng.standard_normal((50_000, 2)))
        assert abs(est.value) < 3 * est.std_error
        assert est.std_error > 0

    def test_copied_signal(self):
        rng = np.random.default_rng(1)
        x = rng.standard_normal(20_000)
        values = []
        for eps in (1e-1, 1e-2, 1e-3):
            values.append(estimate_mi_gaussian(x, x + eps * rng.standard_normal(20_000)).value)
        steps = np.diff(values)
        assert np.all(steps > 0)
        assert np.allclose(steps, np.log2(10), atol=0.05)

    def test_degenerate(self):
        x = np.random.default_rng(2).standard_normal((2000, 2))
        with pytest.raises(DegenerateDataError):
            estimate_mi_gaussian(x, np.zeros((2000, 1)))

    def test_shape_checks(self):
        with pytest.raises(DomainError):
            estimate_mi_gaussian(np.zeros(2000), np.zeros(1999))
        with pytest.raises(DomainError):
            estimate_mi_gaussian(np.zeros(10), np.zeros(10))

    def test_deterministic_estimate(self):
        a = mc_protocol_check(SampleConfig(n_samples=20_000, seed=9)).estimate
        b = mc_protocol_check(SampleConfig(n_samples=20_000, seed=9)).estimate
        assert a == b


class TestProtocolCheck:
    def test_no_signal(self):
        r = mc_protocol_check(SampleConfig(vs=0.0, n_samples=10**5, seed=1))
        assert abs(r.estimate.value) < 3 * r.estimate.std_error

    def test_no_noise_no_advantage(self):
        r = mc_protocol_check(SampleConfig(v=0.0, n_samples=10**5, seed=2))
        assert r.excess_over_incoherent < 3 * r.estimate.std_error
        assert not r.advantage_detected

    def test_small_signal_sign(self):
        r = mc_protocol_check(SampleConfig(vs=0.1, n_samples=10**6, seed=3))
        gap = practical_rates(10, 0.1)[0] - incoherent_limit(10, 0.1)
        assert gap > 0 and r.excess_over_incoherent > 0

    def test_imperfect_analytic(self):
        cfg = ImperfectionConfig()
        r = mc_protocol_check(SampleConfig(n_samples=2 * 10**5, seed=4, imperfection=cfg))
        assert r.analytic == pytest.approx(model_rates(cfg, 10, 9.1)[0])
        assert abs(r.estimate.value - r.analytic) < 4 * r.estimate.std_error

    def test_report_fields(self):
        d = mc_protocol_check(SampleConfig(n_samples=5000)).as_dict()
        assert set(d) >= {"mi_estimate", "std_error", "analytic", "excess_over_incoherent", "significance"}


@pytest.mark.slow
def test_estimator_consistency():
    analytic = practical_rates(10, 9.1)[0]
    inside = 0
    for seed in range(100):
        est = mc_protocol_check(SampleConfig(n_samples=10**5, seed=seed)).estimate
        inside += abs(est.value - analytic) < 3 * est.std_error
    assert inside >= 99


@pytest.mark.slow
def test_std_error_scaling():
    # a 10-batch error estimate is itself noisy, so compare averages over seeds
    small = np.mean([mc_protocol_check(SampleConfig(n_samples=10**4, seed=s)).estimate.std_error
                     for s in range(20)])
    large = np.mean([mc_protocol_check(SampleConfig(n_samples=10**6, seed=s)).estimate.std_error
                     for s in range(20)])
    assert 8 <= small / large <= 12
