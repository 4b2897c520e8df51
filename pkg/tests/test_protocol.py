import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from discordlab.errors import DomainError
from discordlab.gaussian import ppt_separability_test
from discordlab.info import classical_correlation_heterodyne, g, gaussian_discord_symmetric
from discordlab.protocol import (
    coherent_limit,
    coherent_limit_numeric,
    encode_signal,
    encoded_state,
    encoded_symplectic_eigenvalues,
    evaluate_point,
    incoherent_limit,
    practical_rates,
    resource_state,
)

import oracles

I_C = 2.1751996552024083078
I_Q = 2.545617685441308713
MU = (16.458085488440196783, 7.3580854884401967834)
I_C_PROT = 2.5277376320282061034

GRID = np.linspace(0.5, 50.0, 20)
grid_points = [(v, vs) for v in GRID for vs in GRID]
variances = st.floats(min_value=0.0, max_value=200.0)


class TestStates:
    def test_resource_zero(self):
        assert np.array_equal(resource_state(0), np.eye(4))

    def test_resource_layout(self):
        s = resource_state(10)
        assert np.array_equal(np.diag(s), [11, 11, 11, 11])
        assert s[0, 2] == 10 and s[1, 3] == -10 and s[0, 1] == 0

    def test_encode(self):
        s = encoded_state(10, 9.1)
        assert np.allclose(s[2:, 2:], 20.1 * np.eye(2))
        assert np.array_equal(s[:2], resource_state(10)[:2])

    def test_encode_zero(self):
        assert np.array_equal(encode_signal(resource_state(3), 0.0), resource_state(3))

    @pytest.mark.parametrize("bad", [-1.0, np.nan, np.inf])
    def test_domain(self, bad):
        with pytest.raises(DomainError):
            resource_state(bad)
        with pytest.raises(DomainError):
            encode_signal(np.eye(4), bad)

    def test_matches_oracle_matrix(self):
        ref = np.array(oracles.covariance(10, "9.1").tolist(), dtype=float)
        assert np.allclose(encoded_state(10, 9.1), ref, atol=1e-14)


class TestLimits:
    def test_incoherent_frozen(self):
        assert incoherent_limit(10, 9.1) == pytest.approx(I_C, abs=1e-12)
        assert I_C == pytest.approx(float(oracles.incoherent_limit(10, "9.1")), abs=1e-15)

    def test_incoherent_edges(self):
        assert incoherent_limit(7, 0) == 0.0
        assert incoherent_limit(0, 4.0) == pytest.approx(g(5.0), abs=1e-14)

    def test_coherent_frozen(self):
        assert coherent_limit(10, 9.1) == pytest.approx(I_Q, abs=1e-12)
        assert np.allclose(encoded_symplectic_eigenvalues(10, 9.1), MU, atol=1e-12)

    def test_coherent_zero_signal(self):
        mu = encoded_symplectic_eigenvalues(5, 0)
        assert np.allclose(mu, np.sqrt(11), atol=1e-14)
        assert coherent_limit(5, 0) == pytest.approx(0.0, abs=1e-13)

    def test_large_signal_gap_matches_discord(self):
        gap = coherent_limit(10, 1e4) - incoherent_limit(10, 1e4)
        d = gaussian_discord_symmetric(10)
        assert abs(gap - d) / d < 0.01

    def test_practical(self):
        assert practical_rates(3.0, 2.0)[0] == pytest.approx(1.0, abs=1e-15)
        assert practical_rates(3.0, 0.0) == (0.0, 0.0)
        assert practical_rates(10, 9.1)[1] == pytest.approx(I_C_PROT, abs=1e-13)
        assert practical_rates(1.0, 5.0)[0] == practical_rates(40.0, 5.0)[0]

    def test_practical_reaches_coherent_at_large_noise(self):
        assert abs(practical_rates(1e6, 9.1)[0] - coherent_limit(1e6, 9.1)) < 1e-4

    def test_negative(self):
        for f in (incoherent_limit, coherent_limit, practical_rates, evaluate_point):
            with pytest.raises(DomainError):
                f(-0.1, 1.0)


class TestEvaluatePoint:
    def test_no_noise_no_advantage(self):
        p = evaluate_point(0.0, 9.1)
        assert p.discord_consumed == pytest.approx(0.0, abs=1e-12)
        assert p.delta_i == pytest.approx(0.0, abs=1e-12)

    def test_record(self):
        p = evaluate_point(10, 9.1)
        assert p.i_c == pytest.approx(I_C, abs=1e-12)
        assert p.i_q == pytest.approx(I_Q, abs=1e-12)
        assert p.discord_before == pytest.approx(0.46805044027777918993, abs=1e-12)
        assert p.delta_i == pytest.approx(p.i_q - p.i_c, abs=1e-12)
        assert p.discord_consumed == pytest.approx(p.discord_before - p.discord_after, abs=1e-12)
        assert set(p.as_dict()) >= {"v", "vs", "delta_i", "i_c_prot"}

    def test_consumption_monotone_in_signal(self):
        d = [evaluate_point(10, vs).discord_consumed for vs in np.arange(1, 101)]
        assert np.all(np.diff(d) > 0)


def test_closed_form_matches_eigensolver_on_grid():
    err = max(abs(coherent_limit(v, vs) - coherent_limit_numeric(v, vs)) for v, vs in grid_points)
    assert err < 1e-10


def test_bound_chain_on_grid():
    for v, vs in grid_points:
        p = evaluate_point(v, vs)
        assert 0 <= p.i_c <= p.i_q
        assert -1e-9 <= p.delta_i <= p.discord_consumed + 1e-9
        j_tilde = classical_correlation_heterodyne(encoded_state(v, vs), 0)
        assert p.discord_consumed - j_tilde <= p.delta_i + 1e-9


def test_practical_coherent_below_limit_on_grid():
    for v, vs in grid_points:
        assert practical_rates(v, vs)[0] <= coherent_limit(v, vs) + 1e-9


@pytest.mark.xfail(strict=True, reason="the closed-form practical incoherent rate exceeds the "
                   "single-measurement Holevo bound at high noise")
def test_practical_incoherent_below_limit_on_grid():
    for v, vs in grid_points:
        assert practical_rates(v, vs)[1] <= incoherent_limit(v, vs) + 1e-9


def _encoded_ppt_min(v, vs):
    # smallest symplectic eigenvalue of the partial transpose, by hand
    a, b = v + 1.0, v + vs + 1.0
    delta = a * a + b * b + 2 * v * v
    return np.sqrt((delta - (a + b) * np.sqrt((a - b) ** 2 + 4 * v * v)) / 2)


def test_separable_on_grid():
    for v, vs in grid_points:
        assert ppt_separability_test(resource_state(v)).min_eigenvalue == pytest.approx(1.0, abs=1e-9)
        r = ppt_separability_test(encoded_state(v, vs))
        assert r.separable
        assert r.min_eigenvalue == pytest.approx(_encoded_ppt_min(v, vs), abs=1e-9)
        assert r.min_eigenvalue > 1.0


@settings(max_examples=100)
@given(v=variances, vs=variances)
def test_point_invariants(v, vs):
    p = evaluate_point(v, vs)
    assert p.delta_i >= -1e-9
    assert p.i_c >= -1e-12
    assert p.delta_i <= p.discord_consumed + 1e-9
