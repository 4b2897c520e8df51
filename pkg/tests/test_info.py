import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from discordlab.errors import DomainError
from discordlab.gaussian import random_physical_covariance
from discordlab.info import (
    classical_correlation_heterodyne,
    g,
    gaussian_discord,
    gaussian_discord_symmetric,
    gaussian_entropy,
    gaussian_mutual_information,
    info_quantities,
)
from discordlab.protocol import encoded_state, resource_state

import oracles

# frozen from tests/oracles.py (mpmath, 40 digits)
G_SQRT21 = 2.6272364053267164956
G_2_5 = 1.7241492380599400519
S_RES10 = 5.2544728106534329911
I_RES10 = 2.5457962491268177076
J_RES10 = 2.0777458088490385177
DISCORD = {1.0: 0.16830572235778452579, 10.0: 0.46805044027777918993, 100.0: 0.54708940165329105061}


class TestG:
    def test_vacuum(self):
        assert g(1.0) == 0.0

    def test_exact(self):
        assert g(3.0) == pytest.approx(2.0, abs=1e-15)

    def test_frozen(self):
        assert g(np.sqrt(21)) == pytest.approx(G_SQRT21, abs=1e-13)
        assert g(2.5) == pytest.approx(G_2_5, abs=1e-14)

    def test_matches_oracle(self):
        xs = [1.0, 1.0 + 1e-7, 1.3, 7.7, 123.4]
        assert np.allclose(g(np.array(xs)), [float(oracles.g(x)) for x in xs], atol=1e-12)

    def test_clamp(self):
        assert g(1.0 - 5e-10) == 0.0

    def test_domain(self):
        with pytest.raises(DomainError):
            g(0.99)
        with pytest.raises(DomainError):
            g(np.array([2.0, 0.5]))

    def test_array_shape(self):
        assert g(np.ones((2, 3))).shape == (2, 3)

    def test_monotone_and_concave(self):
        x = np.linspace(1.0, 100.0, 1000)
        y = g(x)
        assert np.all(np.diff(y) > 0)
        assert np.max(np.diff(y, 2)) <= 1e-6


class TestEntropy:
    def test_vacuum(self):
        assert gaussian_entropy(np.eye(4)) == 0.0

    def test_thermal(self):
        assert gaussian_entropy(11 * np.eye(2)) == pytest.approx(g(11.0), abs=1e-13)

    def test_resource(self):
        assert gaussian_entropy(resource_state(10)) == pytest.approx(S_RES10, abs=1e-12)


class TestCorrelations:
    def test_product_state(self):
        s = np.diag([2.0, 2.0, 4.0, 4.0])
        assert gaussian_mutual_information(s) == pytest.approx(0.0, abs=1e-13)
        assert classical_correlation_heterodyne(s) == pytest.approx(0.0, abs=1e-13)

    def test_resource_mi(self):
        assert gaussian_mutual_information(resource_state(10)) == pytest.approx(I_RES10, abs=1e-12)
        assert I_RES10 == pytest.approx(2 * g(11.0) - 2 * g(np.sqrt(21)), abs=1e-13)

    def test_resource_j(self):
        assert classical_correlation_heterodyne(resource_state(10)) == pytest.approx(J_RES10, abs=1e-12)

    @pytest.mark.parametrize("v", [0.5, 3.0, 10.0])
    def test_j_closed_form(self, v):
        expect = g(v + 1) - g(1 + 2 * v / (v + 2))
        assert classical_correlation_heterodyne(resource_state(v)) == pytest.approx(expect, abs=1e-12)

    def test_encoding_continuity(self):
        base = gaussian_mutual_information(resource_state(10))
        assert gaussian_mutual_information(encoded_state(10, 1e-9)) == pytest.approx(base, abs=1e-7)

    def test_info_quantities_consistency(self):
        q = info_quantities(encoded_state(10, 9.1))
        assert q.discord == pytest.approx(q.mutual_information - q.classical_correlation, abs=1e-12)
        assert q.mutual_information == pytest.approx(q.entropy_A + q.entropy_B - q.entropy_AB, abs=1e-12)

    def test_unphysical(self):
        with pytest.raises(DomainError):
            gaussian_mutual_information(0.5 * np.eye(4))


class TestDiscord:
    def test_zero(self):
        assert gaussian_discord_symmetric(0.0) == 0.0

    @pytest.mark.parametrize("v", sorted(DISCORD))
    def test_frozen(self, v):
        assert gaussian_discord_symmetric(v) == pytest.approx(DISCORD[v], abs=1e-12)

    def test_monotone_sample(self):
        assert DISCORD[1.0] < DISCORD[10.0] < DISCORD[100.0]
        d = [gaussian_discord_symmetric(v) for v in (1.0, 10.0, 100.0)]
        assert d[0] < d[1] < d[2]

    @pytest.mark.parametrize("v", [0.1, 0.5, 1, 2, 5, 10, 50, 100])
    def test_dual_path(self, v):
        assert gaussian_discord(resource_state(v)) == pytest.approx(gaussian_discord_symmetric(v), abs=1e-10)
        assert gaussian_discord_symmetric(v) == pytest.approx(float(oracles.discord_symmetric(v)), abs=1e-12)

    def test_vanishes_with_noise(self):
        assert 0 <= gaussian_discord_symmetric(1e-6) < 1e-5

    def test_negative(self):
        with pytest.raises(DomainError):
            gaussian_discord_symmetric(-1.0)


def test_j_between_zero_and_i_on_random_states():
    rng = np.random.default_rng(2024)
    worst = np.inf
    for _ in range(1000):
        s = random_physical_covariance(2, rng)
        for m in (0, 1):
            q = info_quantities(s, m)
            assert q.classical_correlation >= -1e-9
            worst = min(worst, q.mutual_information - q.classical_correlation)
    assert worst >= -1e-9


@settings(max_examples=100)
@given(v=st.floats(0, 200))
def test_resource_discord_nonnegative(v):
    assert gaussian_discord_symmetric(v) >= -1e-12
