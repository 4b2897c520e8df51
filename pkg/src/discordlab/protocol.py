"""Closed-form rates of the continuous-variable discord-consumption protocol.

Mode layout: mode 0 is the reference beam, mode 1 carries the encoded signal.
``V`` is the variance of the (anti-)correlated displacement noise used to
prepare the separable resource, ``V_s`` the variance of each encoded
quadrature signal. Both are in shot-noise units; rates are in bits.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import DomainError
from .gaussian import as_covariance
from .info import g, gaussian_discord, gaussian_discord_symmetric, gaussian_entropy

# experimental settings used as sweep defaults
DEFAULT_V = 10.0
DEFAULT_VS = 9.10

REFERENCE_MODE = 0
ENCODED_MODE = 1


def _nonneg(**values):
    for name, val in values.items():
        if not np.isfinite(val) or val < 0:
            raise DomainError(f"{name} must be a finite non-negative number, got {val}")


def resource_state(v: float) -> np.ndarray:
    """Separable discordant resource: X noise correlated, Y noise anti-correlated."""
    _nonneg(V=v)
    i2 = np.eye(2)
    c = np.diag([v, -v])
    return np.block([[(v + 1) * i2, c], [c, (v + 1) * i2]])


def encode_signal(sigma, vs: float, mode: int = ENCODED_MODE) -> np.ndarray:
    """Average over Gaussian displacements of variance ``vs`` on both quadratures of ``mode``."""
    _nonneg(V_s=vs)
    out = as_covariance(sigma).copy()
    out[2 * mode, 2 * mode] += vs
    out[2 * mode + 1, 2 * mode + 1] += vs
    return out


def encoded_state(v: float, vs: float) -> np.ndarray:
    return encode_signal(resource_state(v), vs)


def incoherent_limit(v: float, vs: float) -> float:
    """Holevo bound for one local measurement per beam (reference beam first)."""
    _nonneg(V=v, V_s=vs)
    cond = 1.0 + 2.0 * v / (v + 2.0)
    return g(cond + vs) - g(cond)


def encoded_symplectic_eigenvalues(v: float, vs: float) -> tuple[float, float]:
    """Closed-form symplectic spectrum ``(mu_plus, mu_minus)`` of the encoded state."""
    _nonneg(V=v, V_s=vs)
    root = np.sqrt((vs + 2.0) * (4.0 * v + vs + 2.0))
    base = 2.0 * v + 1.0
    mu_p = np.sqrt(base + 0.5 * vs * (vs + 2.0 * v + 2.0 + root))
    mu_m = np.sqrt(base + 0.5 * vs * (vs + 2.0 * v + 2.0 - root))
    return float(mu_p), float(mu_m)


def coherent_limit(v: float, vs: float) -> float:
    """Holevo bound with arbitrary joint operations on both beams."""
    mu_p, mu_m = encoded_symplectic_eigenvalues(v, vs)
    return g(mu_p) + g(mu_m) - 2.0 * g(np.sqrt(2.0 * v + 1.0))


def coherent_limit_numeric(v: float, vs: float) -> float:
    """``S(encoded) - S(resource)`` through the generic symplectic eigensolver."""
    _nonneg(V=v, V_s=vs)
    return gaussian_entropy(encoded_state(v, vs)) - gaussian_entropy(resource_state(v))


def practical_rates(v: float, vs: float) -> tuple[float, float]:
    """Rates of the implemented schemes: ``(interfere-then-homodyne, homodyne each beam)``."""
    _nonneg(V=v, V_s=vs)
    i_q_prot = np.log2(1.0 + vs / 2.0)
    i_c_prot = np.log2(1.0 + (1.0 + v) * vs / (1.0 + 2.0 * v))
    return float(i_q_prot), float(i_c_prot)


@dataclass(frozen=True)
class ProtocolPoint:
    v: float
    vs: float
    discord_before: float
    discord_after: float
    discord_consumed: float
    i_c: float
    i_q: float
    i_q_prot: float
    i_c_prot: float
    delta_i: float

    def as_dict(self) -> dict:
        return asdict(self)


def evaluate_point(v: float, vs: float) -> ProtocolPoint:
    _nonneg(V=v, V_s=vs)
    before = gaussian_discord_symmetric(v)
    after = gaussian_discord(encoded_state(v, vs), measured_mode=REFERENCE_MODE)
    i_c = incoherent_limit(v, vs)
    i_q = coherent_limit(v, vs)
    i_q_prot, i_c_prot = practical_rates(v, vs)
    return ProtocolPoint(
        v=float(v),
        vs=float(vs),
        discord_before=before,
        discord_after=after,
        discord_consumed=before - after,
        i_c=i_c,
        i_q=i_q,
        i_q_prot=i_q_prot,
        i_c_prot=i_c_prot,
        delta_i=i_q - i_c,
    )
