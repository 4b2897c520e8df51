"""Entropic quantities of Gaussian states, in bits.

The classical correlation ``J`` is evaluated for a heterodyne measurement on
the conditioning mode. On the symmetric resource family this reproduces the
closed-form Gaussian discord exactly; for other states it is the heterodyne
value, not an optimum over all Gaussian measurements.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .gaussian import (
    PHYSICAL_TOL,
    conditional_covariance,
    partial_trace,
    require_physical,
    symplectic_eigenvalues,
)


def _g_array(x: np.ndarray) -> np.ndarray:
    if np.any(x < 1.0 - PHYSICAL_TOL):
        bad = float(np.min(x))
        raise DomainError(f"g(x) needs x >= 1, got {bad!r} (unphysical symplectic eigenvalue)")
    x = np.maximum(x, 1.0)
    xp = 0.5 * (x + 1.0)
    xm = 0.5 * (x - 1.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        minus = np.where(xm > 0, xm * np.log2(np.where(xm > 0, xm, 1.0)), 0.0)
    return xp * np.log2(xp) - minus


def g(x):
    """Entropy of a thermal mode with symplectic eigenvalue ``x``.

    ``g(x) = x+ log2 x+ - x- log2 x-`` with ``x+- = (x +- 1)/2``. Values in
    ``[1 - 1e-9, 1)`` are treated as 1. Accepts scalars or arrays.
    """
    arr = np.asarray(x, dtype=float)
    out = _g_array(np.atleast_1d(arr))
    return float(out[0]) if arr.ndim == 0 else out.reshape(arr.shape)


def gaussian_entropy(sigma) -> float:
    """Von Neumann entropy (bits) of the Gaussian state with covariance ``sigma``."""
    return float(np.sum(g(symplectic_eigenvalues(sigma))))


def gaussian_mutual_information(sigma) -> float:
    sigma = require_physical(sigma)
    if sigma.shape[0] != 4:
        raise DomainError("mutual information implemented for two-mode states")
    s_a = gaussian_entropy(partial_trace(sigma, [0]))
    s_b = gaussian_entropy(partial_trace(sigma, [1]))
    return s_a + s_b - gaussian_entropy(sigma)


def classical_correlation_heterodyne(sigma, measured_mode: int = 0) -> float:
    """``J`` for a heterodyne measurement on ``measured_mode``."""
    sigma = require_physical(sigma)
    if sigma.shape[0] != 4:
        raise DomainError("classical correlation implemented for two-mode states")
    other = 1 - measured_mode
    s_unmeasured = gaussian_entropy(partial_trace(sigma, [other]))
    s_cond = gaussian_entropy(conditional_covariance(sigma, measured_mode, "heterodyne"))
    return s_unmeasured - s_cond


@dataclass(frozen=True)
class InfoQuantities:
    """Entropies and correlations of a two-mode state, all in bits.

    ``J`` and ``discord`` refer to a heterodyne measurement on the mode named
    by ``measured_mode``; ``discord`` is the discord of the other mode
    conditioned on that one.
    """

    entropy_A: float
    entropy_B: float
    entropy_AB: float
    mutual_information: float
    classical_correlation: float
    discord: float
    measured_mode: int = 0


def info_quantities(sigma, measured_mode: int = 0) -> InfoQuantities:
    sigma = require_physical(sigma)
    s_a = gaussian_entropy(partial_trace(sigma, [0]))
    s_b = gaussian_entropy(partial_trace(sigma, [1]))
    s_ab = gaussian_entropy(sigma)
    mi = s_a + s_b - s_ab
    j = classical_correlation_heterodyne(sigma, measured_mode)
    return InfoQuantities(s_a, s_b, s_ab, mi, j, mi - j, measured_mode)


def gaussian_discord(sigma, measured_mode: int = 0) -> float:
    """Heterodyne Gaussian discord ``I - J`` with ``J`` conditioned on ``measured_mode``."""
    return info_quantities(sigma, measured_mode).discord


def gaussian_discord_symmetric(v: float) -> float:
    """Closed-form discord of the symmetric separable resource with noise variance ``v``."""
    if v < 0:
        raise DomainError(f"discording noise must be non-negative, got {v}")
    return g(v + 1.0) - 2.0 * g(np.sqrt(2.0 * v + 1.0)) + g(1.0 + 2.0 * v / (2.0 + v))


__all__ = [
    "InfoQuantities",
    "classical_correlation_heterodyne",
    "g",
    "gaussian_discord",
    "gaussian_discord_symmetric",
    "gaussian_entropy",
    "gaussian_mutual_information",
    "info_quantities",
]
