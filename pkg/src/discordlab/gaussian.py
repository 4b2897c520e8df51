"""Covariance-matrix toolkit for zero-mean Gaussian states.

Conventions used throughout the package:

* quadrature ordering ``(X1, Y1, X2, Y2, ...)``;
* shot-noise units, so the vacuum covariance matrix is the identity and
  ``[X_j, Y_k] = 2i delta_jk``;
* covariance matrices are plain ``numpy`` float arrays of shape ``(2n, 2n)``.
  No function here mutates its input.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DomainError, MalformedInputError, NumericalError

PHYSICAL_TOL = 1e-9
SYMMETRY_RTOL = 1e-12


def as_covariance(sigma) -> np.ndarray:
    """Return ``sigma`` as a float array after checking it is square with even size."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.ndim != 2 or sigma.shape[0] != sigma.shape[1]:
        raise MalformedInputError(f"covariance matrix must be square, got shape {sigma.shape}")
    if sigma.shape[0] == 0 or sigma.shape[0] % 2:
        raise MalformedInputError(f"covariance matrix needs even dimension, got {sigma.shape[0]}")
    return sigma


def n_modes(sigma) -> int:
    return as_covariance(sigma).shape[0] // 2


def symplectic_form(n: int) -> np.ndarray:
    """Block-diagonal symplectic form with per-mode blocks ``[[0, 1], [-1, 0]]``."""
    if n < 1:
        raise DomainError(f"number of modes must be positive, got {n}")
    return np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))


def vacuum(n: int = 1) -> np.ndarray:
    return np.eye(2 * n)


def thermal(variance: float, n: int = 1) -> np.ndarray:
    """Product of ``n`` thermal modes with quadrature variance ``variance`` (>= 1)."""
    return variance * np.eye(2 * n)


def two_mode_squeezed_vacuum(r: float) -> np.ndarray:
    """Two-mode squeezed vacuum with squeezing parameter ``r``."""
    c, s = np.cosh(2 * r), np.sinh(2 * r)
    z = np.diag([1.0, -1.0])
    return np.block([[c * np.eye(2), s * z], [s * z, c * np.eye(2)]])


def is_symmetric(sigma: np.ndarray, rtol: float = SYMMETRY_RTOL) -> bool:
    diff = np.abs(sigma - sigma.T)
    scale = np.maximum(1.0, np.abs(sigma))
    return bool(np.all(diff <= rtol * scale))


def symplectic_eigenvalues(sigma) -> np.ndarray:
    """Symplectic spectrum of ``sigma``, one value per mode, in descending order.

    These are the moduli of the eigenvalues of ``i Omega sigma``. For positive
    definite input the Hermitian form ``sqrt(sigma) (i Omega) sqrt(sigma)`` is
    diagonalised instead, which has the same spectrum and is better conditioned.
    """
    sigma = as_covariance(sigma)
    n = sigma.shape[0] // 2
    omega = symplectic_form(n)
    sym = 0.5 * (sigma + sigma.T)
    try:
        w, u = np.linalg.eigh(sym)
        if w.min() > 0:
            root = (u * np.sqrt(w)) @ u.T
            ev = np.linalg.eigvalsh(root @ (1j * omega) @ root)
            nu = np.sort(np.abs(ev))[::-1]
        else:
            ev = np.linalg.eigvals(1j * omega @ sigma)
            nu = np.sort(np.abs(ev))[::-1]
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed on covariance matrix:\n{sigma}") from exc
    if not np.all(np.isfinite(nu)):
        raise NumericalError(f"non-finite symplectic spectrum for covariance matrix:\n{sigma}")
    # eigenvalues of i*Omega*sigma come in +/- pairs
    return nu[::2].copy()


@dataclass(frozen=True)
class PhysicalityReport:
    physical: bool
    symmetric: bool
    min_symplectic_eigenvalue: float

    def __bool__(self) -> bool:
        return self.physical

    @property
    def diagnostic(self) -> str:
        if self.physical:
            return "physical"
        if not self.symmetric:
            return "covariance matrix is not symmetric"
        return f"minimum symplectic eigenvalue {self.min_symplectic_eigenvalue:.6g} < 1"


def validate_physical(sigma, tol: float = PHYSICAL_TOL) -> PhysicalityReport:
    """Check symmetry and the uncertainty principle ``sigma + i Omega >= 0``."""
    sigma = as_covariance(sigma)
    symmetric = is_symmetric(sigma)
    nu_min = float(symplectic_eigenvalues(sigma).min())
    ok = symmetric and nu_min >= 1.0 - tol
    return PhysicalityReport(ok, symmetric, nu_min)


def require_physical(sigma, what: str = "covariance matrix") -> np.ndarray:
    sigma = as_covariance(sigma)
    report = validate_physical(sigma)
    if not report:
        raise DomainError(f"{what} is unphysical: {report.diagnostic}")
    return sigma


def _mode_slice(mode: int) -> slice:
    return slice(2 * mode, 2 * mode + 2)


def _check_modes(modes: Sequence[int], n: int) -> None:
    for m in modes:
        if not 0 <= m < n:
            raise DomainError(f"mode index {m} out of range for {n}-mode state")
    if len(set(modes)) != len(modes):
        raise DomainError(f"repeated mode index in {tuple(modes)}")


def beamsplitter_matrix(eta: float) -> np.ndarray:
    """Two-mode beam splitter with transmission ``eta``.

    Output 1 is ``sqrt(eta) a - sqrt(1-eta) b`` and output 2 is
    ``sqrt(1-eta) a + sqrt(eta) b`` for inputs ``(a, b)``.
    """
    if not 0.0 <= eta <= 1.0:
        raise DomainError(f"transmission must lie in [0, 1], got {eta}")
    t, r = np.sqrt(eta), np.sqrt(1.0 - eta)
    i2 = np.eye(2)
    return np.block([[t * i2, -r * i2], [r * i2, t * i2]])


def rotation_matrix(phi: float) -> np.ndarray:
    c, s = np.cos(phi), np.sin(phi)
    return np.array([[c, -s], [s, c]])


@dataclass(frozen=True)
class ModeTransform:
    """A passive Gaussian operation acting on a subset of modes.

    ``kind`` is one of ``"beamsplitter"`` (two target modes, transmission
    ``eta``), ``"phase_shift"`` (one angle per target mode) or ``"loss"``
    (one target mode, transmission ``eta``, vacuum ancilla traced out).
    """

    kind: str
    modes: tuple[int, ...]
    eta: float = 1.0
    angles: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind not in ("beamsplitter", "phase_shift", "loss"):
            raise DomainError(f"unknown transform kind {self.kind!r}")
        if self.kind in ("beamsplitter", "loss") and not 0.0 <= self.eta <= 1.0:
            raise DomainError(f"transmission must lie in [0, 1], got {self.eta}")
        if self.kind == "beamsplitter" and len(self.modes) != 2:
            raise DomainError("a beam splitter acts on exactly two modes")
        if self.kind == "loss" and len(self.modes) != 1:
            raise DomainError("loss acts on exactly one mode")
        if self.kind == "phase_shift" and len(self.angles) != len(self.modes):
            raise DomainError("phase shift needs one angle per target mode")

    @classmethod
    def beamsplitter(cls, eta: float, modes: tuple[int, int] = (0, 1)) -> "ModeTransform":
        return cls("beamsplitter", tuple(modes), eta=float(eta))

    @classmethod
    def phase_shift(cls, angles, modes=None) -> "ModeTransform":
        angles = tuple(float(a) for a in np.atleast_1d(angles))
        if modes is None:
            modes = tuple(range(len(angles)))
        return cls("phase_shift", tuple(modes), angles=angles)

    @classmethod
    def loss(cls, eta: float, mode: int = 0) -> "ModeTransform":
        return cls("loss", (mode,), eta=float(eta))

    def symplectic(self, n: int) -> np.ndarray:
        """Full ``2n x 2n`` symplectic matrix (not defined for ``loss``)."""
        if self.kind == "loss":
            raise DomainError("loss is not a unitary transform; use apply_transform")
        _check_modes(self.modes, n)
        s = np.eye(2 * n)
        if self.kind == "phase_shift":
            for m, phi in zip(self.modes, self.angles):
                s[_mode_slice(m), _mode_slice(m)] = rotation_matrix(phi)
        else:
            bs = beamsplitter_matrix(self.eta)
            idx = np.r_[_mode_slice(self.modes[0]), _mode_slice(self.modes[1])]
            s[np.ix_(idx, idx)] = bs
        return s


def apply_transform(sigma, t: ModeTransform) -> np.ndarray:
    """Propagate a covariance matrix through ``t``."""
    sigma = as_covariance(sigma)
    n = sigma.shape[0] // 2
    _check_modes(t.modes, n)
    if t.kind == "loss":
        # dilate with a vacuum ancilla in mode n, mix, then discard the ancilla
        big = np.zeros((2 * n + 2, 2 * n + 2))
        big[: 2 * n, : 2 * n] = sigma
        big[2 * n :, 2 * n :] = np.eye(2)
        s = ModeTransform.beamsplitter(t.eta, (t.modes[0], n)).symplectic(n + 1)
        return partial_trace(s @ big @ s.T, range(n))
    s = t.symplectic(n)
    return s @ sigma @ s.T


def partial_trace(sigma, keep) -> np.ndarray:
    """Reduced covariance matrix of the modes in ``keep`` (in the given order)."""
    sigma = as_covariance(sigma)
    keep = list(keep)
    if not keep:
        raise DomainError("partial trace must keep at least one mode")
    _check_modes(keep, sigma.shape[0] // 2)
    idx = np.concatenate([np.arange(2 * m, 2 * m + 2) for m in keep])
    return sigma[np.ix_(idx, idx)].copy()


def blocks(sigma, measured_mode: int):
    """Split ``sigma`` into ``(A, B, C)`` with ``B`` the block of ``measured_mode``."""
    sigma = as_covariance(sigma)
    n = sigma.shape[0] // 2
    _check_modes([measured_mode], n)
    rest = [m for m in range(n) if m != measured_mode]
    if not rest:
        raise DomainError("conditioning needs at least one unmeasured mode")
    ia = np.concatenate([np.arange(2 * m, 2 * m + 2) for m in rest])
    ib = np.arange(2 * measured_mode, 2 * measured_mode + 2)
    return sigma[np.ix_(ia, ia)], sigma[np.ix_(ib, ib)], sigma[np.ix_(ia, ib)]


def conditional_covariance(sigma, measured_mode: int = 0, measurement: str = "heterodyne",
                           angle: float = 0.0) -> np.ndarray:
    """Covariance of the unmeasured modes after a Gaussian measurement.

    ``measurement="heterodyne"`` gives ``A - C (B + I)^-1 C^T``. For
    ``"homodyne"`` the quadrature ``cos(angle) X + sin(angle) Y`` of the
    measured mode is detected and ``A - C (P B P)^+ C^T`` is returned, ``P``
    being the projector on that quadrature. Both are independent of the
    measurement outcome.
    """
    a, b, c = blocks(sigma, measured_mode)
    try:
        if measurement == "heterodyne":
            gain = np.linalg.solve(b + np.eye(2), c.T)
            out = a - c @ gain
        elif measurement == "homodyne":
            u = np.array([np.cos(angle), np.sin(angle)])
            proj = np.outer(u, u)
            out = a - c @ np.linalg.pinv(proj @ b @ proj) @ c.T
        else:
            raise DomainError(f"unknown measurement {measurement!r}")
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"conditioning block is singular:\n{b}") from exc
    return 0.5 * (out + out.T)


def partial_transpose(sigma, mode: int = 1) -> np.ndarray:
    """Flip the sign of the ``Y`` quadrature of ``mode`` (time reversal)."""
    sigma = as_covariance(sigma)
    flip = np.ones(sigma.shape[0])
    flip[2 * mode + 1] = -1.0
    return sigma * np.outer(flip, flip)


@dataclass(frozen=True)
class PPTResult:
    separable: bool
    min_eigenvalue: float


def ppt_separability_test(sigma, tol: float = PHYSICAL_TOL) -> PPTResult:
    """Simon's partial-transpose test for a two-mode Gaussian state.

    For one mode against one mode the criterion is necessary and sufficient.
    """
    sigma = as_covariance(sigma)
    if sigma.shape[0] != 4:
        raise DomainError(f"PPT test implemented for two modes, got {sigma.shape[0] // 2}")
    nu = symplectic_eigenvalues(partial_transpose(sigma, 1))
    nu_min = float(nu.min())
    return PPTResult(nu_min >= 1.0 - tol, nu_min)


def random_symplectic(n: int, rng: np.random.Generator, max_squeezing: float = 1.0) -> np.ndarray:
    """Random symplectic matrix: passive rotation, single-mode squeezing, passive rotation."""

    def passive():
        s = np.eye(2 * n)
        for _ in range(3):
            s = ModeTransform.phase_shift(rng.uniform(0, 2 * np.pi, n)).symplectic(n) @ s
            if n > 1:
                i, j = rng.choice(n, size=2, replace=False)
                s = ModeTransform.beamsplitter(rng.uniform(), (int(i), int(j))).symplectic(n) @ s
        return s

    r = rng.uniform(-max_squeezing, max_squeezing, n)
    sq = np.diag(np.ravel(np.column_stack([np.exp(-r), np.exp(r)])))
    return passive() @ sq @ passive()


def random_physical_covariance(n: int, rng: np.random.Generator, max_thermal: float = 10.0,
                               max_squeezing: float = 1.0) -> np.ndarray:
    """Williamson form ``S D S^T`` with random thermal occupations and symplectic ``S``."""
    nu = 1.0 + rng.uniform(0.0, max_thermal, n)
    d = np.diag(np.repeat(nu, 2))
    s = random_symplectic(n, rng, max_squeezing)
    out = s @ d @ s.T
    return 0.5 * (out + out.T)
