"""Finite-dimensional checks of the discord-consumption bounds.

Bipartite states are ``numpy`` arrays of shape ``(dA*dB, dA*dB)`` with
subsystem A the first tensor factor. Alice's encoding acts on A.

Classical correlations are optimised over rank-one projective measurements
only. For a qubit measured subsystem the measurement axis is searched on a
Fibonacci grid of the Bloch sphere and refined by Nelder-Mead from the best
grid points; larger subsystems use seeded multi-start Nelder-Mead over a
unitary parameterisation. The optimiser returns the best value found, so
``J`` is a lower bound and the reported discord an upper bound.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm
from scipy.optimize import minimize
from scipy.stats import unitary_group

from .errors import DomainError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
NEGATIVE_EIG_TOL = 1e-10
UNITARY_TOL = 1e-10

PAULI_I = np.eye(2, dtype=complex)
PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


# ---------------------------------------------------------------------------
# states and ensembles


def check_density(rho, name: str = "density matrix") -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or rho.shape[0] == 0:
        raise DomainError(f"{name} must be a non-empty square matrix, got shape {rho.shape}")
    if np.abs(rho - rho.conj().T).max() > HERMITIAN_TOL:
        raise DomainError(f"{name} is not Hermitian")
    if abs(np.trace(rho) - 1.0) > TRACE_TOL:
        raise DomainError(f"{name} has trace {np.trace(rho).real:.15g}, expected 1")
    if np.linalg.eigvalsh(rho).min() < -NEGATIVE_EIG_TOL:
        raise DomainError(f"{name} is not positive semidefinite")
    return rho


def _dims(rho: np.ndarray, dims) -> tuple[int, int]:
    if dims is None:
        if rho.shape[0] != 4:
            raise DomainError("subsystem dimensions are required unless the state is two-qubit")
        return 2, 2
    da, db = (int(d) for d in dims)
    if da * db != rho.shape[0]:
        raise DomainError(f"dims {dims} do not factor a {rho.shape[0]}-dimensional state")
    return da, db


def ptrace(rho, dims, keep: int) -> np.ndarray:
    """Reduced state of subsystem ``keep`` (0 for A, 1 for B)."""
    da, db = dims
    r = np.asarray(rho).reshape(da, db, da, db)
    if keep == 0:
        return np.einsum("ajbj->ab", r)
    if keep == 1:
        return np.einsum("jajb->ab", r)
    raise DomainError(f"keep must be 0 or 1, got {keep}")


def swap_subsystems(rho, dims) -> np.ndarray:
    da, db = dims
    r = np.asarray(rho).reshape(da, db, da, db)
    return r.transpose(1, 0, 3, 2).reshape(da * db, da * db)


def ket(*amplitudes) -> np.ndarray:
    v = np.asarray(amplitudes, dtype=complex)
    return v / np.linalg.norm(v)


def projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def singlet() -> np.ndarray:
    return projector(ket(0, 1, -1, 0))


def classically_correlated() -> np.ndarray:
    """``(|00><00| + |11><11|) / 2``."""
    return np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)


def three_basis_state() -> np.ndarray:
    """Equal mixture of perfectly correlated product states along x, y and z.

    ``(1/6) sum_i (|0_i 0_i><0_i 0_i| + |1_i 1_i><1_i 1_i|)``: separable, with
    projective discord 1/3 bit.
    """
    rho = np.zeros((4, 4), dtype=complex)
    for op in (PAULI_X, PAULI_Y, PAULI_Z):
        _, vecs = np.linalg.eigh(op)
        for k in range(2):
            v = vecs[:, k]
            rho += projector(np.kron(v, v))
    return rho / 6.0


def random_density_matrix(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Hilbert-Schmidt random state ``G G^dag / tr(G G^dag)``."""
    g = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    rho = g @ g.conj().T
    rho = rho / np.trace(rho).real
    return 0.5 * (rho + rho.conj().T)


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    return unitary_group.rvs(dim, random_state=rng)


@dataclass(frozen=True)
class EncodingEnsemble:
    """Unitaries ``U_k`` applied to subsystem A with probabilities ``p_k``."""

    probabilities: tuple
    unitaries: tuple

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        us = [np.asarray(u, dtype=complex) for u in self.unitaries]
        if p.ndim != 1 or len(p) != len(us) or len(us) == 0:
            raise DomainError("need one probability per unitary and at least one unitary")
        if np.any(p < 0) or abs(p.sum() - 1.0) > 1e-12:
            raise DomainError(f"probabilities must be non-negative and sum to 1, got {p}")
        d = us[0].shape[0]
        for u in us:
            if u.shape != (d, d):
                raise DomainError("all unitaries must share one square shape")
            if np.abs(u @ u.conj().T - np.eye(d)).max() > UNITARY_TOL:
                raise DomainError("encoding operator is not unitary")
        object.__setattr__(self, "probabilities", tuple(float(x) for x in p))
        object.__setattr__(self, "unitaries", tuple(us))

    @property
    def dim(self) -> int:
        return self.unitaries[0].shape[0]

    def apply_local(self, states: np.ndarray) -> np.ndarray:
        """Average channel on (a batch of) states of A alone."""
        out = np.zeros_like(states, dtype=complex)
        for p, u in zip(self.probabilities, self.unitaries):
            out = out + p * (u @ states @ u.conj().T)
        return out

    def apply(self, rho, dims) -> np.ndarray:
        da, db = dims
        if da != self.dim:
            raise DomainError(f"unitaries act on dimension {self.dim}, subsystem A has {da}")
        out = np.zeros_like(rho, dtype=complex)
        for p, u in zip(self.probabilities, self.unitaries):
            full = np.kron(u, np.eye(db))
            out = out + p * (full @ rho @ full.conj().T)
        return out


def pauli_ensemble() -> EncodingEnsemble:
    """``{I, X, Z, XZ}`` with equal weights: a maximal encoding on a qubit."""
    return EncodingEnsemble((0.25,) * 4, (PAULI_I, PAULI_X, PAULI_Z, PAULI_X @ PAULI_Z))


def random_ensemble(n: int, dim: int, rng: np.random.Generator) -> EncodingEnsemble:
    p = rng.dirichlet(np.ones(n))
    p = p / p.sum()
    return EncodingEnsemble(tuple(p), tuple(random_unitary(dim, rng) for _ in range(n)))


def is_maximal_encoding(ensemble: EncodingEnsemble, dim_a: int | None = None,
                        tol: float = 1e-10) -> bool:
    """True iff the averaged channel maps every operator ``X`` to ``tr(X) I / d``.

    Checked on the matrix-unit basis, which spans all inputs.
    """
    d = ensemble.dim if dim_a is None else dim_a
    if d != ensemble.dim:
        raise DomainError(f"ensemble acts on dimension {ensemble.dim}, not {d}")
    for i in range(d):
        for j in range(d):
            e = np.zeros((d, d), dtype=complex)
            e[i, j] = 1.0
            target = np.eye(d) / d if i == j else np.zeros((d, d))
            if np.abs(ensemble.apply_local(e) - target).max() > tol:
                return False
    return True


# ---------------------------------------------------------------------------
# entropies


def _entropy_from_eigs(w: np.ndarray) -> np.ndarray:
    w = np.where(w > 0, w, 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(w > 0, -w * np.log2(np.where(w > 0, w, 1.0)), 0.0)
    return terms.sum(axis=-1)


def von_neumann_entropy(rho) -> float:
    """``-tr(rho log2 rho)`` in bits."""
    rho = check_density(rho)
    return float(_entropy_from_eigs(np.linalg.eigvalsh(rho)))


def _entropy(rho) -> float:
    return float(_entropy_from_eigs(np.linalg.eigvalsh(rho)))


def holevo_chi(probabilities: Sequence[float], states: Sequence[np.ndarray]) -> float:
    """``S(sum p_k rho_k) - sum p_k S(rho_k)`` in bits."""
    p = np.asarray(probabilities, dtype=float)
    if len(p) != len(states) or abs(p.sum() - 1.0) > 1e-12 or np.any(p < 0):
        raise DomainError("probabilities must be a distribution matching the states")
    states = [check_density(s) for s in states]
    avg = sum(pk * s for pk, s in zip(p, states))
    return von_neumann_entropy(avg) - float(sum(pk * von_neumann_entropy(s) for pk, s in zip(p, states)))


def mutual_information(rho, dims=None) -> float:
    rho = check_density(rho)
    dims = _dims(rho, dims)
    return _entropy(ptrace(rho, dims, 0)) + _entropy(ptrace(rho, dims, 1)) - _entropy(rho)


@dataclass(frozen=True)
class EncodingResult:
    state: np.ndarray
    i0: float
    delta_q: float
    mutual_information_before: float
    mutual_information_after: float


def apply_encoding(rho, ensemble: EncodingEnsemble, dims=None) -> EncodingResult:
    """Encoded mixture, the A-only information ``I0`` and ``Delta_q = I - I~``."""
    rho = check_density(rho)
    dims = _dims(rho, dims)
    enc = ensemble.apply(rho, dims)
    i0 = _entropy(ptrace(enc, dims, 0)) - _entropy(ptrace(rho, dims, 0))
    mi = mutual_information(rho, dims)
    mi_t = mutual_information(enc, dims)
    return EncodingResult(enc, i0, mi - mi_t, mi, mi_t)


# ---------------------------------------------------------------------------
# projective-measurement optimisation


@dataclass(frozen=True)
class OptimizerSettings:
    """Search settings for the projective-measurement optimisation.

    ``n_grid`` Fibonacci directions are scanned for a qubit measured
    subsystem; the ``n_refine`` best are polished by Nelder-Mead. Larger
    subsystems use ``n_starts`` seeded random starts instead of the grid.
    """

    n_grid: int = 400
    n_refine: int = 5
    n_starts: int = 8
    max_iter: int = 400
    xatol: float = 1e-8
    fatol: float = 1e-12
    seed: int = 0


DEFAULT_SETTINGS = OptimizerSettings()


def fibonacci_sphere(n: int) -> np.ndarray:
    """``n`` near-uniform unit vectors, returned as ``(theta, phi)`` angles."""
    k = np.arange(n) + 0.5
    theta = np.arccos(1.0 - 2.0 * k / n)
    phi = np.pi * (1.0 + np.sqrt(5.0)) * k
    return np.column_stack([theta, np.mod(phi, 2 * np.pi)])


def qubit_basis(theta, phi) -> np.ndarray:
    """Eigenbasis of ``n . sigma`` as the columns of a (batch of) 2x2 unitaries."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    e = np.exp(1j * phi)
    u = np.empty(theta.shape + (2, 2), dtype=complex)
    u[..., 0, 0] = c
    u[..., 1, 0] = e * s
    u[..., 0, 1] = s
    u[..., 1, 1] = -e * c
    return u


def _unitary_from_params(x: np.ndarray, d: int) -> np.ndarray:
    h = np.zeros((d, d), dtype=complex)
    iu = np.triu_indices(d, 1)
    k = len(iu[0])
    h[iu] = x[:k] + 1j * x[k : 2 * k]
    h = h + h.conj().T
    h[np.diag_indices(d)] = x[2 * k :]
    return expm(1j * h)


def conditional_states(rho, dims, measured: int, bases: np.ndarray):
    """Outcome probabilities and post-measurement states of the unmeasured side.

    ``bases`` has shape ``(..., d, d)``; column ``b`` is the measured vector.
    Returns ``q`` of shape ``(..., d)`` and unnormalised-safe normalised states
    of shape ``(..., d, d_other, d_other)`` (zero where ``q == 0``).
    """
    da, db = dims
    r = np.asarray(rho).reshape(da, db, da, db)
    if measured == 1:
        # <b|_B rho |b>_B
        sub = np.einsum("aibj,...ik,...jk->...kab", r, bases.conj(), bases)
    elif measured == 0:
        sub = np.einsum("iajb,...ik,...jk->...kab", r, bases.conj(), bases)
    else:
        raise DomainError(f"measured subsystem must be 0 or 1, got {measured}")
    q = np.real(np.einsum("...kaa->...k", sub))
    safe = np.where(q > 1e-15, q, 1.0)
    states = sub / safe[..., None, None]
    states = np.where((q > 1e-15)[..., None, None], states, 0.0)
    return q, states


def average_conditional_entropy(rho, dims, measured: int, bases: np.ndarray,
                                channel: Callable | None = None) -> np.ndarray:
    """``sum_b q_b S(channel(rho_{other|b}))`` for each basis in the batch."""
    q, states = conditional_states(rho, dims, measured, bases)
    if channel is not None:
        states = channel(states)
    states = 0.5 * (states + np.conj(np.swapaxes(states, -1, -2)))
    ent = _entropy_from_eigs(np.linalg.eigvalsh(states))
    return np.sum(q * ent, axis=-1)


@dataclass(frozen=True)
class MeasurementOptimum:
    value: float
    basis: np.ndarray


def optimize_measurement(objective: Callable[[np.ndarray], np.ndarray], d: int,
                         settings: OptimizerSettings = DEFAULT_SETTINGS) -> MeasurementOptimum:
    """Minimise ``objective`` over orthonormal bases of a ``d``-dimensional system.

    ``objective`` takes a batch of bases ``(k, d, d)`` and returns ``(k,)`` values.
    """
    if d == 2:
        angles = fibonacci_sphere(settings.n_grid)
        vals = objective(qubit_basis(angles[:, 0], angles[:, 1]))
        order = np.argsort(vals, kind="stable")[: settings.n_refine]
        best_val = float(vals[order[0]])
        best_x = angles[order[0]]

        def f(x):
            return float(objective(qubit_basis(x[:1], x[1:]))[0])

        for i in order:
            res = minimize(f, angles[i], method="Nelder-Mead",
                           options=dict(xatol=settings.xatol, fatol=settings.fatol,
                                        maxiter=settings.max_iter, initial_simplex=_simplex(angles[i])))
            if res.fun < best_val:
                best_val, best_x = float(res.fun), res.x
        return MeasurementOptimum(best_val, qubit_basis(best_x[0], best_x[1]))

    rng = np.random.default_rng(settings.seed)
    n_par = d * d

    def f(x):
        return float(objective(_unitary_from_params(x, d)[None])[0])

    starts = [np.zeros(n_par)] + [rng.normal(scale=1.0, size=n_par) for _ in range(settings.n_starts - 1)]
    best_val, best_x = np.inf, starts[0]
    for x0 in starts:
        res = minimize(f, x0, method="Nelder-Mead",
                       options=dict(xatol=settings.xatol, fatol=settings.fatol,
                                    maxiter=settings.max_iter * n_par))
        if res.fun < best_val:
            best_val, best_x = float(res.fun), res.x
    return MeasurementOptimum(best_val, _unitary_from_params(best_x, d))


def _simplex(x0: np.ndarray, step: float = 0.05) -> np.ndarray:
    return np.array([x0, x0 + [step, 0.0], x0 + [0.0, step]])


def classical_correlation_projective(rho, measured: int = 1, dims=None,
                                     settings: OptimizerSettings = DEFAULT_SETTINGS) -> float:
    """``J`` of the unmeasured side given a projective measurement on ``measured``.

    ``measured=1`` gives ``J(A|B)``, ``measured=0`` gives ``J(B|A)``.
    """
    rho = check_density(rho)
    dims = _dims(rho, dims)
    s_other = _entropy(ptrace(rho, dims, 1 - measured))
    opt = optimize_measurement(lambda b: average_conditional_entropy(rho, dims, measured, b),
                               dims[measured], settings)
    return max(s_other - opt.value, 0.0)


@dataclass(frozen=True)
class DiscordReport:
    mutual_information: float
    j_ab: float
    j_ba: float

    @property
    def discord_ab(self) -> float:
        """``delta(A|B)``: B measured."""
        return self.mutual_information - self.j_ab

    @property
    def discord_ba(self) -> float:
        return self.mutual_information - self.j_ba


def discord_report(rho, dims=None, settings: OptimizerSettings = DEFAULT_SETTINGS) -> DiscordReport:
    rho = check_density(rho)
    dims = _dims(rho, dims)
    return DiscordReport(
        mutual_information(rho, dims),
        classical_correlation_projective(rho, 1, dims, settings),
        classical_correlation_projective(rho, 0, dims, settings),
    )


def discord_fd(rho, measured: int = 1, dims=None,
               settings: OptimizerSettings = DEFAULT_SETTINGS) -> float:
    """Projective discord ``I - J`` with the measurement on subsystem ``measured``."""
    rho = check_density(rho)
    dims = _dims(rho, dims)
    return mutual_information(rho, dims) - classical_correlation_projective(rho, measured, dims, settings)


# ---------------------------------------------------------------------------
# decoding bounds


@dataclass(frozen=True)
class IncoherentBound:
    """Single-local-measurement information about the encoded label.

    ``b_first`` is achievable (B measured, then A); ``a_first`` is an upper
    bound for measuring A first: ``I0 + J(B|A)``, capped by the coherent
    Holevo quantity ``I_q`` that no single-measurement strategy can exceed.
    ``value`` is the larger.
    """

    b_first: float
    a_first: float

    @property
    def value(self) -> float:
        return max(self.b_first, self.a_first)


def incoherent_bound_fd(rho, ensemble: EncodingEnsemble, dims=None,
                        settings: OptimizerSettings = DEFAULT_SETTINGS) -> IncoherentBound:
    rho = check_density(rho)
    dims = _dims(rho, dims)

    def neg_gain(bases):
        encoded = average_conditional_entropy(rho, dims, 1, bases, ensemble.apply_local)
        plain = average_conditional_entropy(rho, dims, 1, bases)
        return plain - encoded

    b_first = -optimize_measurement(neg_gain, dims[1], settings).value
    enc = ensemble.apply(rho, dims)
    i0 = _entropy(ptrace(enc, dims, 0)) - _entropy(ptrace(rho, dims, 0))
    j_ba = classical_correlation_projective(rho, 0, dims, settings)
    i_q = _entropy(enc) - _entropy(rho)
    return IncoherentBound(max(b_first, 0.0), min(i0 + j_ba, max(i_q, 0.0)))


@dataclass(frozen=True)
class BoundReport:
    """Quantities entering ``Delta_delta - J~ <= Delta_I <= Delta_delta``."""

    i_q: float
    i_c: float
    i0: float
    discord_before: float
    discord_after: float
    j_tilde: float
    swapped: bool
    tol: float

    @property
    def delta_i(self) -> float:
        return self.i_q - self.i_c

    @property
    def delta_discord(self) -> float:
        return self.discord_before - self.discord_after

    @property
    def lower(self) -> float:
        return self.delta_discord - self.j_tilde

    @property
    def lower_ok(self) -> bool:
        return self.lower - self.tol <= self.delta_i

    @property
    def upper_ok(self) -> bool:
        return self.delta_i <= self.delta_discord + self.tol

    def as_dict(self) -> dict:
        return dict(i_q=self.i_q, i_c=self.i_c, i0=self.i0, delta_i=self.delta_i,
                    discord_before=self.discord_before, discord_after=self.discord_after,
                    delta_discord=self.delta_discord, j_tilde=self.j_tilde,
                    lower_ok=self.lower_ok, upper_ok=self.upper_ok, swapped=self.swapped)


def bound_check(rho, ensemble: EncodingEnsemble, dims=None,
                settings: OptimizerSettings = DEFAULT_SETTINGS, tol: float = 1e-3,
                relabel: bool = True) -> BoundReport:
    """Evaluate both sides of the discord bound on the advantage of coherent decoding.

    With ``relabel`` the subsystems are swapped first when needed so that
    ``delta(A|B) <= delta(B|A)``; the encoding then acts on the new A.
    """
    rho = check_density(rho)
    dims = _dims(rho, dims)
    mi = mutual_information(rho, dims)
    j_ab = classical_correlation_projective(rho, 1, dims, settings)
    j_ba = classical_correlation_projective(rho, 0, dims, settings)
    swapped = False
    if relabel and mi - j_ab > mi - j_ba:
        rho = swap_subsystems(rho, dims)
        dims = (dims[1], dims[0])
        j_ab, j_ba = j_ba, j_ab
        swapped = True

    enc = ensemble.apply(rho, dims)
    mi_t = mutual_information(enc, dims)
    j_t = classical_correlation_projective(enc, 1, dims, settings)
    i_q = _entropy(enc) - _entropy(rho)
    inc = incoherent_bound_fd(rho, ensemble, dims, settings)
    i0 = _entropy(ptrace(enc, dims, 0)) - _entropy(ptrace(rho, dims, 0))
    return BoundReport(
        i_q=i_q,
        i_c=inc.value,
        i0=i0,
        discord_before=mi - j_ab,
        discord_after=mi_t - j_t,
        j_tilde=j_t,
        swapped=swapped,
        tol=tol,
    )
