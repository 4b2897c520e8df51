"""Experimental-imperfection model of the interference setup.

The bipartite state is written as a linear map from eight independent unit
normal inputs (two signals, two classical noises, four vacua) onto the four
beam quadratures. The coefficient matrix ``v_hat`` (inputs x quadratures) has
the column order ``(A_X, A_Y, B_X, B_Y)`` with A the encoded beam, and
``C0 = v_hat^T v_hat``.

Returned covariance matrices use the package mode order instead: reference
beam B is mode 0, encoded beam A is mode 1, so an ideal configuration gives
exactly ``encode_signal(resource_state(V), V_s)``.

Propagation keeps the linear map rather than only its covariance, so the
coupling of every output to the signal inputs stays available and mutual
informations are exact Gaussian expressions.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path

import numpy as np

from .errors import DomainError, OutOfModelError
from .gaussian import ModeTransform, require_physical

# experimental constants
LOSS_QUADRATIC = 1e-4
LOSS_QUARTIC = 3e-5
ETA_INTERFERENCE = 0.48
HOMODYNE_EFFICIENCY = 0.91

# appendix column order -> package mode order
_TO_PACKAGE = [2, 3, 0, 1]

INPUT_LABELS = ("signal_x", "signal_y", "noise_x", "noise_y",
                "vac_A_X", "vac_A_Y", "vac_B_X", "vac_B_Y")

_IDENTITY = ((1.0, 0.0), (0.0, 1.0))


def _matrix2(value, name):
    arr = np.asarray(value, dtype=float)
    if arr.shape != (2, 2) or not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be a finite 2x2 array, got {value!r}")
    return tuple(tuple(float(x) for x in row) for row in arr)


def _pair(value, name):
    arr = np.asarray(value, dtype=float)
    if arr.shape != (2,) or not np.all(np.isfinite(arr)):
        raise DomainError(f"{name} must be a pair of finite numbers, got {value!r}")
    return tuple(float(x) for x in arr)


@dataclass(frozen=True)
class ImperfectionConfig:
    """Coefficients of the imperfection model.

    ``eta_A[0]`` holds ``(eta_XX, eta_YX)``, the couplings of the X signal
    into the X and Y quadratures of beam A; ``eta_A[1]`` holds
    ``(eta_XY, eta_YY)`` for the Y signal. ``beta_A`` and ``beta_B`` follow the
    same layout for the classical noise; the Y noise enters beam B with the
    opposite sign, which is applied during assembly. The ``beta`` entries are
    relative couplings: the noise standard deviation ``sigma_n`` carries the
    discording noise, ``sigma_n**2 = V``.

    ``sigma_s`` and ``sigma_n`` are normally left ``None`` and filled in by
    :meth:`at`.
    """

    eta_A: tuple = _IDENTITY
    beta_A: tuple = _IDENTITY
    beta_B: tuple = _IDENTITY
    xi_A: tuple = (1.0, 1.0)
    xi_B: tuple = (1.0, 1.0)
    loss_quadratic: float = LOSS_QUADRATIC
    loss_quartic: float = LOSS_QUARTIC
    eta_interference: float = ETA_INTERFERENCE
    phase_A_minus_B: float = 0.0
    homodyne_efficiency_A: float = HOMODYNE_EFFICIENCY
    homodyne_efficiency_B: float = HOMODYNE_EFFICIENCY
    locking_angle_A: float = 0.0
    locking_angle_B: float = np.pi / 2
    sigma_s: float | None = None
    sigma_n: float | None = None
    sigma_v: float = 1.0

    def __post_init__(self):
        for name in ("eta_A", "beta_A", "beta_B"):
            object.__setattr__(self, name, _matrix2(getattr(self, name), name))
        for name in ("xi_A", "xi_B"):
            pair = _pair(getattr(self, name), name)
            if min(pair) < 1.0:
                raise DomainError(f"{name} are excess-noise factors and must be >= 1, got {pair}")
            object.__setattr__(self, name, pair)
        for name in ("eta_interference", "homodyne_efficiency_A", "homodyne_efficiency_B"):
            val = float(getattr(self, name))
            if not 0.0 <= val <= 1.0:
                raise DomainError(f"{name} is a transmission and must lie in [0, 1], got {val}")
            object.__setattr__(self, name, val)
        for name in ("loss_quadratic", "loss_quartic"):
            val = float(getattr(self, name))
            if not np.isfinite(val) or val < 0:
                raise DomainError(f"{name} must be finite and non-negative, got {val}")
            object.__setattr__(self, name, val)
        for name in ("phase_A_minus_B", "locking_angle_A", "locking_angle_B"):
            val = float(getattr(self, name))
            if not np.isfinite(val):
                raise DomainError(f"{name} must be finite, got {val}")
            object.__setattr__(self, name, val)
        if self.sigma_v != 1.0:
            raise DomainError("sigma_v is fixed to 1 in shot-noise units")
        for name in ("sigma_s", "sigma_n"):
            val = getattr(self, name)
            if val is not None and (not np.isfinite(val) or val < 0):
                raise DomainError(f"{name} must be a non-negative standard deviation, got {val}")

    @classmethod
    def ideal(cls) -> "ImperfectionConfig":
        """Perfect couplings, no loss, balanced interference, unit detection efficiency."""
        return cls(loss_quadratic=0.0, loss_quartic=0.0, eta_interference=0.5,
                   homodyne_efficiency_A=1.0, homodyne_efficiency_B=1.0)

    def at(self, v: float, vs: float) -> "ImperfectionConfig":
        """Copy with input standard deviations set from ``V`` and ``V_s``."""
        if v < 0 or vs < 0:
            raise DomainError(f"V and V_s must be non-negative, got {v}, {vs}")
        return replace(self, sigma_n=float(np.sqrt(v)), sigma_s=float(np.sqrt(vs)))

    def to_dict(self) -> dict:
        d = asdict(self)
        for key in ("eta_A", "beta_A", "beta_B"):
            d[key] = [list(row) for row in d[key]]
        for key in ("xi_A", "xi_B"):
            d[key] = list(d[key])
        for key in ("sigma_s", "sigma_n"):
            if d[key] is None:
                del d[key]
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "ImperfectionConfig":
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise DomainError(f"unknown imperfection config keys: {sorted(unknown)}")
        return cls(**data)


def load_config(path) -> ImperfectionConfig:
    """Read a JSON imperfection config. Missing keys take the documented defaults."""
    with open(Path(path), encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise DomainError(f"{path}: top-level JSON value must be an object")
    return ImperfectionConfig.from_dict(data)


def _require_sigmas(cfg: ImperfectionConfig):
    if cfg.sigma_s is None or cfg.sigma_n is None:
        raise DomainError("config has no input standard deviations; use cfg.at(V, V_s)")
    return cfg.sigma_s, cfg.sigma_n, cfg.sigma_v


def assemble_v_hat(cfg: ImperfectionConfig) -> np.ndarray:
    """8x4 coefficient matrix, columns ``(A_X, A_Y, B_X, B_Y)``."""
    s, n, vac = _require_sigmas(cfg)
    (exx, eyx), (exy, eyy) = cfg.eta_A
    (axx, ayx), (axy, ayy) = cfg.beta_A
    (bxx, byx), (bxy, byy) = cfg.beta_B
    return np.array([
        [exx * s, eyx * s, 0.0, 0.0],
        [exy * s, eyy * s, 0.0, 0.0],
        [axx * n, ayx * n, bxx * n, byx * n],
        [axy * n, ayy * n, bxy * n, -byy * n],
        [cfg.xi_A[0] * vac, 0.0, 0.0, 0.0],
        [0.0, cfg.xi_A[1] * vac, 0.0, 0.0],
        [0.0, 0.0, cfg.xi_B[0] * vac, 0.0],
        [0.0, 0.0, 0.0, cfg.xi_B[1] * vac],
    ])


@dataclass(frozen=True)
class Amplitudes:
    """Quadratures as linear combinations of independent unit-variance inputs.

    ``matrix[q, j]`` is the coefficient of input ``j`` in quadrature ``q``;
    inputs 0 and 1 are the X and Y signals. Rows follow the package mode order.
    """

    matrix: np.ndarray
    labels: tuple = field(default=INPUT_LABELS)

    @property
    def covariance(self) -> np.ndarray:
        c = self.matrix @ self.matrix.T
        return 0.5 * (c + c.T)

    def transform(self, t: ModeTransform) -> "Amplitudes":
        n = self.matrix.shape[0] // 2
        return Amplitudes(t.symplectic(n) @ self.matrix, self.labels)

    def attenuate(self, mode: int, eta: float, tag: str) -> "Amplitudes":
        """Mix ``mode`` with fresh vacuum at transmission ``eta``."""
        if not 0.0 <= eta <= 1.0:
            raise DomainError(f"transmission must lie in [0, 1], got {eta}")
        rows = slice(2 * mode, 2 * mode + 2)
        m = self.matrix.copy()
        m[rows] *= np.sqrt(eta)
        extra = np.zeros((m.shape[0], 2))
        extra[rows] = np.sqrt(1.0 - eta) * np.eye(2)
        return Amplitudes(np.hstack([m, extra]), self.labels + (f"{tag}_X", f"{tag}_Y"))


def assemble_amplitudes(cfg: ImperfectionConfig) -> Amplitudes:
    return Amplitudes(assemble_v_hat(cfg).T[_TO_PACKAGE])


def assemble_C0(cfg: ImperfectionConfig) -> np.ndarray:
    """Covariance ``v_hat^T v_hat`` of the encoded bipartite state, package mode order."""
    return assemble_amplitudes(cfg).covariance


def nonlinear_loss_eta(sigma_s: float, quadratic: float = LOSS_QUADRATIC,
                       quartic: float = LOSS_QUARTIC) -> float:
    """Loss fraction of the encoding modulators at signal standard deviation ``sigma_s``."""
    if sigma_s < 0:
        raise DomainError(f"signal standard deviation must be non-negative, got {sigma_s}")
    loss = quadratic * sigma_s**2 + quartic * sigma_s**4
    if loss >= 1.0:
        raise OutOfModelError(f"nonlinear loss {loss:.4g} >= 1 at sigma_s = {sigma_s}")
    return float(loss)


@dataclass(frozen=True)
class Readout:
    """Detected outputs of one setup.

    ``signal_gain[k, j]`` is the covariance between output ``k`` and unit
    signal input ``j``; ``covariance`` is the covariance of the outputs.
    """

    amplitudes: Amplitudes
    rows: tuple
    names: tuple

    @property
    def outputs(self) -> np.ndarray:
        return self.amplitudes.matrix[list(self.rows)]

    @property
    def covariance(self) -> np.ndarray:
        o = self.outputs
        return o @ o.T

    @property
    def variances(self) -> np.ndarray:
        return np.diag(self.covariance).copy()

    @property
    def signal_gain(self) -> np.ndarray:
        return self.outputs[:, :2].copy()

    def mutual_information(self) -> float:
        """Gaussian mutual information (bits) between the two signals and the outputs."""
        return gaussian_channel_mi(self.covariance, self.signal_gain)


def gaussian_channel_mi(out_cov: np.ndarray, gain: np.ndarray) -> float:
    """``I(S; O)`` for unit-variance signals with ``Cov(O, S) = gain``."""
    noise = out_cov - gain @ gain.T
    sign_o, logdet_o = np.linalg.slogdet(out_cov)
    sign_n, logdet_n = np.linalg.slogdet(noise)
    if sign_o <= 0 or sign_n <= 0:
        raise DomainError("output covariance is singular; mutual information undefined")
    return float(0.5 * (logdet_o - logdet_n) / np.log(2.0))


def _check(amp: Amplitudes, stage: str):
    require_physical(amp.covariance, f"covariance after {stage}")


def propagate_setup(amplitudes: Amplitudes, cfg: ImperfectionConfig, coherent: bool = True,
                    check: bool = True) -> Readout:
    """Run the state through the measurement chain.

    Coherent: modulator loss on beam A, relative phase, interference beam
    splitter with beam A as first input, then on each output a locking-angle
    rotation, detector inefficiency and an X read-out. Detector A sits on the
    first beam-splitter output, detector B on the second.

    Incoherent: detector inefficiency on both beams and read-out of all four
    quadratures (X and Y measured in separate runs).
    """
    enc, ref = 1, 0
    amp = amplitudes
    if check:
        _check(amp, "state preparation")
    if not coherent:
        amp = amp.attenuate(enc, cfg.homodyne_efficiency_A, "det_A")
        amp = amp.attenuate(ref, cfg.homodyne_efficiency_B, "det_B")
        if check:
            _check(amp, "detection")
        return Readout(amp, (2, 3, 0, 1), ("A_X", "A_Y", "B_X", "B_Y"))

    sigma_s = cfg.sigma_s if cfg.sigma_s is not None else 0.0
    loss = nonlinear_loss_eta(sigma_s, cfg.loss_quadratic, cfg.loss_quartic)
    amp = amp.attenuate(enc, 1.0 - loss, "mod_loss")
    amp = amp.transform(ModeTransform.phase_shift((cfg.phase_A_minus_B, 0.0), (enc, ref)))
    amp = amp.transform(ModeTransform.beamsplitter(cfg.eta_interference, (enc, ref)))
    if check:
        _check(amp, "interference")
    # beam-splitter output 1 lands on mode `enc`, output 2 on mode `ref`
    amp = amp.transform(ModeTransform.phase_shift((cfg.locking_angle_A, cfg.locking_angle_B), (enc, ref)))
    amp = amp.attenuate(enc, cfg.homodyne_efficiency_A, "det_A")
    amp = amp.attenuate(ref, cfg.homodyne_efficiency_B, "det_B")
    if check:
        _check(amp, "detection")
    return Readout(amp, (2 * enc, 2 * ref), ("SX_measured", "SY_measured"))


def model_rates(cfg: ImperfectionConfig, v: float, vs: float) -> tuple[float, float]:
    """``(I_q_model, I_c_model)``: information on the signals under both setups, in bits."""
    cfg = cfg.at(v, vs)
    amp = assemble_amplitudes(cfg)
    i_q = propagate_setup(amp, cfg, coherent=True).mutual_information()
    i_c = propagate_setup(amp, cfg, coherent=False).mutual_information()
    return i_q, i_c
