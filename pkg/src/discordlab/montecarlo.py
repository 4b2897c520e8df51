"""Sampled simulation of the interference experiment.

Every run draws the independent Gaussian inputs (signals, discording noise,
vacua and any extra vacua introduced by losses), maps them through the same
linear optics used by :mod:`discordlab.imperfections`, and records the
encoder inputs next to the detected outputs. Mutual information is then
estimated from the empirical covariance with the Gaussian plug-in formula.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateDataError, DomainError
from .imperfections import ImperfectionConfig, assemble_amplitudes, model_rates, propagate_setup
from .protocol import incoherent_limit, practical_rates

MIN_SAMPLES = 1000
N_BATCHES = 10


@dataclass(frozen=True)
class SampleConfig:
    v: float = 10.0
    vs: float = 9.1
    n_samples: int = 10**6
    seed: int = 0
    imperfection: ImperfectionConfig | None = None
    partitions: int = 1

    def __post_init__(self):
        if self.n_samples < MIN_SAMPLES:
            raise DomainError(f"n_samples must be at least {MIN_SAMPLES}, got {self.n_samples}")
        if self.v < 0 or self.vs < 0:
            raise DomainError(f"V and V_s must be non-negative, got {self.v}, {self.vs}")
        if self.partitions < 1 or self.partitions > self.n_samples:
            raise DomainError(f"invalid partition count {self.partitions}")

    @property
    def optics(self) -> ImperfectionConfig:
        return self.imperfection if self.imperfection is not None else ImperfectionConfig.ideal()


@dataclass(frozen=True)
class Samples:
    """Per-run records: encoder inputs, both beams before interference, detector outputs.

    ``signal_unit`` holds the signal draws before scaling by ``sqrt(V_s)``;
    it carries the same information as ``signal`` and stays well defined at
    ``V_s = 0``.
    """

    signal: np.ndarray
    signal_unit: np.ndarray
    beams: np.ndarray
    outputs: np.ndarray
    input_labels: tuple = field(default=())

    @property
    def n_samples(self) -> int:
        return self.signal.shape[0]


def _draw(rng: np.random.Generator, n: int, m: int) -> np.ndarray:
    return rng.standard_normal((n, m))


def simulate_runs(cfg: SampleConfig) -> Samples:
    """Draw ``cfg.n_samples`` runs. Deterministic for a fixed seed and partition count."""
    optics = cfg.optics.at(cfg.v, cfg.vs)
    prep = assemble_amplitudes(optics)
    readout = propagate_setup(prep, optics, coherent=True)
    out_map = readout.outputs
    n_prep = prep.matrix.shape[1]
    # inputs that never reach an output (zero-loss vacua) are not sampled
    used = np.r_[np.arange(n_prep), n_prep + np.flatnonzero(np.any(out_map[:, n_prep:] != 0, axis=0))]
    out_map = out_map[:, used]
    labels = tuple(readout.amplitudes.labels[i] for i in used)

    if cfg.partitions == 1:
        z = _draw(np.random.default_rng(cfg.seed), cfg.n_samples, len(used))
    else:
        children = np.random.SeedSequence(cfg.seed).spawn(cfg.partitions)
        sizes = np.full(cfg.partitions, cfg.n_samples // cfg.partitions)
        sizes[: cfg.n_samples % cfg.partitions] += 1
        z = np.vstack([_draw(np.random.default_rng(s), int(k), len(used)) for s, k in zip(children, sizes)])

    signal = np.sqrt(cfg.vs) * z[:, :2]
    beams = z[:, :n_prep] @ prep.matrix.T
    outputs = z @ out_map.T
    return Samples(signal, z[:, :2].copy(), beams, outputs, labels)


@dataclass(frozen=True)
class MIEstimate:
    value: float
    std_error: float
    n_samples: int


def _plugin_mi(x: np.ndarray, y: np.ndarray) -> float:
    joint = np.cov(np.hstack([x, y]), rowvar=False)
    kx = x.shape[1]
    sx, lx = np.linalg.slogdet(joint[:kx, :kx])
    sy, ly = np.linalg.slogdet(joint[kx:, kx:])
    sj, lj = np.linalg.slogdet(joint)
    if min(sx, sy, sj) <= 0 or not np.isfinite(lx + ly + lj):
        raise DegenerateDataError("empirical covariance is singular")
    return float(0.5 * (lx + ly - lj) / np.log(2.0))


def estimate_mi_gaussian(x, y, n_batches: int = N_BATCHES) -> MIEstimate:
    """Gaussian plug-in mutual information (bits) between paired samples ``x`` and ``y``.

    The standard error is the batch-means estimate over ``n_batches``
    disjoint, contiguous batches.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    x = x[:, None] if x.ndim == 1 else x
    y = y[:, None] if y.ndim == 1 else y
    n = x.shape[0]
    if y.shape[0] != n:
        raise DomainError("x and y must have the same number of samples")
    if n < MIN_SAMPLES:
        raise DomainError(f"need at least {MIN_SAMPLES} paired samples, got {n}")
    value = _plugin_mi(x, y)
    edges = np.linspace(0, n, n_batches + 1).astype(int)
    batch = np.array([_plugin_mi(x[a:b], y[a:b]) for a, b in zip(edges[:-1], edges[1:])])
    std_error = float(np.std(batch, ddof=1) / np.sqrt(n_batches))
    return MIEstimate(value, std_error, n)


@dataclass(frozen=True)
class MCReport:
    estimate: MIEstimate
    analytic: float
    incoherent_limit: float

    @property
    def excess_over_incoherent(self) -> float:
        """``Delta I^exp = I_q^exp - I_c``."""
        return self.estimate.value - self.incoherent_limit

    @property
    def significance(self) -> float:
        return self.excess_over_incoherent / self.estimate.std_error

    @property
    def advantage_detected(self) -> bool:
        return self.significance > 3.0

    def as_dict(self) -> dict:
        return dict(mi_estimate=self.estimate.value, std_error=self.estimate.std_error,
                    n_samples=self.estimate.n_samples, analytic=self.analytic,
                    incoherent_limit=self.incoherent_limit,
                    excess_over_incoherent=self.excess_over_incoherent,
                    significance=self.significance, advantage_detected=self.advantage_detected)


def mc_protocol_check(cfg: SampleConfig) -> MCReport:
    """Compare the sampled coherent-decoding rate with theory and with ``I_c``."""
    samples = simulate_runs(cfg)
    est = estimate_mi_gaussian(samples.signal_unit, samples.outputs)
    if cfg.imperfection is None:
        analytic = practical_rates(cfg.v, cfg.vs)[0]
    else:
        analytic = model_rates(cfg.imperfection, cfg.v, cfg.vs)[0]
    return MCReport(est, analytic, incoherent_limit(cfg.v, cfg.vs))
