"""Discriminant evaluation, label assignment, loss, and training.

The classification score of an event is the probability of measuring an
even-parity bitstring on the measured qubits after the full classifier
circuit, i.e. the expectation of the projector onto the +1 eigenspace of
the parity observable. Exact mode computes it from the statevector
marginal; sampled mode emulates finite shots with optional readout noise
and mitigation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circuits import CircuitConfig, assemble_classifier_circuit, param_count
from .errors import ConfigError, ShapeError
from .noise import (
    CalibrationMatrix,
    ReadoutNoiseModel,
    apply_readout_noise,
    build_calibration_matrix,
    mitigate,
)
from .optimizer import SpsaConfig, spsa_minimize
from .simcore import apply_circuit, marginal_distribution, new_state, sample_counts

# Sub-stream tags for deriving per-purpose seeds from one master seed.
_STREAM_THETA0 = 0
_STREAM_SPSA = 1
_STREAM_TRAIN_EVAL = 2
_STREAM_SCORING = 3


@dataclass(frozen=True)
class ClassifierModel:
    """Trained circuit parameters plus the decision threshold."""

    config: CircuitConfig
    theta: np.ndarray
    threshold: float = 0.5

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=np.float64).reshape(-1)
        expected = param_count(self.config)
        if theta.size != expected:
            raise ShapeError(f"theta must have length {expected}, got {theta.size}")
        if not 0.0 < self.threshold < 1.0:
            raise ValueError(f"threshold must lie in (0, 1), got {self.threshold}")
        object.__setattr__(self, "theta", theta)


@dataclass(frozen=True)
class EvalMode:
    """How discriminants are evaluated: exact statevector marginals or
    finite shots, optionally with readout noise and mitigation."""

    kind: str
    shots: int | None = None
    noise: ReadoutNoiseModel | None = None
    mitigation: bool = False
    calibration: CalibrationMatrix | None = None

    def __post_init__(self):
        if self.kind not in ("exact", "sampled"):
            raise ConfigError(f"eval mode must be 'exact' or 'sampled', got {self.kind!r}")
        if self.kind == "sampled":
            if self.shots is None or self.shots < 1:
                raise ConfigError("sampled mode requires shots >= 1")
        elif self.noise is not None or self.mitigation:
            raise ConfigError("noise and mitigation apply to sampled mode only")
        if self.mitigation and self.noise is None and self.calibration is None:
            raise ConfigError("mitigation requires a noise model or a calibration matrix")

    @classmethod
    def exact(cls) -> "EvalMode":
        return cls("exact")

    @classmethod
    def sampled(cls, shots: int, noise=None, mitigation=False, calibration=None) -> "EvalMode":
        return cls("sampled", shots=shots, noise=noise, mitigation=mitigation,
                   calibration=calibration)


@lru_cache(maxsize=None)
def _even_parity_mask(m: int) -> np.ndarray:
    bits = np.arange(1 << m, dtype=np.uint32)
    ones = np.zeros(1 << m, dtype=np.uint32)
    for shift in range(m):
        ones += (bits >> shift) & 1
    mask = (ones % 2) == 0
    mask.setflags(write=False)
    return mask


def _derived_seed(*key: int) -> int:
    return int(np.random.SeedSequence(tuple(int(k) for k in key)).generate_state(1)[0])


def _calibration_matrices(mode: EvalMode, measured) -> tuple[CalibrationMatrix | None,
                                                             CalibrationMatrix | None]:
    """(forward-noise matrix, mitigation matrix) for this measured register."""
    forward = None
    if mode.noise is not None:
        forward = build_calibration_matrix(mode.noise, measured)
    mitigator = None
    if mode.mitigation:
        mitigator = mode.calibration if mode.calibration is not None else forward
    return forward, mitigator


def _score(x, model: ClassifierModel, mode: EvalMode, seed: int,
           forward: CalibrationMatrix | None,
           mitigator: CalibrationMatrix | None) -> float:
    circuit, measured = assemble_classifier_circuit(x, model.theta, model.config)
    state = apply_circuit(new_state(model.config.n_qubits), circuit)
    dist = marginal_distribution(state, measured)
    even = _even_parity_mask(len(measured))

    if mode.kind == "exact":
        p = float(dist.probs[even].sum())
    else:
        if forward is not None:
            dist = apply_readout_noise(dist, forward)
        counts = sample_counts(dist, mode.shots, seed)
        if mitigator is not None:
            p = float(mitigate(counts, mitigator).probs[even].sum())
        else:
            p = float(counts.counts[even].sum()) / mode.shots
    return min(max(p, 0.0), 1.0)


def discriminant(x, model: ClassifierModel, mode: EvalMode, seed: int = 0) -> float:
    """Even-parity probability for one event, in [0, 1]."""
    forward, mitigator = _calibration_matrices(
        mode, tuple(range(0, model.config.n_qubits, 2))
    )
    return _score(x, model, mode, seed, forward, mitigator)


def predict(score: float, model: ClassifierModel) -> int:
    """1 (signal) iff the score exceeds the threshold; ties go to 0."""
    return 1 if score > model.threshold else 0


def score_events(X, model: ClassifierModel, mode: EvalMode, seed: int = 0) -> np.ndarray:
    """Discriminants for a batch of events, one derived seed per event."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2 or X.shape[1] != model.config.n_qubits:
        raise ShapeError(
            f"X must be (n_events, {model.config.n_qubits}), got {X.shape}"
        )
    forward, mitigator = _calibration_matrices(
        mode, tuple(range(0, model.config.n_qubits, 2))
    )
    scores = np.empty(X.shape[0])
    for i, x in enumerate(X):
        event_seed = 0
        if mode.kind == "sampled":
            event_seed = _derived_seed(seed, _STREAM_SCORING, i)
        scores[i] = _score(x, model, mode, event_seed, forward, mitigator)
    return scores


def empirical_loss(X, y, model: ClassifierModel, mode: EvalMode, seed: int = 0) -> float:
    """Mean probability of parity misassignment over the dataset:
    ``mean(y * (1 - p) + (1 - y) * p)``."""
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("dataset must be non-empty")
    if y.shape != (X.shape[0],):
        raise ShapeError(f"labels shape {y.shape} does not match {X.shape[0]} events")
    p = score_events(X, model, mode, seed)
    return float(np.mean(np.where(y == 1, 1.0 - p, p)))


def train(
    X,
    y,
    config: CircuitConfig,
    spsa_cfg: SpsaConfig,
    mode: EvalMode,
    seed: int = 0,
    theta0=None,
) -> tuple[ClassifierModel, list[tuple[int, float]]]:
    """Fit the variational angles with SPSA on the empirical loss.

    Returns the last-iterate model and the per-iteration loss history.
    ``theta0`` defaults to a seeded uniform draw from [-pi, pi). Fully
    deterministic for a fixed seed; in sampled mode every objective
    evaluation and event gets its own derived seed.
    """
    X = np.asarray(X, dtype=np.float64)
    y = np.asarray(y)
    if X.ndim != 2 or X.shape[0] == 0:
        raise ValueError("training set must be non-empty")
    if X.shape[1] != config.n_qubits:
        raise ShapeError(
            f"feature width {X.shape[1]} does not match {config.n_qubits} qubits"
        )

    n_params = param_count(config)
    if theta0 is None:
        init_rng = np.random.default_rng(_derived_seed(seed, _STREAM_THETA0))
        theta0 = init_rng.uniform(-np.pi, np.pi, size=n_params)
    theta0 = np.asarray(theta0, dtype=np.float64).reshape(-1)
    if theta0.size != n_params:
        raise ShapeError(f"theta0 must have length {n_params}, got {theta0.size}")

    eval_counter = 0

    def objective(theta: np.ndarray) -> float:
        nonlocal eval_counter
        eval_seed = (
            _derived_seed(seed, _STREAM_TRAIN_EVAL, eval_counter)
            if mode.kind == "sampled"
            else 0
        )
        eval_counter += 1
        model = ClassifierModel(config, theta)
        return empirical_loss(X, y, model, mode, eval_seed)

    theta_final, history = spsa_minimize(
        objective, theta0, spsa_cfg, _derived_seed(seed, _STREAM_SPSA)
    )
    return ClassifierModel(config, theta_final), history
