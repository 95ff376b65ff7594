"""Per-qubit readout noise, calibration matrices, and mitigation.

The noise model is classical bit-flip confusion on each measured qubit:
``p01`` is the probability of reading 1 given a true 0 and ``p10`` of
reading 0 given a true 1. The joint calibration matrix is the tensor
product of the per-qubit 2x2 confusion matrices (column-stochastic,
``A[noisy, true]``), with the same bit packing as the simulator: bit ``i``
of an outcome index belongs to ``measured_qubits[i]``.

Mitigation solves the nonnegativity- and normalization-constrained least
squares problem ``min ||A p - f||`` over the probability simplex instead of
inverting ``A``, so it never returns negative quasi-probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Mapping

import numpy as np

from .errors import ConfigError, ShapeError, SolverError
from .simcore import Counts, OutcomeDistribution

_MAX_SOLVER_ITER = 10_000
_RESIDUAL_TOL = 1e-12


@dataclass(frozen=True)
class ReadoutNoiseModel:
    """Readout flip probabilities per qubit; each must lie in [0, 0.5)."""

    rates: Mapping[int, tuple[float, float]]

    def __post_init__(self):
        clean = {}
        for q, (p01, p10) in dict(self.rates).items():
            for p in (p01, p10):
                if not 0.0 <= p < 0.5:
                    raise ValueError(
                        f"readout error rate {p} for qubit {q} outside [0, 0.5)"
                    )
            clean[int(q)] = (float(p01), float(p10))
        object.__setattr__(self, "rates", clean)

    @classmethod
    def uniform(cls, p01: float, p10: float, qubits) -> "ReadoutNoiseModel":
        return cls({int(q): (p01, p10) for q in qubits})

    def confusion(self, qubit: int) -> np.ndarray:
        """2x2 column-stochastic confusion matrix for ``qubit``."""
        if qubit not in self.rates:
            raise ConfigError(f"no readout noise entry for qubit {qubit}")
        p01, p10 = self.rates[qubit]
        return np.array([[1.0 - p01, p10], [p01, 1.0 - p10]])


class CalibrationMatrix:
    """Column-stochastic map from true to noisy outcome distributions."""

    def __init__(self, matrix: np.ndarray):
        matrix = np.asarray(matrix, dtype=np.float64)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise ShapeError(f"calibration matrix must be square, got {matrix.shape}")
        m = int(matrix.shape[0]).bit_length() - 1
        if matrix.shape[0] != 1 << m:
            raise ShapeError(f"calibration matrix size {matrix.shape[0]} not 2**m")
        if matrix.min() < 0.0 or matrix.max() > 1.0:
            raise ValueError("calibration entries must lie in [0, 1]")
        col_sums = matrix.sum(axis=0)
        if np.max(np.abs(col_sums - 1.0)) > 1e-12:
            raise ValueError("calibration columns must each sum to 1")
        self.matrix = matrix
        self.m = m

    @cached_property
    def _max_singular_value(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))


def build_calibration_matrix(
    noise: ReadoutNoiseModel, measured_qubits
) -> CalibrationMatrix:
    """Tensor product of per-qubit confusion matrices over the measured
    register, bit ``i`` of the packed index = ``measured_qubits[i]``."""
    measured = tuple(int(q) for q in measured_qubits)
    if not measured:
        raise ValueError("measured_qubits must be non-empty")
    matrix = noise.confusion(measured[0])
    for q in measured[1:]:
        # later qubits occupy higher bits, hence the left kron factor
        matrix = np.kron(noise.confusion(q), matrix)
    return CalibrationMatrix(matrix)


def apply_readout_noise(
    dist: OutcomeDistribution, cal: CalibrationMatrix
) -> OutcomeDistribution:
    """Forward noise model: the distribution a noisy readout would produce."""
    if dist.probs.size != cal.matrix.shape[0]:
        raise ShapeError(
            f"distribution has {dist.probs.size} bins, matrix is {cal.matrix.shape}"
        )
    return OutcomeDistribution(dist.measured_qubits, cal.matrix @ dist.probs)


def project_to_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex."""
    v = np.asarray(v, dtype=np.float64)
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    rho = np.nonzero(u * np.arange(1, v.size + 1) > css)[0][-1]
    tau = css[rho] / (rho + 1.0)
    return np.maximum(v - tau, 0.0)


def _observed_frequencies(observed, dim: int) -> np.ndarray:
    if isinstance(observed, Counts):
        freqs = observed.frequencies
    elif isinstance(observed, OutcomeDistribution):
        freqs = observed.probs
    else:
        freqs = np.asarray(observed, dtype=np.float64)
    if freqs.shape != (dim,):
        raise ShapeError(f"observed has {freqs.shape} bins, matrix expects {dim}")
    return freqs


def mitigate(observed, cal: CalibrationMatrix) -> OutcomeDistribution:
    """Recover the pre-noise distribution from noisy counts or frequencies.

    ``observed`` may be ``Counts``, an ``OutcomeDistribution`` of noisy
    frequencies, or a plain frequency vector. Solved by projected gradient
    descent with fixed step 1/sigma_max(A)^2, stopping when the residual
    stops changing by more than 1e-12.
    """
    dim = cal.matrix.shape[0]
    freqs = _observed_frequencies(observed, dim)
    measured = getattr(observed, "measured_qubits", tuple(range(cal.m)))

    a = cal.matrix
    step = 1.0 / cal._max_singular_value**2
    p = project_to_simplex(freqs)
    residual = float(np.linalg.norm(a @ p - freqs))
    for _ in range(_MAX_SOLVER_ITER):
        grad = a.T @ (a @ p - freqs)
        p = project_to_simplex(p - step * grad)
        new_residual = float(np.linalg.norm(a @ p - freqs))
        if abs(residual - new_residual) < _RESIDUAL_TOL:
            residual = new_residual
            break
        residual = new_residual
    else:
        raise SolverError(
            f"mitigation did not converge in {_MAX_SOLVER_ITER} iterations "
            f"(residual {residual:.3e})",
            residual=residual,
        )
    return OutcomeDistribution(measured, p / p.sum())


def calibrate_empirical(
    noisy_sampler: Callable[[OutcomeDistribution, int, int], Counts],
    m: int,
    shots_per_state: int,
    seed: int,
) -> CalibrationMatrix:
    """Estimate the calibration matrix by preparing every basis state.

    ``noisy_sampler(dist, shots, seed)`` must return noisy counts for the
    given true distribution. Column ``t`` is the normalized histogram
    observed when preparing basis state ``t``; per-state seeds are derived
    from ``seed``.
    """
    if shots_per_state < 1:
        raise ValueError(f"shots_per_state must be >= 1, got {shots_per_state}")
    dim = 1 << m
    register = tuple(range(m))
    matrix = np.zeros((dim, dim))
    for t in range(dim):
        basis = np.zeros(dim)
        basis[t] = 1.0
        state_seed = int(np.random.SeedSequence((seed, t)).generate_state(1)[0])
        counts = noisy_sampler(
            OutcomeDistribution(register, basis), shots_per_state, state_seed
        )
        matrix[:, t] = counts.counts / counts.counts.sum()
    return CalibrationMatrix(matrix)
