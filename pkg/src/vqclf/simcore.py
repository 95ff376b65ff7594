"""Dense statevector simulation of small qubit registers.

Supported gate set: H, RZ, RY, CZ. Conventions (fixed, all tests assume
them):

* qubit ``k`` is bit ``k`` (weight ``2**k``) of the basis index, so the
  amplitude at index 0 is |0...0> and index 1 is |q0=1, rest 0>;
* H = (1/sqrt 2) [[1, 1], [1, -1]];
* RZ(t) = diag(exp(-i t/2), exp(+i t/2));
* RY(t) = [[cos(t/2), -sin(t/2)], [sin(t/2), cos(t/2)]];
* CZ = diag(1, 1, 1, -1) (symmetric in its two qubits);
* measured bitstrings pack ``measured_qubits[0]`` as the least significant
  bit of the outcome index.

All operations are value-in/value-out; in-place updates happen only on
private copies.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels
from .errors import CapacityError, ShapeError

#: Hard cap on register size; 2**24 complex128 amplitudes = 256 MiB.
MAX_QUBITS = 24

GATE_KINDS = ("H", "RZ", "RY", "CZ")
_ROTATIONS = ("RZ", "RY")


@dataclass(frozen=True)
class GateOp:
    """One gate application: kind, target qubit(s), and angle if rotational."""

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        arity = 2 if self.kind == "CZ" else 1
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s), got {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise IndexError(f"negative qubit index in {self.qubits}")
        if self.kind == "CZ" and self.qubits[0] == self.qubits[1]:
            raise ValueError("CZ requires two distinct qubits")
        if self.kind in _ROTATIONS:
            if self.angle is None or not math.isfinite(self.angle):
                raise ValueError(f"{self.kind} requires a finite angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise ValueError(f"{self.kind} takes no angle")


@dataclass(frozen=True)
class Circuit:
    """Ordered gate sequence on a fixed-size register."""

    n_qubits: int
    ops: tuple[GateOp, ...]

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            if max(op.qubits) >= self.n_qubits:
                raise IndexError(
                    f"gate {op.kind} on {op.qubits} out of range for "
                    f"{self.n_qubits} qubits"
                )

    def __len__(self) -> int:
        return len(self.ops)


@dataclass
class StateVector:
    """Pure state of ``n_qubits`` qubits as 2**n complex amplitudes."""

    n_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes = np.ascontiguousarray(self.amplitudes, dtype=np.complex128)
        if self.amplitudes.shape != (1 << self.n_qubits,):
            raise ShapeError(
                f"expected {1 << self.n_qubits} amplitudes, got "
                f"{self.amplitudes.shape}"
            )
        norm = math.sqrt(float(np.vdot(self.amplitudes, self.amplitudes).real))
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"state not normalized (norm {norm!r})")


@dataclass(frozen=True)
class OutcomeDistribution:
    """Probabilities over bitstrings of the measured qubits."""

    measured_qubits: tuple[int, ...]
    probs: np.ndarray

    def __post_init__(self):
        object.__setattr__(
            self, "measured_qubits", tuple(int(q) for q in self.measured_qubits)
        )
        probs = np.asarray(self.probs, dtype=np.float64)
        if probs.shape != (1 << len(self.measured_qubits),):
            raise ShapeError(
                f"expected {1 << len(self.measured_qubits)} probabilities, "
                f"got {probs.shape}"
            )
        if probs.min(initial=0.0) < -1e-12:
            raise ValueError(f"negative probability {probs.min()}")
        probs = np.maximum(probs, 0.0)
        if abs(probs.sum() - 1.0) > 1e-10:
            raise ValueError(f"probabilities sum to {probs.sum()!r}, not 1")
        object.__setattr__(self, "probs", probs)


@dataclass(frozen=True)
class Counts:
    """Shot counts over bitstrings of the measured qubits."""

    measured_qubits: tuple[int, ...]
    counts: np.ndarray
    shots: int

    def __post_init__(self):
        object.__setattr__(
            self, "measured_qubits", tuple(int(q) for q in self.measured_qubits)
        )
        counts = np.asarray(self.counts, dtype=np.int64)
        if counts.shape != (1 << len(self.measured_qubits),):
            raise ShapeError(
                f"expected {1 << len(self.measured_qubits)} bins, got {counts.shape}"
            )
        if counts.min(initial=0) < 0:
            raise ValueError("negative count")
        if int(counts.sum()) != self.shots:
            raise ValueError(f"counts sum to {counts.sum()}, expected {self.shots}")
        object.__setattr__(self, "counts", counts)

    @property
    def frequencies(self) -> np.ndarray:
        return self.counts / float(self.shots)


def new_state(n_qubits: int) -> StateVector:
    """Return |0...0> on ``n_qubits`` qubits."""
    if not 1 <= n_qubits <= MAX_QUBITS:
        raise CapacityError(f"n_qubits must be in [1, {MAX_QUBITS}], got {n_qubits}")
    amps = np.zeros(1 << n_qubits, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(n_qubits, amps)


def _check_indices(op: GateOp, n_qubits: int) -> None:
    if max(op.qubits) >= n_qubits:
        raise IndexError(
            f"gate {op.kind} on {op.qubits} out of range for {n_qubits} qubits"
        )


def _apply_inplace(amps: np.ndarray, op: GateOp) -> None:
    if op.kind == "H":
        kernels.apply_h(amps, op.qubits[0])
    elif op.kind == "RZ":
        p0 = cmath.exp(-0.5j * op.angle)
        kernels.apply_phase(amps, op.qubits[0], p0, p0.conjugate())
    elif op.kind == "RY":
        half = 0.5 * op.angle
        kernels.apply_ry(amps, op.qubits[0], math.cos(half), math.sin(half))
    else:  # CZ
        kernels.apply_cz(amps, op.qubits[0], op.qubits[1])


def apply_gate(state: StateVector, gate: GateOp) -> StateVector:
    """Apply one gate, returning a new state."""
    _check_indices(gate, state.n_qubits)
    amps = state.amplitudes.copy()
    _apply_inplace(amps, gate)
    return StateVector(state.n_qubits, amps)


def apply_circuit(state: StateVector, circuit: Circuit) -> StateVector:
    """Apply a circuit's gates in sequence, returning a new state."""
    if circuit.n_qubits != state.n_qubits:
        raise ShapeError(
            f"circuit is on {circuit.n_qubits} qubits, state on {state.n_qubits}"
        )
    amps = state.amplitudes.copy()
    for op in circuit.ops:
        _apply_inplace(amps, op)
    return StateVector(state.n_qubits, amps)


def simulate(circuit: Circuit) -> StateVector:
    """Run ``circuit`` from |0...0>."""
    return apply_circuit(new_state(circuit.n_qubits), circuit)


def marginal_distribution(
    state: StateVector, measured_qubits: tuple[int, ...] | list[int]
) -> OutcomeDistribution:
    """Exact outcome distribution over the measured qubits.

    Outcome index packs ``measured_qubits[0]`` as its least significant bit.
    """
    measured = tuple(int(q) for q in measured_qubits)
    if not measured:
        raise ValueError("measured_qubits must be non-empty")
    if len(set(measured)) != len(measured):
        raise IndexError(f"duplicate measured qubit in {measured}")
    if min(measured) < 0 or max(measured) >= state.n_qubits:
        raise IndexError(f"measured qubit out of range in {measured}")

    p_full = state.amplitudes.real**2 + state.amplitudes.imag**2
    full = np.arange(p_full.size, dtype=np.int64)
    out_idx = np.zeros_like(full)
    for i, q in enumerate(measured):
        out_idx |= ((full >> q) & 1) << i
    probs = np.bincount(out_idx, weights=p_full, minlength=1 << len(measured))
    return OutcomeDistribution(measured, probs)


def sample_counts(dist: OutcomeDistribution, shots: int, seed: int) -> Counts:
    """Multinomial shot sampling from ``dist``; deterministic per seed."""
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    rng = np.random.default_rng(seed)
    probs = dist.probs / dist.probs.sum()
    counts = rng.multinomial(shots, probs)
    return Counts(dist.measured_qubits, counts, shots)
