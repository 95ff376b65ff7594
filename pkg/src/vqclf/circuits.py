"""Circuit constructors for the classifier: feature map, variational
ansatz, and the pairwise-CZ half-measurement block.

All CZ gates act on adjacent qubit pairs, so every circuit built here runs
unchanged on linear-connectivity hardware.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError
from .simcore import Circuit, GateOp


@dataclass(frozen=True)
class CircuitConfig:
    """Geometry of the classifier circuit.

    ``feature_gain`` / ``feature_offset`` optionally remap the encoded
    angles per feature (``angle_i = gain_i * x_i + offset_i``); the default
    is the identity map.
    """

    n_qubits: int
    feature_map_depth: int = 1
    var_depth: int = 1
    feature_gain: tuple[float, ...] | None = None
    feature_offset: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.n_qubits < 2 or self.n_qubits % 2 != 0:
            raise ValueError(f"n_qubits must be even and >= 2, got {self.n_qubits}")
        if self.feature_map_depth < 1:
            raise ValueError("feature_map_depth must be >= 1")
        if self.var_depth < 0:
            raise ValueError("var_depth must be >= 0")
        for name in ("feature_gain", "feature_offset"):
            vals = getattr(self, name)
            if vals is not None:
                vals = tuple(float(v) for v in vals)
                if len(vals) != self.n_qubits:
                    raise ShapeError(f"{name} must have length {self.n_qubits}")
                object.__setattr__(self, name, vals)


def param_count(config: CircuitConfig) -> int:
    """Number of variational angles: 2 rotations per qubit per layer."""
    return 2 * config.n_qubits * config.var_depth


def build_feature_map(x, depth: int = 1) -> Circuit:
    """Encoding circuit: ``depth`` repetitions of [H on every qubit, then
    RZ(x_i) on qubit i]."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size == 0:
        raise ShapeError(f"x must be a non-empty vector, got shape {x.shape}")
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    n = x.size
    ops = []
    for _ in range(depth):
        ops.extend(GateOp("H", (q,)) for q in range(n))
        ops.extend(GateOp("RZ", (q,), float(x[q])) for q in range(n))
    return Circuit(n, tuple(ops))


def build_entangler(n_qubits: int) -> Circuit:
    """CZ layer: even-to-odd pairs first, then odd-to-even pairs.

    The two-pass order lets all gates of a pass run in parallel on
    hardware; here it just fixes the gate sequence.
    """
    if n_qubits < 2:
        raise ValueError(f"entangler needs >= 2 qubits, got {n_qubits}")
    ops = [GateOp("CZ", (q, q + 1)) for q in range(0, n_qubits - 1, 2)]
    ops += [GateOp("CZ", (q, q + 1)) for q in range(1, n_qubits - 1, 2)]
    return Circuit(n_qubits, tuple(ops))


def build_variational(theta, config: CircuitConfig) -> Circuit:
    """Trainable block: ``var_depth`` repetitions of [RY+RZ on every qubit,
    then the entangler].

    Layer ``l`` consumes angles ``[2n*l, 2n*(l+1))``; within a layer qubit
    ``i`` uses index ``2i`` for RY and ``2i+1`` for RZ, RY applied first.
    ``var_depth == 0`` yields the empty circuit.
    """
    theta = np.asarray(theta, dtype=np.float64)
    expected = param_count(config)
    if theta.shape != (expected,):
        raise ShapeError(f"theta must have length {expected}, got {theta.shape}")
    n = config.n_qubits
    ops: list[GateOp] = []
    entangler = build_entangler(n).ops if config.var_depth > 0 else ()
    for layer in range(config.var_depth):
        base = 2 * n * layer
        for q in range(n):
            ops.append(GateOp("RY", (q,), float(theta[base + 2 * q])))
            ops.append(GateOp("RZ", (q,), float(theta[base + 2 * q + 1])))
        ops.extend(entangler)
    return Circuit(n, tuple(ops))


def build_measurement_prep(n_qubits: int) -> tuple[Circuit, tuple[int, ...]]:
    """Pairwise CZ block plus the measured-qubit list (the even member of
    each pair)."""
    if n_qubits < 2 or n_qubits % 2 != 0:
        raise ValueError(f"n_qubits must be even and >= 2, got {n_qubits}")
    ops = tuple(GateOp("CZ", (q, q + 1)) for q in range(0, n_qubits - 1, 2))
    measured = tuple(range(0, n_qubits, 2))
    return Circuit(n_qubits, ops), measured


def assemble_classifier_circuit(
    x, theta, config: CircuitConfig
) -> tuple[Circuit, tuple[int, ...]]:
    """Full classifier circuit: feature map, variational block, measurement
    prep; returns the circuit and the measured qubits."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (config.n_qubits,):
        raise ShapeError(f"x must have length {config.n_qubits}, got {x.shape}")
    if config.feature_gain is not None:
        x = x * np.asarray(config.feature_gain)
    if config.feature_offset is not None:
        x = x + np.asarray(config.feature_offset)
    fmap = build_feature_map(x, config.feature_map_depth)
    var = build_variational(theta, config)
    prep, measured = build_measurement_prep(config.n_qubits)
    return Circuit(config.n_qubits, fmap.ops + var.ops + prep.ops), measured
