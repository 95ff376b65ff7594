import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vqclf.simcore import Circuit, GateOp  # noqa: E402

GATE_POOL = ("H", "RZ", "RY", "CZ")


def random_circuit(rng: np.random.Generator, n_qubits: int, n_gates: int) -> Circuit:
    """Random circuit over the full gate set with random angles."""
    ops = []
    for _ in range(n_gates):
        kind = GATE_POOL[rng.integers(len(GATE_POOL))]
        if kind == "CZ" and n_qubits >= 2:
            q1, q2 = rng.choice(n_qubits, size=2, replace=False)
            ops.append(GateOp("CZ", (int(q1), int(q2))))
        elif kind in ("RZ", "RY"):
            angle = float(rng.uniform(-2 * np.pi, 2 * np.pi))
            ops.append(GateOp(kind, (int(rng.integers(n_qubits)),), angle))
        else:
            ops.append(GateOp("H", (int(rng.integers(n_qubits)),)))
    return Circuit(n_qubits, tuple(ops))


@pytest.fixture
def rng():
    return np.random.default_rng(20240811)
