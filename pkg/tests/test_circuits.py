import numpy as np
import pytest

from vqclf.circuits import (
    CircuitConfig,
    assemble_classifier_circuit,
    build_entangler,
    build_feature_map,
    build_measurement_prep,
    build_variational,
    param_count,
)
from vqclf.errors import ShapeError
from vqclf.simcore import marginal_distribution, new_state, apply_circuit, simulate

import dense_oracle


class TestFeatureMap:
    def test_zero_angles_give_plus_state(self):
        circuit = build_feature_map(np.zeros(2), depth=1)
        state = simulate(circuit)
        assert np.allclose(state.amplitudes, np.full(4, 0.5), atol=1e-15)

    def test_gate_count_n10(self):
        circuit = build_feature_map(np.linspace(-np.pi, np.pi, 10), depth=1)
        assert len(circuit) == 20
        kinds = [op.kind for op in circuit.ops]
        assert kinds == ["H"] * 10 + ["RZ"] * 10

    def test_rz_changes_phases_only(self):
        circuit = build_feature_map(np.array([np.pi, 0.0]), depth=1)
        state = simulate(circuit)
        dist = marginal_distribution(state, [0, 1])
        expected = dense_oracle.marginal(
            dense_oracle.run_circuit(circuit), [0, 1], 2
        )
        assert np.allclose(dist.probs, np.full(4, 0.25), atol=1e-12)
        assert np.allclose(dist.probs, expected, atol=1e-12)

    def test_depth_repeats_blocks(self):
        circuit = build_feature_map(np.ones(4), depth=3)
        assert len(circuit) == 3 * 2 * 4

    def test_deterministic_structure(self):
        x = np.array([0.3, -1.2])
        a = build_feature_map(x, depth=2)
        b = build_feature_map(x, depth=2)
        assert a == b

    def test_bad_depth(self):
        with pytest.raises(ValueError):
            build_feature_map(np.zeros(2), depth=0)


class TestEntangler:
    def test_n2(self):
        circuit = build_entangler(2)
        assert [op.qubits for op in circuit.ops] == [(0, 1)]

    def test_n4(self):
        circuit = build_entangler(4)
        assert [op.qubits for op in circuit.ops] == [(0, 1), (2, 3), (1, 2)]

    def test_n10_has_9_cz(self):
        circuit = build_entangler(10)
        pairs = [op.qubits for op in circuit.ops]
        assert len(pairs) == 9
        assert pairs == [(0, 1), (2, 3), (4, 5), (6, 7), (8, 9),
                         (1, 2), (3, 4), (5, 6), (7, 8)]

    def test_rejects_single_qubit(self):
        with pytest.raises(ValueError):
            build_entangler(1)


class TestVariational:
    def test_depth_zero_empty(self):
        circuit = build_variational(np.zeros(0), CircuitConfig(4, var_depth=0))
        assert len(circuit) == 0

    def test_n10_depth1_counts(self):
        config = CircuitConfig(10, var_depth=1)
        assert param_count(config) == 20
        circuit = build_variational(np.zeros(20), config)
        assert len(circuit) == 29  # 20 rotations + 9 CZ

    def test_zero_theta_equals_entangler(self):
        config = CircuitConfig(4, var_depth=1)
        zero = build_variational(np.zeros(param_count(config)), config)
        ent = build_entangler(4)
        a = simulate_prepended(zero)
        b = simulate_prepended(ent)
        assert np.array_equal(a, b)

    def test_angle_layout_ry_before_rz(self):
        config = CircuitConfig(2, var_depth=2)
        theta = np.arange(8, dtype=float)
        circuit = build_variational(theta, config)
        ops = circuit.ops
        assert [op.kind for op in ops[:4]] == ["RY", "RZ", "RY", "RZ"]
        # layer 0: qubit 0 uses theta[0], theta[1]; qubit 1 uses theta[2], theta[3]
        assert [op.angle for op in ops[:4]] == [0.0, 1.0, 2.0, 3.0]
        # entangler between layers, layer 1 starts at theta[4]
        assert ops[4].kind == "CZ"
        assert ops[5].angle == 4.0

    def test_theta_length_checked(self):
        with pytest.raises(ShapeError):
            build_variational(np.zeros(3), CircuitConfig(4, var_depth=1))


def simulate_prepended(circuit):
    """Run the circuit on a fixed non-trivial product state."""
    prep = build_feature_map(np.linspace(0.5, 2.0, circuit.n_qubits), depth=1)
    state = simulate(prep)
    return apply_circuit(state, circuit).amplitudes


class TestMeasurementPrep:
    def test_n2(self):
        circuit, measured = build_measurement_prep(2)
        assert [op.qubits for op in circuit.ops] == [(0, 1)]
        assert measured == (0,)

    def test_n10(self):
        circuit, measured = build_measurement_prep(10)
        assert len(circuit) == 5
        assert measured == (0, 2, 4, 6, 8)

    def test_odd_rejected(self):
        with pytest.raises(ValueError):
            build_measurement_prep(3)


class TestAssemble:
    def test_n10_default_depths(self):
        config = CircuitConfig(10, feature_map_depth=1, var_depth=1)
        circuit, measured = assemble_classifier_circuit(
            np.zeros(10), np.zeros(20), config
        )
        assert len(circuit) == 54  # 20 + 29 + 5
        assert len(measured) == 5

    def test_var_depth_zero_composition(self):
        config = CircuitConfig(2, var_depth=0)
        circuit, measured = assemble_classifier_circuit(np.zeros(2), np.zeros(0), config)
        assert [op.kind for op in circuit.ops] == ["H", "H", "RZ", "RZ", "CZ"]
        assert measured == (0,)

    def test_theta_mismatch(self):
        config = CircuitConfig(2, var_depth=1)
        with pytest.raises(ShapeError):
            assemble_classifier_circuit(np.zeros(2), np.zeros(3), config)

    def test_feature_affine_map(self):
        base = CircuitConfig(2, var_depth=0)
        mapped = CircuitConfig(
            2, var_depth=0, feature_gain=(2.0, 1.0), feature_offset=(0.1, 0.0)
        )
        x = np.array([0.3, -0.7])
        plain, _ = assemble_classifier_circuit(x, np.zeros(0), base)
        scaled, _ = assemble_classifier_circuit(x, np.zeros(0), mapped)
        rz_plain = [op.angle for op in plain.ops if op.kind == "RZ"]
        rz_scaled = [op.angle for op in scaled.ops if op.kind == "RZ"]
        assert rz_plain == [0.3, -0.7]
        assert rz_scaled == [2.0 * 0.3 + 0.1, -0.7]

    @pytest.mark.parametrize("n", [2, 4, 6, 8, 10, 12])
    def test_gate_count_formula(self, n):
        for fdepth in (1, 2):
            for vdepth in (0, 1, 3):
                config = CircuitConfig(n, fdepth, vdepth)
                circuit, _ = assemble_classifier_circuit(
                    np.zeros(n), np.zeros(param_count(config)), config
                )
                n_ent = len(build_entangler(n))
                expected = fdepth * 2 * n + vdepth * (2 * n + n_ent) + n // 2
                assert len(circuit) == expected

    @pytest.mark.parametrize("n", [2, 4, 6, 10])
    def test_all_cz_adjacent(self, n):
        config = CircuitConfig(n, 2, 2)
        circuit, _ = assemble_classifier_circuit(
            np.ones(n), np.ones(param_count(config)), config
        )
        for op in circuit.ops:
            if op.kind == "CZ":
                assert abs(op.qubits[0] - op.qubits[1]) == 1

    def test_config_requires_even_qubits(self):
        with pytest.raises(ValueError):
            CircuitConfig(3)
