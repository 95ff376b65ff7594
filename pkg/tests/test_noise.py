import numpy as np
import pytest

from vqclf.errors import ConfigError, ShapeError
from vqclf.noise import (
    CalibrationMatrix,
    ReadoutNoiseModel,
    apply_readout_noise,
    build_calibration_matrix,
    calibrate_empirical,
    mitigate,
    project_to_simplex,
)
from vqclf.simcore import Counts, OutcomeDistribution, sample_counts


def symmetric_noise(p, qubits):
    return ReadoutNoiseModel.uniform(p, p, qubits)


class TestNoiseModel:
    def test_rates_validated(self):
        with pytest.raises(ValueError):
            ReadoutNoiseModel({0: (0.5, 0.1)})
        with pytest.raises(ValueError):
            ReadoutNoiseModel({0: (-0.01, 0.1)})

    def test_confusion_matrix(self):
        noise = ReadoutNoiseModel({3: (0.1, 0.2)})
        assert np.allclose(noise.confusion(3), [[0.9, 0.2], [0.1, 0.8]])

    def test_missing_qubit(self):
        with pytest.raises(ConfigError):
            ReadoutNoiseModel({0: (0.1, 0.1)}).confusion(1)


class TestBuildCalibrationMatrix:
    def test_single_qubit(self):
        cal = build_calibration_matrix(symmetric_noise(0.1, [0]), [0])
        assert np.allclose(cal.matrix, [[0.9, 0.1], [0.1, 0.9]])

    def test_noiseless_identity(self):
        cal = build_calibration_matrix(symmetric_noise(0.0, [0, 2]), [0, 2])
        assert np.allclose(cal.matrix, np.eye(4))

    def test_two_qubit_kron(self):
        cal = build_calibration_matrix(symmetric_noise(0.1, [0, 1]), [0, 1])
        assert cal.matrix.shape == (4, 4)
        assert cal.matrix[0, 0] == pytest.approx(0.81)

    def test_bit_packing_matches_measured_order(self):
        # qubit a noiseless, qubit b fully asymmetric: bit i of the index
        # must correspond to measured_qubits[i]
        noise = ReadoutNoiseModel({4: (0.0, 0.0), 7: (0.3, 0.0)})
        cal = build_calibration_matrix(noise, [4, 7])
        # true state 00 -> noisy 10 (bit 1 = qubit 7 flips 0->1) w.p. 0.3
        assert cal.matrix[0b10, 0b00] == pytest.approx(0.3)
        assert cal.matrix[0b01, 0b00] == 0.0

    def test_columns_stochastic(self):
        cal = build_calibration_matrix(
            ReadoutNoiseModel({0: (0.05, 0.1), 2: (0.2, 0.01), 4: (0.3, 0.3)}),
            [0, 2, 4],
        )
        assert np.max(np.abs(cal.matrix.sum(axis=0) - 1.0)) <= 1e-12

    def test_missing_entry_is_config_error(self):
        with pytest.raises(ConfigError):
            build_calibration_matrix(symmetric_noise(0.1, [0]), [0, 2])


class TestApplyReadoutNoise:
    def test_single_column_readoff(self):
        cal = build_calibration_matrix(symmetric_noise(0.1, [0]), [0])
        dist = OutcomeDistribution((0,), np.array([1.0, 0.0]))
        noisy = apply_readout_noise(dist, cal)
        assert np.allclose(noisy.probs, [0.9, 0.1])

    def test_identity_noop(self):
        cal = CalibrationMatrix(np.eye(8))
        probs = np.full(8, 1 / 8)
        dist = OutcomeDistribution((0, 1, 2), probs)
        assert np.allclose(apply_readout_noise(dist, cal).probs, probs)

    def test_symmetric_noise_fixes_uniform(self):
        cal = build_calibration_matrix(symmetric_noise(0.17, [0, 1]), [0, 1])
        dist = OutcomeDistribution((0, 1), np.full(4, 0.25))
        assert np.allclose(apply_readout_noise(dist, cal).probs, 0.25)

    def test_dimension_mismatch(self):
        cal = CalibrationMatrix(np.eye(4))
        with pytest.raises(ShapeError):
            apply_readout_noise(OutcomeDistribution((0,), np.array([1.0, 0.0])), cal)


class TestProjectToSimplex:
    def test_already_feasible(self):
        v = np.array([0.2, 0.3, 0.5])
        assert np.allclose(project_to_simplex(v), v)

    def test_clips_negative(self):
        p = project_to_simplex(np.array([1.125, -0.125]))
        assert np.allclose(p, [1.0, 0.0])

    def test_properties_random(self, rng):
        for _ in range(200):
            v = rng.normal(size=int(rng.integers(1, 20)))
            p = project_to_simplex(v)
            assert p.min() >= 0.0
            assert abs(p.sum() - 1.0) <= 1e-12


class TestMitigate:
    def test_identity_matrix_returns_frequencies(self):
        cal = CalibrationMatrix(np.eye(2))
        counts = Counts((0,), np.array([750, 250]), 1000)
        out = mitigate(counts, cal)
        assert np.allclose(out.probs, [0.75, 0.25], atol=1e-10)

    def test_exact_preimage(self):
        cal = build_calibration_matrix(symmetric_noise(0.1, [0]), [0])
        out = mitigate(np.array([0.9, 0.1]), cal)
        assert np.allclose(out.probs, [1.0, 0.0], atol=1e-8)

    def test_infeasible_inverse_projected(self):
        # unconstrained inverse of (1, 0) is (1.125, -0.125): constrained
        # solution is the simplex point (1, 0)
        cal = build_calibration_matrix(symmetric_noise(0.1, [0]), [0])
        out = mitigate(np.array([1.0, 0.0]), cal)
        assert np.allclose(out.probs, [1.0, 0.0], atol=1e-8)

    def test_round_trip_random(self, rng):
        for m in (1, 2, 3):
            noise = ReadoutNoiseModel(
                {q: (float(rng.uniform(0, 0.3)), float(rng.uniform(0, 0.3)))
                 for q in range(m)}
            )
            cal = build_calibration_matrix(noise, list(range(m)))
            for _ in range(20):
                p = rng.dirichlet(np.ones(1 << m))
                recovered = mitigate(cal.matrix @ p, cal)
                assert np.max(np.abs(recovered.probs - p)) <= 1e-8

    def test_postconditions_hold_even_at_few_shots(self, rng):
        cal = build_calibration_matrix(symmetric_noise(0.2, [0, 1]), [0, 1])
        for seed in range(30):
            p = rng.dirichlet(np.ones(4))
            noisy = OutcomeDistribution((0, 1), cal.matrix @ p)
            counts = sample_counts(noisy, 64, seed=seed)
            out = mitigate(counts, cal)
            assert out.probs.min() >= 0.0
            assert abs(out.probs.sum() - 1.0) <= 1e-10

    def test_dimension_mismatch(self):
        cal = CalibrationMatrix(np.eye(4))
        with pytest.raises(ShapeError):
            mitigate(np.array([1.0, 0.0]), cal)


class TestCalibrateEmpirical:
    @staticmethod
    def _sampler_with(noise_cal):
        def sampler(dist, shots, seed):
            noisy = apply_readout_noise(dist, noise_cal) if noise_cal else dist
            return sample_counts(noisy, shots, seed)

        return sampler

    def test_noiseless_near_identity(self):
        cal = calibrate_empirical(self._sampler_with(None), m=2,
                                  shots_per_state=100_000, seed=5)
        off_diag = cal.matrix - np.diag(np.diag(cal.matrix))
        assert np.max(np.abs(off_diag)) <= 0.005

    def test_recovers_known_noise(self):
        true_cal = build_calibration_matrix(symmetric_noise(0.1, [0, 1]), [0, 1])
        est = calibrate_empirical(self._sampler_with(true_cal), m=2,
                                  shots_per_state=100_000, seed=8)
        assert np.max(np.abs(est.matrix - true_cal.matrix)) <= 0.01

    def test_single_shot_still_stochastic(self):
        cal = calibrate_empirical(self._sampler_with(None), m=1,
                                  shots_per_state=1, seed=0)
        assert np.allclose(cal.matrix.sum(axis=0), 1.0)

    def test_deterministic_per_seed(self):
        a = calibrate_empirical(self._sampler_with(None), m=1,
                                shots_per_state=100, seed=3)
        b = calibrate_empirical(self._sampler_with(None), m=1,
                                shots_per_state=100, seed=3)
        assert np.array_equal(a.matrix, b.matrix)

    def test_bad_shots(self):
        with pytest.raises(ValueError):
            calibrate_empirical(self._sampler_with(None), 1, 0, 0)
