import math
import random

import numpy as np
import pytest

import vqclf.optimizer as optimizer
from vqclf.errors import SolverError
from vqclf.optimizer import SpsaConfig, gain_sequences, spsa_minimize


def reference_spsa(objective, theta0, max_iter, a, c, alpha, gamma, big_a, seed):
    """Independent scalar-loop SPSA used as a behavioral oracle.

    Pure-python, stdlib RNG, no numpy: shares nothing with the library
    implementation except the algorithm definition.
    """
    rng = random.Random(seed)
    theta = list(theta0)
    for k in range(max_iter):
        a_k = a / (k + 1 + big_a) ** alpha
        c_k = c / (k + 1) ** gamma
        delta = [1.0 if rng.random() < 0.5 else -1.0 for _ in theta]
        plus = objective([t + c_k * d for t, d in zip(theta, delta)])
        minus = objective([t - c_k * d for t, d in zip(theta, delta)])
        scale = (plus - minus) / (2.0 * c_k)
        theta = [t - a_k * scale * d for t, d in zip(theta, delta)]
    return theta


def quadratic(theta):
    theta = np.asarray(theta, dtype=float)
    return float(np.dot(theta, theta))


class TestSpsaConfig:
    def test_defaults(self):
        cfg = SpsaConfig()
        assert cfg.max_iter == 250
        assert cfg.stability_A == 25.0  # max_iter / 10

    def test_explicit_stability(self):
        assert SpsaConfig(max_iter=100, stability_A=7.0).stability_A == 7.0

    @pytest.mark.parametrize("kwargs", [
        dict(max_iter=0),
        dict(a=0.0),
        dict(c=-1.0),
        dict(alpha=0.5),
        dict(alpha=1.5),
        dict(gamma=0.0),
        dict(gamma=0.6),
        dict(stability_A=-1.0),
    ])
    def test_invalid_rejected(self, kwargs):
        with pytest.raises(ValueError):
            SpsaConfig(**kwargs)


class TestGainSequences:
    def test_k0_defaults(self):
        cfg = SpsaConfig()  # stability_A = 25
        a_0, c_0 = gain_sequences(0, cfg)
        assert a_0 == pytest.approx(0.2 / 26**0.602, rel=1e-12)
        assert c_0 == 0.1  # 0.1 / 1**0.101 exactly

    def test_monotone_decay(self):
        cfg = SpsaConfig()
        seq = [gain_sequences(k, cfg) for k in range(200)]
        a_vals = [s[0] for s in seq]
        c_vals = [s[1] for s in seq]
        assert all(x > y > 0 for x, y in zip(a_vals, a_vals[1:]))
        assert all(x > y > 0 for x, y in zip(c_vals, c_vals[1:]))

    def test_harmonic_special_case(self):
        cfg = SpsaConfig(a=1.0, alpha=1.0, stability_A=0.0)
        for k in range(5):
            assert gain_sequences(k, cfg)[0] == pytest.approx(1.0 / (k + 1))


class TestSpsaMinimize:
    def test_quadratic_converges(self):
        cfg = SpsaConfig(max_iter=500)
        theta, history = spsa_minimize(quadratic, np.ones(4), cfg, seed=1)
        assert np.linalg.norm(theta) <= 0.15
        assert history[-1][1] < history[0][1]

    def test_matches_reference_magnitude(self):
        # independent implementation reaches a comparable optimum
        cfg = SpsaConfig(max_iter=500)
        ours = [
            np.linalg.norm(spsa_minimize(quadratic, np.ones(4), cfg, seed=s)[0])
            for s in range(5)
        ]
        ref = [
            math.sqrt(quadratic(reference_spsa(
                quadratic, [1.0] * 4, 500, 0.2, 0.1, 0.602, 0.101, 50.0, s)))
            for s in range(5)
        ]
        assert max(ours) <= 0.15 and max(ref) <= 0.15

    def test_evaluation_count_single_iteration(self):
        calls = []

        def counting(theta):
            calls.append(theta.copy())
            return quadratic(theta)

        spsa_minimize(counting, np.ones(3), SpsaConfig(max_iter=1), seed=0)
        assert len(calls) == 3  # two perturbed + one recording

    def test_empty_theta(self):
        theta, history = spsa_minimize(quadratic, np.zeros(0), SpsaConfig(max_iter=4), seed=0)
        assert theta.size == 0
        assert [loss for _, loss in history] == [0.0] * 4
        assert [it for it, _ in history] == [1, 2, 3, 4]

    def test_seed_determinism(self):
        cfg = SpsaConfig(max_iter=50)
        t1, h1 = spsa_minimize(quadratic, np.ones(6), cfg, seed=42)
        t2, h2 = spsa_minimize(quadratic, np.ones(6), cfg, seed=42)
        assert np.array_equal(t1, t2)
        assert h1 == h2

    def test_perturbation_symmetry(self, monkeypatch):
        # negating every Rademacher draw must leave the trajectory unchanged
        cfg = SpsaConfig(max_iter=30)
        base = spsa_minimize(quadratic, np.ones(5), cfg, seed=9)

        original = optimizer._rademacher
        monkeypatch.setattr(optimizer, "_rademacher",
                            lambda rng, dim: -original(rng, dim))
        flipped = spsa_minimize(quadratic, np.ones(5), cfg, seed=9)
        assert np.array_equal(base[0], flipped[0])
        assert base[1] == flipped[1]

    def test_non_finite_objective_aborts(self):
        def exploding(theta):
            return float("nan")

        with pytest.raises(SolverError) as err:
            spsa_minimize(exploding, np.ones(2), SpsaConfig(max_iter=5), seed=0)
        assert err.value.iteration == 0

    def test_update_magnitude_bounded(self):
        # on the quadratic, |f(t+cd)-f(t-cd)|/(2c) <= L with L a Lipschitz
        # bound on the perturbed segment; no update may exceed a_k * L
        cfg = SpsaConfig(max_iter=100)
        iterates = [np.ones(4)]

        def tracking(theta):
            return quadratic(theta)

        theta = np.ones(4)
        rng = np.random.default_rng(3)
        for k in range(cfg.max_iter):
            a_k, c_k = gain_sequences(k, cfg)
            delta = optimizer._rademacher(rng, 4)
            plus = tracking(theta + c_k * delta)
            minus = tracking(theta - c_k * delta)
            step = a_k * abs(plus - minus) / (2 * c_k)
            lipschitz = 2 * (np.linalg.norm(theta) + c_k * 2) * 2
            assert step <= a_k * lipschitz + 1e-12
            theta = theta - a_k * (plus - minus) / (2 * c_k) * delta
            iterates.append(theta)

    def test_quadratic_improves_in_most_seeds(self):
        cfg = SpsaConfig(max_iter=500)
        wins = 0
        for seed in range(100):
            _, history = spsa_minimize(quadratic, np.ones(4), cfg, seed=seed)
            if history[-1][1] < history[0][1]:
                wins += 1
        assert wins >= 95
