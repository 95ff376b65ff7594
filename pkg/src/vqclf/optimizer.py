"""Simultaneous Perturbation Stochastic Approximation (SPSA) minimizer.

First-order SPSA with Rademacher (+/-1) perturbations and the standard
power-law gain schedules. Three objective evaluations per iteration: two
perturbed ones for the gradient estimate and one at the updated point,
recorded in the returned history.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import SolverError


@dataclass(frozen=True)
class SpsaConfig:
    """Gain schedule and iteration budget.

    ``stability_A`` defaults to ``max_iter / 10`` when left unset.
    """

    max_iter: int = 250
    a: float = 0.2
    c: float = 0.1
    alpha: float = 0.602
    gamma: float = 0.101
    stability_A: float | None = None

    def __post_init__(self):
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if not (self.a > 0 and self.c > 0):
            raise ValueError("gain numerators a and c must be positive")
        if not 0.5 < self.alpha <= 1.0:
            raise ValueError("alpha must lie in (0.5, 1]")
        if not 0.0 < self.gamma <= 0.5:
            raise ValueError("gamma must lie in (0, 0.5]")
        if self.stability_A is None:
            object.__setattr__(self, "stability_A", self.max_iter / 10.0)
        elif self.stability_A < 0:
            raise ValueError("stability_A must be >= 0")


def gain_sequences(k: int, cfg: SpsaConfig) -> tuple[float, float]:
    """Step size a_k and perturbation size c_k at iteration ``k`` (0-based)."""
    a_k = cfg.a / (k + 1 + cfg.stability_A) ** cfg.alpha
    c_k = cfg.c / (k + 1) ** cfg.gamma
    return a_k, c_k


def _rademacher(rng: np.random.Generator, dim: int) -> np.ndarray:
    return rng.integers(0, 2, size=dim).astype(np.float64) * 2.0 - 1.0


def spsa_minimize(
    objective: Callable[[np.ndarray], float],
    theta0: Sequence[float] | np.ndarray,
    cfg: SpsaConfig,
    seed: int,
) -> tuple[np.ndarray, list[tuple[int, float]]]:
    """Minimize ``objective`` from ``theta0``; returns the last iterate and
    the per-iteration history ``[(iteration, objective), ...]``.

    The history entry for iteration k (1-based) is the objective at the
    updated parameters, evaluated once per iteration on top of the two
    perturbed evaluations. Deterministic for a fixed seed.
    """
    theta = np.array(theta0, dtype=np.float64).reshape(-1).copy()
    rng = np.random.default_rng(seed)
    history: list[tuple[int, float]] = []
    for k in range(cfg.max_iter):
        a_k, c_k = gain_sequences(k, cfg)
        delta = _rademacher(rng, theta.size)
        f_plus = float(objective(theta + c_k * delta))
        f_minus = float(objective(theta - c_k * delta))
        if not (math.isfinite(f_plus) and math.isfinite(f_minus)):
            raise SolverError(
                f"objective returned a non-finite value at iteration {k}",
                iteration=k,
            )
        # delta has +/-1 entries, so elementwise 1/delta == delta.
        ghat = (f_plus - f_minus) / (2.0 * c_k) * delta
        theta = theta - a_k * ghat
        f_now = float(objective(theta))
        if not math.isfinite(f_now):
            raise SolverError(
                f"objective returned a non-finite value at iteration {k}",
                iteration=k,
            )
        history.append((k + 1, f_now))
    return theta, history
