"""ROC curves, AUC, and bootstrap uncertainty for binary scores.

Curves live in the (signal efficiency, background rejection) plane, where
signal efficiency is the true-positive rate and background rejection is
1 - FPR. AUC is the Mann-Whitney statistic (ties count 1/2), which equals
the trapezoidal area under the TPR-vs-FPR curve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSampleError

_BOOTSTRAP_RETRY_CAP = 100


@dataclass(frozen=True)
class ScoredSet:
    """Scores paired with truth labels (1 = signal, 0 = background)."""

    scores: np.ndarray
    labels: np.ndarray

    def __post_init__(self):
        scores = np.asarray(self.scores, dtype=np.float64).reshape(-1)
        labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        if scores.size != labels.size:
            raise ValueError(
                f"{scores.size} scores but {labels.size} labels"
            )
        if scores.size == 0:
            raise ValueError("scored set must be non-empty")
        if not np.isin(labels, (0, 1)).all():
            raise ValueError("labels must be 0 or 1")
        object.__setattr__(self, "scores", scores)
        object.__setattr__(self, "labels", labels)

    @property
    def n_signal(self) -> int:
        return int(self.labels.sum())

    @property
    def n_background(self) -> int:
        return int(self.labels.size - self.labels.sum())


@dataclass(frozen=True)
class RocCurve:
    """Sweep points ordered by non-decreasing signal efficiency.

    The first and last rows are the trivial endpoints (0, 1) and (1, 0)
    with thresholds +inf / -inf.
    """

    thresholds: np.ndarray
    signal_efficiency: np.ndarray
    background_rejection: np.ndarray


def _require_both_classes(s: ScoredSet) -> None:
    if s.n_signal == 0 or s.n_background == 0:
        raise ValueError("ROC/AUC require at least one signal and one background event")


def roc_curve(s: ScoredSet) -> RocCurve:
    """Threshold sweep over the distinct scores, descending.

    At threshold t an event is called signal when its score is strictly
    greater than t: efficiency = #(signal > t) / n_signal and rejection =
    #(background <= t) / n_background.
    """
    _require_both_classes(s)
    sig = np.sort(s.scores[s.labels == 1])
    bg = np.sort(s.scores[s.labels == 0])
    thr = np.unique(s.scores)[::-1]

    eff = 1.0 - np.searchsorted(sig, thr, side="right") / sig.size
    rej = np.searchsorted(bg, thr, side="right") / bg.size

    thresholds = np.concatenate(([np.inf], thr, [-np.inf]))
    signal_eff = np.concatenate(([0.0], eff, [1.0]))
    background_rej = np.concatenate(([1.0], rej, [0.0]))
    return RocCurve(thresholds, signal_eff, background_rej)


def auc(s: ScoredSet) -> float:
    """Probability a random signal event outscores a random background
    event, ties counted 1/2 (Mann-Whitney)."""
    _require_both_classes(s)
    order = np.argsort(s.scores, kind="stable")
    sorted_scores = s.scores[order]
    ranks = np.empty(s.scores.size, dtype=np.float64)
    i = 0
    while i < sorted_scores.size:
        j = i
        while j + 1 < sorted_scores.size and sorted_scores[j + 1] == sorted_scores[i]:
            j += 1
        ranks[order[i : j + 1]] = 0.5 * (i + j) + 1.0  # average 1-based rank
        i = j + 1
    n_sig = s.n_signal
    n_bg = s.n_background
    rank_sum = float(ranks[s.labels == 1].sum())
    return (rank_sum - n_sig * (n_sig + 1) / 2.0) / (n_sig * n_bg)


def bootstrap_auc(
    s: ScoredSet, B: int, seed: int, stratified: bool = False
) -> tuple[float, float]:
    """Mean and sample standard deviation of the AUC over ``B`` resamples
    with replacement.

    Unstratified resamples that lose a class are redrawn (up to 100 tries
    each); stratified resampling draws within each class and cannot
    degenerate.
    """
    if B < 2:
        raise ValueError(f"B must be >= 2, got {B}")
    _require_both_classes(s)
    rng = np.random.default_rng(seed)
    n = s.scores.size
    sig_idx = np.nonzero(s.labels == 1)[0]
    bg_idx = np.nonzero(s.labels == 0)[0]

    values = np.empty(B)
    for b in range(B):
        if stratified:
            idx = np.concatenate(
                (
                    rng.choice(sig_idx, size=sig_idx.size, replace=True),
                    rng.choice(bg_idx, size=bg_idx.size, replace=True),
                )
            )
        else:
            for attempt in range(_BOOTSTRAP_RETRY_CAP + 1):
                idx = rng.integers(0, n, size=n)
                picked = s.labels[idx]
                if picked.any() and not picked.all():
                    break
            else:
                raise DegenerateSampleError(
                    f"resample {b} still single-class after "
                    f"{_BOOTSTRAP_RETRY_CAP} redraws"
                )
        values[b] = auc(ScoredSet(s.scores[idx], s.labels[idx]))
    return float(values.mean()), float(values.std(ddof=1))


def combine_scored(sets: list[ScoredSet]) -> ScoredSet:
    """Concatenate several scored sets into one."""
    if not sets:
        raise ValueError("need at least one scored set")
    return ScoredSet(
        np.concatenate([s.scores for s in sets]),
        np.concatenate([s.labels for s in sets]),
    )


def combine_rocs(sets: list[ScoredSet]) -> RocCurve:
    """ROC of the concatenation of all events."""
    return roc_curve(combine_scored(sets))
