"""Event tables: synthetic generation, CSV ingestion, and splitting.

CSV format: header row, first column ``label`` (0/1), remaining columns
numeric features; UTF-8, comma-separated, decimal point. Floats are
written with ``repr`` so files round-trip bit for bit.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, ParseError, ValidationError


@dataclass(frozen=True)
class EventTable:
    """Labeled feature rows with column names."""

    feature_names: tuple[str, ...]
    labels: np.ndarray  # (M,) int, 0/1
    features: np.ndarray  # (M, d) float64

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64).reshape(-1)
        features = np.asarray(self.features, dtype=np.float64)
        if features.ndim != 2 or features.shape[0] != labels.size:
            raise ValidationError(
                f"features shape {features.shape} does not match {labels.size} labels"
            )
        if features.shape[1] != len(self.feature_names):
            raise ValidationError(
                f"{features.shape[1]} feature columns but "
                f"{len(self.feature_names)} names"
            )
        if not np.isin(labels, (0, 1)).all():
            raise ValidationError("labels must be 0 or 1")
        if not np.isfinite(features).all():
            raise ValidationError("features must be finite")
        object.__setattr__(self, "feature_names", tuple(self.feature_names))
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "features", features)

    @property
    def n_events(self) -> int:
        return self.labels.size

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def take(self, idx) -> "EventTable":
        return EventTable(self.feature_names, self.labels[idx], self.features[idx])


def gen_synthetic(n_events: int, d: int, separation: float, seed: int) -> EventTable:
    """Two unit-covariance Gaussian classes with means +/- separation/2 on
    every axis: signal rows first, then background.

    The optimal (Bayes) classifier is linear along the mean-difference
    direction with AUC = Phi(separation * sqrt(d/2)), Phi the standard
    normal CDF; pick ``separation`` accordingly when a known ceiling is
    needed.
    """
    if n_events < 2:
        raise ValueError(f"n_events must be >= 2, got {n_events}")
    if d < 1:
        raise ValueError(f"d must be >= 1, got {d}")
    if separation < 0:
        raise ValueError(f"separation must be >= 0, got {separation}")
    n_signal = n_events // 2
    n_background = n_events - n_signal
    rng = np.random.default_rng(seed)
    shift = separation / 2.0
    features = np.concatenate(
        (
            rng.standard_normal((n_signal, d)) + shift,
            rng.standard_normal((n_background, d)) - shift,
        )
    )
    labels = np.concatenate((np.ones(n_signal, int), np.zeros(n_background, int)))
    names = tuple(f"f{i}" for i in range(d))
    return EventTable(names, labels, features)


def write_csv(table: EventTable, path: str | Path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(("label",) + table.feature_names)
        for label, row in zip(table.labels, table.features):
            writer.writerow([int(label)] + [repr(float(v)) for v in row])


def ingest_csv(path: str | Path) -> EventTable:
    """Parse an event CSV, reporting the offending line on bad input."""
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError("empty file", line=1) from None
        if not header or header[0] != "label":
            raise ParseError("first column must be named 'label'", line=1)
        feature_names = tuple(name.strip() for name in header[1:])
        if not feature_names:
            raise ParseError("no feature columns", line=1)

        labels: list[int] = []
        rows: list[list[float]] = []
        for lineno, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != len(feature_names) + 1:
                raise ParseError(
                    f"expected {len(feature_names) + 1} columns, got {len(row)}",
                    line=lineno,
                )
            if row[0] not in ("0", "1"):
                raise ValidationError(f"label must be 0 or 1, got {row[0]!r}", line=lineno)
            try:
                values = [float(v) for v in row[1:]]
            except ValueError as exc:
                raise ParseError(str(exc), line=lineno) from None
            if not all(math.isfinite(v) for v in values):
                raise ValidationError("non-finite feature value", line=lineno)
            labels.append(int(row[0]))
            rows.append(values)

    if not rows:
        raise ValidationError("file contains no event rows", line=2)
    return EventTable(feature_names, np.array(labels), np.array(rows))


def split_datasets(
    table: EventTable, n_datasets: int, n_train: int, n_test: int, seed: int
) -> list[tuple[EventTable, EventTable]]:
    """Seeded shuffle then disjoint prefix blocks of (train, test) pairs."""
    if n_datasets < 1 or n_train < 1 or n_test < 1:
        raise ConfigError("n_datasets, train and test sizes must be >= 1")
    needed = n_datasets * (n_train + n_test)
    if needed > table.n_events:
        raise ConfigError(
            f"need {needed} events for {n_datasets} dataset(s) of "
            f"{n_train}+{n_test}, have {table.n_events}"
        )
    perm = np.random.default_rng(seed).permutation(table.n_events)
    pairs = []
    offset = 0
    for _ in range(n_datasets):
        train_idx = perm[offset : offset + n_train]
        test_idx = perm[offset + n_train : offset + n_train + n_test]
        offset += n_train + n_test
        pairs.append((table.take(train_idx), table.take(test_idx)))
    return pairs
