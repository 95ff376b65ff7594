"""Feature compression: PCA to the qubit count, then per-feature min-max
scaling onto [-pi, pi].

PCA is computed from the SVD of the centered data matrix (sample
covariance with 1/(M-1)); component signs are fixed so the
largest-magnitude entry of each component is positive, which makes fitted
models reproducible byte for byte. The scaler is fitted on the (PCA-
transformed) training set only; out-of-range values extrapolate beyond
[-pi, pi] rather than being clipped.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ShapeError

OUT_LO = -np.pi
OUT_HI = np.pi


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray
    components: np.ndarray  # (k, d), orthonormal rows, variance-descending
    explained_variance: np.ndarray  # (k,)

    @property
    def input_dim(self) -> int:
        return self.components.shape[1]

    @property
    def output_dim(self) -> int:
        return self.components.shape[0]


@dataclass(frozen=True)
class ScalerModel:
    mins: np.ndarray
    maxs: np.ndarray


@dataclass(frozen=True)
class PreprocessModel:
    """PCA followed by min-max scaling, with optional standardization of
    the raw features before PCA (off by default)."""

    pca: PcaModel
    scaler: ScalerModel
    standardize_mean: np.ndarray | None = None
    standardize_scale: np.ndarray | None = None

    @property
    def input_dim(self) -> int:
        return self.pca.input_dim

    @property
    def output_dim(self) -> int:
        return self.pca.output_dim


def pca_fit(X, k: int) -> PcaModel:
    """Top-``k`` principal components of ``X`` (M samples x d features)."""
    X = np.asarray(X, dtype=np.float64)
    if X.ndim != 2:
        raise ShapeError(f"X must be 2-D, got shape {X.shape}")
    m, d = X.shape
    if m < 2:
        raise ValueError(f"PCA requires at least 2 samples, got {m}")
    if not 1 <= k <= min(d, m):
        raise ValueError(f"k must lie in [1, {min(d, m)}], got {k}")

    mean = X.mean(axis=0)
    _, svals, vt = np.linalg.svd(X - mean, full_matrices=False)
    components = vt[:k].copy()
    explained = svals[:k] ** 2 / (m - 1)

    # deterministic sign: largest-magnitude entry of each component positive
    for row in components:
        pivot = np.argmax(np.abs(row))
        if row[pivot] < 0:
            row *= -1.0
    return PcaModel(mean, components, explained)


def pca_transform(model: PcaModel, x) -> np.ndarray:
    """Project ``x`` (vector or matrix of rows) onto the components."""
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != model.input_dim:
        raise ShapeError(f"expected dimension {model.input_dim}, got {x.shape}")
    return (x - model.mean) @ model.components.T


def scaler_fit(X) -> ScalerModel:
    """Per-feature min/max over the fit set."""
    X = np.atleast_2d(np.asarray(X, dtype=np.float64))
    if X.shape[0] < 1:
        raise ValueError("scaler requires at least 1 sample")
    return ScalerModel(X.min(axis=0), X.max(axis=0))


def scaler_transform(model: ScalerModel, x) -> np.ndarray:
    """Affine map of each feature from [min, max] onto [-pi, pi].

    Constant features map to 0; values outside the fitted range extrapolate
    past the endpoints.
    """
    x = np.asarray(x, dtype=np.float64)
    if x.shape[-1] != model.mins.size:
        raise ShapeError(f"expected dimension {model.mins.size}, got {x.shape}")
    span = model.maxs - model.mins
    safe = np.where(span == 0.0, 1.0, span)
    scaled = OUT_LO + (OUT_HI - OUT_LO) * (x - model.mins) / safe
    return np.where(span == 0.0, 0.0, scaled)


def preprocess_fit(X_train, k: int, standardize: bool = False) -> PreprocessModel:
    """Fit PCA then the scaler on the PCA-transformed training set.

    Fit only on training data; test rows must never be passed here.
    """
    X_train = np.asarray(X_train, dtype=np.float64)
    std_mean = std_scale = None
    if standardize:
        std_mean = X_train.mean(axis=0)
        std = X_train.std(axis=0, ddof=1)
        std_scale = np.where(std == 0.0, 1.0, std)
        X_train = (X_train - std_mean) / std_scale
    pca = pca_fit(X_train, k)
    scaler = scaler_fit(pca_transform(pca, X_train))
    return PreprocessModel(pca, scaler, std_mean, std_scale)


def preprocess_apply(model: PreprocessModel, x) -> np.ndarray:
    """Map raw features to encoding angles (vector or matrix of rows)."""
    x = np.asarray(x, dtype=np.float64)
    if model.standardize_mean is not None:
        x = (x - model.standardize_mean) / model.standardize_scale
    return scaler_transform(model.scaler, pca_transform(model.pca, x))
