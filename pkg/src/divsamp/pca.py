"""Principal component analysis with a fixed, deterministic sign convention.

The fit runs an exact SVD on the mean-centered matrix (no randomized
solver, so repeat fits are bit-identical at desk scale). Signs matter
downstream: the samplers treat maximal and minimal projections
asymmetrically, so each component row is flipped, if needed, to make its
largest-magnitude entry non-negative (ties resolved by the lowest index).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .embedding import EmbeddingMatrix


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray              # (M,)
    components: np.ndarray        # (n, M), orthonormal rows
    explained_variance: np.ndarray  # (n,), non-increasing

    @property
    def n_components(self) -> int:
        return self.components.shape[0]


@dataclass(frozen=True)
class PcaProjection:
    values: np.ndarray            # (N, n)

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_components(self) -> int:
        return self.values.shape[1]


def apply_sign_convention(components: np.ndarray) -> np.ndarray:
    """Flip rows whose largest-|entry| coordinate is negative.

    np.argmax returns the first maximal position, which implements the
    lowest-index tie-break.
    """
    fixed = components.copy()
    for row in fixed:
        anchor = np.argmax(np.abs(row))
        if row[anchor] < 0:
            row *= -1.0
    return fixed


def pca_fit(X: EmbeddingMatrix | np.ndarray, n: int) -> PcaModel:
    """Fit the top-n principal components of X.

    explained_variance[j] = (singular value j)^2 / (N - 1), the sample
    variance of the data along component j. Rank-deficient inputs are fine;
    trailing variances may be zero.
    """
    values = X.values if isinstance(X, EmbeddingMatrix) else np.asarray(X, dtype=np.float64)
    n_rows, n_dims = values.shape
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > min(n_rows, n_dims):
        raise ValueError(
            f"n={n} exceeds min(N, M) = {min(n_rows, n_dims)}"
        )
    if n_rows < 2:
        raise ValueError("PCA needs at least 2 rows")
    mean = values.mean(axis=0)
    centered = values - mean
    _, singular, vt = np.linalg.svd(centered, full_matrices=False)
    components = apply_sign_convention(vt[:n])
    explained = (singular[:n] ** 2) / (n_rows - 1)
    return PcaModel(
        mean=mean, components=components, explained_variance=explained
    )


def pca_project(model: PcaModel, X: EmbeddingMatrix | np.ndarray) -> PcaProjection:
    """Project rows of X onto the fitted components: (X - mean) @ components.T."""
    values = X.values if isinstance(X, EmbeddingMatrix) else np.asarray(X, dtype=np.float64)
    if values.shape[1] != model.mean.shape[0]:
        raise ValueError(
            f"dimension mismatch: data has {values.shape[1]} columns, "
            f"model expects {model.mean.shape[0]}"
        )
    return PcaProjection(values=(values - model.mean) @ model.components.T)


def row_infinity_norms(P: PcaProjection | np.ndarray) -> np.ndarray:
    """Per-row infinity norm: the maximum absolute entry of each row."""
    values = P.values if isinstance(P, PcaProjection) else np.asarray(P, dtype=np.float64)
    return np.abs(values).max(axis=1)


def save_model(model: PcaModel, path: str | Path) -> None:
    """Debugging dump of a fitted model; format carries no stability promise."""
    payload = {
        "mean": model.mean.tolist(),
        "components": model.components.tolist(),
        "explained_variance": model.explained_variance.tolist(),
    }
    Path(path).write_text(json.dumps(payload), encoding="utf-8")


def load_model(path: str | Path) -> PcaModel:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    return PcaModel(
        mean=np.asarray(payload["mean"], dtype=np.float64),
        components=np.asarray(payload["components"], dtype=np.float64),
        explained_variance=np.asarray(
            payload["explained_variance"], dtype=np.float64
        ),
    )
