"""Embedding matrix container shared by all embedders."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class EmbeddingMatrix:
    """N x M matrix of 64-bit floats, one row per dataset row."""

    values: np.ndarray
    embedder_id: str

    def __post_init__(self) -> None:
        values = np.ascontiguousarray(self.values, dtype=np.float64)
        if values.ndim != 2:
            raise ValueError(f"expected a 2-D matrix, got shape {values.shape}")
        if values.shape[0] < 1 or values.shape[1] < 1:
            raise ValueError(f"degenerate embedding shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise ValueError("embedding matrix contains non-finite entries")
        object.__setattr__(self, "values", values)

    @property
    def n_rows(self) -> int:
        return self.values.shape[0]

    @property
    def n_dims(self) -> int:
        return self.values.shape[1]

    def normalized(self) -> "EmbeddingMatrix":
        """L2-normalize rows (zero rows stay zero)."""
        norms = np.linalg.norm(self.values, axis=1)
        out = self.values.copy()
        nz = norms > 0.0
        out[nz] /= norms[nz, np.newaxis]
        return EmbeddingMatrix(values=out, embedder_id=self.embedder_id)
