"""Synthetic labeled benchmarks: well-separated Gaussian clusters.

Cluster centers sit on orthogonal directions scaled far apart relative to
the cluster spread, so the ground-truth grouping is unambiguous. Labels
are the cluster ids, which makes these instances drop-in benchmarks for
the label-oracle metric without any embedding step (the points themselves
are the embedding).
"""

from __future__ import annotations

import numpy as np

from .dataset import LabeledDataset, TextDataset
from .embedding import EmbeddingMatrix


def gaussian_cluster_instance(
    seed: int,
    n_points: int = 250,
    n_clusters: int | None = None,
    dim: int = 32,
    separation: float = 10.0,
    cluster_std: float = 1.0,
) -> tuple[LabeledDataset, EmbeddingMatrix]:
    """One synthetic benchmark: points from Gaussian blobs, labels = blob id.

    When n_clusters is omitted it is drawn uniformly from 6..12. Returns the
    labeled dataset (rows are placeholder texts) and the point matrix as its
    embedding.
    """
    rng = np.random.default_rng(seed)
    if n_clusters is None:
        n_clusters = int(rng.integers(6, 13))
    if n_clusters > dim:
        raise ValueError(
            f"need dim >= n_clusters for orthogonal centers "
            f"({n_clusters} > {dim})"
        )
    basis, _ = np.linalg.qr(rng.standard_normal((dim, n_clusters)))
    centers = separation * basis.T  # (n_clusters, dim), pairwise sep*sqrt(2)
    assignment = rng.integers(0, n_clusters, size=n_points)
    points = centers[assignment] + cluster_std * rng.standard_normal(
        (n_points, dim)
    )
    base = TextDataset(
        rows=tuple(f"point-{i:04d}" for i in range(n_points)),
        source_id=f"gaussian-{seed}",
    )
    labeled = LabeledDataset(
        base=base, labels=tuple(str(int(c)) for c in assignment)
    )
    matrix = EmbeddingMatrix(values=points, embedder_id="identity")
    return labeled, matrix


def gaussian_cluster_suite(
    count: int = 20,
    base_seed: int = 0,
    **kwargs,
) -> list[tuple[LabeledDataset, EmbeddingMatrix]]:
    """A suite of seeded instances with varying cluster counts."""
    return [
        gaussian_cluster_instance(seed=base_seed + i, **kwargs)
        for i in range(count)
    ]
