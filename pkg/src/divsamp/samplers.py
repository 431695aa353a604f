"""Ordered diversity samplers.

Two projection-based samplers pick, per principal component, the rows with
extreme projections plus the rows whose projections are uniformly small;
six ablated variants replace one of those pick groups with seeded random
draws; five baselines (k-means clustering, clustering after PCA, farthest
remaining pair, greedy k-center, uniform random) cover the standard
model-agnostic approaches.

Every sampler returns an ordered sequence of distinct row indices. All
argmax/argmin ties break toward the lowest row index, and every random
draw comes from the package's seeded generator, so identical inputs give
identical outputs regardless of schedule.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .embedding import EmbeddingMatrix
from .pca import PcaProjection, pca_fit, pca_project, row_infinity_norms
from .rng import SplitMix64

SAMPLER_IDS = (
    "v1",
    "v2",
    "v1-Y",
    "v1-Z",
    "v1-W",
    "v2-Y",
    "v2-Z",
    "v2-W",
    "clustering",
    "pca-clustering",
    "rss",
    "kcenter",
    "random",
)

PART_NAMES = ("Y", "Z", "W")


@dataclass(frozen=True)
class SampleSequence:
    """Ordered distinct row indices plus provenance.

    `truncated` is set when the dataset ran out before the requested count
    (then every row appears exactly once, in priority order).
    """

    indices: tuple[int, ...]
    sampler_id: str
    params: dict = field(default_factory=dict)
    truncated: bool = False

    def __post_init__(self) -> None:
        if len(set(self.indices)) != len(self.indices):
            raise ValueError(f"duplicate indices in {self.sampler_id} output")

    def __len__(self) -> int:
        return len(self.indices)


@dataclass(frozen=True)
class SelectionSets:
    """The three pick groups of a projection sampler, in output order."""

    Y: tuple[int, ...]
    Z: tuple[int, ...]
    W: tuple[int, ...]

    def __post_init__(self) -> None:
        merged = self.Y + self.Z + self.W
        if len(set(merged)) != len(merged):
            raise ValueError("selection sets overlap")

    def concatenated(self) -> tuple[int, ...]:
        return self.Y + self.Z + self.W


@dataclass(frozen=True)
class AblationSpec:
    """Which pick group of which base sampler to replace with random draws."""

    base: str
    removed_part: str
    seed: int

    def __post_init__(self) -> None:
        if self.base not in ("v1", "v2"):
            raise ValueError(f"unknown base sampler {self.base!r}")
        if self.removed_part not in PART_NAMES:
            raise ValueError(f"unknown part {self.removed_part!r}")

    @property
    def sampler_id(self) -> str:
        return f"{self.base}-{self.removed_part}"


def _as_array(X: EmbeddingMatrix | np.ndarray) -> np.ndarray:
    if isinstance(X, EmbeddingMatrix):
        return X.values
    return np.asarray(X, dtype=np.float64)


def _prep_metric(values: np.ndarray, metric: str) -> np.ndarray:
    """Euclidean works on raw rows; cosine works on L2-normalized rows
    (squared Euclidean distance is then monotone in cosine distance, so
    rankings and ties coincide)."""
    if metric == "euclidean":
        return values
    if metric == "cosine":
        norms = np.linalg.norm(values, axis=1)
        out = values.copy()
        nz = norms > 0.0
        out[nz] /= norms[nz, np.newaxis]
        return out
    raise ValueError(f"unknown metric {metric!r}")


def _descending(values: np.ndarray) -> np.ndarray:
    """Row indices by descending value; equal values keep ascending index."""
    return np.argsort(-values, kind="stable")


def _ascending(values: np.ndarray) -> np.ndarray:
    return np.argsort(values, kind="stable")


def _random_unselected(rng: SplitMix64, taken: set[int], n_rows: int) -> int:
    available = [i for i in range(n_rows) if i not in taken]
    return available[rng.randbelow(len(available))]


def _walk_rankings(
    rankings: list[np.ndarray],
    n_rows: int,
    ablated_slots: set[int] | None = None,
    rng: SplitMix64 | None = None,
) -> tuple[list[int], bool]:
    """Resolve one pick per slot, in output order, against a shared taken-set.

    Each slot walks its own ranking and takes the first row not yet chosen
    by any earlier slot (the next-best rule). Ablated slots draw a seeded
    random unselected row instead. Stops early, flagging truncation, once
    every row is taken.
    """
    taken: set[int] = set()
    order: list[int] = []
    for slot, ranking in enumerate(rankings):
        if len(taken) == n_rows:
            return order, True
        if ablated_slots and slot in ablated_slots:
            pick = _random_unselected(rng, taken, n_rows)
        else:
            pick = next(int(i) for i in ranking if int(i) not in taken)
        taken.add(pick)
        order.append(pick)
    return order, len(order) < len(rankings)


def _projection_rankings(P: PcaProjection, version: str) -> list[np.ndarray]:
    """Per-slot rankings for a projection sampler: n max-side slots, n
    min-side slots, then n small-infinity-norm slots."""
    values = P.values
    n = values.shape[1]
    if version == "v1":
        max_scores = values
        min_scores = values
    elif version == "v2":
        # Rewards one large coordinate and penalizes magnitude elsewhere.
        abs_sum = np.abs(values).sum(axis=1, keepdims=True)
        others = abs_sum - np.abs(values)
        max_scores = values - others
        min_scores = values + others
    else:
        raise ValueError(f"unknown version {version!r}")
    norm_rank = _ascending(row_infinity_norms(P))
    rankings = [_descending(max_scores[:, i]) for i in range(n)]
    rankings += [_ascending(min_scores[:, i]) for i in range(n)]
    rankings += [norm_rank] * n
    return rankings


def _principled(
    P: PcaProjection,
    n: int,
    version: str,
    removed_parts: frozenset[str] = frozenset(),
    seed: int = 0,
    sampler_id: str | None = None,
) -> SampleSequence:
    if n < 1:
        raise ValueError("n must be >= 1")
    if P.n_components != n:
        raise ValueError(
            f"projection has {P.n_components} columns, expected n={n}"
        )
    rankings = _projection_rankings(P, version)
    ablated_slots: set[int] = set()
    for part, offset in zip(PART_NAMES, (0, n, 2 * n)):
        if part in removed_parts:
            ablated_slots.update(range(offset, offset + n))
    rng = SplitMix64(seed) if ablated_slots else None
    order, truncated = _walk_rankings(rankings, P.n_rows, ablated_slots, rng)
    params: dict = {"n": n}
    if ablated_slots:
        params["seed"] = seed
        params["removed"] = "".join(sorted(removed_parts))
    return SampleSequence(
        indices=tuple(order),
        sampler_id=sampler_id or version,
        params=params,
        truncated=truncated,
    )


def principled_v1(P: PcaProjection, n: int) -> SampleSequence:
    """Per component i: the row maximizing column i, then (after all max
    picks) the row minimizing column i; finally the n rows with smallest
    row infinity norm, in ascending-norm order. Output is Y then Z then W,
    deduplicated by the next-best rule."""
    return _principled(P, n, "v1")


def principled_v2(P: PcaProjection, n: int) -> SampleSequence:
    """Like v1, but extreme picks also require small magnitude on the other
    components: Y[i] maximizes P[j,i] - sum_{k != i} |P[j,k]| and Z[i]
    minimizes P[j,i] + sum_{k != i} |P[j,k]|. W is identical to v1."""
    return _principled(P, n, "v2")


def selection_sets(P: PcaProjection, n: int, version: str) -> SelectionSets:
    """The Y/Z/W groups of a projection sampler (requires no truncation)."""
    seq = _principled(P, n, version)
    if seq.truncated:
        raise ValueError("dataset too small to form full selection sets")
    idx = seq.indices
    return SelectionSets(Y=idx[:n], Z=idx[n : 2 * n], W=idx[2 * n :])


def ablate(
    spec: AblationSpec,
    P: PcaProjection,
    n: int,
    removed_parts: frozenset[str] | None = None,
) -> SampleSequence:
    """Run a projection sampler with one pick group (or, for test
    compositions, several) replaced by seeded random distinct rows. The
    replaced picks occupy their usual output positions."""
    parts = removed_parts or frozenset({spec.removed_part})
    sampler_id = spec.sampler_id if removed_parts is None else (
        spec.base + "".join(f"-{p}" for p in sorted(parts))
    )
    return _principled(
        P, n, spec.base, parts, seed=spec.seed, sampler_id=sampler_id
    )


# ---------------------------------------------------------------------------
# k-means (used by the clustering baselines)
# ---------------------------------------------------------------------------

def _pairwise_sq_to_centroids(X: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    diff = X[:, np.newaxis, :] - centroids[np.newaxis, :, :]
    return np.einsum("nkm,nkm->nk", diff, diff)


def _kmeans_pp_init(X: np.ndarray, k: int, rng: SplitMix64) -> np.ndarray:
    n_rows = X.shape[0]
    centroids = np.empty((k, X.shape[1]), dtype=np.float64)
    centroids[0] = X[rng.randbelow(n_rows)]
    d2 = ((X - centroids[0]) ** 2).sum(axis=1)
    for c in range(1, k):
        total = float(d2.sum())
        if total <= 0.0:
            idx = rng.randbelow(n_rows)
        else:
            threshold = rng.random() * total
            idx = int(np.searchsorted(np.cumsum(d2), threshold, side="right"))
            idx = min(idx, n_rows - 1)
        centroids[c] = X[idx]
        d2 = np.minimum(d2, ((X - centroids[c]) ** 2).sum(axis=1))
    return centroids


def kmeans(
    X: np.ndarray,
    k: int,
    rng: SplitMix64,
    max_iter: int = 300,
    rel_tol: float = 1e-4,
) -> tuple[np.ndarray, np.ndarray]:
    """Seeded k-means++ init followed by Lloyd iterations.

    Stops when the relative inertia improvement drops to rel_tol, the
    assignment stabilizes, or max_iter passes. Empty clusters keep their
    previous centroid. Returns (centroids, labels).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > X.shape[0]:
        raise ValueError(f"k={k} exceeds {X.shape[0]} points")
    centroids = _kmeans_pp_init(X, k, rng)
    prev_inertia: float | None = None
    labels = np.zeros(X.shape[0], dtype=np.int64)
    for _ in range(max_iter):
        d2 = _pairwise_sq_to_centroids(X, centroids)
        labels = d2.argmin(axis=1)
        inertia = float(d2[np.arange(X.shape[0]), labels].sum())
        if prev_inertia is not None and prev_inertia - inertia <= rel_tol * prev_inertia:
            break
        prev_inertia = inertia
        new_centroids = centroids.copy()
        for c in range(k):
            members = labels == c
            if members.any():
                new_centroids[c] = X[members].mean(axis=0)
        if np.array_equal(new_centroids, centroids):
            break
        centroids = new_centroids
    return centroids, labels


def baseline_clustering(
    X: EmbeddingMatrix | np.ndarray,
    n: int,
    seed: int,
    metric: str = "euclidean",
) -> SampleSequence:
    """k-means with k=n; from each cluster, in cluster-index order, pick the
    member nearest its centroid, the member farthest from it, and a seeded
    random remaining member. Collisions fall back to the next-best member
    on the same criterion; exhausted or empty clusters contribute seeded
    random unselected rows."""
    values = _prep_metric(_as_array(X), metric)
    n_rows = values.shape[0]
    if n_rows < 3 * n:
        raise ValueError(f"need at least {3 * n} rows, have {n_rows}")
    rng = SplitMix64(seed)
    centroids, labels = kmeans(values, n, rng)
    taken: set[int] = set()
    order: list[int] = []

    def emit(pick: int) -> None:
        taken.add(pick)
        order.append(pick)

    for c in range(n):
        members = np.flatnonzero(labels == c)
        if members.size:
            d2 = ((values[members] - centroids[c]) ** 2).sum(axis=1)
            near_rank = members[_ascending(d2)]
            far_rank = members[_descending(d2)]
        else:
            near_rank = far_rank = members
        for rank in (near_rank, far_rank):
            pick = next((int(i) for i in rank if int(i) not in taken), None)
            emit(pick if pick is not None else _random_unselected(rng, taken, n_rows))
        remaining = [int(i) for i in members if int(i) not in taken]
        if remaining:
            emit(remaining[rng.randbelow(len(remaining))])
        else:
            emit(_random_unselected(rng, taken, n_rows))
    return SampleSequence(
        indices=tuple(order),
        sampler_id="clustering",
        params={"n": n, "seed": seed},
    )


def baseline_pca_clustering(
    X: EmbeddingMatrix | np.ndarray,
    n: int,
    seed: int,
    n_components: int | None = None,
    metric: str = "euclidean",
    projection: PcaProjection | None = None,
) -> SampleSequence:
    """The clustering baseline run on a PCA projection of the embedding
    (default dimensionality: n). A matching precomputed projection may be
    supplied to avoid refitting."""
    n_components = n if n_components is None else n_components
    if projection is not None and projection.n_components == n_components:
        projected = projection.values
    else:
        values = _as_array(X)
        model = pca_fit(values, n_components)
        projected = pca_project(model, values).values
    seq = baseline_clustering(projected, n, seed, metric=metric)
    return SampleSequence(
        indices=seq.indices,
        sampler_id="pca-clustering",
        params={"n": n, "seed": seed, "n_components": n_components},
    )


def _pairwise_sq(values: np.ndarray) -> np.ndarray:
    gram = values @ values.T
    sq = np.diag(gram).copy()
    d2 = sq[:, np.newaxis] + sq[np.newaxis, :] - 2.0 * gram
    np.maximum(d2, 0.0, out=d2)
    return d2


def baseline_reverse_semantic_search(
    X: EmbeddingMatrix | np.ndarray,
    k: int,
    seed: int = 0,
    metric: str = "euclidean",
) -> SampleSequence:
    """Repeatedly take the two not-yet-selected rows at maximum distance
    (ties: lexicographically smallest index pair), emitting the lower index
    first. Deterministic; the seed is accepted for interface uniformity."""
    values = _prep_metric(_as_array(X), metric)
    n_rows = values.shape[0]
    if k % 2 != 0:
        raise ValueError("rss draws points in pairs; k must be even")
    if k < 2 or k > n_rows:
        raise ValueError(f"k={k} out of range for {n_rows} rows")
    d2 = _pairwise_sq(values)
    # Only i < j cells stay valid; argmax in row-major order then returns
    # the lexicographically smallest tied pair.
    mask = np.tril(np.ones_like(d2, dtype=bool))
    d2[mask] = -1.0
    order: list[int] = []
    for _ in range(k // 2):
        flat = int(np.argmax(d2))
        i, j = divmod(flat, n_rows)
        order.extend((i, j))
        d2[i, :] = -1.0
        d2[:, i] = -1.0
        d2[j, :] = -1.0
        d2[:, j] = -1.0
    return SampleSequence(
        indices=tuple(order), sampler_id="rss", params={"k": k}
    )


def baseline_kcenter(
    X: EmbeddingMatrix | np.ndarray,
    k: int,
    seed: int,
    metric: str = "euclidean",
) -> SampleSequence:
    """Greedy k-center: a seeded uniform start, then k-1 rounds of adding
    the row farthest (in minimum distance) from the selected set."""
    values = _prep_metric(_as_array(X), metric)
    n_rows = values.shape[0]
    if k < 1 or k > n_rows:
        raise ValueError(f"k={k} out of range for {n_rows} rows")
    rng = SplitMix64(seed)
    start = rng.randbelow(n_rows)
    order = [start]
    min_d2 = ((values - values[start]) ** 2).sum(axis=1)
    min_d2[start] = -1.0
    for _ in range(k - 1):
        pick = int(np.argmax(min_d2))
        order.append(pick)
        d2 = ((values - values[pick]) ** 2).sum(axis=1)
        np.minimum(min_d2, d2, out=min_d2)
        min_d2[pick] = -1.0
    return SampleSequence(
        indices=tuple(order), sampler_id="kcenter", params={"k": k, "seed": seed}
    )


def baseline_random(N: int, k: int, seed: int) -> SampleSequence:
    """Seeded Fisher-Yates; the first k slots of the permutation, in draw
    order."""
    if k < 1 or k > N:
        raise ValueError(f"k={k} out of range for N={N}")
    rng = SplitMix64(seed)
    return SampleSequence(
        indices=tuple(rng.sample_indices(N, k)),
        sampler_id="random",
        params={"k": k, "seed": seed},
    )


# ---------------------------------------------------------------------------
# String-id dispatch
# ---------------------------------------------------------------------------

def needs_projection(sampler_id: str) -> bool:
    return sampler_id.split("-")[0] in ("v1", "v2")


def run_sampler(
    sampler_id: str,
    X: EmbeddingMatrix | np.ndarray,
    n: int,
    seed: int = 0,
    metric: str = "euclidean",
    projection: PcaProjection | None = None,
) -> SampleSequence:
    """Run any registered sampler for 3n picks.

    Projection samplers accept a precomputed n-column projection; when it
    is absent, PCA is fitted here. The other samplers work on the raw
    embedding.
    """
    if sampler_id not in SAMPLER_IDS:
        raise ValueError(
            f"unknown sampler {sampler_id!r}; valid ids: {', '.join(SAMPLER_IDS)}"
        )
    if needs_projection(sampler_id):
        if projection is None:
            values = _as_array(X)
            projection = pca_project(pca_fit(values, n), values)
        base = sampler_id.split("-")[0]
        if sampler_id in ("v1", "v2"):
            return _principled(projection, n, base)
        part = sampler_id.split("-")[1]
        return ablate(AblationSpec(base=base, removed_part=part, seed=seed),
                      projection, n)
    if sampler_id == "clustering":
        return baseline_clustering(X, n, seed, metric=metric)
    if sampler_id == "pca-clustering":
        return baseline_pca_clustering(
            X, n, seed, metric=metric, projection=projection
        )
    if sampler_id == "rss":
        return baseline_reverse_semantic_search(X, 3 * n, seed, metric=metric)
    if sampler_id == "kcenter":
        return baseline_kcenter(X, 3 * n, seed, metric=metric)
    assert sampler_id == "random"
    return baseline_random(_as_array(X).shape[0], 3 * n, seed)
