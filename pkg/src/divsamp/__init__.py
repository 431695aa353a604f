"""divsamp: ordered diversity sampling over text embeddings.

Library layout:

- ``dataset``: CSV/JSONL loading and seeded benchmark subsampling
- ``embedding``: from-scratch TF-IDF and a cached remote embeddings client
- ``pca``: exact PCA with a deterministic sign convention
- ``samplers``: projection samplers v1/v2, their ablations, five baselines
- ``metric``: novelty oracles and the wasted-opportunity score
- ``harness``: benchmark sweeps, summary tables, ablations, timing
- ``synthetic``: Gaussian-cluster benchmark instances
- ``cli``: the ``divsamp`` command
"""

from .dataset import (
    BenchmarkInstance,
    DatasetError,
    LabeledDataset,
    TextDataset,
    load_csv,
    load_jsonl,
    subsample,
)
from .embedding import (
    EmbeddingMatrix,
    RemoteEmbedderConfig,
    TfidfConfig,
    embed_remote,
    tfidf_fit_transform,
)
from .metric import (
    AggWastedCurve,
    LabelOracle,
    ThresholdOracle,
    agg_wasted,
    brute_force_min_agg_wasted,
    is_new_label,
    wasted,
)
from .pca import (
    PcaModel,
    PcaProjection,
    pca_fit,
    pca_project,
    row_infinity_norms,
)
from .samplers import (
    SAMPLER_IDS,
    AblationSpec,
    SampleSequence,
    SelectionSets,
    ablate,
    baseline_clustering,
    baseline_kcenter,
    baseline_pca_clustering,
    baseline_random,
    baseline_reverse_semantic_search,
    principled_v1,
    principled_v2,
    run_sampler,
)
from .synthetic import gaussian_cluster_instance, gaussian_cluster_suite

__version__ = "0.1.0"

__all__ = [
    "AblationSpec",
    "AggWastedCurve",
    "BenchmarkInstance",
    "DatasetError",
    "EmbeddingMatrix",
    "LabelOracle",
    "LabeledDataset",
    "PcaModel",
    "PcaProjection",
    "RemoteEmbedderConfig",
    "SAMPLER_IDS",
    "SampleSequence",
    "SelectionSets",
    "TextDataset",
    "TfidfConfig",
    "ThresholdOracle",
    "ablate",
    "agg_wasted",
    "baseline_clustering",
    "baseline_kcenter",
    "baseline_pca_clustering",
    "baseline_random",
    "baseline_reverse_semantic_search",
    "brute_force_min_agg_wasted",
    "embed_remote",
    "gaussian_cluster_instance",
    "gaussian_cluster_suite",
    "is_new_label",
    "load_csv",
    "load_jsonl",
    "pca_fit",
    "pca_project",
    "principled_v1",
    "principled_v2",
    "row_infinity_norms",
    "run_sampler",
    "subsample",
    "tfidf_fit_transform",
    "wasted",
]
