#!/usr/bin/env python3
# Embedding a tiny corpus two ways and projecting it with PCA.
#
# The TF-IDF vectorizer is implemented from scratch with pinned semantics
# (raw counts, smooth idf, lexicographic columns, unit-norm rows), so its
# output is reproducible anywhere. The remote client speaks the de-facto
# embeddings wire format and caches every vector on disk keyed by content
# hash; this demo only shows the cache layout since there is no live
# endpoint here.

import numpy as np

from divsamp import TextDataset, TfidfConfig, pca_fit, pca_project, tfidf_fit_transform
from divsamp.embedding import RemoteEmbedderConfig

corpus = TextDataset(
    rows=(
        "the cat sat on the mat",
        "a dog chased the cat",
        "stock markets rallied today",
        "markets fell as rates rose",
        "the dog slept on the mat",
        "rates and markets moved together",
    ),
    source_id="demo-corpus",
)

# Defaults (min_df=5, max_df=0.5) suit hundreds of documents; for six of
# them every term would be filtered away, so loosen the bounds.
config = TfidfConfig(min_df=1, max_df=1.0)
matrix = tfidf_fit_transform(corpus, config)
print(f"tf-idf matrix: {matrix.n_rows} x {matrix.n_dims} ({matrix.embedder_id})")
print("row norms:", np.round(np.linalg.norm(matrix.values, axis=1), 3))

# Two principal components separate the pet sentences from the finance
# ones; similar sentences project to similar coordinates.
model = pca_fit(matrix, 2)
projection = pca_project(model, matrix)
for text, coords in zip(corpus.rows, np.round(projection.values, 2)):
    print(f"  {str(coords):>16}  {text}")

# The remote embedder is configured like this; vectors land under
# <cache_dir>/<model>/<sha256 of text>.vec with a JSON sidecar, and repeat
# calls replay from disk without touching the network.
remote = RemoteEmbedderConfig(
    endpoint_url="https://api.example.com/v1/embeddings",
    model_name="text-embedding-3-small",
    cache_dir=".divsamp-cache",
    batch_size=64,
)
print()
print("remote embedder would cache under:",
      f"{remote.cache_dir}/{remote.model_name}/<sha256>.vec")
print("API key read from environment variable:", remote.api_key_env)
