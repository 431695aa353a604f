"""Embedders: a from-scratch TF-IDF vectorizer and a cached remote client."""

from .matrix import EmbeddingMatrix
from .remote import (
    DEFAULT_API_KEY_ENV,
    RemoteEmbedderConfig,
    RemoteEmbeddingError,
    cache_clear,
    cache_stats,
    embed_remote,
)
from .tfidf import (
    EmptyVocabularyError,
    TfidfConfig,
    load_english_stopwords,
    tfidf_fit_transform,
)

__all__ = [
    "DEFAULT_API_KEY_ENV",
    "EmbeddingMatrix",
    "EmptyVocabularyError",
    "RemoteEmbedderConfig",
    "RemoteEmbeddingError",
    "TfidfConfig",
    "cache_clear",
    "cache_stats",
    "embed_remote",
    "load_english_stopwords",
    "tfidf_fit_transform",
]
