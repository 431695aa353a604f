"""From-scratch TF-IDF vectorizer producing dense, row-normalized matrices.

Semantics are pinned so they can be reproduced from the docstrings alone:
raw term counts, smooth idf ln((1+N)/(1+df)) + 1, document-frequency
filtering with min_df <= df <= ceil(max_df * N), lexicographic column
order, and L2-normalized rows. No external vectorizer is involved.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources

import numpy as np

from ..dataset import TextDataset
from .matrix import EmbeddingMatrix

_TOKEN_RE = re.compile(r"[^\W_]+", re.UNICODE)


class EmptyVocabularyError(ValueError):
    """No term survived document-frequency filtering; the config is too
    strict for the corpus size."""


def load_english_stopwords() -> frozenset[str]:
    """The fixed 318-word English stop list shipped with the package."""
    text = resources.files("divsamp.embedding").joinpath(
        "stopwords_en.txt"
    ).read_text(encoding="utf-8")
    return frozenset(text.split())


_ENGLISH_STOPWORDS = load_english_stopwords()


@dataclass(frozen=True)
class TfidfConfig:
    max_df: float = 0.5
    min_df: int = 5
    stop_words: frozenset[str] = field(default=_ENGLISH_STOPWORDS)
    lowercase: bool = True

    def __post_init__(self) -> None:
        if not 0.0 < self.max_df <= 1.0:
            raise ValueError("max_df must be a fraction in (0, 1]")
        if self.min_df < 0:
            raise ValueError("min_df must be non-negative")


def tokenize(text: str, config: TfidfConfig) -> list[str]:
    """Lowercase (if configured), split on non-alphanumeric runs, keep
    tokens of length >= 2, and drop stop words."""
    if config.lowercase:
        text = text.lower()
    return [
        tok
        for tok in _TOKEN_RE.findall(text)
        if len(tok) >= 2 and tok not in config.stop_words
    ]


def build_vocabulary(
    token_lists: list[list[str]], config: TfidfConfig
) -> list[str]:
    """Terms with df in [min_df, ceil(max_df * N)], lexicographic order."""
    n_docs = len(token_lists)
    df = Counter()
    for tokens in token_lists:
        df.update(set(tokens))
    max_count = math.ceil(config.max_df * n_docs)
    vocab = sorted(
        term for term, count in df.items() if config.min_df <= count <= max_count
    )
    if not vocab:
        raise EmptyVocabularyError(
            f"empty vocabulary: no term has document frequency in "
            f"[{config.min_df}, {max_count}] over {n_docs} documents"
        )
    return vocab


def tfidf_fit_transform(
    data: TextDataset, config: TfidfConfig | None = None
) -> EmbeddingMatrix:
    """Vectorize a text dataset into a dense N x M tf-idf matrix.

    weight(d, t) = count of t in d  *  (ln((1+N)/(1+df(t))) + 1), with each
    row L2-normalized afterwards (all-zero rows stay zero). Columns follow
    the lexicographic vocabulary order, so output is deterministic.
    """
    if config is None:
        config = TfidfConfig()
    token_lists = [tokenize(text, config) for text in data.rows]
    vocab = build_vocabulary(token_lists, config)
    col = {term: j for j, term in enumerate(vocab)}
    n_docs = len(token_lists)

    df = Counter()
    for tokens in token_lists:
        df.update(set(tok for tok in tokens if tok in col))
    idf = np.array(
        [math.log((1.0 + n_docs) / (1.0 + df[t])) + 1.0 for t in vocab]
    )

    values = np.zeros((n_docs, len(vocab)), dtype=np.float64)
    for i, tokens in enumerate(token_lists):
        for term, count in Counter(tokens).items():
            j = col.get(term)
            if j is not None:
                values[i, j] = count
    values *= idf[np.newaxis, :]

    norms = np.linalg.norm(values, axis=1)
    nonzero = norms > 0.0
    values[nonzero] /= norms[nonzero, np.newaxis]

    return EmbeddingMatrix(values=values, embedder_id="tfidf")
