"""Client for a remote embeddings endpoint, with a content-addressed disk cache.

Wire format (OpenAI-style): POST {"model": ..., "input": [texts]} with a
bearer token; the response carries {"data": [{"index": i, "embedding":
[floats]}, ...]}. Every embedded text is cached on disk keyed by
(model, SHA-256 of text), so repeat runs replay bit-exactly and work
offline once the cache is warm.
"""

from __future__ import annotations

import json
import os
import random
import re
import tempfile
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from hashlib import sha256
from pathlib import Path

import numpy as np
import requests

from ..dataset import TextDataset
from .matrix import EmbeddingMatrix

DEFAULT_API_KEY_ENV = "DIVSAMP_API_KEY"

_BACKOFF_BASE_SECONDS = 0.5
_BACKOFF_CAP_SECONDS = 30.0


class RemoteEmbeddingError(RuntimeError):
    """Request-level failure: exhausted retries, HTTP error, or bad payload."""


@dataclass(frozen=True)
class RemoteEmbedderConfig:
    endpoint_url: str
    model_name: str = "text-embedding-3-small"
    api_key_env: str = DEFAULT_API_KEY_ENV
    batch_size: int = 64
    max_retries: int = 3
    cache_dir: str | Path = Path(".divsamp-cache")
    max_concurrent_requests: int = 1
    timeout_seconds: float = 60.0

    def __post_init__(self) -> None:
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        if self.max_concurrent_requests < 1:
            raise ValueError("max_concurrent_requests must be >= 1")


def _model_dir(config: RemoteEmbedderConfig) -> Path:
    safe = re.sub(r"[^A-Za-z0-9._-]", "_", config.model_name)
    return Path(config.cache_dir) / safe


def text_key(text: str) -> str:
    return sha256(text.encode("utf-8")).hexdigest()


def _cache_paths(config: RemoteEmbedderConfig, key: str) -> tuple[Path, Path]:
    base = _model_dir(config) / key
    return base.with_suffix(".vec"), base.with_suffix(".meta.json")


def _cache_read(config: RemoteEmbedderConfig, key: str) -> np.ndarray | None:
    vec_path, meta_path = _cache_paths(config, key)
    if not (vec_path.is_file() and meta_path.is_file()):
        return None
    return np.frombuffer(vec_path.read_bytes(), dtype="<f8").copy()


def _cache_write(
    config: RemoteEmbedderConfig, key: str, vector: np.ndarray
) -> None:
    # Write-temp-then-rename so concurrent writers never expose a torn file.
    vec_path, meta_path = _cache_paths(config, key)
    vec_path.parent.mkdir(parents=True, exist_ok=True)
    payload = np.asarray(vector, dtype="<f8").tobytes()
    meta = json.dumps(
        {"model": config.model_name, "dim": int(vector.shape[0]), "hash": key}
    )
    for path, data in ((vec_path, payload), (meta_path, meta.encode("utf-8"))):
        fd, tmp = tempfile.mkstemp(dir=str(path.parent), prefix=".tmp-")
        try:
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.replace(tmp, path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise


def _request_batch(
    config: RemoteEmbedderConfig, texts: list[str], api_key: str
) -> list[np.ndarray]:
    body = {"model": config.model_name, "input": texts}
    headers = {"Authorization": f"Bearer {api_key}"}
    last_error: Exception | None = None
    for attempt in range(config.max_retries + 1):
        if attempt > 0:
            delay = min(
                _BACKOFF_CAP_SECONDS, _BACKOFF_BASE_SECONDS * 2 ** (attempt - 1)
            )
            time.sleep(delay * (0.5 + random.random()))
        try:
            response = requests.post(
                config.endpoint_url,
                json=body,
                headers=headers,
                timeout=config.timeout_seconds,
            )
        except requests.RequestException as exc:
            last_error = exc
            continue
        if response.status_code >= 500 or response.status_code == 429:
            last_error = RemoteEmbeddingError(
                f"HTTP {response.status_code}: {response.text[:500]}"
            )
            continue
        if response.status_code != 200:
            raise RemoteEmbeddingError(
                f"HTTP {response.status_code} from {config.endpoint_url}: "
                f"{response.text[:500]}"
            )
        payload = response.json()
        rows = sorted(payload["data"], key=lambda item: item["index"])
        if len(rows) != len(texts):
            raise RemoteEmbeddingError(
                f"expected {len(texts)} embeddings, got {len(rows)}"
            )
        return [np.asarray(r["embedding"], dtype=np.float64) for r in rows]
    raise RemoteEmbeddingError(
        f"request failed after {config.max_retries + 1} attempts: {last_error}"
    )


def embed_remote(
    data: TextDataset, config: RemoteEmbedderConfig
) -> EmbeddingMatrix:
    """Embed every row, requesting only cache misses (one request per
    distinct text) and assembling rows in dataset order."""
    keys = [text_key(text) for text in data.rows]
    vectors: dict[str, np.ndarray] = {}
    for key in keys:
        if key not in vectors:
            cached = _cache_read(config, key)
            if cached is not None:
                vectors[key] = cached

    missing: list[tuple[str, str]] = []
    seen_missing: set[str] = set()
    for key, text in zip(keys, data.rows):
        if key not in vectors and key not in seen_missing:
            seen_missing.add(key)
            missing.append((key, text))

    if missing:
        api_key = os.environ.get(config.api_key_env, "")
        if not api_key:
            raise RemoteEmbeddingError(
                f"API key environment variable {config.api_key_env} is not "
                f"set and {len(missing)} texts are not cached"
            )
        batches = [
            missing[i : i + config.batch_size]
            for i in range(0, len(missing), config.batch_size)
        ]

        def fetch(batch: list[tuple[str, str]]) -> list[tuple[str, np.ndarray]]:
            got = _request_batch(config, [text for _, text in batch], api_key)
            return [(key, vec) for (key, _), vec in zip(batch, got)]

        if config.max_concurrent_requests > 1 and len(batches) > 1:
            with ThreadPoolExecutor(config.max_concurrent_requests) as pool:
                results = list(pool.map(fetch, batches))
        else:
            results = [fetch(batch) for batch in batches]
        for result in results:
            for key, vec in result:
                _cache_write(config, key, vec)
                vectors[key] = vec

    dims = {vectors[key].shape[0] for key in keys}
    if len(dims) != 1:
        raise RemoteEmbeddingError(
            f"dimension mismatch across embeddings: {sorted(dims)}"
        )
    matrix = np.vstack([vectors[key] for key in keys])
    return EmbeddingMatrix(
        values=matrix, embedder_id=f"remote:{config.model_name}"
    )


def cache_stats(cache_dir: str | Path) -> dict:
    """Entry counts and byte totals per model under a cache directory."""
    root = Path(cache_dir)
    per_model: dict[str, dict[str, int]] = {}
    total_entries = 0
    total_bytes = 0
    if root.is_dir():
        for model_dir in sorted(p for p in root.iterdir() if p.is_dir()):
            vecs = sorted(model_dir.glob("*.vec"))
            size = sum(p.stat().st_size for p in model_dir.iterdir())
            per_model[model_dir.name] = {
                "entries": len(vecs),
                "bytes": size,
            }
            total_entries += len(vecs)
            total_bytes += size
    return {
        "cache_dir": str(root),
        "entries": total_entries,
        "bytes": total_bytes,
        "models": per_model,
    }


def cache_clear(cache_dir: str | Path) -> int:
    """Remove all cached vectors and sidecars; returns entries removed."""
    root = Path(cache_dir)
    removed = 0
    if not root.is_dir():
        return 0
    for model_dir in root.iterdir():
        if not model_dir.is_dir():
            continue
        for path in list(model_dir.iterdir()):
            if path.suffix in (".vec", ".json") or path.name.startswith(".tmp-"):
                if path.suffix == ".vec":
                    removed += 1
                path.unlink()
        try:
            model_dir.rmdir()
        except OSError:
            pass
    return removed
