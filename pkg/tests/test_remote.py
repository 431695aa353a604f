import json
import threading
from hashlib import sha256
from http.server import BaseHTTPRequestHandler, HTTPServer

import numpy as np
import pytest

from divsamp.dataset import TextDataset
from divsamp.embedding import (
    RemoteEmbedderConfig,
    RemoteEmbeddingError,
    cache_clear,
    cache_stats,
    embed_remote,
)


def deterministic_vector(text, dim=3):
    digest = sha256(text.encode("utf-8")).digest()
    return [b / 255.0 for b in digest[:dim]]


class MockEmbeddingServer:
    """Minimal in-process embeddings endpoint with scriptable failures."""

    def __init__(self, dim=3, fail_first=0, bad_dim_for=None):
        self.requests = 0
        self.texts_seen = []
        self.dim = dim
        self.fail_first = fail_first
        self.bad_dim_for = bad_dim_for or set()
        server = self

        class Handler(BaseHTTPRequestHandler):
            def do_POST(self):
                server.requests += 1
                length = int(self.headers["Content-Length"])
                body = json.loads(self.rfile.read(length))
                server.texts_seen.extend(body["input"])
                if server.requests <= server.fail_first:
                    self.send_response(500)
                    self.end_headers()
                    self.wfile.write(b"synthetic outage")
                    return
                data = []
                for i, text in enumerate(body["input"]):
                    dim = server.dim + (1 if text in server.bad_dim_for else 0)
                    data.append(
                        {"index": i, "embedding": deterministic_vector(text, dim)}
                    )
                payload = json.dumps({"data": data}).encode("utf-8")
                self.send_response(200)
                self.send_header("Content-Type", "application/json")
                self.end_headers()
                self.wfile.write(payload)

            def log_message(self, *args):
                pass

        self.httpd = HTTPServer(("127.0.0.1", 0), Handler)
        self.thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)
        self.thread.start()

    @property
    def url(self):
        host, port = self.httpd.server_address
        return f"http://{host}:{port}/v1/embeddings"

    def stop(self):
        self.httpd.shutdown()
        self.httpd.server_close()


@pytest.fixture
def server():
    srv = MockEmbeddingServer()
    yield srv
    srv.stop()


@pytest.fixture
def api_key(monkeypatch):
    monkeypatch.setenv("DIVSAMP_API_KEY", "test-key")


def _config(server, tmp_path, **kwargs):
    return RemoteEmbedderConfig(
        endpoint_url=server.url,
        model_name="mock-model",
        cache_dir=tmp_path / "cache",
        batch_size=kwargs.pop("batch_size", 2),
        **kwargs,
    )


def _dataset(texts):
    return TextDataset(rows=tuple(texts), source_id="mem")


def test_basic_shape_and_order(server, tmp_path, api_key):
    config = _config(server, tmp_path)
    out = embed_remote(_dataset(["alpha", "beta"]), config)
    assert out.values.shape == (2, 3)
    np.testing.assert_allclose(out.values[0], deterministic_vector("alpha"))
    np.testing.assert_allclose(out.values[1], deterministic_vector("beta"))
    assert out.embedder_id == "remote:mock-model"


def test_second_call_is_pure_cache_hit(server, tmp_path, api_key):
    config = _config(server, tmp_path)
    first = embed_remote(_dataset(["a", "b", "c"]), config)
    assert server.requests == 2  # 3 texts at batch_size 2
    again = embed_remote(_dataset(["a", "b", "c"]), config)
    assert server.requests == 2  # no new requests
    assert first.values.tobytes() == again.values.tobytes()


def test_warm_cache_needs_no_api_key(server, tmp_path, api_key, monkeypatch):
    config = _config(server, tmp_path)
    embed_remote(_dataset(["x"]), config)
    monkeypatch.delenv("DIVSAMP_API_KEY")
    out = embed_remote(_dataset(["x"]), config)
    assert out.values.shape == (1, 3)


def test_missing_api_key_with_cold_cache(server, tmp_path, monkeypatch):
    monkeypatch.delenv("DIVSAMP_API_KEY", raising=False)
    config = _config(server, tmp_path)
    with pytest.raises(RemoteEmbeddingError, match="DIVSAMP_API_KEY"):
        embed_remote(_dataset(["x"]), config)


def test_duplicates_request_once_and_share_vectors(server, tmp_path, api_key):
    config = _config(server, tmp_path, batch_size=10)
    out = embed_remote(_dataset(["same", "other", "same", "same"]), config)
    assert server.texts_seen.count("same") == 1
    np.testing.assert_array_equal(out.values[0], out.values[2])
    np.testing.assert_array_equal(out.values[0], out.values[3])


def test_row_alignment_under_permutation(server, tmp_path, api_key):
    config = _config(server, tmp_path)
    texts = [f"t{i}" for i in range(6)]
    base = embed_remote(_dataset(texts), config)
    perm = [4, 0, 5, 2, 1, 3]
    shuffled = embed_remote(_dataset([texts[i] for i in perm]), config)
    np.testing.assert_array_equal(shuffled.values, base.values[perm])


def test_retry_then_success(tmp_path, api_key):
    srv = MockEmbeddingServer(fail_first=2)
    try:
        config = _config(srv, tmp_path, max_retries=3)
        out = embed_remote(_dataset(["retry me"]), config)
        assert out.values.shape == (1, 3)
        assert srv.requests == 3
    finally:
        srv.stop()


def test_failure_after_max_retries(tmp_path, api_key):
    srv = MockEmbeddingServer(fail_first=99)
    try:
        config = _config(srv, tmp_path, max_retries=1)
        with pytest.raises(RemoteEmbeddingError, match="after 2 attempts"):
            embed_remote(_dataset(["never"]), config)
    finally:
        srv.stop()


def test_dimension_mismatch_detected(tmp_path, api_key):
    srv = MockEmbeddingServer(bad_dim_for={"wide"})
    try:
        config = _config(srv, tmp_path, batch_size=1)
        with pytest.raises(RemoteEmbeddingError, match="dimension mismatch"):
            embed_remote(_dataset(["normal", "wide"]), config)
    finally:
        srv.stop()


def test_cache_layout_and_sidecar(server, tmp_path, api_key):
    config = _config(server, tmp_path)
    embed_remote(_dataset(["hello"]), config)
    key = sha256(b"hello").hexdigest()
    vec_path = tmp_path / "cache" / "mock-model" / f"{key}.vec"
    meta_path = tmp_path / "cache" / "mock-model" / f"{key}.meta.json"
    assert vec_path.is_file() and meta_path.is_file()
    meta = json.loads(meta_path.read_text())
    assert meta == {"model": "mock-model", "dim": 3, "hash": key}
    stored = np.frombuffer(vec_path.read_bytes(), dtype="<f8")
    np.testing.assert_allclose(stored, deterministic_vector("hello"))


def test_cache_stats_and_clear(server, tmp_path, api_key):
    config = _config(server, tmp_path)
    embed_remote(_dataset(["one", "two"]), config)
    stats = cache_stats(tmp_path / "cache")
    assert stats["entries"] == 2
    assert stats["models"]["mock-model"]["entries"] == 2
    assert cache_clear(tmp_path / "cache") == 2
    assert cache_stats(tmp_path / "cache")["entries"] == 0


def test_concurrent_batches_preserve_order(tmp_path, api_key):
    srv = MockEmbeddingServer()
    try:
        config = _config(
            srv, tmp_path, batch_size=1, max_concurrent_requests=4
        )
        texts = [f"c{i}" for i in range(8)]
        out = embed_remote(_dataset(texts), config)
        for i, text in enumerate(texts):
            np.testing.assert_allclose(out.values[i], deterministic_vector(text))
    finally:
        srv.stop()


def test_http_4xx_fails_fast_with_body(tmp_path, api_key):
    class Handler(BaseHTTPRequestHandler):
        def do_POST(self):
            self.send_response(400)
            self.end_headers()
            self.wfile.write(b"bad input payload")

        def log_message(self, *args):
            pass

    httpd = HTTPServer(("127.0.0.1", 0), Handler)
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    try:
        host, port = httpd.server_address
        config = RemoteEmbedderConfig(
            endpoint_url=f"http://{host}:{port}/v1/embeddings",
            model_name="mock-model",
            cache_dir=tmp_path / "cache",
            max_retries=5,
        )
        with pytest.raises(RemoteEmbeddingError, match="bad input payload"):
            embed_remote(_dataset(["x"]), config)
    finally:
        httpd.shutdown()
        httpd.server_close()


def test_config_validation():
    with pytest.raises(ValueError):
        RemoteEmbedderConfig(endpoint_url="http://x", batch_size=0)
    with pytest.raises(ValueError):
        RemoteEmbedderConfig(endpoint_url="http://x", max_retries=-1)
