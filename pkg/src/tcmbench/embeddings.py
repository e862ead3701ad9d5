"""Token-embedding providers backing the bertscore suite.

Three interchangeable sources: a seeded in-process hash embedder (zero
dependencies, used by dry runs and tests), precomputed fixture files,
and an HTTP client for the sidecar embedding service.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path
from typing import Sequence

import httpx
import numpy as np

from .errors import ConfigurationError, ProtocolError
from .metrics import tokenize

TokenMatrix = tuple[list[str], np.ndarray]


class HashEmbeddingProvider:
    """Deterministic per-token vectors seeded from the token text.

    Identical tokens always map to identical unit vectors, so identical
    texts score a bertscore F1 of exactly 1.0. Not semantic; meant for
    offline runs and plumbing tests.
    """

    def __init__(self, dim: int = 64):
        if dim < 2:
            raise ValueError("dim must be >= 2")
        self.dim = dim
        self._cache: dict[str, np.ndarray] = {}

    def embed(self, texts: Sequence[str]) -> list[TokenMatrix]:
        out = []
        for text in texts:
            tokens = tokenize(text)
            rows = (
                np.stack([self._vector(tok) for tok in tokens])
                if tokens
                else np.zeros((0, self.dim))
            )
            out.append((tokens, rows))
        return out

    def _vector(self, token: str) -> np.ndarray:
        vec = self._cache.get(token)
        if vec is None:
            seed = int.from_bytes(hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest(), "big")
            vec = np.random.default_rng(seed).standard_normal(self.dim)
            vec /= np.linalg.norm(vec)
            self._cache[token] = vec
        return vec


class FixtureEmbeddingProvider:
    """Embeddings read from a JSON file keyed by exact text.

    File layout: {"<text>": {"tokens": [...], "vectors": [[...], ...]}}.
    """

    def __init__(self, path: str | Path):
        self.path = Path(path)
        try:
            raw = json.loads(self.path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigurationError(f"cannot read embedding fixture {self.path}: {exc}") from exc
        self._entries = {
            text: (list(entry["tokens"]), np.asarray(entry["vectors"], dtype=np.float64))
            for text, entry in raw.items()
        }

    def embed(self, texts: Sequence[str]) -> list[TokenMatrix]:
        out = []
        for text in texts:
            if text not in self._entries:
                raise ConfigurationError(f"no fixture embedding for text: {text[:60]!r}")
            tokens, rows = self._entries[text]
            out.append((list(tokens), rows))
        return out


class HttpEmbeddingProvider:
    """Client for the sidecar embedding service (POST <base>/embed)."""

    def __init__(
        self,
        base_url: str,
        *,
        max_tokens_per_text: int = 512,
        client: httpx.Client | None = None,
        timeout: float = 60.0,
    ):
        self.base_url = base_url.rstrip("/")
        self.max_tokens_per_text = max_tokens_per_text
        self._client = client or httpx.Client(timeout=timeout)

    def embed(self, texts: Sequence[str]) -> list[TokenMatrix]:
        response = self._client.post(
            f"{self.base_url}/embed",
            json={"texts": list(texts), "max_tokens_per_text": self.max_tokens_per_text},
        )
        if response.status_code != 200:
            raise ProtocolError(
                f"embedding service answered {response.status_code}: {response.text[:200]}"
            )
        try:
            body = response.json()
            results = [
                (list(item["tokens"]), np.asarray(item["vectors"], dtype=np.float64))
                for item in body["results"]
            ]
        except (KeyError, TypeError, ValueError) as exc:
            raise ProtocolError(f"malformed embedding response: {exc}") from exc
        if len(results) != len(texts):
            raise ProtocolError(
                f"embedding service returned {len(results)} results for {len(texts)} texts"
            )
        return results


def provider_from_address(address: str | None):
    """Build a provider from a config address.

    Accepted forms: ``hash`` or ``hash:<dim>``, ``fixture:<path>``, and
    ``http(s)://host:port``. ``None`` yields no provider.
    """
    if address is None or address == "":
        return None
    if address == "hash":
        return HashEmbeddingProvider()
    if address.startswith("hash:"):
        return HashEmbeddingProvider(dim=int(address.split(":", 1)[1]))
    if address.startswith("fixture:"):
        return FixtureEmbeddingProvider(address.split(":", 1)[1])
    if address.startswith(("http://", "https://")):
        return HttpEmbeddingProvider(address)
    raise ConfigurationError(f"unrecognized embedding provider address: {address!r}")
