"""Embedding backbones behind the service.

The default ``hash-v1`` backbone derives a fixed unit vector from each
token's bytes: fully deterministic, no model download, good enough for
plumbing and identity checks. Real semantic scores come from the
optional ``transformers:<model-id>`` backbone, which needs local weights
and the transformers extra installed.
"""

from __future__ import annotations

import hashlib
import re
from typing import Protocol

import numpy as np

_CJK = r"㐀-䶿一-鿿豈-﫿"
_TOKEN = re.compile(rf"[{_CJK}]|[a-z0-9]+")


def tokenize(text: str) -> list[str]:
    """CJK characters one by one, Latin/digit runs as lowercased words."""
    return _TOKEN.findall(text.lower())


class Backbone(Protocol):
    model_id: str
    dim: int

    def encode(self, text: str, max_tokens: int) -> tuple[list[str], np.ndarray, bool]: ...


class HashBackbone:
    def __init__(self, dim: int = 64):
        if dim < 2:
            raise ValueError("dim must be >= 2")
        self.model_id = "hash-v1"
        self.dim = dim
        self._vectors: dict[str, np.ndarray] = {}

    def encode(self, text: str, max_tokens: int) -> tuple[list[str], np.ndarray, bool]:
        tokens = tokenize(text)
        truncated = len(tokens) > max_tokens
        tokens = tokens[:max_tokens]
        if not tokens:
            return [], np.zeros((0, self.dim)), truncated
        rows = np.stack([self._vector(token) for token in tokens])
        return tokens, rows, truncated

    def _vector(self, token: str) -> np.ndarray:
        vec = self._vectors.get(token)
        if vec is None:
            seed = int.from_bytes(
                hashlib.blake2b(token.encode("utf-8"), digest_size=8).digest(), "big"
            )
            vec = np.random.default_rng(seed).standard_normal(self.dim)
            vec /= np.linalg.norm(vec)
            self._vectors[token] = vec
        return vec


class TransformersBackbone:
    """Contextual token embeddings from a locally available model."""

    def __init__(self, model_id: str):
        try:
            import torch
            from transformers import AutoModel, AutoTokenizer
        except ImportError as exc:
            raise RuntimeError(
                "transformers backbone needs the 'transformers' extra installed"
            ) from exc
        self.model_id = model_id
        self._torch = torch
        self._tokenizer = AutoTokenizer.from_pretrained(model_id)
        self._model = AutoModel.from_pretrained(model_id)
        self._model.eval()
        self.dim = int(self._model.config.hidden_size)

    def encode(self, text: str, max_tokens: int) -> tuple[list[str], np.ndarray, bool]:
        encoded = self._tokenizer(
            text, return_tensors="pt", truncation=True, max_length=max_tokens
        )
        truncated = bool(
            len(self._tokenizer(text, truncation=False)["input_ids"])
            > encoded["input_ids"].shape[1]
        )
        with self._torch.no_grad():
            hidden = self._model(**encoded).last_hidden_state.squeeze(0)
        tokens = self._tokenizer.convert_ids_to_tokens(encoded["input_ids"].squeeze(0))
        return list(tokens), hidden.double().numpy(), truncated


def build_backbone(spec: str, dim: int = 64) -> Backbone:
    """``hash-v1`` (optionally honouring ``dim``) or ``transformers:<id>``."""
    if spec in ("hash", "hash-v1"):
        return HashBackbone(dim=dim)
    if spec.startswith("transformers:"):
        return TransformersBackbone(spec.split(":", 1)[1])
    raise ValueError(f"unknown backbone spec: {spec!r}")
