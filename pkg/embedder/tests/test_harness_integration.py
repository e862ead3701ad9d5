"""The evaluation harness talking to this service over its HTTP surface."""

import pytest
from fastapi.testclient import TestClient

from embedder.app import create_app
from embedder.backbones import HashBackbone

tcmbench = pytest.importorskip("tcmbench")

from tcmbench.embeddings import HttpEmbeddingProvider  # noqa: E402
from tcmbench.metrics import bert_score  # noqa: E402


@pytest.fixture(scope="module")
def provider():
    # TestClient is an httpx.Client bound to the app, so the provider
    # exercises its real wire path without a socket.
    http = TestClient(create_app(HashBackbone(dim=48), max_batch=64))
    return HttpEmbeddingProvider("http://testserver", client=http)


def test_identical_texts_score_near_one(provider):
    text = "人参大补元气，复脉固脱，补脾益肺。"
    (cand_tokens, cand_rows), (ref_tokens, ref_rows) = provider.embed([text, text])
    assert cand_tokens == ref_tokens
    assert bert_score(cand_rows, ref_rows).f1 >= 0.999


def test_repeated_harness_calls_are_deterministic(provider):
    texts = ["黄芪固表止汗", "当归补血活血"]
    first = provider.embed(texts)
    second = provider.embed(texts)
    for (tokens_a, rows_a), (tokens_b, rows_b) in zip(first, second):
        assert tokens_a == tokens_b
        assert (rows_a == rows_b).all()


def test_unrelated_texts_score_below_identity(provider):
    (a_tokens, a_rows), (b_tokens, b_rows) = provider.embed(["人参补气", "针灸推拿"])
    assert bert_score(a_rows, b_rows).f1 < 0.999
