"""Ordered fan-out of chat requests under an endpoint's concurrency bound."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Sequence

from .cache import cached_complete
from .client import ChatClient, chat_complete
from .endpoints import ChatRequest, ChatResponse, ModelEndpoint


def batch_dispatch(
    endpoint: ModelEndpoint,
    requests: Sequence[ChatRequest],
    *,
    cache_dir: str | Path | None = None,
    client: ChatClient | None = None,
) -> list[ChatResponse | Exception]:
    """Dispatch requests concurrently, preserving input order in the result.

    At most ``endpoint.max_concurrent`` calls are in flight. A failing
    request leaves its exception in its slot instead of aborting the
    batch; callers decide how to handle partial failure.
    """
    if not requests:
        return []

    def one(request: ChatRequest) -> ChatResponse | Exception:
        try:
            if cache_dir is not None:
                return cached_complete(endpoint, request, cache_dir, client=client)
            return chat_complete(endpoint, request, client=client)
        except Exception as exc:
            return exc

    workers = min(endpoint.max_concurrent, len(requests))
    if workers == 1:
        return [one(request) for request in requests]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, requests))
