"""Content-addressed response cache shared across runs.

Entries are keyed by a digest of (model, messages, temperature,
max_tokens) and written atomically via temp-file rename, so concurrent
writers of the same key are safe. Invalidation is manual: delete files.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import re
import threading
import time
import uuid
from pathlib import Path

from .client import ChatClient, chat_complete
from .endpoints import ChatRequest, ChatResponse, ModelEndpoint

log = logging.getLogger(__name__)

_SAFE = re.compile(r"[^A-Za-z0-9._-]+")


def cache_key(model_id: str, request: ChatRequest) -> str:
    payload = json.dumps(request.body(model_id), ensure_ascii=False, sort_keys=True)
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def cache_path(cache_dir: str | Path, model_id: str, request: ChatRequest) -> Path:
    safe_model = _SAFE.sub("_", model_id) or "model"
    return Path(cache_dir) / safe_model / f"{cache_key(model_id, request)}.json"


def cached_complete(
    endpoint: ModelEndpoint,
    request: ChatRequest,
    cache_dir: str | Path,
    *,
    client: ChatClient | None = None,
) -> ChatResponse:
    """Serve from cache when possible; otherwise call out and persist."""
    path = cache_path(cache_dir, endpoint.model_id, request)
    if path.exists():
        entry = _read_entry(path)
        if entry is not None:
            response = _response_from_entry(entry)
            if response is not None:
                response.retrieved_from_cache = True
                return response
        log.warning("corrupt cache entry %s; refetching", path)

    response = chat_complete(endpoint, request, client=client)
    _write_entry(path, endpoint.model_id, request, response)
    return response


def _read_entry(path: Path) -> dict | None:
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
        return payload if isinstance(payload, dict) else None
    except (OSError, json.JSONDecodeError):
        return None


def _response_from_entry(entry: dict) -> ChatResponse | None:
    stored = entry.get("response")
    if not isinstance(stored, dict) or not isinstance(stored.get("text"), str):
        return None
    return ChatResponse(
        text=stored["text"],
        finish_reason=str(stored.get("finish_reason") or "stop"),
        latency_ms=float(stored.get("latency_ms") or 0.0),
        prompt_tokens=int(stored.get("prompt_tokens") or 0),
        completion_tokens=int(stored.get("completion_tokens") or 0),
    )


def _write_entry(path: Path, model_id: str, request: ChatRequest, response: ChatResponse) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    entry = {
        "request": request.body(model_id),
        "response": {
            "text": response.text,
            "finish_reason": response.finish_reason,
            "latency_ms": response.latency_ms,
            "prompt_tokens": response.prompt_tokens,
            "completion_tokens": response.completion_tokens,
        },
        "created": time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()),
    }
    # Unique per writer: concurrent threads may persist the same key.
    tmp = path.with_name(
        f"{path.name}.tmp-{os.getpid()}-{threading.get_ident()}-{uuid.uuid4().hex[:8]}"
    )
    tmp.write_text(json.dumps(entry, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
    os.replace(tmp, path)
