"""HTTP chat-completion client with retry, jitter, and rate limiting."""

from __future__ import annotations

import logging
import random
import threading
import time
from dataclasses import dataclass
from typing import Callable

import httpx

from ..errors import ProtocolError, TransportError
from .endpoints import ChatRequest, ChatResponse, ModelEndpoint

log = logging.getLogger(__name__)

_RETRYABLE_STATUS = frozenset({408, 429, 500, 502, 503, 504})


@dataclass(frozen=True)
class RetryPolicy:
    """Exponential backoff with full jitter; tuned for throttled APIs."""

    attempts: int = 5
    base_delay: float = 1.0
    factor: float = 2.0
    max_delay: float = 30.0

    def delay(self, attempt: int, rng: random.Random) -> float:
        cap = min(self.max_delay, self.base_delay * self.factor**attempt)
        return rng.uniform(0.0, cap)


class _RateLimiter:
    """Serializes request starts so an endpoint's per-minute cap holds."""

    def __init__(self, requests_per_minute: float, clock: Callable[[], float], sleep: Callable[[float], None]):
        self._interval = 60.0 / requests_per_minute
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()
        self._next_start = 0.0

    def wait(self) -> None:
        with self._lock:
            now = self._clock()
            delay = max(0.0, self._next_start - now)
            self._next_start = max(now, self._next_start) + self._interval
        if delay > 0:
            self._sleep(delay)


class ChatClient:
    """Shareable across worker threads; only rate state is synchronized."""

    def __init__(
        self,
        http: httpx.Client | None = None,
        retry: RetryPolicy | None = None,
        *,
        sleep: Callable[[float], None] = time.sleep,
        clock: Callable[[], float] = time.monotonic,
        rng: random.Random | None = None,
        timeout: float = 120.0,
    ):
        self._http = http or httpx.Client(timeout=timeout)
        self.retry = retry or RetryPolicy()
        self._sleep = sleep
        self._clock = clock
        self._rng = rng or random.Random()
        self._limiters: dict[str, _RateLimiter] = {}
        self._limiter_lock = threading.Lock()

    def complete(self, endpoint: ModelEndpoint, request: ChatRequest) -> ChatResponse:
        """One chat completion, retried on throttle/5xx up to the policy cap."""
        headers = {}
        credential = endpoint.resolve_credential()
        if credential:
            headers["Authorization"] = f"Bearer {credential}"
        limiter = self._limiter_for(endpoint)

        body = request.body(endpoint.model_id)
        last_status: int | None = None
        last_error = ""
        for attempt in range(self.retry.attempts):
            if attempt:
                self._sleep(self.retry.delay(attempt - 1, self._rng))
            if limiter:
                limiter.wait()
            started = self._clock()
            try:
                response = self._http.post(endpoint.completion_url, json=body, headers=headers)
            except httpx.HTTPError as exc:
                last_status, last_error = None, str(exc)
                log.debug("attempt %d against %s failed: %s", attempt + 1, endpoint.model_id, exc)
                continue
            if response.status_code in _RETRYABLE_STATUS:
                last_status, last_error = response.status_code, response.text[:200]
                log.debug(
                    "attempt %d against %s: status %d", attempt + 1, endpoint.model_id, last_status
                )
                continue
            if response.status_code != 200:
                raise TransportError(
                    f"endpoint {endpoint.model_id} answered {response.status_code}: "
                    f"{response.text[:200]}",
                    status=response.status_code,
                    retries=attempt,
                )
            parsed = _parse_completion(response)
            parsed.latency_ms = (self._clock() - started) * 1000.0
            parsed.retries = attempt
            return parsed

        raise TransportError(
            f"endpoint {endpoint.model_id}: {self.retry.attempts} attempts exhausted "
            f"(last: {last_status or 'transport'} {last_error})",
            status=last_status,
            retries=self.retry.attempts,
        )

    def _limiter_for(self, endpoint: ModelEndpoint) -> _RateLimiter | None:
        if endpoint.requests_per_minute is None:
            return None
        with self._limiter_lock:
            limiter = self._limiters.get(endpoint.model_id)
            if limiter is None:
                limiter = _RateLimiter(endpoint.requests_per_minute, self._clock, self._sleep)
                self._limiters[endpoint.model_id] = limiter
            return limiter


def _parse_completion(response: httpx.Response) -> ChatResponse:
    try:
        payload = response.json()
        choice = payload["choices"][0]
        text = choice["message"]["content"]
        if not isinstance(text, str):
            raise TypeError("content is not a string")
    except Exception as exc:
        raise ProtocolError(f"malformed completion body: {exc}") from exc
    usage = payload.get("usage") or {}
    return ChatResponse(
        text=text,
        finish_reason=choice.get("finish_reason") or "stop",
        prompt_tokens=int(usage.get("prompt_tokens") or 0),
        completion_tokens=int(usage.get("completion_tokens") or 0),
    )


_default_client: ChatClient | None = None
_default_lock = threading.Lock()


def default_client() -> ChatClient:
    global _default_client
    with _default_lock:
        if _default_client is None:
            _default_client = ChatClient()
        return _default_client


def chat_complete(
    endpoint: ModelEndpoint, request: ChatRequest, *, client: ChatClient | None = None
) -> ChatResponse:
    return (client or default_client()).complete(endpoint, request)
