"""Endpoint descriptions and the chat request/response value types."""

from __future__ import annotations

import os
from dataclasses import dataclass
from urllib.parse import urlparse

from ..errors import ConfigurationError, ValidationError

LOCAL_HTTP = "local-http"
REMOTE_API = "remote-api"
_ROLES = frozenset({"system", "user", "assistant"})


@dataclass(frozen=True)
class ModelEndpoint:
    """Where and how a model is reachable; never holds the credential itself."""

    model_id: str
    kind: str
    base_url: str
    credential_env: str | None = None
    max_concurrent: int = 4
    requests_per_minute: float | None = None
    completion_path: str = "/v1/chat/completions"

    def __post_init__(self) -> None:
        if self.kind not in (LOCAL_HTTP, REMOTE_API):
            raise ValidationError(f"endpoint kind must be local-http or remote-api, got {self.kind!r}")
        parsed = urlparse(self.base_url)
        if parsed.scheme not in ("http", "https") or not parsed.netloc:
            raise ValidationError(f"malformed base URL: {self.base_url!r}")
        if self.max_concurrent < 1:
            raise ValidationError("max_concurrent must be >= 1")
        if self.requests_per_minute is not None and self.requests_per_minute <= 0:
            raise ValidationError("requests_per_minute must be positive")

    @property
    def completion_url(self) -> str:
        return self.base_url.rstrip("/") + self.completion_path

    def resolve_credential(self) -> str | None:
        """Look up the API key by environment variable name, if configured."""
        if not self.credential_env:
            return None
        value = os.environ.get(self.credential_env)
        if not value:
            raise ConfigurationError(
                f"endpoint {self.model_id}: credential variable {self.credential_env} is not set"
            )
        return value


@dataclass(frozen=True)
class ChatMessage:
    role: str
    content: str

    def __post_init__(self) -> None:
        if self.role not in _ROLES:
            raise ValidationError(f"bad message role: {self.role!r}")


@dataclass(frozen=True)
class ChatRequest:
    messages: tuple[ChatMessage, ...]
    temperature: float = 0.0
    max_tokens: int = 1024

    def __post_init__(self) -> None:
        if not any(m.role == "user" for m in self.messages):
            raise ValidationError("chat request needs at least one user message")
        if self.temperature < 0:
            raise ValidationError("temperature must be non-negative")
        if self.max_tokens < 1:
            raise ValidationError("max_tokens must be >= 1")

    def body(self, model_id: str) -> dict[str, object]:
        return {
            "model": model_id,
            "messages": [{"role": m.role, "content": m.content} for m in self.messages],
            "temperature": self.temperature,
            "max_tokens": self.max_tokens,
        }


@dataclass
class ChatResponse:
    text: str
    finish_reason: str = "stop"
    latency_ms: float = 0.0
    prompt_tokens: int = 0
    completion_tokens: int = 0
    retries: int = 0
    retrieved_from_cache: bool = False


def chat_request(
    system: str | None, user: str, *, temperature: float = 0.0, max_tokens: int = 1024
) -> ChatRequest:
    messages: list[ChatMessage] = []
    if system:
        messages.append(ChatMessage("system", system))
    messages.append(ChatMessage("user", user))
    return ChatRequest(tuple(messages), temperature=temperature, max_tokens=max_tokens)
