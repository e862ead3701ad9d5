"""Uniform access to local and remote chat-completion endpoints."""

from .batch import batch_dispatch
from .cache import cache_key, cache_path, cached_complete
from .client import ChatClient, RetryPolicy, chat_complete, default_client
from .endpoints import (
    LOCAL_HTTP,
    REMOTE_API,
    ChatMessage,
    ChatRequest,
    ChatResponse,
    ModelEndpoint,
    chat_request,
)
from .prompts import DEFAULT_TEMPLATES, PromptTemplate, render_options, render_prompt

__all__ = [
    "batch_dispatch",
    "cache_key",
    "cache_path",
    "cached_complete",
    "ChatClient",
    "RetryPolicy",
    "chat_complete",
    "default_client",
    "LOCAL_HTTP",
    "REMOTE_API",
    "ChatMessage",
    "ChatRequest",
    "ChatResponse",
    "ModelEndpoint",
    "chat_request",
    "DEFAULT_TEMPLATES",
    "PromptTemplate",
    "render_options",
    "render_prompt",
]
