"""The HTTP surface: POST /embed, GET /info, GET /health."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .backbones import Backbone

DEFAULT_MAX_BATCH = 64
DEFAULT_MAX_TOKENS = 512


class EmbedRequest(BaseModel):
    texts: list[str] = Field(min_length=1)
    max_tokens_per_text: int = Field(default=DEFAULT_MAX_TOKENS, ge=1)


class TextEmbedding(BaseModel):
    tokens: list[str]
    vectors: list[list[float]]
    truncated: bool


class EmbedResponse(BaseModel):
    model: str
    dim: int
    results: list[TextEmbedding]


def create_app(backbone: Backbone, max_batch: int = DEFAULT_MAX_BATCH) -> FastAPI:
    app = FastAPI(title="tcm-embedder", version="0.1.0")

    @app.post("/embed", response_model=EmbedResponse)
    def embed(request: EmbedRequest) -> EmbedResponse:
        if len(request.texts) > max_batch:
            raise HTTPException(
                status_code=413,
                detail=f"batch of {len(request.texts)} exceeds max_batch {max_batch}",
            )
        for index, text in enumerate(request.texts):
            if not text:
                raise HTTPException(status_code=400, detail=f"texts[{index}] is empty")
        results = []
        for text in request.texts:
            tokens, rows, truncated = backbone.encode(text, request.max_tokens_per_text)
            results.append(
                TextEmbedding(tokens=tokens, vectors=rows.tolist(), truncated=truncated)
            )
        return EmbedResponse(model=backbone.model_id, dim=backbone.dim, results=results)

    @app.get("/info")
    def info() -> dict:
        return {
            "model": backbone.model_id,
            "dim": backbone.dim,
            "max_batch": max_batch,
            "healthy": True,
        }

    @app.get("/health")
    def health() -> dict:
        return {"ok": True}

    return app
