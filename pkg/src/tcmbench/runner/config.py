"""Run configuration: endpoints, datasets, templates, decode parameters."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ValidationError
from ..modelclient import DEFAULT_TEMPLATES, ModelEndpoint, PromptTemplate, RetryPolicy
from ..scenarios import ScenarioKind


@dataclass(frozen=True)
class DecodeParams:
    temperature: float = 0.0
    max_tokens: int = 1024


@dataclass
class RunConfig:
    endpoints: list[ModelEndpoint]
    scenario_paths: dict[ScenarioKind, Path]
    cache_dir: Path
    output_dir: Path
    templates: dict[ScenarioKind, PromptTemplate] = field(default_factory=dict)
    seed: int = 0
    concurrency: int = 2
    embedding_provider: str | None = None
    decode: DecodeParams = field(default_factory=DecodeParams)
    retry: RetryPolicy = field(default_factory=RetryPolicy)

    def __post_init__(self) -> None:
        if not self.endpoints:
            raise ValidationError("config needs at least one endpoint")
        if not self.scenario_paths:
            raise ValidationError("config needs at least one scenario dataset")
        if self.cache_dir.resolve() == self.output_dir.resolve():
            raise ValidationError("output_dir must differ from cache_dir")
        if self.concurrency < 1:
            raise ValidationError("concurrency must be >= 1")
        seen = set()
        for endpoint in self.endpoints:
            if endpoint.model_id in seen:
                raise ValidationError(f"duplicate endpoint model_id {endpoint.model_id!r}")
            seen.add(endpoint.model_id)

    def template_for(self, kind: ScenarioKind) -> PromptTemplate | None:
        return self.templates.get(kind) or DEFAULT_TEMPLATES.get(kind)

    def all_templates(self) -> dict[ScenarioKind, PromptTemplate]:
        merged = dict(DEFAULT_TEMPLATES)
        merged.update(self.templates)
        return merged


def load_run_config(path: str | Path) -> RunConfig:
    """Read the single-document JSON config; see README for the schema."""
    path = Path(path)
    try:
        payload = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise ValidationError(f"{path}: config must be a JSON object")

    try:
        endpoints = [_endpoint_from(entry) for entry in payload.get("endpoints", [])]
        scenario_paths = {
            ScenarioKind.parse(kind): _resolve(path, value)
            for kind, value in (payload.get("scenarios") or {}).items()
        }
        templates = {
            ScenarioKind.parse(kind): PromptTemplate(
                system=str(entry["system"]),
                user=str(entry["user"]),
                exemplar=str(entry.get("exemplar", "")),
            )
            for kind, entry in (payload.get("templates") or {}).items()
        }
        decode_payload = payload.get("decode") or {}
        decode = DecodeParams(
            temperature=float(decode_payload.get("temperature", 0.0)),
            max_tokens=int(decode_payload.get("max_tokens", 1024)),
        )
        retry_payload = payload.get("retry") or {}
        retry = RetryPolicy(
            attempts=int(retry_payload.get("attempts", 5)),
            base_delay=float(retry_payload.get("base_delay", 1.0)),
            factor=float(retry_payload.get("factor", 2.0)),
            max_delay=float(retry_payload.get("max_delay", 30.0)),
        )
        config = RunConfig(
            endpoints=endpoints,
            scenario_paths=scenario_paths,
            cache_dir=_resolve(path, payload["cache_dir"]),
            output_dir=_resolve(path, payload["output_dir"]),
            templates=templates,
            seed=int(payload.get("seed", 0)),
            concurrency=int(payload.get("concurrency", 2)),
            embedding_provider=payload.get("embedding_provider"),
            decode=decode,
            retry=retry,
        )
    except KeyError as exc:
        raise ValidationError(f"{path}: missing config field {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{path}: bad config value: {exc}") from None
    return config


def config_digest(config: RunConfig, dataset_digests: dict[ScenarioKind, str]) -> str:
    """Pins endpoints, dataset contents, templates, and decode parameters."""
    templates = config.all_templates()
    payload = {
        "endpoints": [
            {
                "model_id": e.model_id,
                "kind": e.kind,
                "base_url": e.base_url,
                "completion_path": e.completion_path,
            }
            for e in config.endpoints
        ],
        "datasets": {kind.value: dataset_digests[kind] for kind in sorted(dataset_digests, key=lambda k: k.value)},
        "templates": {
            kind.value: [templates[kind].system, templates[kind].user, templates[kind].exemplar]
            for kind in sorted(config.scenario_paths, key=lambda k: k.value)
            if kind in templates
        },
        "decode": [config.decode.temperature, config.decode.max_tokens],
        "seed": config.seed,
        "embedding_provider": config.embedding_provider,
    }
    blob = json.dumps(payload, ensure_ascii=False, sort_keys=True)
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _endpoint_from(entry: object) -> ModelEndpoint:
    if not isinstance(entry, dict):
        raise ValidationError("endpoint entry must be an object")
    rpm = entry.get("requests_per_minute")
    return ModelEndpoint(
        model_id=str(entry["model_id"]),
        kind=str(entry.get("kind", "local-http")),
        base_url=str(entry["base_url"]),
        credential_env=entry.get("credential_env"),
        max_concurrent=int(entry.get("max_concurrent", 4)),
        requests_per_minute=float(rpm) if rpm is not None else None,
        completion_path=str(entry.get("completion_path", "/v1/chat/completions")),
    )


def _resolve(config_path: Path, value: object) -> Path:
    candidate = Path(str(value))
    if candidate.is_absolute():
        return candidate
    return (config_path.parent / candidate).resolve()
