"""The run ledger: one status entry per (model, scenario) pair."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import ValidationError
from ..scenarios import ScenarioKind

PENDING = "pending"
COMPLETE = "complete"
FAILED = "failed"

MANIFEST_NAME = "manifest.json"

Pair = tuple[str, ScenarioKind]


@dataclass
class PairStatus:
    status: str = PENDING
    started: str | None = None
    finished: str | None = None
    error: str | None = None


@dataclass
class RunManifest:
    config_digest: str
    decode: dict[str, object]
    entries: dict[Pair, PairStatus] = field(default_factory=dict)

    @property
    def run_id(self) -> str:
        return self.config_digest[:12]

    def mark(self, pair: Pair, status: str, error: str | None = None) -> None:
        entry = self.entries[pair]
        now = _now()
        if status == PENDING:
            entry.started = now
        else:
            entry.finished = now
        entry.status = status
        entry.error = error

    def pairs_with_status(self, status: str) -> list[Pair]:
        return [pair for pair, entry in sorted(self.entries.items()) if entry.status == status]

    def save(self, output_dir: str | Path) -> Path:
        path = Path(output_dir) / MANIFEST_NAME
        payload = {
            "config_digest": self.config_digest,
            "decode": self.decode,
            "entries": {
                f"{model}::{kind.value}": {
                    "status": entry.status,
                    "started": entry.started,
                    "finished": entry.finished,
                    "error": entry.error,
                }
                for (model, kind), entry in sorted(self.entries.items())
            },
        }
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload, ensure_ascii=False, indent=2) + "\n", encoding="utf-8")
        return path

    @classmethod
    def load(cls, output_dir: str | Path) -> "RunManifest":
        path = Path(output_dir) / MANIFEST_NAME
        try:
            payload = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"cannot read run manifest {path}: {exc}") from exc
        manifest = cls(
            config_digest=str(payload["config_digest"]), decode=dict(payload.get("decode") or {})
        )
        for key, entry in (payload.get("entries") or {}).items():
            model, _, kind = key.partition("::")
            manifest.entries[(model, ScenarioKind.parse(kind))] = PairStatus(
                status=str(entry.get("status", PENDING)),
                started=entry.get("started"),
                finished=entry.get("finished"),
                error=entry.get("error"),
            )
        return manifest


def _now() -> str:
    return time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
