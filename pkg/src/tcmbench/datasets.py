"""Benchmark dataset files: loading, validation, splitting, leakage checks.

A dataset is UTF-8 JSONL, one record per line with keys ``id``, ``kind``,
``question``, ``reference`` and optional ``options``, ``system_exemplar``,
``gold_items``, ``metadata.source``. A sidecar ``<file>.manifest.json``
carries the record count and content digest.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .errors import ValidationError
from .scenarios import ScenarioExample, ScenarioKind, unify_width

MANIFEST_SUFFIX = ".manifest.json"


@dataclass(frozen=True)
class DatasetManifest:
    count: int
    sha256: str
    kind: str


@dataclass
class DatasetFile:
    path: Path
    kind: ScenarioKind
    records: list[ScenarioExample]
    manifest: DatasetManifest


@dataclass(frozen=True)
class SplitSpec:
    seed: int
    test_count: int

    def __post_init__(self) -> None:
        if self.test_count < 0:
            raise ValidationError("test_count must be non-negative")


@dataclass
class LeakageReport:
    threshold: float
    exact_matches: list[tuple[str, str]] = field(default_factory=list)
    near_matches: list[tuple[str, str, float]] = field(default_factory=list)


@dataclass
class DatasetStats:
    count: int
    total_characters: int
    per_kind: dict[str, int]


def load_dataset(path: str | Path) -> DatasetFile:
    """Parse and schema-validate a JSONL dataset file.

    Errors name the offending line, record, or field. Duplicate ids and
    mixed scenario kinds within one file are rejected.
    """
    path = Path(path)
    if not path.exists():
        raise ValidationError(f"dataset file not found: {path}")
    raw = path.read_bytes()

    records: list[ScenarioExample] = []
    seen_ids: dict[str, int] = {}
    kind: ScenarioKind | None = None
    for lineno, line in enumerate(raw.decode("utf-8").splitlines(), start=1):
        if not line.strip():
            continue
        try:
            payload = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"{path}:{lineno}: malformed JSON: {exc.msg}") from exc
        record = _record_from_payload(payload, f"{path}:{lineno}")
        if record.id in seen_ids:
            raise ValidationError(
                f"{path}: duplicate id {record.id!r} on lines {seen_ids[record.id]} and {lineno}"
            )
        seen_ids[record.id] = lineno
        if kind is None:
            kind = record.kind
        elif record.kind is not kind:
            raise ValidationError(
                f"{path}:{lineno}: kind {record.kind.value} differs from file kind {kind.value}"
            )
        records.append(record)

    if kind is None:
        raise ValidationError(f"{path}: dataset file is empty")

    manifest = _read_sidecar(path) or DatasetManifest(
        count=len(records), sha256=hashlib.sha256(raw).hexdigest(), kind=kind.value
    )
    return DatasetFile(path=path, kind=kind, records=records, manifest=manifest)


def save_dataset(records: Sequence[ScenarioExample], path: str | Path) -> DatasetFile:
    """Write records in canonical JSONL form plus the sidecar manifest."""
    if not records:
        raise ValidationError("refusing to save an empty dataset")
    path = Path(path)
    lines = [_record_to_json(record) for record in records]
    data = ("\n".join(lines) + "\n").encode("utf-8")
    path.write_bytes(data)
    manifest = DatasetManifest(
        count=len(records), sha256=hashlib.sha256(data).hexdigest(), kind=records[0].kind.value
    )
    Path(str(path) + MANIFEST_SUFFIX).write_text(
        json.dumps(manifest.__dict__, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return DatasetFile(path=path, kind=records[0].kind, records=list(records), manifest=manifest)


def split_sample(dataset: DatasetFile, spec: SplitSpec) -> tuple[list[ScenarioExample], list[ScenarioExample]]:
    """Disjoint (train, test) partition, deterministic in (seed, record ids).

    Records are ranked by a keyed digest of their id, so the split is
    reproducible across machines and insertion orders; each side comes
    back in ascending-id order.
    """
    if spec.test_count > len(dataset.records):
        raise ValidationError(
            f"test_count {spec.test_count} exceeds record count {len(dataset.records)}"
        )
    ranked = sorted(dataset.records, key=lambda r: (_split_key(spec.seed, r.id), r.id))
    test_ids = {record.id for record in ranked[: spec.test_count]}
    train = sorted((r for r in dataset.records if r.id not in test_ids), key=lambda r: r.id)
    test = sorted((r for r in dataset.records if r.id in test_ids), key=lambda r: r.id)
    return train, test


def leakage_check(
    train: Iterable[tuple[str, str]],
    test: Iterable[tuple[str, str]],
    threshold: float = 0.8,
) -> LeakageReport:
    """Flag test texts that duplicate or nearly duplicate training texts.

    Exact matches are found by normalized-content digest; near matches by
    Jaccard similarity over character 5-gram sets at or above
    ``threshold``. Near matches never repeat exact pairs.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValidationError("threshold must be in (0, 1]")
    train_items = [(tid, _leakage_normalize(text)) for tid, text in train]
    test_items = [(tid, _leakage_normalize(text)) for tid, text in test]

    report = LeakageReport(threshold=threshold)
    train_digests: dict[str, list[str]] = {}
    for tid, text in train_items:
        train_digests.setdefault(hashlib.sha256(text.encode("utf-8")).hexdigest(), []).append(tid)

    exact_pairs: set[tuple[str, str]] = set()
    for test_id, text in test_items:
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        for train_id in train_digests.get(digest, ()):
            report.exact_matches.append((train_id, test_id))
            exact_pairs.add((train_id, test_id))

    train_grams = [(tid, _char_ngrams(text, 5)) for tid, text in train_items]
    test_grams = [(tid, _char_ngrams(text, 5)) for tid, text in test_items]
    for train_id, grams_a in train_grams:
        if not grams_a:
            continue
        for test_id, grams_b in test_grams:
            if not grams_b or (train_id, test_id) in exact_pairs:
                continue
            union = len(grams_a | grams_b)
            score = len(grams_a & grams_b) / union if union else 0.0
            if score >= threshold:
                report.near_matches.append((train_id, test_id, score))

    report.exact_matches.sort()
    report.near_matches.sort(key=lambda row: (-row[2], row[0], row[1]))
    return report


def dataset_stats(dataset: DatasetFile) -> DatasetStats:
    """Counts and sizes, cross-checked against the declared manifest."""
    if dataset.manifest.count != len(dataset.records):
        raise ValidationError(
            f"{dataset.path}: manifest declares {dataset.manifest.count} records, "
            f"file has {len(dataset.records)}"
        )
    total_chars = sum(
        len(r.question)
        + len(r.reference)
        + sum(len(item) for item in r.gold_items)
        + sum(len(text) for text in r.options.values())
        for r in dataset.records
    )
    per_kind: dict[str, int] = {}
    for record in dataset.records:
        per_kind[record.kind.value] = per_kind.get(record.kind.value, 0) + 1
    return DatasetStats(count=len(dataset.records), total_characters=total_chars, per_kind=per_kind)


def _record_from_payload(payload: object, where: str) -> ScenarioExample:
    if not isinstance(payload, dict):
        raise ValidationError(f"{where}: record must be an object")
    for key in ("id", "kind", "question", "reference"):
        if key not in payload:
            raise ValidationError(f"{where}: missing required field {key!r}")
    metadata = payload.get("metadata") or {}
    record = ScenarioExample(
        id=str(payload["id"]),
        kind=ScenarioKind.parse(str(payload["kind"])),
        question=str(payload["question"]),
        reference=str(payload["reference"]),
        options={str(k): str(v) for k, v in (payload.get("options") or {}).items()},
        gold_items=tuple(str(item) for item in (payload.get("gold_items") or [])),
        system_exemplar=payload.get("system_exemplar"),
        source=metadata.get("source") if isinstance(metadata, dict) else None,
    )
    try:
        record.validate()
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from None
    return record


def _record_to_json(record: ScenarioExample) -> str:
    payload: dict[str, object] = {
        "id": record.id,
        "kind": record.kind.value,
        "question": record.question,
        "reference": record.reference,
    }
    if record.options:
        payload["options"] = record.options
    if record.gold_items:
        payload["gold_items"] = list(record.gold_items)
    if record.system_exemplar is not None:
        payload["system_exemplar"] = record.system_exemplar
    if record.source is not None:
        payload["metadata"] = {"source": record.source}
    return json.dumps(payload, ensure_ascii=False, separators=(", ", ": "))


def _read_sidecar(path: Path) -> DatasetManifest | None:
    sidecar = Path(str(path) + MANIFEST_SUFFIX)
    if not sidecar.exists():
        return None
    try:
        payload = json.loads(sidecar.read_text(encoding="utf-8"))
        return DatasetManifest(
            count=int(payload["count"]), sha256=str(payload["sha256"]), kind=str(payload["kind"])
        )
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"corrupt dataset manifest {sidecar}: {exc}") from exc


def _split_key(seed: int, record_id: str) -> str:
    return hashlib.blake2b(
        f"{seed}:{record_id}".encode("utf-8"), digest_size=16
    ).hexdigest()


def _leakage_normalize(text: str) -> str:
    return "".join(unify_width(text).lower().split())


def _char_ngrams(text: str, n: int) -> set[str]:
    if len(text) < n:
        return {text} if text else set()
    return {text[i : i + n] for i in range(len(text) - n + 1)}
