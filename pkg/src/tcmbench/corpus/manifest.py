"""Corpus accounting: per-source sizes and instruction counts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .dedup import CorpusDocument
from .instructions import InstructionRecord


@dataclass
class SourceStats:
    documents: int = 0
    bytes: int = 0


@dataclass
class CorpusManifest:
    per_source: dict[str, SourceStats] = field(default_factory=dict)
    total_documents: int = 0
    total_bytes: int = 0
    qa_count: int = 0

    def check_totals(self) -> None:
        assert self.total_documents == sum(s.documents for s in self.per_source.values())
        assert self.total_bytes == sum(s.bytes for s in self.per_source.values())


def corpus_manifest(
    documents: Sequence[CorpusDocument],
    instruction_records: Sequence[InstructionRecord] = (),
) -> CorpusManifest:
    """Tally normalized-text bytes and documents per source, plus QA count."""
    manifest = CorpusManifest()
    for doc in documents:
        stats = manifest.per_source.setdefault(doc.source, SourceStats())
        stats.documents += 1
        stats.bytes += len(doc.text.encode("utf-8"))
    manifest.total_documents = sum(s.documents for s in manifest.per_source.values())
    manifest.total_bytes = sum(s.bytes for s in manifest.per_source.values())
    manifest.qa_count = len(instruction_records)
    return manifest


def manifest_as_dict(manifest: CorpusManifest) -> dict[str, object]:
    return {
        "per_source": {
            source: {"documents": stats.documents, "bytes": stats.bytes}
            for source, stats in sorted(manifest.per_source.items())
        },
        "total_documents": manifest.total_documents,
        "total_bytes": manifest.total_bytes,
        "qa_count": manifest.qa_count,
    }
