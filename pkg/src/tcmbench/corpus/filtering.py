"""Term-density blocklist filter for off-topic (modern-medicine) text."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from ..errors import ValidationError
from .dedup import CorpusDocument


@dataclass
class BlockedDoc:
    doc_id: str
    hits_per_1000: float
    matched_terms: list[str]


def load_blocklist(path: str | Path) -> list[str]:
    """One term per line; blank lines and # comments ignored."""
    terms = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        term = line.strip()
        if term and not term.startswith("#"):
            terms.append(term)
    return terms


def filter_blocklist(
    documents: Sequence[CorpusDocument],
    blocklist: Sequence[str],
    max_hits_per_1000: float = 1.0,
) -> tuple[list[CorpusDocument], list[BlockedDoc]]:
    """Drop documents whose blocklist-term density exceeds the cap.

    Density is total term occurrences per 1000 characters of normalized
    text; a document sitting exactly at the cap is kept.
    """
    if not blocklist:
        raise ValidationError("blocklist must not be empty")
    kept: list[CorpusDocument] = []
    dropped: list[BlockedDoc] = []
    for doc in documents:
        length = max(len(doc.text), 1)
        matched = [(term, doc.text.count(term)) for term in blocklist]
        matched = [(term, count) for term, count in matched if count]
        density = sum(count for _, count in matched) / length * 1000.0
        if density > max_hits_per_1000:
            dropped.append(
                BlockedDoc(doc.doc_id, density, [term for term, _ in matched])
            )
        else:
            kept.append(doc)
    return kept, dropped
