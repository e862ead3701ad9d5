"""Exact and near-duplicate removal over normalized corpus documents.

Near-duplicate candidates come from banded MinHash signatures over
character 5-grams; every candidate pair is confirmed with the exact
Jaccard similarity before it is reported, so the final report carries no
false positives.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ..errors import ValidationError
from .normalize import normalize_document

SHINGLE_WIDTH = 5


@dataclass(frozen=True)
class MinHashParams:
    num_hashes: int = 128
    bands: int = 32
    seed: int = 0x7C3D

    def __post_init__(self) -> None:
        if self.num_hashes % self.bands:
            raise ValidationError("num_hashes must be a multiple of bands")

    @property
    def rows_per_band(self) -> int:
        return self.num_hashes // self.bands


@dataclass
class CorpusDocument:
    """One source text flowing through the dedup pipeline."""

    doc_id: str
    source: str
    raw_text: str
    text: str = ""
    digest: str = ""
    signature: np.ndarray | None = None

    def __post_init__(self) -> None:
        if not self.text:
            self.text = normalize_document(self.raw_text)
        if not self.digest:
            self.digest = hashlib.sha256(self.text.encode("utf-8")).hexdigest()


@dataclass
class DropRecord:
    doc_id: str
    reason: str
    duplicate_of: str | None = None


def make_documents(items: Iterable[tuple[str, str, str]]) -> list[CorpusDocument]:
    """Build documents from (doc_id, source, raw_text) triples."""
    return [CorpusDocument(doc_id=i, source=s, raw_text=t) for i, s, t in items]


def dedup_exact(documents: Sequence[CorpusDocument]) -> tuple[list[CorpusDocument], list[DropRecord]]:
    """Keep the first document per content digest; drop empties.

    Idempotent: rerunning on the kept list drops nothing.
    """
    kept: list[CorpusDocument] = []
    dropped: list[DropRecord] = []
    first_by_digest: dict[str, str] = {}
    for doc in documents:
        if not doc.text.strip():
            dropped.append(DropRecord(doc.doc_id, "empty"))
            continue
        owner = first_by_digest.get(doc.digest)
        if owner is not None:
            dropped.append(DropRecord(doc.doc_id, "exact-duplicate", duplicate_of=owner))
            continue
        first_by_digest[doc.digest] = doc.doc_id
        kept.append(doc)
    return kept, dropped


def shingle_set(text: str, width: int = SHINGLE_WIDTH) -> set[str]:
    if len(text) < width:
        return {text} if text else set()
    return {text[i : i + width] for i in range(len(text) - width + 1)}


def exact_jaccard(a: set[str], b: set[str]) -> float:
    if not a or not b:
        return 0.0
    return len(a & b) / len(a | b)


class MinHasher:
    """Seeded universal-hash MinHash over character shingles."""

    def __init__(self, params: MinHashParams | None = None):
        self.params = params or MinHashParams()
        rng = np.random.default_rng(self.params.seed)
        n = self.params.num_hashes
        self._mult = (rng.integers(1, 2**63, size=n, dtype=np.uint64) << np.uint64(1)) | np.uint64(1)
        self._add = rng.integers(0, 2**63, size=n, dtype=np.uint64)

    def signature(self, text: str) -> np.ndarray:
        shingles = shingle_set(text)
        if not shingles:
            return np.full(self.params.num_hashes, np.iinfo(np.uint64).max, dtype=np.uint64)
        base = np.fromiter(
            (
                int.from_bytes(hashlib.blake2b(s.encode("utf-8"), digest_size=8).digest(), "big")
                for s in sorted(shingles)
            ),
            dtype=np.uint64,
            count=len(shingles),
        )
        # 64-bit wraparound multiply-add; the min per slot is the signature.
        # Blocked so the intermediate stays small for megabyte documents.
        signature = np.full(self.params.num_hashes, np.iinfo(np.uint64).max, dtype=np.uint64)
        for start in range(0, len(base), 65536):
            block = base[start : start + 65536]
            products = block[:, None] * self._mult[None, :] + self._add[None, :]
            np.minimum(signature, products.min(axis=0), out=signature)
        return signature


def near_dup_scan(
    documents: Sequence[CorpusDocument],
    threshold: float = 0.9,
    params: MinHashParams | None = None,
) -> list[tuple[str, str, float]]:
    """Report document pairs whose exact 5-gram Jaccard reaches ``threshold``.

    Signatures are built (or reused) with shared parameters; banding
    proposes candidates and an exact-Jaccard pass confirms them. Pairs
    come back sorted by similarity descending.
    """
    if not 0.0 < threshold <= 1.0:
        raise ValidationError("threshold must be in (0, 1]")
    params = params or MinHashParams()
    hasher = MinHasher(params)
    for doc in documents:
        if doc.signature is None:
            doc.signature = hasher.signature(doc.text)
        elif len(doc.signature) != params.num_hashes:
            raise ValidationError(
                f"document {doc.doc_id}: signature width {len(doc.signature)} "
                f"does not match configured {params.num_hashes}"
            )

    rows = params.rows_per_band
    candidates: set[tuple[int, int]] = set()
    for band in range(params.bands):
        buckets: dict[bytes, list[int]] = {}
        for idx, doc in enumerate(documents):
            key = doc.signature[band * rows : (band + 1) * rows].tobytes()
            buckets.setdefault(key, []).append(idx)
        for members in buckets.values():
            for i, a in enumerate(members):
                for b in members[i + 1 :]:
                    candidates.add((a, b))

    shingles = {idx: shingle_set(documents[idx].text) for pair in candidates for idx in pair}
    confirmed = []
    for a, b in candidates:
        score = exact_jaccard(shingles[a], shingles[b])
        if score >= threshold:
            confirmed.append((documents[a].doc_id, documents[b].doc_id, score))
    confirmed.sort(key=lambda row: (-row[2], row[0], row[1]))
    return confirmed
