"""Corpus construction: normalization, dedup, filtering, instruction data."""

from .dedup import (
    CorpusDocument,
    DropRecord,
    MinHasher,
    MinHashParams,
    dedup_exact,
    exact_jaccard,
    make_documents,
    near_dup_scan,
    shingle_set,
)
from .filtering import BlockedDoc, filter_blocklist, load_blocklist
from .instructions import (
    DEFAULT_REWRITE_PROMPT,
    InstructionRecord,
    InstructionStrategy,
    QATemplate,
    build_instruction_records,
    linguisticise_records,
    refine_records,
    structured_records,
)
from .manifest import CorpusManifest, SourceStats, corpus_manifest, manifest_as_dict
from .normalize import normalize_document

__all__ = [
    "CorpusDocument",
    "DropRecord",
    "MinHasher",
    "MinHashParams",
    "dedup_exact",
    "exact_jaccard",
    "make_documents",
    "near_dup_scan",
    "shingle_set",
    "BlockedDoc",
    "filter_blocklist",
    "load_blocklist",
    "DEFAULT_REWRITE_PROMPT",
    "InstructionRecord",
    "InstructionStrategy",
    "QATemplate",
    "build_instruction_records",
    "linguisticise_records",
    "refine_records",
    "structured_records",
    "CorpusManifest",
    "SourceStats",
    "corpus_manifest",
    "manifest_as_dict",
    "normalize_document",
]
