"""Construction of supervised instruction records from corpus material.

Three strategies: A rewrites knowledge snippets into colloquial QA form
through a chat endpoint, B instantiates QA templates over structured
records, C reshapes existing instruction data into the uniform schema.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

from ..errors import ValidationError

log = logging.getLogger(__name__)


class InstructionStrategy(str, Enum):
    LINGUISTICISE = "A-linguisticise"
    STRUCTURED = "B-structured"
    REFINE = "C-refine"

    @classmethod
    def parse(cls, value: str) -> "InstructionStrategy":
        value = value.strip()
        for member in cls:
            if value in (member.value, member.value[0], member.name):
                return member
        raise ValidationError(f"unknown instruction strategy: {value!r}")


@dataclass(frozen=True)
class InstructionRecord:
    instruction: str
    output: str
    input: str = ""
    strategy: InstructionStrategy = InstructionStrategy.REFINE
    provenance: str = ""

    def __post_init__(self) -> None:
        if not self.output.strip():
            raise ValidationError("instruction record has an empty output")


@dataclass(frozen=True)
class QATemplate:
    """Question/answer templates with 〈field〉 placeholders."""

    instruction: str
    output: str
    input: str = ""


DEFAULT_REWRITE_PROMPT = (
    "请将下面这段中医知识改写成通俗易懂的问答式口语表达，保留全部专业内容，"
    "不要添加原文没有的信息。\n\n{snippet}"
)

_PLACEHOLDER = re.compile(r"〈([^〈〉]+)〉")


def linguisticise_records(
    snippets: Iterable[tuple[str, str]],
    rewrite: Callable[[str], str],
    prompt_template: str = DEFAULT_REWRITE_PROMPT,
) -> tuple[list[InstructionRecord], list[str]]:
    """Strategy A: push each (doc_id, snippet) through the rewrite endpoint.

    A failing rewrite skips the snippet and logs it; nothing is ever
    fabricated for a failed call. Returns (records, skipped doc_ids).
    """
    records: list[InstructionRecord] = []
    skipped: list[str] = []
    for doc_id, snippet in snippets:
        prompt = prompt_template.format(snippet=snippet)
        try:
            answer = rewrite(prompt)
        except Exception as exc:
            log.warning("rewrite failed for %s: %s", doc_id, exc)
            skipped.append(doc_id)
            continue
        if not answer.strip():
            log.warning("rewrite returned empty text for %s", doc_id)
            skipped.append(doc_id)
            continue
        records.append(
            InstructionRecord(
                instruction=snippet,
                output=answer,
                strategy=InstructionStrategy.LINGUISTICISE,
                provenance=doc_id,
            )
        )
    return records, skipped


def structured_records(
    rows: Iterable[tuple[str, dict[str, str]]],
    templates: Sequence[QATemplate],
) -> list[InstructionRecord]:
    """Strategy B: deterministic template substitution over key/value rows.

    A (row, template) pair is skipped when the row lacks a referenced
    field; identical rows always yield identical records.
    """
    if not templates:
        raise ValidationError("strategy B needs at least one QA template")
    records: list[InstructionRecord] = []
    for doc_id, fields in rows:
        for template in templates:
            try:
                instruction = _fill(template.instruction, fields)
                output = _fill(template.output, fields)
                extra_input = _fill(template.input, fields) if template.input else ""
            except KeyError as exc:
                log.debug("row %s lacks field %s for template", doc_id, exc)
                continue
            if not output.strip():
                continue
            records.append(
                InstructionRecord(
                    instruction=instruction,
                    output=output,
                    input=extra_input,
                    strategy=InstructionStrategy.STRUCTURED,
                    provenance=doc_id,
                )
            )
    return records


_INSTRUCTION_KEYS = ("instruction", "question", "prompt", "query")
_INPUT_KEYS = ("input", "context")
_OUTPUT_KEYS = ("output", "answer", "response", "completion")


def refine_records(
    rows: Iterable[tuple[str, dict[str, object]]],
) -> tuple[list[InstructionRecord], int]:
    """Strategy C: reshape foreign instruction data into the uniform schema.

    Rows with empty outputs and duplicate (instruction, input, output)
    triples are dropped; the drop count is returned with the records.
    """
    records: list[InstructionRecord] = []
    seen: set[tuple[str, str, str]] = set()
    dropped = 0
    for doc_id, row in rows:
        instruction = _first_str(row, _INSTRUCTION_KEYS)
        output = _first_str(row, _OUTPUT_KEYS)
        extra_input = _first_str(row, _INPUT_KEYS)
        if not instruction.strip() or not output.strip():
            dropped += 1
            continue
        key = (instruction, extra_input, output)
        if key in seen:
            dropped += 1
            continue
        seen.add(key)
        records.append(
            InstructionRecord(
                instruction=instruction,
                output=output,
                input=extra_input,
                strategy=InstructionStrategy.REFINE,
                provenance=doc_id,
            )
        )
    return records, dropped


def build_instruction_records(
    source: Iterable,
    strategy: InstructionStrategy,
    *,
    rewrite: Callable[[str], str] | None = None,
    templates: Sequence[QATemplate] | None = None,
    rewrite_prompt: str = DEFAULT_REWRITE_PROMPT,
) -> list[InstructionRecord]:
    """Single entry point dispatching on strategy.

    ``source`` rows are (doc_id, payload) pairs whose payload type depends
    on the strategy: a text snippet for A, a field dict for B, a foreign
    record dict for C. Strategy A requires ``rewrite``; B requires
    ``templates``.
    """
    if strategy is InstructionStrategy.LINGUISTICISE:
        if rewrite is None:
            raise ValidationError("strategy A needs a rewrite endpoint")
        records, _ = linguisticise_records(source, rewrite, rewrite_prompt)
        return records
    if strategy is InstructionStrategy.STRUCTURED:
        if templates is None:
            raise ValidationError("strategy B needs QA templates")
        return structured_records(source, templates)
    records, _ = refine_records(source)
    return records


def _fill(template: str, fields: dict[str, str]) -> str:
    def sub(match: re.Match[str]) -> str:
        name = match.group(1)
        if name not in fields:
            raise KeyError(name)
        return str(fields[name])

    return _PLACEHOLDER.sub(sub, template)


def _first_str(row: dict[str, object], keys: tuple[str, ...]) -> str:
    for key in keys:
        value = row.get(key)
        if isinstance(value, str) and value:
            return value
    return ""
