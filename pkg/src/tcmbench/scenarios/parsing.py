"""Turning raw model text into structured answers.

Models fail this step often enough that a failed parse is a first-class
answer variant, scored as incorrect, rather than an exception.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .kinds import OPTION_LETTERS


class AnswerVariant(Enum):
    OPTION_LETTER = "option_letter"
    LABEL = "label"
    ENTITY_SET = "entity_set"
    RANKED_ITEMS = "ranked_items"
    FREE_TEXT = "free_text"
    PARSE_FAILURE = "parse_failure"


@dataclass(frozen=True)
class ParsedAnswer:
    variant: AnswerVariant
    letter: str | None = None
    label: str | None = None
    items: tuple[str, ...] = ()
    text: str = ""
    rule: str = ""

    @property
    def failed(self) -> bool:
        return self.variant is AnswerVariant.PARSE_FAILURE


def _failure(rule: str) -> ParsedAnswer:
    return ParsedAnswer(AnswerVariant.PARSE_FAILURE, rule=rule)


_THINK_OPEN = re.compile(r"<think>", re.IGNORECASE)
_THINK_TAG = re.compile(r"</?think>", re.IGNORECASE)


def strip_reasoning_markup(raw: str) -> str:
    """Drop <think>...</think> deliberation spans (unclosed runs to the end)."""
    if not _THINK_OPEN.search(raw):
        return raw.strip()
    out: list[str] = []
    depth = 0
    pos = 0
    for tag in _THINK_TAG.finditer(raw):
        if depth == 0:
            out.append(raw[pos : tag.start()])
        if tag.group().lower() == "<think>":
            depth += 1
        elif depth > 0:
            depth -= 1
            if depth == 0:
                pos = tag.end()
    if depth == 0:
        out.append(raw[pos:])
    return "".join(out).strip()


_FULLWIDTH = {chr(cp): chr(cp - 0xFEE0) for cp in range(0xFF01, 0xFF5F)}
_FULLWIDTH["　"] = " "


def unify_width(text: str) -> str:
    """Map full-width ASCII forms to their half-width equivalents."""
    return text.translate(str.maketrans(_FULLWIDTH))


_LABEL_NOISE = re.compile(r"[\s!-/:-@\[-`{-~·。，、；：？！（）《》【】“”‘’…—]+")


def normalize_label(text: str) -> str:
    """Width-unified, punctuation- and whitespace-free, Latin lowercased."""
    return _LABEL_NOISE.sub("", unify_width(text)).lower()


_CUE_LETTER = re.compile(
    r"(?:答案|正确选项|选项|答|选|answer)\s*(?:是|为|应为|应该是)?\s*[:：]?\s*[\(（\[【]?\s*([A-Ea-e])(?![A-Za-z0-9])",
    re.IGNORECASE,
)
_PAREN_LETTER = re.compile(r"[\(（]\s*([A-E])\s*[\)）]")


def extract_option_letter(raw: str) -> ParsedAnswer:
    """Pull a single-choice letter out of free-form text.

    Cascade: cue phrase, then parenthesized letter, then a standalone
    capital, then the first A-E character on the first line. First hit
    wins; anything else is a parse failure.
    """
    text = unify_width(strip_reasoning_markup(raw))
    if match := _CUE_LETTER.search(text):
        return ParsedAnswer(
            AnswerVariant.OPTION_LETTER, letter=match.group(1).upper(), rule="cue-phrase"
        )
    if match := _PAREN_LETTER.search(text):
        return ParsedAnswer(AnswerVariant.OPTION_LETTER, letter=match.group(1), rule="parenthesized")
    if letter := _find_standalone_letter(text):
        return ParsedAnswer(AnswerVariant.OPTION_LETTER, letter=letter, rule="standalone")
    first_line = text.splitlines()[0] if text else ""
    for ch in first_line:
        if ch in OPTION_LETTERS:
            return ParsedAnswer(AnswerVariant.OPTION_LETTER, letter=ch, rule="first-line-letter")
    return _failure("no-option-letter")


def _find_standalone_letter(text: str) -> str | None:
    """First capital A-E whose neighbours are neither alphanumeric nor CJK."""
    for pos, ch in enumerate(text):
        if ch not in OPTION_LETTERS:
            continue
        before = text[pos - 1] if pos else ""
        after = text[pos + 1] if pos + 1 < len(text) else ""
        if any(c.isalnum() for c in (before, after)):
            continue
        return ch
    return None


_LABEL_PREFIX = re.compile(r"^\s*(?:证型|诊断|辨证|答案|结论)\s*[:：是为]?\s*")


def extract_label(raw: str, normalizer: Callable[[str], str] | None = None) -> ParsedAnswer:
    """First line, boilerplate prefix removed, normalized for exact match."""
    normalizer = normalizer or normalize_label
    text = strip_reasoning_markup(raw)
    first_line = next((line for line in text.splitlines() if line.strip()), "")
    label = normalizer(_LABEL_PREFIX.sub("", first_line))
    if not label:
        return _failure("empty-label")
    return ParsedAnswer(AnswerVariant.LABEL, label=label, rule="first-line")


_ITEM_SPLIT = re.compile(r"[、，,;；\n]+")
_ITEM_PREFIX = re.compile(r"^\s*(?:[\(（]?\d+[\)）]?\s*[.、)）:：]?|[-*•])\s*")
_DOSAGE_SUFFIX = re.compile(r"[\s:：]*\d+(?:\.\d+)?\s*(?:g|mg|kg|ml|克|毫克|毫升|钱|两|枚|片|粒|丸|袋)?\s*$", re.IGNORECASE)
_ITEM_TRIM = re.compile(r"^[\s。.！!？?…·\"'“”‘’()（）\[\]【】]+|[\s。.！!？?…·\"'“”‘’()（）\[\]【】]+$")


def normalize_item(text: str) -> str:
    item = unify_width(text)
    item = _ITEM_PREFIX.sub("", item)
    item = _DOSAGE_SUFFIX.sub("", item)
    return _ITEM_TRIM.sub("", item)


def parse_item_list(raw: str, *, ranked: bool = True) -> ParsedAnswer:
    """Split an enumerated answer into clean items.

    Handles Chinese/ASCII list separators, numbered prefixes, and trailing
    dosage annotations; keeps first-occurrence order and drops duplicates.
    """
    text = strip_reasoning_markup(raw)
    seen: dict[str, None] = {}
    for part in _ITEM_SPLIT.split(text):
        item = normalize_item(part)
        if item:
            seen.setdefault(item)
    if not seen:
        return _failure("no-items")
    variant = AnswerVariant.RANKED_ITEMS if ranked else AnswerVariant.ENTITY_SET
    return ParsedAnswer(variant, items=tuple(seen), rule="item-list")


def parse_free_text(raw: str) -> ParsedAnswer:
    text = strip_reasoning_markup(raw)
    if not text:
        return _failure("empty-text")
    return ParsedAnswer(AnswerVariant.FREE_TEXT, text=text, rule="free-text")
