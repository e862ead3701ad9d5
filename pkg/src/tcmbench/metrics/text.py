"""Tokenization and n-gram machinery shared by the overlap metrics.

The default mode splits CJK text into single-character tokens and Latin
runs into lowercased words, which is the usual granularity for n-gram
metrics on Chinese. A plain whitespace mode is kept for ablation on
pre-segmented text.
"""

from __future__ import annotations

from collections import Counter

NGram = tuple[str, ...]

CJK_WORD_MODE = "char-cjk+word-latin"
WHITESPACE_MODE = "whitespace"

# Ideograph blocks tokenized one character at a time. CJK punctuation
# (U+3000-303F) is deliberately excluded so it is dropped like any other
# punctuation.
_CJK_RANGES = (
    (0x3400, 0x4DBF),
    (0x4E00, 0x9FFF),
    (0xF900, 0xFAFF),
    (0x20000, 0x2A6DF),
    (0x2F800, 0x2FA1F),
)


def is_cjk(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _CJK_RANGES)


def tokenize(text: str, mode: str = CJK_WORD_MODE) -> list[str]:
    """Split ``text`` into metric tokens.

    In the default mode every CJK codepoint becomes its own token, Latin
    and digit runs become lowercased word tokens, and punctuation-only
    material is dropped. Whitespace mode lowercases and splits on
    whitespace only. Empty input yields an empty list.
    """
    if mode == WHITESPACE_MODE:
        return [t.lower() for t in text.split()]
    if mode != CJK_WORD_MODE:
        raise ValueError(f"unknown tokenization mode: {mode!r}")

    tokens: list[str] = []
    word: list[str] = []

    def flush() -> None:
        if word:
            tokens.append("".join(word))
            word.clear()

    for ch in text:
        if is_cjk(ch):
            flush()
            tokens.append(ch)
        elif ch.isalnum():
            word.append(ch.lower())
        else:
            flush()
    flush()
    return tokens


def ngrams(tokens: list[str], n: int) -> Counter[NGram]:
    """Sliding-window n-gram multiset; total count is max(0, len-n+1)."""
    if n < 1:
        raise ValueError(f"n-gram order must be >= 1, got {n}")
    return Counter(tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1))
