"""Document text normalization applied before any dedup or filtering."""

from __future__ import annotations

import re
import unicodedata

from ..scenarios import unify_width

_ZERO_WIDTH = dict.fromkeys((0x200B, 0x200C, 0x200D, 0xFEFF))
_HSPACE = re.compile(r"[ \t]+")
_NEWLINE_RUN = re.compile(r" ?\n[ \n]*")


def normalize_document(raw: str) -> str:
    """Canonical form: LF endings, half-width ASCII, collapsed whitespace.

    Control characters are dropped, horizontal whitespace runs collapse
    to one space, and newline runs (with surrounding spaces) collapse to
    one newline. Idempotent.
    """
    text = raw.replace("\r\n", "\n").replace("\r", "\n")
    text = unify_width(text).translate(_ZERO_WIDTH)
    text = "".join(
        ch for ch in text if ch in ("\n", "\t") or unicodedata.category(ch) != "Cc"
    )
    text = _HSPACE.sub(" ", text)
    text = _NEWLINE_RUN.sub("\n", text)
    return text
