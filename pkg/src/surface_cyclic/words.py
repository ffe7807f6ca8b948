"""Parsing of edge/side words such as ``"e1 e2^-1 e3"`` or ``"aba^-1b^-1"``."""

from __future__ import annotations

import re

from surface_cyclic.errors import SurfaceCyclicError


class MalformedWord(SurfaceCyclicError):
    code = "malformed_word"


_LETTER = re.compile(r"\s*([A-Za-z][0-9]*)(\^-1|\^\{-1\}|⁻¹|')?\s*")


def parse_word(word: str) -> list[tuple[str, int]]:
    """Split a word into ``(label, exponent)`` letters, exponent ``+1`` or ``-1``.

    A label is one letter optionally followed by digits; inverses are written
    ``x^-1``, ``x^{-1}``, ``x⁻¹`` or ``x'``.
    """
    out = []
    pos = 0
    word = word.strip()
    while pos < len(word):
        match = _LETTER.match(word, pos)
        if not match or match.end() == pos:
            raise MalformedWord(f"cannot parse word at position {pos}: {word[pos:pos + 10]!r}")
        out.append((match.group(1), -1 if match.group(2) else 1))
        pos = match.end()
    if not out:
        raise MalformedWord("empty word")
    return out


def format_word(letters) -> str:
    return " ".join(label if e == 1 else f"{label}^-1" for label, e in letters)
