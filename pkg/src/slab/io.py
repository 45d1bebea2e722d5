"""Word files and JSON helpers.

A word file has the header line ``alphabet: <letters>`` followed by the
letters.  With single-character symbols the letters are written without
separators (line breaks are ignored); otherwise they are whitespace separated.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .quadratic import QuadraticReal
from .words import Alphabet, FiniteWord, WordStream

__all__ = ["read_word_file", "parse_word_text", "write_word_file", "format_word_file", "dumps"]


def parse_word_text(text: str, description: str = "file") -> WordStream:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("alphabet:"):
        raise ValueError("word file must start with 'alphabet: <letters>'")
    alphabet = Alphabet.from_text(lines[0][len("alphabet:"):].strip())
    body = "".join(lines[1:]) if alphabet.compact else " ".join(lines[1:])
    letters = alphabet.parse(body)  # raises ValueError on letters outside the alphabet
    if not letters:
        raise ValueError("word file contains no letters")
    return WordStream.from_word(letters, alphabet, description)


def read_word_file(path: str | Path) -> WordStream:
    p = Path(path)
    return parse_word_text(p.read_text(), f"file:{p.name}")


def format_word_file(u: FiniteWord) -> str:
    return f"alphabet: {u.alphabet}\n{u}\n"


def write_word_file(path: str | Path, u: FiniteWord) -> None:
    Path(path).write_text(format_word_file(u))


def _default(obj):
    if isinstance(obj, (Fraction, QuadraticReal)):
        return str(obj)
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    if isinstance(obj, FiniteWord):
        return obj.label()
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj) -> str:
    """Deterministic JSON: sorted keys, two-space indent, exact numbers as strings."""
    return json.dumps(obj, default=_default, sort_keys=True, indent=2, ensure_ascii=False) + "\n"
