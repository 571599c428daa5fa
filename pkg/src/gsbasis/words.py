"""Words over an ordered alphabet, the deglex order, and overlap detection.

A word is a tuple of generator indices; index 0 is the smallest generator.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

Word = tuple  # tuple[int, ...]
EPSILON: Word = ()

LESS, EQUAL, GREATER = -1, 0, 1


@dataclass(frozen=True)
class Alphabet:
    """Generator names listed from lowest to highest precedence."""

    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if not names:
            raise ValueError("alphabet must not be empty")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate generator names in {names}")
        for n in names:
            if not n or not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", n):
                raise ValueError(f"bad generator name {n!r}")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def word(self, *names: str) -> Word:
        return tuple(self.index(n) for n in names)

    def parse_word(self, text: str) -> Word:
        """Parse ``x*y^2*z``; ``1`` or the empty string is the empty word."""
        text = text.strip()
        if text in ("", "1"):
            return EPSILON
        out = []
        for factor in text.split("*"):
            name, _, exp = factor.strip().partition("^")
            out.extend([self.index(name.strip())] * (int(exp) if exp else 1))
        return tuple(out)

    def format_word(self, w: Word) -> str:
        if not w:
            return "1"
        parts = []
        i = 0
        while i < len(w):
            j = i
            while j < len(w) and w[j] == w[i]:
                j += 1
            name = self.names[w[i]]
            parts.append(name if j - i == 1 else f"{name}^{j - i}")
            i = j
        return "*".join(parts)


def deglex_key(w: Word):
    return (len(w), w)


def deglex_compare(u: Word, v: Word, alphabet: Optional[Alphabet] = None) -> int:
    """-1, 0 or 1 as ``u`` is below, equal to or above ``v`` in deglex."""
    ku, kv = deglex_key(u), deglex_key(v)
    return (ku > kv) - (ku < kv)


@dataclass(frozen=True)
class Overlap:
    """An ambiguity ``word`` between leading words ``u`` and ``v``.

    intersection: ``word == u + a == b + v`` with ``a``, ``b`` nonempty;
    inclusion:    ``word == u == a + v + b``.
    """

    word: Word
    a: Word
    b: Word
    kind: Literal["intersection", "inclusion"]


def find_intersections(u: Word, v: Word) -> list:
    """Overlaps where a proper suffix of ``u`` is a proper prefix of ``v``, shortest ``word`` first."""
    out = []
    for k in range(min(len(u), len(v)) - 1, 0, -1):
        if u[len(u) - k :] == v[:k]:
            out.append(Overlap(u + v[k:], v[k:], u[: len(u) - k], "intersection"))
    return out


def find_inclusions(u: Word, v: Word, same_rule: bool = False) -> list:
    """Occurrences of ``v`` inside ``u``, by position.

    With ``same_rule`` the trivial factorisation ``u == v`` is skipped.
    """
    n, m = len(u), len(v)
    if m == 0 or m > n or (same_rule and u == v):
        return []
    return [
        Overlap(u, u[:i], u[i + m :], "inclusion")
        for i in range(n - m + 1)
        if u[i : i + m] == v
    ]


def find_subword(haystack: Word, needle: Word) -> Optional[int]:
    m = len(needle)
    for i in range(len(haystack) - m + 1):
        if haystack[i : i + m] == needle:
            return i
    return None


def occurrences(haystack: Word, needle: Word) -> list:
    m = len(needle)
    return [i for i in range(len(haystack) - m + 1) if haystack[i : i + m] == needle]


def all_words(n_letters: int, degree: int):
    """Every word of exactly ``degree`` letters, in increasing deglex order."""
    if degree == 0:
        yield EPSILON
        return
    for head in all_words(n_letters, degree - 1):
        for x in range(n_letters):
            yield head + (x,)


def contains_any(w: Word, needles: Sequence[Word]) -> bool:
    return any(find_subword(w, s) is not None for s in needles)
