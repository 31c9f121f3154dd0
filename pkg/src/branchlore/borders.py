"""Borders and the MP / KMP failure tables consumed by the matcher.

Tables are integer lists of length ``m + 1`` where entry ``i`` is the length
of the fallback prefix for ``pattern[:i]``; the undefined fallback is ``-1``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .text_model import ModelError, Pattern


class Variant(str, enum.Enum):
    MP = "mp"
    KMP = "kmp"

    @classmethod
    def parse(cls, value: "Variant | str") -> "Variant":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise ModelError(f"unknown variant {value!r} (expected 'mp' or 'kmp')") from None


@dataclass(frozen=True)
class FailureTable:
    variant: Variant
    entries: tuple[int, ...]

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __len__(self) -> int:
        return len(self.entries)


def longest_border(word: str) -> int:
    """Length of the longest strict border of a nonempty word."""
    if not word:
        raise ModelError("longest_border needs a nonempty word")
    return _prefix_function(word)[-1]


def _prefix_function(word: str) -> list[int]:
    # pi[i] = longest strict border of word[:i+1]
    pi = [0] * len(word)
    k = 0
    for i in range(1, len(word)):
        while k > 0 and word[i] != word[k]:
            k = pi[k - 1]
        if word[i] == word[k]:
            k += 1
        pi[i] = k
    return pi


def _mp_entries(x: str) -> list[int]:
    return [-1] + _prefix_function(x)


def failure_table_mp(pattern: Pattern) -> FailureTable:
    return FailureTable(Variant.MP, tuple(_mp_entries(pattern.symbols)))


def failure_table_kmp(pattern: Pattern) -> FailureTable:
    """KMP refinement: skip borders whose next pattern letter equals ``pattern[i]``."""
    x = pattern.symbols
    m = len(x)
    mp = _mp_entries(x)
    kmp = [-1] * (m + 1)
    for i in range(1, m):
        b = mp[i]
        kmp[i] = b if x[b] != x[i] else kmp[b]
    kmp[m] = mp[m]
    return FailureTable(Variant.KMP, tuple(kmp))


def failure_table(pattern: Pattern, variant: Variant | str) -> FailureTable:
    variant = Variant.parse(variant)
    if variant is Variant.MP:
        return failure_table_mp(pattern)
    return failure_table_kmp(pattern)
