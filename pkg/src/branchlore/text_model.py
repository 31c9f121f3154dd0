"""Alphabets, memoryless symbol distributions, patterns and random texts."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

#: Tolerance used when validating user supplied probabilities.
INPUT_TOL = 1e-9
#: Tolerance for identities that hold exactly up to float rounding.
INTERNAL_TOL = 1e-12


class ModelError(ValueError):
    """Raised for invalid alphabets, distributions, patterns or words."""


@dataclass(frozen=True)
class Alphabet:
    symbols: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        symbols = tuple(self.symbols)
        if len(symbols) < 2:
            raise ModelError("an alphabet needs at least two symbols")
        for s in symbols:
            if not isinstance(s, str) or len(s) != 1:
                raise ModelError(f"symbols must be single characters, got {s!r}")
        if len(set(symbols)) != len(symbols):
            raise ModelError(f"duplicate symbols in alphabet {''.join(symbols)!r}")
        object.__setattr__(self, "symbols", symbols)
        object.__setattr__(self, "_index", {s: i for i, s in enumerate(symbols)})

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __contains__(self, symbol) -> bool:
        return symbol in self._index

    def __str__(self) -> str:
        return "".join(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise ModelError(f"symbol not in alphabet: {symbol!r} (alphabet {str(self)!r})") from None

    def encode(self, word: str) -> list[int]:
        """Map a word to the list of its symbol indices."""
        return [self.index(c) for c in word]


@dataclass(frozen=True)
class SymbolDistribution:
    """A memoryless source: each text symbol is drawn independently from ``probs``."""

    alphabet: Alphabet
    probs: tuple[float, ...]

    def prob(self, symbol: str) -> float:
        return self.probs[self.alphabet.index(symbol)]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.probs, dtype=np.float64)

    @property
    def is_uniform(self) -> bool:
        return all(p == self.probs[0] for p in self.probs)


@dataclass(frozen=True)
class Pattern:
    symbols: str
    alphabet: Alphabet

    def __post_init__(self):
        if len(self.symbols) == 0:
            raise ModelError("pattern must be nonempty")
        for c in self.symbols:
            if c not in self.alphabet:
                raise ModelError(f"symbol not in alphabet: {c!r} (alphabet {str(self.alphabet)!r})")

    def __len__(self) -> int:
        return len(self.symbols)

    def __getitem__(self, i):
        return self.symbols[i]

    def __str__(self) -> str:
        return self.symbols

    @property
    def m(self) -> int:
        return len(self.symbols)

    def prefix(self, i: int) -> str:
        return self.symbols[:i]

    def is_letter_power(self) -> bool:
        """True when the pattern repeats a single letter."""
        return len(set(self.symbols)) == 1


def make_alphabet(symbols: Sequence[str] | str) -> Alphabet:
    return Alphabet(symbols)


def make_pattern(symbols: str, alphabet: Alphabet) -> Pattern:
    return Pattern(symbols, alphabet)


def make_distribution(alphabet: Alphabet, probs: Sequence[float]) -> SymbolDistribution:
    """Validate ``probs`` against ``alphabet`` and build the distribution.

    Every probability must lie strictly inside (0, 1) and the total must be
    within ``INPUT_TOL`` of one.
    """
    probs = tuple(float(p) for p in probs)
    if len(probs) != len(alphabet):
        raise ModelError(
            f"got {len(probs)} probabilities for an alphabet of size {len(alphabet)}"
        )
    for s, p in zip(alphabet, probs):
        if not math.isfinite(p) or p <= 0.0 or p >= 1.0:
            raise ModelError(f"probability of {s!r} must lie in (0, 1), got {p}")
    total = math.fsum(probs)
    if abs(total - 1.0) > INPUT_TOL:
        raise ModelError(f"probabilities sum to {total!r}, not 1")
    return SymbolDistribution(alphabet, probs)


def uniform_distribution(alphabet: Alphabet) -> SymbolDistribution:
    k = len(alphabet)
    return make_distribution(alphabet, [1.0 / k] * k)


def binary_distribution(p: float, alphabet: Alphabet | str = "ab") -> SymbolDistribution:
    """Distribution on a two-letter alphabet with ``p`` on the first letter."""
    if not isinstance(alphabet, Alphabet):
        alphabet = Alphabet(alphabet)
    return make_distribution(alphabet, [p, 1.0 - p])


def word_probability(dist: SymbolDistribution, word: str) -> float:
    """Probability that a memoryless text starts with ``word`` (1 for the empty word)."""
    out = 1.0
    for c in word:
        out *= dist.prob(c)
    return out


def make_rng(seed: int) -> np.random.Generator:
    """PCG64 generator; the only PRNG used by the package."""
    return np.random.Generator(np.random.PCG64(seed))


def sample_indices(dist: SymbolDistribution, n: int, seed: int) -> np.ndarray:
    """Draw ``n`` symbol indices by inverse-CDF lookup on PCG64 uniform doubles."""
    if n < 0:
        raise ModelError("text length must be nonnegative")
    u = make_rng(seed).random(n)
    cdf = np.cumsum(dist.as_array())
    cdf[-1] = 1.0
    idx = np.searchsorted(cdf, u, side="right")
    return idx.astype(np.int64)


def sample_text(dist: SymbolDistribution, n: int, seed: int) -> str:
    """Random text of length ``n``; identical arguments give an identical word."""
    idx = sample_indices(dist, n, seed)
    table = np.array(dist.alphabet.symbols)
    return "".join(table[idx].tolist())
