"""Asymptotic per-symbol misprediction rates of the MP and KMP matchers.

Every rate is the leading constant ``c`` in ``c * n + o(n)`` for a text of
length ``n`` drawn from a memoryless source, with a local 2-bit saturating
counter attached to each branch of the matcher.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .automata import (
    Transducer,
    build_comparison_transducer,
    build_counter_transducer,
    build_guard_transducer,
    build_prefix_automaton,
)
from .borders import Variant, failure_table_mp
from .markov import MarkovChain, expected_step_reward, stationary_vector, terminal_component
from .predictor import run_compact
from .text_model import Pattern, SymbolDistribution, word_probability

#: Mispredictions of the main-loop branch over a whole run never exceed this.
MAINLOOP_BOUND = 3

ProductChain = MarkovChain


def stationary_prefix_distribution(pattern: Pattern, dist: SymbolDistribution) -> dict[int, float]:
    """Long-run probability of each prefix-automaton state, in closed form.

    ``p(u) = P(u) - sum(P(v) for strict prefixes v whose longest border is u)``
    where ``P(w)`` is the probability of the word ``w``.
    """
    x = pattern.symbols
    m = len(x)
    mp = failure_table_mp(pattern).entries
    weight = [word_probability(dist, x[:u]) for u in range(m)]
    out = {u: weight[u] for u in range(m)}
    for v in range(1, m):
        out[mp[v]] -= weight[v]
    return out


def _per_state(transducer: Transducer, dist: SymbolDistribution, fn) -> float:
    p = stationary_prefix_distribution(transducer.pattern, dist)
    total = 0.0
    for u, row in enumerate(transducer.out):
        total += p[u] * math.fsum(q * fn(u, k, o) for k, (q, o) in enumerate(zip(dist.probs, row)))
    return total


def expected_comparisons_rate(
    pattern: Pattern, dist: SymbolDistribution, variant: Variant | str
) -> float:
    """Expected letter comparisons per text symbol (between 1 and 2)."""
    cmp = build_comparison_transducer(pattern, variant)
    return _per_state(cmp, dist, lambda u, k, o: len(o))


def kappa(m: int, p: float) -> float:
    """Counter-branch rate for the pattern ``a**m`` when ``a`` has probability ``p``."""
    if m < 1:
        raise ValueError("m must be positive")
    if m == 1:
        return p * (1 - p) / (1 - 2 * p * (1 - p))
    if m == 2:
        return p**2 * (1 - p) * (1 + 2 * p + p**2 - p**3) / (1 - p**3 + p**4)
    return p**m * (1 - p) * (1 + p) ** 2


def counter_rate(pattern: Pattern, dist: SymbolDistribution) -> float:
    """Mispredictions per symbol of the occurrence test ``i = m``."""
    if pattern.is_letter_power():
        return kappa(pattern.m, dist.prob(pattern[0]))
    return word_probability(dist, pattern.symbols)


def guard_rate(pattern: Pattern, dist: SymbolDistribution) -> float:
    """Mispredictions per symbol of the test ``i >= 0``; the same for MP and KMP.

    Equals the long-run frequency of non-accepting transitions into the
    empty prefix.
    """
    base = build_prefix_automaton(pattern)
    p = stationary_prefix_distribution(pattern, dist)
    acc = base.accepting
    total = 0.0
    for u in range(base.n_states):
        mass = math.fsum(
            q
            for k, q in enumerate(dist.probs)
            if base.delta[u][k] == 0 and (u, k) != acc
        )
        total += p[u] * mass
    return total


def build_product_chain(transducer: Transducer, dist: SymbolDistribution, bits: int = 2) -> ProductChain:
    """Couple a transducer with a saturating counter fed by its outputs.

    States are ``(prefix length, counter value)``; the edge read on symbol
    ``a`` has probability ``dist(a)`` and rewards the mispredictions of the
    output word.
    """
    base = transducer.base
    n_lam = 1 << bits
    states = tuple((u, lam) for u in range(base.n_states) for lam in range(n_lam))
    pos = {s: i for i, s in enumerate(states)}
    edges = []
    for u, lam in states:
        out = []
        for k, q in enumerate(dist.probs):
            o = transducer.out[u][k]
            lam2, misses = run_compact(lam, o.t_count, o.ends_with_n, bits)
            out.append((pos[(base.delta[u][k], lam2)], q, float(misses)))
        edges.append(tuple(out))
    return MarkovChain(states, tuple(edges))


def build_predictor_product(
    pattern: Pattern, dist: SymbolDistribution, variant: Variant | str
) -> ProductChain:
    return build_product_chain(build_comparison_transducer(pattern, variant), dist)


def long_run_mispredictions(chain: ProductChain) -> float:
    """Per-step reward of the chain restricted to its terminal component."""
    core = terminal_component(chain)
    return expected_step_reward(core, stationary_vector(core))


def comparison_misprediction_rate(
    pattern: Pattern, dist: SymbolDistribution, variant: Variant | str
) -> float:
    """Mispredictions per symbol of the letter comparison ``X[i] != W[j]``."""
    return long_run_mispredictions(build_predictor_product(pattern, dist, variant))


def guard_rate_by_chain(pattern: Pattern, dist: SymbolDistribution, variant: Variant | str) -> float:
    """Guard rate through the full predictor product; cross-check for :func:`guard_rate`."""
    guard = build_guard_transducer(build_comparison_transducer(pattern, variant))
    return long_run_mispredictions(build_product_chain(guard, dist))


def counter_rate_by_chain(pattern: Pattern, dist: SymbolDistribution) -> float:
    """Counter rate through the full predictor product; cross-check for :func:`counter_rate`."""
    counter = build_counter_transducer(build_prefix_automaton(pattern))
    return long_run_mispredictions(build_product_chain(counter, dist))


@dataclass(frozen=True)
class MispredictionReport:
    pattern: str
    alphabet: str
    probs: tuple[float, ...]
    variant: Variant
    counter_rate: float
    guard_rate: float
    comparison_rate: float
    total_rate: float
    expected_comparisons: float
    mainloop_bound: int = MAINLOOP_BOUND

    def rates(self) -> dict[str, float]:
        return {
            "counter": self.counter_rate,
            "guard": self.guard_rate,
            "comparison": self.comparison_rate,
            "total": self.total_rate,
        }

    def to_dict(self) -> dict:
        return {
            "pattern": self.pattern,
            "alphabet": self.alphabet,
            "probs": list(self.probs),
            "variant": self.variant.value,
            "rates": self.rates(),
            "expected_comparisons": self.expected_comparisons,
            "mainloop_bound": self.mainloop_bound,
        }


def analyze(pattern: Pattern, dist: SymbolDistribution, variant: Variant | str) -> MispredictionReport:
    variant = Variant.parse(variant)
    counter = counter_rate(pattern, dist)
    guard = guard_rate(pattern, dist)
    comparison = comparison_misprediction_rate(pattern, dist, variant)
    return MispredictionReport(
        pattern=pattern.symbols,
        alphabet=str(dist.alphabet),
        probs=dist.probs,
        variant=variant,
        counter_rate=counter,
        guard_rate=guard,
        comparison_rate=comparison,
        total_rate=counter + guard + comparison,
        expected_comparisons=expected_comparisons_rate(pattern, dist, variant),
    )
