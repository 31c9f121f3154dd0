"""Prefix automaton of a pattern and the transducers derived from it.

States are prefix lengths ``0 .. m-1`` (the strict prefixes of the pattern).
Each transition of a transducer carries the branch outcomes produced by one
iteration of the matcher's main loop, stored compactly as ``T**t_count``
optionally followed by a single ``N``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .borders import FailureTable, Variant, failure_table, failure_table_mp
from .predictor import N, T
from .text_model import Pattern


@dataclass(frozen=True)
class CmpOutput:
    t_count: int
    ends_with_n: bool

    def __len__(self) -> int:
        return self.t_count + self.ends_with_n

    def word(self) -> str:
        return T * self.t_count + (N if self.ends_with_n else "")


@dataclass(frozen=True)
class PrefixAutomaton:
    pattern: Pattern
    delta: tuple[tuple[int, ...], ...]  # delta[state][symbol index]

    @property
    def n_states(self) -> int:
        return len(self.delta)

    @property
    def accepting(self) -> tuple[int, int]:
        """The (state, symbol index) pair whose use marks an occurrence."""
        x = self.pattern
        return x.m - 1, x.alphabet.index(x[-1])

    def step(self, state: int, symbol: str) -> int:
        return self.delta[state][self.pattern.alphabet.index(symbol)]

    def label(self, state: int) -> str:
        return self.pattern.prefix(state) or "ε"


@dataclass(frozen=True)
class Transducer:
    """The prefix automaton with a per-transition output word."""

    base: PrefixAutomaton
    out: tuple[tuple[CmpOutput, ...], ...]  # out[state][symbol index]
    variant: Variant
    kind: str = "comparison"

    @property
    def pattern(self) -> Pattern:
        return self.base.pattern


ComparisonTransducer = Transducer
GuardTransducer = Transducer


def build_prefix_automaton(pattern: Pattern) -> PrefixAutomaton:
    x = pattern.symbols
    m = len(x)
    alphabet = pattern.alphabet
    mp = failure_table_mp(pattern).entries
    rows: list[tuple[int, ...]] = []
    for u in range(m):
        row = []
        for a in alphabet:
            if x[u] == a:
                row.append(u + 1 if u + 1 < m else mp[m])
            elif u == 0:
                row.append(0)
            else:
                # the longest suffix of x[:u]+a in Q_X goes through the border of x[:u]
                row.append(rows[mp[u]][alphabet.index(a)])
        rows.append(tuple(row))
    return PrefixAutomaton(pattern, tuple(rows))


def _fail_chain_output(x: str, table: FailureTable, u: int, a: str) -> tuple[CmpOutput, int]:
    """Follow failure links from ``u`` until ``a`` can be read or the chain is exhausted."""
    m = len(x)
    i = u
    taken = 0
    while i >= 0 and x[i] != a:
        taken += 1
        i = table[i]
    if i < 0:
        return CmpOutput(taken, False), 0
    i += 1
    return CmpOutput(taken, True), (table[m] if i == m else i)


def build_comparison_transducer(pattern: Pattern, variant: Variant | str) -> Transducer:
    variant = Variant.parse(variant)
    base = build_prefix_automaton(pattern)
    table = failure_table(pattern, variant)
    x = pattern.symbols
    out = []
    for u in range(base.n_states):
        row = []
        for k, a in enumerate(pattern.alphabet):
            o, target = _fail_chain_output(x, table, u, a)
            if target != base.delta[u][k]:
                raise AssertionError(
                    f"failure chain of {variant.value} disagrees with the prefix automaton "
                    f"at state {u} on {a!r}"
                )
            row.append(o)
        out.append(tuple(row))
    return Transducer(base, tuple(out), variant, "comparison")


def guard_output(s: CmpOutput) -> CmpOutput:
    """Outcomes of the ``i >= 0`` test during one main-loop iteration."""
    if s.ends_with_n:
        return CmpOutput(len(s), False)
    return CmpOutput(len(s), True)


def build_guard_transducer(cmp: Transducer) -> Transducer:
    out = tuple(tuple(guard_output(s) for s in row) for row in cmp.out)
    return Transducer(cmp.base, out, cmp.variant, "guard")


def build_counter_transducer(base: PrefixAutomaton) -> Transducer:
    """Outcome of the ``i = m`` test: ``T`` exactly on the accepting transition."""
    acc = base.accepting
    out = tuple(
        tuple(
            CmpOutput(1, False) if (u, k) == acc else CmpOutput(0, True)
            for k in range(len(base.pattern.alphabet))
        )
        for u in range(base.n_states)
    )
    return Transducer(base, out, Variant.MP, "counter")


def transduce(transducer: Transducer | PrefixAutomaton, word: str) -> tuple[int, str]:
    """Final state and concatenated output along the path of ``word`` from state 0.

    A bare :class:`PrefixAutomaton` yields an empty output.
    """
    if isinstance(transducer, PrefixAutomaton):
        base, out = transducer, None
    else:
        base, out = transducer.base, transducer.out
    encode = base.pattern.alphabet.index
    state = 0
    pieces = []
    for c in word:
        k = encode(c)
        if out is not None:
            pieces.append(out[state][k].word())
        state = base.delta[state][k]
    return state, "".join(pieces)


def to_dot(obj: Transducer | PrefixAutomaton, name: str | None = None) -> str:
    """Graphviz rendering with ``symbol:output`` edge labels."""
    if isinstance(obj, PrefixAutomaton):
        base, out = obj, None
        name = name or "prefix_automaton"
    else:
        base, out = obj.base, obj.out
        name = name or f"{obj.kind}_{obj.variant.value}"
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for u in range(base.n_states):
        lines.append(f'  q{u} [label="{base.label(u)}"];')
    acc = base.accepting
    for u in range(base.n_states):
        for k, a in enumerate(base.pattern.alphabet):
            v = base.delta[u][k]
            label = a if out is None else f"{a}:{out[u][k].word() or 'ε'}"
            style = ", penwidth=2" if (u, k) == acc else ""
            lines.append(f'  q{u} -> q{v} [label="{label}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
