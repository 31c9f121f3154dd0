"""
From failure tables to expected comparisons
===========================================

Builds every object the analysis rests on for the pattern ``ababb`` over a
uniform binary source: the two failure tables, the prefix automaton, the
comparison transducers and the long-run distribution of automaton states.
"""

# %%
from branchlore import (
    Alphabet,
    Pattern,
    build_comparison_transducer,
    build_guard_transducer,
    build_prefix_automaton,
    expected_comparisons_rate,
    failure_table,
    stationary_prefix_distribution,
    transduce,
    uniform_distribution,
)

ab = Alphabet("ab")
x = Pattern("ababb", ab)
dist = uniform_distribution(ab)

# %%
# The MP table stores the longest border of each prefix; KMP skips borders
# whose next letter is already known to fail.
for variant in ("mp", "kmp"):
    print(variant, failure_table(x, variant).entries)

# %%
# States of the prefix automaton are the strict prefixes of the pattern.
A = build_prefix_automaton(x)
for u in range(A.n_states):
    moves = ", ".join(f"{a}->{A.label(A.step(u, a))}" for a in ab)
    print(f"{A.label(u):>5}: {moves}")

# %%
# Each transition of a transducer prints the outcomes of ``X[i] != W[j]``
# during one iteration of the main loop.
for variant in ("mp", "kmp"):
    cmp = build_comparison_transducer(x, variant)
    state, trace = transduce(cmp, "abaab")
    guard = transduce(build_guard_transducer(cmp), "abaab")[1]
    print(f"{variant}: comparisons {trace}, guard {guard}, ends in {A.label(state)}")

# %%
# Long-run state probabilities follow from word probabilities alone.
p = stationary_prefix_distribution(x, dist)
print({A.label(u): round(v * 16, 6) for u, v in p.items()}, "(times 16)")

# %%
# Weighting the output lengths by those probabilities gives the expected
# number of letter comparisons per text symbol.
for variant in ("mp", "kmp"):
    print(variant, expected_comparisons_rate(x, dist, variant))
