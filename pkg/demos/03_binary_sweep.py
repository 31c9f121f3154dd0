"""
How the rates move with the letter bias
=======================================

Sweeps the probability ``p`` of the letter ``a`` for a few short patterns and
compares MP with KMP. The same numbers come out of
``branchlore sweep --pattern aab --grid 0.05:0.95:0.05``.
"""

# %%
import numpy as np

from branchlore import Pattern, analyze, binary_distribution

grid = np.round(np.arange(0.05, 0.96, 0.05), 2)

# %%
# Total mispredictions per text symbol.
for x in ("aa", "ab", "aab", "aba", "abab"):
    print(f"pattern {x}")
    print("    p      MP      KMP")
    for p in grid:
        dist = binary_distribution(float(p))
        pat = Pattern(x, dist.alphabet)
        mp = analyze(pat, dist, "mp").total_rate
        kmp = analyze(pat, dist, "kmp").total_rate
        print(f"  {p:4.2f}  {mp:.4f}  {kmp:.4f}{'  <- KMP worse' if kmp > mp + 1e-12 else ''}")

# %%
# KMP always performs at most as many letter comparisons as MP, yet the
# comparison branch of KMP can mispredict more often: fewer comparisons make
# the outcome sequence harder for a 2-bit counter.
