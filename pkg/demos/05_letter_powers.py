"""
The occurrence test on patterns a...a
=====================================

For ``X = a**m`` occurrences overlap, so the ``i = m`` branch sees runs of
taken outcomes and the 2-bit counter learns them. The rate has a closed form
for every ``m``; here it is compared with the full predictor product chain.
"""

# %%
from branchlore import Pattern, binary_distribution, kappa
from branchlore.analysis import counter_rate_by_chain

# %%
print(" m     p   closed form   product chain")
for m in (1, 2, 3, 4, 6):
    for p in (0.25, 0.5, 0.75, 0.9):
        dist = binary_distribution(p)
        chain = counter_rate_by_chain(Pattern("a" * m, dist.alphabet), dist)
        print(f"{m:2d}  {p:4.2f}  {kappa(m, p):11.8f}  {chain:13.8f}")

# %%
# From m = 3 on the counter saturates inside every run of a's, so the rate
# drops to p**m (1 - p) (1 + p)**2.
