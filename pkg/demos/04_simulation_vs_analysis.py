"""
Checking the asymptotic rates against instrumented runs
=======================================================

Runs the instrumented matcher on random texts and compares the empirical
per-symbol misprediction counts with the exact long-run rates. The main loop
branch contributes only a bounded number of mispredictions per run.
"""

# %%
from branchlore import Alphabet, Pattern, analyze, make_distribution, monte_carlo, run_find

abc = Alphabet("abc")
dist = make_distribution(abc, [0.5, 0.3, 0.2])

# %%
# One small run with every branch outcome visible.
run = run_find(Pattern("abab", abc), "abababcab", "kmp")
for branch, trace in run.traces.items():
    print(f"{branch:>10}: {trace}")
print("occurrences at", run.positions)

# %%
for x in ("aa", "abab", "acb"):
    pattern = Pattern(x, abc)
    for variant in ("mp", "kmp"):
        exact = analyze(pattern, dist, variant).rates()
        emp = monte_carlo(pattern, dist, variant, n=100_000, trials=20, master_seed=7)
        print(f"{x} {variant}")
        for b in ("counter", "guard", "comparison"):
            print(f"  {b:>10}: exact {exact[b]:.5f}  simulated {emp.mean[b]:.5f} +- {emp.stderr[b]:.5f}")
        print(f"  {'mainloop':>10}: at most {max(emp.counts('mainloop'))} per run")
