"""One test per acceptance criterion, each at its stated tolerance.

Every test records a pass/fail line that is printed in the terminal summary.
"""

import itertools
import time

import numpy as np

from branchlore import reference, verify
from branchlore.analysis import (
    analyze,
    comparison_misprediction_rate,
    counter_rate,
    expected_comparisons_rate,
    kappa,
)
from branchlore.borders import Variant
from branchlore.simulator import monte_carlo, run_find
from branchlore.text_model import (
    Alphabet,
    Pattern,
    binary_distribution,
    make_distribution,
    make_rng,
    uniform_distribution,
)


def test_published_uniform_table(acceptance):
    start = time.perf_counter()
    misses = []
    cells = list(verify.table_cells())
    for (k, x, v, col), got, want in cells:
        if abs(got - want) > 5e-4 + verify.FLOAT_SLACK:
            misses.append(f"|A|={k} {x} {v} {col}: {got:.4f} vs {want}")
    elapsed = time.perf_counter() - start
    ok = not misses and elapsed < 1.0
    detail = f"{len(cells) - len(misses)}/{len(cells)} cells within 5e-4, {elapsed:.2f}s"
    if misses:
        detail += "; off: " + "; ".join(misses)
    acceptance(1, "uniform table reproduced to 5e-4", ok, detail)
    assert ok, detail


def test_binary_closed_forms(acceptance):
    start = time.perf_counter()
    r = verify.binary_closed_forms(tol=1e-9)
    elapsed = time.perf_counter() - start
    ok = r.passed and elapsed < 1.0
    acceptance(2, "binary closed forms to 1e-9", ok, f"{r.checked} values, {elapsed:.2f}s {r.counterexample or ''}".strip())
    assert ok


def test_abab_kmp_formula(acceptance):
    ab = Alphabet("ab")
    errs = [abs(comparison_misprediction_rate(Pattern("abab", ab), uniform_distribution(ab), "kmp") - 4 / 7)]
    errs.append(abs(reference.comparison_rate_abab_kmp(0.5, 0.5) - 4 / 7))
    for p in (0.2, 0.35, 0.5, 0.65, 0.8):
        got = comparison_misprediction_rate(Pattern("abab", ab), binary_distribution(p), "kmp")
        errs.append(abs(got - reference.comparison_rate_abab_kmp(p, 1 - p)))
    ok = max(errs) <= 1e-9
    acceptance(3, "abab KMP comparison formula to 1e-9", ok, f"max error {max(errs):.2e}")
    assert ok


def test_letter_power_counter_values(acceptance):
    formula = [
        (kappa(1, 0.5), 0.5),
        (kappa(2, 0.5), 17 / 60),
        (kappa(3, 0.5), 9 / 64),
        (kappa(2, 0.25), reference.kappa2(0.25)),
    ]
    ab, abcd = Alphabet("ab"), Alphabet("abcd")
    table = [
        (counter_rate(Pattern("aa", ab), uniform_distribution(ab)), 0.283),
        (counter_rate(Pattern("aa", abcd), uniform_distribution(abcd)), 0.073),
    ]
    f_err = max(abs(a - b) for a, b in formula)
    t_err = max(abs(a - b) for a, b in table)
    ok = f_err <= 1e-12 and t_err <= 5e-4
    acceptance(4, "counter spot values", ok, f"formula error {f_err:.1e}, table error {t_err:.1e}")
    assert ok


def test_trace_equivalence(acceptance):
    start = time.perf_counter()
    r = verify.trace_equivalence(max_pattern_len=4, max_text_len=10, random_cases=1000)
    elapsed = time.perf_counter() - start
    ok = r.passed and elapsed < 30
    acceptance(5, "matcher traces equal transducer outputs", ok, f"{r.checked} runs, {elapsed:.1f}s {r.counterexample or ''}".strip())
    assert ok


def test_prefix_distribution_vs_dynamics(acceptance):
    r = verify.stationary_vs_power(cases=200, max_len=5, tol=1e-10)
    acceptance(6, "closed-form prefix distribution vs power iteration to 1e-10", r.passed, f"{r.checked} cases {r.counterexample or ''}".strip())
    assert r.passed


def test_monte_carlo_agreement(acceptance):
    start = time.perf_counter()
    worst = 0.0
    failures = []
    rows = 0
    for (k, x, v) in reference.UNIFORM_TABLE:
        alphabet = Alphabet(reference.ALPHABETS[k])
        pattern, dist = Pattern(x, alphabet), uniform_distribution(alphabet)
        analytic = analyze(pattern, dist, v).rates()
        emp = monte_carlo(pattern, dist, v, 100_000, 20, master_seed=2024)
        rows += 1
        for b in ("counter", "guard", "comparison"):
            band = max(3 * emp.stderr[b], 5e-3)
            diff = abs(emp.mean[b] - analytic[b])
            worst = max(worst, diff / band)
            if diff > band:
                failures.append(f"|A|={k} {x} {v} {b}: {emp.mean[b]:.5f} vs {analytic[b]:.5f}")
        if max(emp.counts("mainloop")) > 3:
            failures.append(f"|A|={k} {x} {v}: main loop mispredicted {max(emp.counts('mainloop'))} times")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 120
    detail = f"{rows} rows, worst diff/band {worst:.2f}, {elapsed:.1f}s"
    if failures:
        detail += "; " + "; ".join(failures)
    acceptance(7, "Monte Carlo within max(3 stderr, 5e-3)", ok, detail)
    assert ok, detail


def test_structural_bounds(acceptance):
    problems = []
    # comparisons on the randomized trace-equivalence runs (m <= 6, n <= 50, |A| <= 3)
    rng = make_rng(0)
    runs = over = 0
    first = None
    for _ in range(1000):
        k = int(rng.integers(2, 4))
        sigma = "abc"[:k]
        m = int(rng.integers(1, 7))
        n = int(rng.integers(0, 51))
        x = "".join(rng.choice(list(sigma), m))
        w = "".join(rng.choice(list(sigma), n))
        if n < m:
            continue
        for v in Variant:
            runs += 1
            c = run_find(Pattern(x, Alphabet(sigma)), w, v).comparisons
            if c > 2 * n - m:
                over += 1
                if first is None or (len(x), len(w)) < (len(first[0]), len(first[1])):
                    first = (x, w, v.value, c, 2 * n - m)
    if over:
        x, w, v, c, bound = first
        problems.append(f"comparisons > 2n-m in {over}/{runs} runs, shortest X={x!r} W={w!r} {v}: {c} > {bound}")
    # expected comparisons stay in [1, 2]
    cx = []
    for m in range(1, 6):
        for x in map("".join, itertools.product("abc", repeat=m)):
            for probs in ([1 / 3] * 3, [0.1, 0.2, 0.7], [0.6, 0.3, 0.1]):
                dist = make_distribution(Alphabet("abc"), probs)
                for v in Variant:
                    cx.append(expected_comparisons_rate(Pattern(x, Alphabet("abc")), dist, v))
    if not (1 - 1e-12 <= min(cx) and max(cx) <= 2 + 1e-12):
        problems.append(f"C_X range [{min(cx)}, {max(cx)}]")
    for sigma in ("ab", "abcd"):
        alphabet = Alphabet(sigma)
        for x in ("ab", "abb"):
            dist = uniform_distribution(alphabet)
            a = analyze(Pattern(x, alphabet), dist, "mp")
            b = analyze(Pattern(x, alphabet), dist, "kmp")
            if a.rates() != b.rates() or a.expected_comparisons != b.expected_comparisons:
                problems.append(f"MP and KMP differ for {x} over {sigma}")
    for p in np.linspace(0.05, 0.95, 19):
        dist = binary_distribution(float(p))
        for x in ("ab", "abb"):
            if analyze(Pattern(x, dist.alphabet), dist, "mp").rates() != analyze(Pattern(x, dist.alphabet), dist, "kmp").rates():
                problems.append(f"MP and KMP differ for {x} at p={p:.2f}")
    ok = not problems
    detail = f"C_X in [{min(cx):.4f}, {max(cx):.4f}] over {len(cx)} reports"
    if problems:
        detail += "; " + "; ".join(problems)
    acceptance(8, "structural bounds", ok, detail)
    assert ok, detail
