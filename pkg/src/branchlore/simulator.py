"""Instrumented matcher and Monte Carlo estimation of misprediction rates.

The matcher has four conditional branches, each with its own local counter:

``mainloop``    ``j < n``
``guard``       ``i >= 0`` (first half of the inner ``while`` condition)
``comparison``  ``X[i] != W[j]`` (evaluated only when the guard holds)
``counter``     ``i = m`` (an occurrence was just completed)
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .borders import FailureTable, Variant, failure_table
from .predictor import N, T, PredictorState, parse_state
from .text_model import ModelError, Pattern, SymbolDistribution, sample_indices

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

BRANCHES = ("mainloop", "guard", "comparison", "counter")
THREADS_ENV = "BRANCHLORE_THREADS"


@dataclass(frozen=True)
class FindRun:
    occurrences: int
    traces: dict[str, str]
    comparisons: int
    positions: tuple[int, ...] = ()


def run_find(
    pattern: Pattern, text: str, variant: Variant | str, table: FailureTable | None = None
) -> FindRun:
    """Run the matcher on ``text`` and record every branch outcome in evaluation order.

    ``table`` overrides the variant's failure table (fault injection).
    """
    x = pattern.symbols
    for c in text:
        if c not in pattern.alphabet:
            raise ModelError(f"symbol not in alphabet: {c!r} (alphabet {str(pattern.alphabet)!r})")
    B = (table if table is not None else failure_table(pattern, variant)).entries
    m, n = len(x), len(text)
    main, guard, cmp, counter = [], [], [], []
    positions = []
    i = j = nb = 0
    while True:
        if not j < n:
            main.append(N)
            break
        main.append(T)
        while True:
            if i < 0:
                guard.append(N)
                break
            guard.append(T)
            if x[i] != text[j]:
                cmp.append(T)
                i = B[i]
            else:
                cmp.append(N)
                break
        i += 1
        j += 1
        if i == m:
            counter.append(T)
            positions.append(j - m)
            i = B[i]
            nb += 1
        else:
            counter.append(N)
    traces = {
        "mainloop": "".join(main),
        "guard": "".join(guard),
        "comparison": "".join(cmp),
        "counter": "".join(counter),
    }
    return FindRun(nb, traces, len(cmp), tuple(positions))


def _bump(state, taken, top, half):
    if taken:
        miss = 1 if state < half else 0
        if state < top:
            state += 1
    else:
        miss = 1 if state >= half else 0
        if state > 0:
            state -= 1
    return state, miss


def _count_mispredictions(text, x, table, init, bits):
    """Matcher with inline counters; returns (misses[4], occurrences, comparisons)."""
    top = (1 << bits) - 1
    half = 1 << (bits - 1)
    m = x.shape[0]
    n = text.shape[0]
    s_main, s_guard, s_cmp, s_cnt = init[0], init[1], init[2], init[3]
    misses = np.zeros(4, dtype=np.int64)
    i = 0
    nb = 0
    comparisons = 0
    for j in range(n):
        s_main, miss = _bump(s_main, True, top, half)
        misses[0] += miss
        c = text[j]
        while True:
            if i < 0:
                s_guard, miss = _bump(s_guard, False, top, half)
                misses[1] += miss
                break
            s_guard, miss = _bump(s_guard, True, top, half)
            misses[1] += miss
            comparisons += 1
            if x[i] != c:
                s_cmp, miss = _bump(s_cmp, True, top, half)
                misses[2] += miss
                i = table[i]
            else:
                s_cmp, miss = _bump(s_cmp, False, top, half)
                misses[2] += miss
                break
        i += 1
        if i == m:
            s_cnt, miss = _bump(s_cnt, True, top, half)
            i = table[i]
            nb += 1
        else:
            s_cnt, miss = _bump(s_cnt, False, top, half)
        misses[3] += miss
    s_main, miss = _bump(s_main, False, top, half)
    misses[0] += miss
    return misses, nb, comparisons


if numba is not None:
    _bump = numba.njit(cache=True, nogil=True)(_bump)
    _count_kernel = numba.njit(cache=True, nogil=True)(_count_mispredictions)
else:  # pragma: no cover
    _count_kernel = _count_mispredictions


@dataclass(frozen=True)
class TrialResult:
    seed: int
    n: int
    misses: dict[str, int]
    occurrences: int
    comparisons: int

    def rate(self, branch: str) -> float:
        return self.misses[branch] / self.n


@dataclass(frozen=True)
class EmpiricalReport:
    pattern: str
    variant: Variant
    n: int
    trials: tuple[TrialResult, ...]
    mean: dict[str, float] = field(default_factory=dict)
    stderr: dict[str, float] = field(default_factory=dict)

    @property
    def seeds(self) -> tuple[int, ...]:
        return tuple(t.seed for t in self.trials)

    @property
    def n_trials(self) -> int:
        return len(self.trials)

    def counts(self, branch: str) -> list[int]:
        return [t.misses[branch] for t in self.trials]


def _resolve_initial(initial_states: Mapping[str, PredictorState | str | int] | None, bits: int) -> np.ndarray:
    init = np.zeros(4, dtype=np.int64)
    for name, value in (initial_states or {}).items():
        if name not in BRANCHES:
            raise ModelError(f"unknown branch {name!r}; expected one of {', '.join(BRANCHES)}")
        if not isinstance(value, PredictorState):
            value = parse_state(value, bits)
        if value.bits != bits:
            raise ModelError(f"initial state for {name} is a {value.bits}-bit counter, expected {bits}")
        init[BRANCHES.index(name)] = value.value
    return init


def _run_trial(pattern, dist, variant, n, seed, init, bits) -> TrialResult:
    alphabet = pattern.alphabet
    text = sample_indices(dist, n, seed)
    x = np.array(alphabet.encode(pattern.symbols), dtype=np.int64)
    table = np.array(failure_table(pattern, variant).entries, dtype=np.int64)
    misses, nb, comparisons = _count_kernel(text, x, table, init, bits)
    return TrialResult(seed, n, dict(zip(BRANCHES, (int(v) for v in misses))), int(nb), int(comparisons))


def _aggregate(pattern, variant, n, trials) -> EmpiricalReport:
    mean, stderr = {}, {}
    for b in BRANCHES:
        rates = np.array([t.rate(b) for t in trials])
        mean[b] = float(rates.mean())
        stderr[b] = float(rates.std(ddof=1) / math.sqrt(len(rates))) if len(rates) > 1 else 0.0
    return EmpiricalReport(pattern.symbols, Variant.parse(variant), n, tuple(trials), mean, stderr)


def simulate_mispredictions(
    pattern: Pattern,
    dist: SymbolDistribution,
    variant: Variant | str,
    n: int,
    seed: int,
    initial_states: Mapping[str, PredictorState | str | int] | None = None,
    bits: int = 2,
) -> EmpiricalReport:
    """One trial: sample a text of length ``n`` and count each branch's mispredictions."""
    if n < 1:
        raise ModelError("text length must be at least 1")
    init = _resolve_initial(initial_states, bits)
    trial = _run_trial(pattern, dist, variant, n, seed, init, bits)
    return _aggregate(pattern, variant, n, [trial])


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "0")
    try:
        k = int(raw)
    except ValueError:
        raise ModelError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    if k < 0:
        raise ModelError(f"{THREADS_ENV} must be nonnegative")
    return k or (os.cpu_count() or 1)


def monte_carlo(
    pattern: Pattern,
    dist: SymbolDistribution,
    variant: Variant | str,
    n: int,
    trials: int,
    master_seed: int,
    initial_states: Mapping[str, PredictorState | str | int] | None = None,
    bits: int = 2,
    threads: int | None = None,
) -> EmpiricalReport:
    """Independent trials with seeds ``master_seed + t`` for ``t = 1 .. trials``.

    Trials may run on several threads; results are collected in seed order so
    the report does not depend on scheduling.
    """
    if trials < 1:
        raise ModelError("need at least one trial")
    if n < 1:
        raise ModelError("text length must be at least 1")
    init = _resolve_initial(initial_states, bits)
    seeds = [master_seed + t for t in range(1, trials + 1)]
    workers = min(threads or thread_count(), trials)
    if workers <= 1:
        results = [_run_trial(pattern, dist, variant, n, s, init, bits) for s in seeds]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda s: _run_trial(pattern, dist, variant, n, s, init, bits), seeds))
    return _aggregate(pattern, variant, n, results)
