"""Local saturating-counter branch predictors.

A k-bit counter holds a value in ``0 .. 2**k - 1`` and predicts "taken" in
the upper half. For the default 2-bit counter the values are, in order,
strongly not taken, weakly not taken, weakly taken and strongly taken.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

T = "T"
N = "N"

STRONG_NOT_TAKEN = 0
WEAK_NOT_TAKEN = 1
WEAK_TAKEN = 2
STRONG_TAKEN = 3

STATE_NAMES = {
    "snt": STRONG_NOT_TAKEN,
    "wnt": WEAK_NOT_TAKEN,
    "wt": WEAK_TAKEN,
    "st": STRONG_TAKEN,
}


@dataclass(frozen=True)
class PredictorState:
    value: int = STRONG_NOT_TAKEN
    bits: int = 2

    def __post_init__(self):
        if self.bits not in (1, 2):
            raise ValueError(f"only 1- and 2-bit counters are supported, got {self.bits}")
        if not 0 <= self.value < (1 << self.bits):
            raise ValueError(f"counter value {self.value} out of range for {self.bits} bits")

    @property
    def top(self) -> int:
        return (1 << self.bits) - 1

    @property
    def predicts_taken(self) -> bool:
        return self.value >= 1 << (self.bits - 1)

    def reflect(self) -> "PredictorState":
        return PredictorState(self.top - self.value, self.bits)


def parse_state(name: str | int, bits: int = 2) -> PredictorState:
    """Accept ``snt|wnt|wt|st`` (2-bit only) or a raw counter value."""
    if isinstance(name, str) and name.lower() in STATE_NAMES:
        if bits != 2:
            raise ValueError("named states only exist for the 2-bit counter")
        return PredictorState(STATE_NAMES[name.lower()], 2)
    return PredictorState(int(name), bits)


def predictor_step(state: PredictorState, outcome: str) -> tuple[PredictorState, bool]:
    if outcome == T:
        mispredicted = not state.predicts_taken
        value = min(state.value + 1, state.top)
    elif outcome == N:
        mispredicted = state.predicts_taken
        value = max(state.value - 1, 0)
    else:
        raise ValueError(f"branch outcome must be 'T' or 'N', got {outcome!r}")
    return PredictorState(value, state.bits), mispredicted


def predictor_run(state: PredictorState, trace: Iterable[str]) -> tuple[PredictorState, int]:
    """Fold a trace through the counter; returns the final state and the misprediction count."""
    misses = 0
    for outcome in trace:
        state, missed = predictor_step(state, outcome)
        misses += missed
    return state, misses


def run_compact(value: int, taken: int, then_not_taken: bool, bits: int = 2) -> tuple[int, int]:
    """Run ``T**taken`` optionally followed by ``N`` on a raw counter value.

    Closed form of :func:`predictor_run` for the only trace shapes the
    matcher produces per text symbol; returns ``(final value, misses)``.
    """
    top = (1 << bits) - 1
    half = 1 << (bits - 1)
    # T's mispredict while the counter sits in the lower half
    misses = min(taken, max(half - value, 0))
    value = min(value + taken, top)
    if then_not_taken:
        misses += value >= half
        value = max(value - 1, 0)
    return value, misses
