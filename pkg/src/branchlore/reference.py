"""Published closed forms and rounded values for small patterns.

The closed forms are functions of ``p``, the probability of ``a`` on the
binary alphabet ``{a, b}``. They serve as independent oracles for the
numeric engine and are never used by it.
"""

from __future__ import annotations

from typing import Callable


def kappa2(p: float) -> float:
    return p**2 * (1 - p) * (1 + 2 * p + p**2 - p**3) / (1 - p**3 + p**4)


def kappa3(p: float) -> float:
    return p**3 * (1 - p) * (1 + p) ** 2


Rates = dict[str, Callable[[float], float]]

# pattern -> {"counter", "guard", "mp", "kmp"} closed forms in p = P(a)
BINARY_CLOSED_FORMS: dict[str, Rates] = {
    "aa": {
        "counter": kappa2,
        "guard": lambda p: 1 - p,
        "mp": lambda p: p * (1 - p) * (1 + 2 * p) / (1 - p**2 + p**3),
        "kmp": lambda p: p * (1 - p) / (1 - 2 * p + 2 * p**2),
    },
    "ab": {
        "counter": lambda p: p * (1 - p),
        "guard": lambda p: (1 - p) ** 2,
        "mp": lambda p: p * (3 - 7 * p + 7 * p**2 - 2 * p**3) / (1 - p + 2 * p**2 - p**3),
        "kmp": lambda p: p * (3 - 7 * p + 7 * p**2 - 2 * p**3) / (1 - p + 2 * p**2 - p**3),
    },
    "aaa": {
        "counter": kappa3,
        "guard": lambda p: 1 - p,
        "mp": lambda p: p * (1 - p) * (1 + p) ** 2,
        "kmp": lambda p: p * (1 - p) / (1 - 2 * p + 2 * p**2),
    },
    "aab": {
        "counter": lambda p: p**2 * (1 - p),
        "guard": lambda p: (1 - p) ** 2 * (1 + p),
        "mp": lambda p: p
        * (1 + 2 * p - p**2 - 8 * p**3 + 6 * p**4 + 5 * p**5 - 5 * p**6 + p**7),
        "kmp": lambda p: p
        * (1 - 2 * p**2 - p**3 + 5 * p**4 - 3 * p**5 + p**6)
        / (1 - 2 * p + 3 * p**2 - 2 * p**3 + p**4),
    },
    "aba": {
        "counter": lambda p: p**2 * (1 - p),
        "guard": lambda p: (1 - p) ** 2,
        "mp": lambda p: p * (3 - 7 * p + 8 * p**2 - 4 * p**3 + p**4) / (1 - p + p**2),
        "kmp": lambda p: p * (3 - 7 * p + 7 * p**2 - 2 * p**3) / (1 - p + 2 * p**2 - p**3),
    },
    "abb": {
        "counter": lambda p: p * (1 - p) ** 2,
        "guard": lambda p: (1 - p) ** 3,
        "mp": lambda p: p * (4 - 13 * p + 21 * p**2 - 16 * p**3 + 6 * p**4 - p**5),
        "kmp": lambda p: p * (4 - 13 * p + 21 * p**2 - 16 * p**3 + 6 * p**4 - p**5),
    },
}


def comparison_rate_abab_kmp(pa: float, pb: float) -> float:
    """Comparison-branch rate of KMP for ``abab`` over ``{a, b}``."""
    num = pa * (
        -(pa**3) * pb
        + 2 * pa**2 * pb**3
        + 4 * pa**2 * pb**2
        + 3 * pa**2 * pb
        + pa**2
        - 5 * pa * pb**2
        - 4 * pa * pb
        - 2 * pa
        + 2 * pb
        + 1
    )
    den = (1 - pa) * (pa**2 * pb**2 + pa**2 * pb - pa * pb - pa + 1)
    return num / den


# (alphabet size, pattern, variant) -> printed (counter, guard, comparison, total)
# under the uniform distribution; values are as published, 3 decimals or fewer.
UNIFORM_TABLE: dict[tuple[int, str, str], tuple[float, float, float, float]] = {
    (2, "aa", "mp"): (0.283, 0.5, 0.571, 1.353),
    (2, "aa", "kmp"): (0.283, 0.5, 0.5, 1.283),
    (2, "ab", "mp"): (0.25, 0.25, 0.571, 1.321),
    (2, "ab", "kmp"): (0.25, 0.25, 0.571, 1.321),
    (2, "aaa", "mp"): (0.14, 0.5, 0.563, 1.202),
    (2, "aaa", "kmp"): (0.14, 0.5, 0.5, 1.14),
    (2, "aab", "mp"): (0.125, 0.375, 0.605, 1.23),
    (2, "aab", "kmp"): (0.125, 0.375, 0.542, 1.166),
    (2, "aba", "mp"): (0.125, 0.25, 0.708, 1.083),
    (2, "aba", "kmp"): (0.125, 0.25, 0.571, 0.946),
    (2, "abb", "mp"): (0.125, 0.125, 0.547, 0.921),
    (2, "abb", "kmp"): (0.125, 0.125, 0.547, 0.921),
    (4, "aa", "mp"): (0.073, 0.75, 0.295, 1.117),
    (4, "aa", "kmp"): (0.073, 0.75, 0.3, 1.123),
    (4, "ab", "mp"): (0.062, 0.688, 0.375, 1.186),
    (4, "ab", "kmp"): (0.062, 0.688, 0.375, 1.186),
    (4, "aaa", "mp"): (0.018, 0.75, 0.293, 1.06),
    (4, "aaa", "kmp"): (0.018, 0.75, 0.3, 1.068),
    (4, "aab", "mp"): (0.015, 0.734, 0.322, 1.086),
    (4, "aab", "kmp"): (0.015, 0.734, 0.322, 1.086),
    (4, "aba", "mp"): (0.015, 0.688, 0.367, 1.068),
    (4, "aba", "kmp"): (0.015, 0.688, 0.375, 1.076),
    (4, "abb", "mp"): (0.015, 0.672, 0.397, 1.098),
    (4, "abb", "kmp"): (0.015, 0.672, 0.397, 1.098),
}

TABLE_COLUMNS = ("counter", "guard", "comparison", "total")
ALPHABETS = {2: "ab", 4: "abcd"}
