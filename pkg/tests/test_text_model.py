import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from branchlore.text_model import (
    Alphabet,
    ModelError,
    Pattern,
    make_distribution,
    sample_text,
    uniform_distribution,
    word_probability,
)

AB = Alphabet("ab")


def test_uniform_binary():
    d = make_distribution(AB, [0.5, 0.5])
    assert d.probs == (0.5, 0.5)
    assert d.is_uniform


def test_uniform_four():
    d = make_distribution(Alphabet("abcd"), [0.25] * 4)
    assert d.prob("c") == 0.25


@pytest.mark.parametrize(
    "probs",
    [[1.0, 0.0], [0.0, 1.0], [-0.1, 1.1], [0.5, 0.5 + 2e-9], [0.5], [0.3, 0.3, 0.4], [float("nan"), 0.5]],
)
def test_make_distribution_rejects(probs):
    with pytest.raises(ModelError):
        make_distribution(AB, probs)


def test_sum_tolerance_is_inclusive_of_tiny_noise():
    make_distribution(AB, [0.5, 0.5 + 5e-10])


@pytest.mark.parametrize("symbols", ["a", "", "aab", ["ab", "c"]])
def test_bad_alphabets(symbols):
    with pytest.raises(ModelError):
        Alphabet(symbols)


def test_pattern_validation():
    with pytest.raises(ModelError):
        Pattern("", AB)
    with pytest.raises(ModelError, match="symbol not in alphabet"):
        Pattern("ax", AB)


def test_word_probability_examples():
    assert word_probability(uniform_distribution(AB), "abab") == 1 / 16
    assert word_probability(uniform_distribution(AB), "") == 1.0
    d = make_distribution(AB, [0.3, 0.7])
    assert word_probability(d, "aab") == pytest.approx(0.3 * 0.3 * 0.7, abs=1e-15)
    assert word_probability(d, "aab") == pytest.approx(0.063, abs=1e-12)
    with pytest.raises(ModelError):
        word_probability(d, "abc")


probs3 = st.lists(st.floats(0.05, 1.0), min_size=3, max_size=3).map(lambda w: [x / sum(w) for x in w])


@given(probs3, st.text("abc", max_size=8), st.text("abc", max_size=8))
def test_word_probability_is_multiplicative(probs, u, v):
    d = make_distribution(Alphabet("abc"), probs)
    assert word_probability(d, u + v) == pytest.approx(
        word_probability(d, u) * word_probability(d, v), rel=1e-12
    )


@pytest.mark.parametrize("sigma", ["ab", "abc"])
@pytest.mark.parametrize("n", [0, 1, 5, 8])
def test_word_probabilities_sum_to_one(sigma, n):
    w = np.linspace(1, 2, len(sigma))
    d = make_distribution(Alphabet(sigma), (w / w.sum()).tolist())
    total = math.fsum(word_probability(d, "".join(t)) for t in itertools.product(sigma, repeat=n))
    assert abs(total - 1) <= 1e-12


def test_sample_text_zero_length():
    assert sample_text(uniform_distribution(AB), 0, 123) == ""


def test_sample_text_deterministic():
    d = uniform_distribution(AB)
    assert sample_text(d, 10, 42) == sample_text(d, 10, 42)
    assert len(sample_text(d, 10, 42)) == 10
    assert sample_text(d, 50, 1) != sample_text(d, 50, 2)


def test_sample_text_frequency():
    w = sample_text(uniform_distribution(AB), 10**6, 42)
    # 3 sigma of a binomial(1e6, 1/2) frequency is 0.0015
    assert abs(w.count("a") / len(w) - 0.5) <= 0.002


def test_sample_text_nonuniform_frequency():
    d = make_distribution(Alphabet("abc"), [0.2, 0.3, 0.5])
    w = sample_text(d, 200_000, 9)
    for s, p in zip("abc", d.probs):
        assert abs(w.count(s) / len(w) - p) < 4 * math.sqrt(p * (1 - p) / len(w))


def test_sample_text_frozen_stream():
    # pins the PCG64 + inverse-CDF mapping so a silent change of generator is caught
    assert sample_text(uniform_distribution(AB), 20, 42) == "babbabbbaaabbbaababb"


@settings(max_examples=30)
@given(st.integers(0, 2**63 - 1), st.integers(0, 200))
def test_sample_text_repeatable(seed, n):
    d = make_distribution(Alphabet("abc"), [0.2, 0.3, 0.5])
    assert sample_text(d, n, seed) == sample_text(d, n, seed)
