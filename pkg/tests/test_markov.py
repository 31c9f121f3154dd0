import numpy as np
import pytest

from branchlore.analysis import build_predictor_product
from branchlore.markov import (
    ChainError,
    MarkovChain,
    chain_from_dict,
    chain_to_dot,
    expected_step_reward,
    power_distribution,
    stationary_distribution,
    stationary_vector,
    terminal_component,
)
from branchlore.text_model import Alphabet, Pattern, uniform_distribution
from branchlore.verify import automaton_matrix, random_case

from oracles import stationary_by_power


def test_absorbing_state():
    chain = chain_from_dict({"x": [("y", 1, 0)], "y": [("y", 1, 0)]})
    core = terminal_component(chain)
    assert core.states == ("y",)
    assert stationary_distribution(core) == {"y": 1.0}


def test_two_disjoint_cycles_rejected():
    chain = chain_from_dict({"x": [("x", 1, 0)], "y": [("y", 1, 0)]})
    with pytest.raises(ChainError):
        terminal_component(chain)


def test_uniform_two_cycle():
    chain = chain_from_dict({0: [(0, 0.5, 1), (1, 0.5, 0)], 1: [(0, 0.5, 0), (1, 0.5, 3)]})
    v = stationary_distribution(chain)
    assert v == pytest.approx({0: 0.5, 1: 0.5}, abs=1e-15)
    assert expected_step_reward(chain, v) == pytest.approx(1.0)


def test_uniform_stationary_averages_rewards():
    chain = chain_from_dict({0: [(0, 0.5, 1), (1, 0.5, 1)], 1: [(1, 0.5, 3), (0, 0.5, 3)]})
    assert expected_step_reward(chain, stationary_distribution(chain)) == pytest.approx(2.0)


def test_zero_rewards():
    chain = chain_from_dict({0: [(0, 0.3, 0), (1, 0.7, 0)], 1: [(0, 1.0, 0)]})
    assert expected_step_reward(chain, stationary_distribution(chain)) == 0.0


def test_periodic_chain_rejected():
    chain = chain_from_dict({0: [(1, 1, 0)], 1: [(0, 1, 0)]})
    with pytest.raises(ChainError, match="self-loop"):
        stationary_vector(chain)


@pytest.mark.parametrize(
    "bad",
    [
        {0: [(0, 0.5, 0)]},
        {0: [(0, 1.5, 0)]},
        {0: [(0, 1.0, -1)]},
    ],
)
def test_validation(bad):
    with pytest.raises(ChainError):
        chain_from_dict(bad)


def test_ababb_kmp_terminal_component():
    chain = build_predictor_product(Pattern("ababb", Alphabet("ab")), uniform_distribution(Alphabet("ab")), "kmp")
    core = terminal_component(chain)
    assert (0, 3) in core.states
    k = core.index((0, 3))
    assert any(t == k for t, _, _ in core.edges[k])
    assert len(core) < len(chain)
    assert terminal_component(core) == core


def test_product_chain_stationary_properties():
    rng = np.random.default_rng(5)
    for _ in range(60):
        pattern, dist = random_case(rng)
        for variant in ("mp", "kmp"):
            core = terminal_component(build_predictor_product(pattern, dist, variant))
            v = stationary_vector(core)
            P = core.matrix()
            assert abs(v.sum() - 1) <= 1e-12
            assert np.max(np.abs(v @ P - v)) <= 1e-12
            for start in (0, len(core) - 1):
                assert np.max(np.abs(power_distribution(P, start) - v)) <= 1e-10


def test_power_distribution_agrees_with_oracle():
    rng = np.random.default_rng(0)
    pattern, dist = random_case(rng)
    P = automaton_matrix(pattern, dist)
    assert np.allclose(power_distribution(P), stationary_by_power(P), atol=1e-12)


def test_chain_to_dot():
    chain = chain_from_dict({"x": [("x", 0.25, 2), ("y", 0.75, 0)], "y": [("x", 1, 0)]})
    dot = chain_to_dot(chain, "demo")
    assert dot.splitlines()[0] == "digraph demo {"
    assert 's0 -> s0 [label="0.25:2"];' in dot
    assert isinstance(chain, MarkovChain)
