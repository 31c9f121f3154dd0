"""Finite Markov chains with per-edge rewards."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Mapping, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .text_model import INTERNAL_TOL

Edge = tuple[int, float, float]  # (target index, probability, reward)


class ChainError(RuntimeError):
    pass


@dataclass(frozen=True)
class MarkovChain:
    states: tuple[Hashable, ...]
    edges: tuple[tuple[Edge, ...], ...]

    def __post_init__(self):
        if len(self.states) != len(self.edges):
            raise ChainError("one edge list is needed per state")
        n = len(self.states)
        for s, out in zip(self.states, self.edges):
            total = 0.0
            for target, prob, reward in out:
                if not 0 <= target < n:
                    raise ChainError(f"edge from {s!r} targets unknown index {target}")
                if not 0.0 <= prob <= 1.0 or reward < 0:
                    raise ChainError(f"bad edge from {s!r}: prob={prob}, reward={reward}")
                total += prob
            if abs(total - 1.0) > INTERNAL_TOL:
                raise ChainError(f"outgoing mass of {s!r} is {total!r}")

    def __len__(self) -> int:
        return len(self.states)

    def index(self, state: Hashable) -> int:
        return self.states.index(state)

    def matrix(self) -> np.ndarray:
        n = len(self.states)
        P = np.zeros((n, n))
        for i, out in enumerate(self.edges):
            for target, prob, _ in out:
                P[i, target] += prob
        return P

    def expected_rewards(self) -> np.ndarray:
        """Expected reward of one step taken from each state."""
        return np.array([sum(p * r for _, p, r in out) for out in self.edges])

    def has_self_loop(self) -> bool:
        return any(t == i and p > 0 for i, out in enumerate(self.edges) for t, p, _ in out)


def chain_from_dict(
    transitions: Mapping[Hashable, Sequence[tuple[Hashable, float, float]]],
) -> MarkovChain:
    """Build a chain from ``{state: [(target, prob, reward), ...]}``."""
    states = tuple(transitions)
    pos = {s: i for i, s in enumerate(states)}
    edges = tuple(
        tuple((pos[t], float(p), float(r)) for t, p, r in transitions[s]) for s in states
    )
    return MarkovChain(states, edges)


def _components(chain: MarkovChain) -> tuple[int, np.ndarray]:
    rows, cols = [], []
    for i, out in enumerate(chain.edges):
        for t, p, _ in out:
            if p > 0:
                rows.append(i)
                cols.append(t)
    n = len(chain)
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    return connected_components(graph, directed=True, connection="strong")


def terminal_component(chain: MarkovChain) -> MarkovChain:
    """Restrict ``chain`` to its unique closed strongly connected component."""
    n_comp, labels = _components(chain)
    leaks = np.zeros(n_comp, dtype=bool)
    for i, out in enumerate(chain.edges):
        for t, p, _ in out:
            if p > 0 and labels[t] != labels[i]:
                leaks[labels[i]] = True
    terminal = np.flatnonzero(~leaks)
    if len(terminal) != 1:
        raise ChainError(f"expected one terminal component, found {len(terminal)}")
    keep = [i for i in range(len(chain)) if labels[i] == terminal[0]]
    pos = {old: new for new, old in enumerate(keep)}
    edges = tuple(
        tuple((pos[t], p, r) for t, p, r in chain.edges[i] if p > 0) for i in keep
    )
    return MarkovChain(tuple(chain.states[i] for i in keep), edges)


def stationary_vector(chain: MarkovChain) -> np.ndarray:
    """Stationary distribution of an irreducible chain with a self-loop, as an array.

    Solves ``(P^T - I) v = 0`` with the last equation replaced by ``sum(v) = 1``.
    """
    if not chain.has_self_loop():
        raise ChainError("no self-loop: aperiodicity is not witnessed")
    P = chain.matrix()
    n = len(P)
    A = P.T - np.eye(n)
    A[-1, :] = 1.0
    b = np.zeros(n)
    b[-1] = 1.0
    try:
        v = np.linalg.solve(A, b)
    except np.linalg.LinAlgError as exc:
        raise ChainError(f"singular stationary system: {exc}") from None
    residual = np.max(np.abs(v @ P - v)) if n else 0.0
    if residual > INTERNAL_TOL or abs(v.sum() - 1.0) > INTERNAL_TOL or v.min() < -INTERNAL_TOL:
        raise ChainError(f"stationary solve failed (residual {residual:.3g})")
    return v


def stationary_distribution(chain: MarkovChain) -> dict:
    v = stationary_vector(chain)
    return dict(zip(chain.states, v.tolist()))


def expected_step_reward(chain: MarkovChain, stationary: Mapping[Hashable, float] | np.ndarray) -> float:
    """Long-run reward per step: stationary mass times expected edge reward."""
    if isinstance(stationary, Mapping):
        v = np.array([stationary[s] for s in chain.states])
    else:
        v = np.asarray(stationary)
    return float(v @ chain.expected_rewards())


def power_distribution(P: np.ndarray, start: int = 0, steps: int = 1024) -> np.ndarray:
    """Row ``start`` of ``P**steps`` computed by repeated squaring."""
    M = np.linalg.matrix_power(P, steps)
    return M[start]


def chain_to_dot(chain: MarkovChain, name: str = "chain") -> str:
    """Graphviz rendering with ``prob:reward`` edge labels."""
    lines = [f"digraph {name} {{", "  rankdir=LR;"]
    for i, s in enumerate(chain.states):
        lines.append(f'  s{i} [label="{s}"];')
    for i, out in enumerate(chain.edges):
        for t, p, r in out:
            lines.append(f'  s{i} -> s{t} [label="{p:.6g}:{r:g}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
