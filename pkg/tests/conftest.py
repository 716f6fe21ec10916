"""Brute-force oracles shared by the tests.

These deliberately avoid the package's search code: they enumerate
permutations or labelings directly from the edge list.
"""

from __future__ import annotations

from itertools import permutations, product

from hypothesis import settings
from hypothesis import strategies as st

from dualcrit.graph import MultiGraph

# compiled kernels make the first call of a test slow
settings.register_profile("dualcrit", deadline=None)
settings.load_profile("dualcrit")


def back_counts(G: MultiGraph, order) -> list[int]:
    pos = {v: i for i, v in enumerate(order)}
    back = [0] * G.n
    for u, v in G.edges:
        if u != v:
            back[u if pos[u] > pos[v] else v] += 1
    return back


def brute_dc(G: MultiGraph) -> bool:
    """Some vertex order gives every non-first vertex an odd back-degree."""
    if any(u == v for u, v in G.edges):
        return False
    for order in permutations(range(G.n)):
        back = back_counts(G, order)
        if all(back[v] % 2 for v in order[1:]):
            return True
    return False


def brute_t_odd(G: MultiGraph, T) -> bool:
    if any(u == v for u, v in G.edges):
        return False
    T = set(T)
    for order in permutations(range(G.n)):
        back = back_counts(G, order)
        if all((back[v] % 2 == 1) == (v in T) for v in range(G.n)):
            return True
    return False


def brute_good_partition(G: MultiGraph, labels) -> bool:
    k = max(labels) + 1
    if set(labels) != set(range(k)):
        return False
    cross = [0] * k
    for u, v in G.edges:
        if labels[u] != labels[v]:
            cross[max(labels[u], labels[v])] += 1
    return all(c % 2 for c in cross[1:])


def brute_maxdc(G: MultiGraph) -> int:
    """Largest class count over every good labeling of the vertices."""
    return max(max(lab) + 1 for lab in product(range(G.n), repeat=G.n)
               if brute_good_partition(G, lab))


@st.composite
def multigraphs(draw, min_n=1, max_n=7, max_m=12, loops=True):
    n = draw(st.integers(min_n, max_n))
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    if not loops:
        pair = pair.filter(lambda e: e[0] != e[1])
    edges = draw(st.lists(pair, max_size=max_m)) if n > 1 or loops else []
    return MultiGraph(n, tuple(edges))
