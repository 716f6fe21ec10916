"""Exact (exponential) decision procedures for dual-criticality.

A graph is dual-critical when its vertices can be ordered so that every vertex
after the first has an odd number of edges back to its predecessors.  All
searches here are subset dynamic programs over bitmasks of the vertex set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .graph import (
    GraphError,
    MultiGraph,
    SizeLimitError,
    delete_vertices,
    good_parity,
    is_connected,
    is_even_graph,
    mask_of,
)

EXACT_LIMIT = 26
SWEEP_LIMIT = 10


@dataclass(frozen=True)
class GoodOrdering:
    order: tuple[int, ...]
    indegrees: tuple[int, ...]  # indexed by vertex, not by position

    def as_json(self) -> dict:
        return {"ordering": list(self.order), "indegrees": list(self.indegrees)}


def back_degrees(G: MultiGraph, order: Sequence[int]) -> tuple[int, ...]:
    """Per-vertex count of edges to earlier vertices; loops are never counted."""
    pos = {v: i for i, v in enumerate(order)}
    deg = [0] * G.n
    for u, v in G.edges:
        if u == v:
            continue
        later = u if pos[u] > pos[v] else v
        deg[later] += 1
    return tuple(deg)


def _check_size(G: MultiGraph, limit: int) -> None:
    if G.n == 0:
        raise GraphError("graph has no vertices")
    if G.n > limit:
        raise SizeLimitError(f"n = {G.n} exceeds the exact limit {limit}")


def _adj_array(G: MultiGraph) -> np.ndarray:
    return np.array(G.odd_adjacency, dtype=np.int64)


def _ordering_search(G: MultiGraph, target: int, free_first: bool) -> tuple[int, ...] | None:
    if G.has_loop:
        return None  # a loop is a directed cycle under every orientation
    n = G.n
    ok = _kernels.completable_prefixes(_adj_array(G), n, target, free_first)
    if not ok[0]:
        return None
    adj = G.odd_adjacency
    order = []
    S = 0
    for _ in range(n):
        for v in range(n):
            bit = 1 << v
            if S & bit or not ok[S | bit]:
                continue
            if (S == 0 and free_first) or (adj[v] & S).bit_count() % 2 == target >> v & 1:
                order.append(v)
                S |= bit
                break
    return tuple(order)


def find_good_ordering(G: MultiGraph) -> GoodOrdering | None:
    """Lexicographically smallest good ordering, or ``None``."""
    _check_size(G, EXACT_LIMIT)
    order = _ordering_search(G, G.full_mask, free_first=True)
    if order is None:
        return None
    return GoodOrdering(order, back_degrees(G, order))


def is_dual_critical(G: MultiGraph) -> bool:
    _check_size(G, EXACT_LIMIT)
    if G.n >= 2 and (
        G.has_loop or not good_parity(G) or is_even_graph(G) or not is_connected(G)
    ):
        return False
    return find_good_ordering(G) is not None


def find_t_odd_ordering(G: MultiGraph, T: Iterable[int] | int) -> tuple[int, ...] | None:
    """Ordering whose induced orientation is acyclic with odd indegree exactly on ``T``."""
    _check_size(G, EXACT_LIMIT)
    t = mask_of(T)
    if t & ~G.full_mask:
        raise GraphError("T is not a subset of V")
    return _ordering_search(G, t, free_first=False)


def verify_good_ordering(
    G: MultiGraph, order: Sequence[int], indegrees: Sequence[int] | None = None
) -> bool:
    """Recompute back-degrees from the edge list and check the ordering."""
    if sorted(order) != list(range(G.n)) or G.has_loop:
        return False
    deg = back_degrees(G, order)
    if indegrees is not None and tuple(indegrees) != deg:
        return False
    return deg[order[0]] == 0 and all(deg[v] % 2 == 1 for v in order[1:])


def verify_t_odd_ordering(G: MultiGraph, order: Sequence[int], T: Iterable[int]) -> bool:
    if sorted(order) != list(range(G.n)) or G.has_loop:
        return False
    T = set(T)
    deg = back_degrees(G, order)
    return all((deg[v] % 2 == 1) == (v in T) for v in range(G.n))


def is_rooted_connected(G: MultiGraph, order: Sequence[int]) -> bool:
    """Whether every vertex is reachable from ``order[0]`` along the induced arcs."""
    pos = {v: i for i, v in enumerate(order)}
    out: list[list[int]] = [[] for _ in range(G.n)]
    for u, v in G.edges:
        if u != v:
            a, b = (u, v) if pos[u] < pos[v] else (v, u)
            out[a].append(b)
    seen = {order[0]}
    stack = [order[0]]
    while stack:
        for w in out[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == G.n


@dataclass(frozen=True)
class CharacterizationReport:
    good_ordering: bool        # dual-critical by definition
    any_vertex_even: bool      # every v admits an orientation odd everywhere but v
    all_t_odd: bool            # good parity and every admissible T is realisable
    odd_cut_split: bool        # recursive split into two with an odd cut

    @property
    def unanimous(self) -> bool:
        return len({self.good_ordering, self.any_vertex_even, self.all_t_odd, self.odd_cut_split}) == 1

    def as_tuple(self) -> tuple[bool, bool, bool, bool]:
        return (self.good_ordering, self.any_vertex_even, self.all_t_odd, self.odd_cut_split)


def _all_t_odd(G: MultiGraph) -> bool:
    """Every ``T`` strictly inside ``V`` with ``|T| = |E| (mod 2)`` has a T-odd ordering."""
    full = G.full_mask
    for t in range(full):
        if t.bit_count() % 2 == G.m % 2 and find_t_odd_ordering(G, t) is None:
            return False
    return True


def odd_cut_split(G: MultiGraph) -> bool:
    """Single vertex, or an odd cut whose two sides both satisfy this recursively."""
    _check_size(G, EXACT_LIMIT)
    if G.has_loop:
        return False
    return bool(_kernels.odd_split_closure(_adj_array(G), G.n)[G.full_mask])


def check_characterizations(G: MultiGraph) -> CharacterizationReport:
    """Evaluate the four equivalent descriptions of dual-criticality independently."""
    _check_size(G, SWEEP_LIMIT)
    full = G.full_mask
    s1 = find_good_ordering(G) is not None
    s2 = all(find_t_odd_ordering(G, full & ~(1 << v)) is not None for v in range(G.n))
    s3 = good_parity(G) and _all_t_odd(G)
    s4 = odd_cut_split(G)
    return CharacterizationReport(s1, s2, s3, s4)


def is_super_dual_critical(G: MultiGraph) -> bool:
    """Every single-vertex deletion leaves a dual-critical graph."""
    if G.n < 2:
        raise GraphError("super-dual-criticality needs at least two vertices")
    _check_size(G, EXACT_LIMIT)
    parities = {d % 2 for d in G.degrees}
    if len(parities) != 1 or parities.pop() != (G.m - G.n) % 2:
        return False
    return all(is_dual_critical(delete_vertices(G, [v])) for v in range(G.n))


def check_t_odd_union(G: MultiGraph) -> bool:
    """Whether [all admissible T-odd orientations exist] matches
    [dual-critical or super-dual-critical] on ``G``.

    A single vertex with an odd number of loops is a degenerate exception:
    no ``T`` is admissible there, so the left side holds vacuously.
    """
    _check_size(G, SWEEP_LIMIT)
    lhs = _all_t_odd(G)
    rhs = is_dual_critical(G) or (G.n >= 2 and is_super_dual_critical(G))
    return lhs == rhs


def t_odd_reduction(G: MultiGraph, T: Iterable[int] | int) -> MultiGraph:
    """Add an apex joined once to every vertex outside ``T``.

    The result is dual-critical exactly when ``G`` has a T-odd acyclic
    orientation.
    """
    t = mask_of(T)
    apex = G.n
    extra = tuple((apex, v) for v in range(G.n) if not t >> v & 1)
    return MultiGraph(G.n + 1, G.edges + extra)
