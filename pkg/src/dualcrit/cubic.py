"""Brute-force checkers for the equivalent descriptions of dual-criticality
on 3-regular graphs with ``n = 4k + 2`` vertices.

Conditions are numbered 1 to 7:

1. dual-critical
2. ``k + 1`` independent vertices whose deletion leaves a connected graph
3. ``k + 1`` vertices whose deletion leaves a forest
4. some independent vertices whose deletion leaves a tree
5. a spanning tree whose complement has only even-sized components
6. for every root ``r``, an ``r``-rooted connected orientation with odd
   indegree everywhere except ``r``
7. ``e(P) >= |P| + bp(P) - 1`` for every partition ``P`` of ``V``

Condition 8 (upper-embeddability) is not checked.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .exact import is_dual_critical
from .graph import (
    GraphError,
    MultiGraph,
    SizeLimitError,
    components,
    delete_vertices,
    is_connected,
    is_simple,
    members,
)

SUBSET_LIMIT = 14
TREE_LIMIT = 12
ORIENTATION_EDGE_LIMIT = 18
PARTITION_LIMIT = 11


@dataclass(frozen=True)
class CubicInstance:
    G: MultiGraph
    k: int

    @classmethod
    def of(cls, G: MultiGraph) -> CubicInstance:
        if any(d != 3 for d in G.degrees):
            raise GraphError("graph is not 3-regular")
        if G.n % 4 != 2:
            raise GraphError(f"n = {G.n} is not of the form 4k + 2")
        return cls(G, (G.n - 2) // 4)


def _instance(C: CubicInstance | MultiGraph) -> CubicInstance:
    return C if isinstance(C, CubicInstance) else CubicInstance.of(C)


def _limit(value: int, limit: int, what: str) -> None:
    if value > limit:
        raise SizeLimitError(f"{what} = {value} exceeds {limit}")


def is_independent(G: MultiGraph, S) -> bool:
    S = set(S)
    return not any(u in S and v in S for u, v in G.edges)


def is_forest(G: MultiGraph) -> bool:
    """No cycles, counting loops and parallel edges as cycles."""
    return G.m == G.n - len(components(G)) if G.n else G.m == 0


def is_tree(G: MultiGraph) -> bool:
    return G.n > 0 and is_connected(G) and G.m == G.n - 1


def cond_independent_connected(C) -> frozenset[int] | None:
    C = _instance(C)
    G = C.G
    _limit(G.n, SUBSET_LIMIT, "n")
    for S in combinations(range(G.n), C.k + 1):
        if is_independent(G, S) and is_connected(delete_vertices(G, S)):
            return frozenset(S)
    return None


def cond_deletion_forest(C) -> frozenset[int] | None:
    C = _instance(C)
    G = C.G
    _limit(G.n, SUBSET_LIMIT, "n")
    for S in combinations(range(G.n), C.k + 1):
        if is_forest(delete_vertices(G, S)):
            return frozenset(S)
    return None


def cond_independent_tree(C) -> frozenset[int] | None:
    C = _instance(C)
    G = C.G
    _limit(G.n, SUBSET_LIMIT, "n")
    for size in range(G.n):
        for S in combinations(range(G.n), size):
            if is_independent(G, S) and is_tree(delete_vertices(G, S)):
                return frozenset(S)
    return None


def spanning_trees(G: MultiGraph):
    """Every spanning tree as a frozenset of edge ids, by include/exclude
    branching on the edges in id order with a union-find feasibility cut."""
    n = G.n
    edges = G.edges

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(i, parent, chosen):
        if len(chosen) == n - 1:
            yield frozenset(chosen)
            return
        if len(chosen) + (len(edges) - i) < n - 1:
            return
        u, v = edges[i]
        ru, rv = find(parent, u), find(parent, v)
        if ru != rv:
            p = list(parent)
            p[ru] = rv
            chosen.append(i)
            yield from rec(i + 1, p, chosen)
            chosen.pop()
        yield from rec(i + 1, parent, chosen)

    if n == 0:
        return
    yield from rec(0, list(range(n)), [])


def cotree_components_even(G: MultiGraph, tree: frozenset[int]) -> bool:
    """Every component of ``G - E(T)`` (on all of ``V``) has an even edge count."""
    H = MultiGraph(G.n, tuple(e for i, e in enumerate(G.edges) if i not in tree))
    comp_of = {}
    for c, comp in enumerate(components(H)):
        for v in members(comp):
            comp_of[v] = c
    counts = [0] * len(comp_of)
    for u, _ in H.edges:
        counts[comp_of[u]] += 1
    return all(c % 2 == 0 for c in counts)


def cond_spanning_tree_even_components(C) -> frozenset[int] | None:
    C = _instance(C)
    G = C.G
    _limit(G.n, TREE_LIMIT, "n")
    for T in spanning_trees(G):
        if cotree_components_even(G, T):
            return T
    return None


def _orientation_table(G: MultiGraph) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """All ``2^m`` orientations: bit ``e`` set means edge ``e`` points ``v -> u``."""
    m = G.m
    codes = np.arange(1 << m, dtype=np.int64)
    bits = ((codes[:, None] >> np.arange(m)) & 1).astype(bool)
    u = np.array([e[0] for e in G.edges])
    v = np.array([e[1] for e in G.edges])
    tails = np.where(bits, v, u)
    heads = np.where(bits, u, v)
    return codes, tails, heads


def _reachable_all(n: int, root: int, tails: np.ndarray, heads: np.ndarray) -> np.ndarray:
    rows = np.arange(tails.shape[0])
    reach = np.zeros((tails.shape[0], n), dtype=bool)
    reach[:, root] = True
    for _ in range(n):
        before = reach.sum()
        for e in range(tails.shape[1]):
            reach[rows, heads[:, e]] |= reach[rows, tails[:, e]]
        if reach.sum() == before:
            break
    return reach.all(axis=1)


def rooted_odd_orientation(G: MultiGraph, r: int) -> int | None:
    """Orientation code (see ``_orientation_table``) that is ``r``-rooted
    connected with odd indegree at every vertex but ``r``, or ``None``."""
    _limit(G.m, ORIENTATION_EDGE_LIMIT, "m")
    codes, tails, heads = _orientation_table(G)
    indeg = np.zeros((codes.shape[0], G.n), dtype=np.int64)
    rows = np.arange(codes.shape[0])
    for e in range(G.m):
        np.add.at(indeg, (rows, heads[:, e]), 1)
    odd = indeg % 2 == 1
    others = [v for v in range(G.n) if v != r]
    cand = odd[:, others].all(axis=1)
    if not cand.any():
        return None
    ok = _reachable_all(G.n, r, tails[cand], heads[cand])
    hits = codes[cand][ok]
    return int(hits[0]) if hits.size else None


def cond_rooted_odd_orientation(C) -> bool:
    C = _instance(C)
    G = C.G
    _limit(G.m, ORIENTATION_EDGE_LIMIT, "m")
    return all(rooted_odd_orientation(G, r) is not None for r in range(G.n))


def orientation_arcs(G: MultiGraph, code: int) -> list[tuple[int, int]]:
    return [(v, u) if code >> e & 1 else (u, v) for e, (u, v) in enumerate(G.edges)]


def partition_terms(G: MultiGraph, P) -> tuple[int, int, int]:
    """``(e(P), |P|, bp(P))`` for a partition given as an iterable of classes."""
    where = {}
    classes = [frozenset(c) for c in P]
    for i, c in enumerate(classes):
        for v in c:
            where[v] = i
    inner = [0] * len(classes)
    cross = 0
    for u, v in G.edges:
        if where[u] == where[v]:
            inner[where[u]] += 1
        else:
            cross += 1
    bp = sum(1 for c, e in zip(classes, inner) if (len(c) - e) % 2 == 0)
    return cross, len(classes), bp


def cond_partition_inequality(C) -> tuple[frozenset[int], ...] | None:
    """A partition violating ``e(P) >= |P| + bp(P) - 1``, or ``None``.

    Set partitions are enumerated as restricted growth strings, keeping the
    inner edge count of every class up to date.
    """
    C = _instance(C)
    G = C.G
    n = G.n
    _limit(n, PARTITION_LIMIT, "n")
    back: list[list[int]] = [[] for _ in range(n)]
    for u, v in G.edges:
        a, b = min(u, v), max(u, v)
        back[b].append(a)  # loops are inner edges of their own class
    label = [0] * n
    size: list[int] = []
    inner: list[int] = []

    def rec(i: int, cross: int):
        if i == n:
            bp = sum(1 for s, e in zip(size, inner) if (s - e) % 2 == 0)
            if cross < len(size) + bp - 1:
                return tuple(frozenset(v for v in range(n) if label[v] == c) for c in range(len(size)))
            return None
        for c in range(len(size) + 1):
            if c == len(size):
                size.append(0)
                inner.append(0)
            same = sum(1 for a in back[i] if a < i and label[a] == c) + back[i].count(i)
            size[c] += 1
            inner[c] += same
            label[i] = c
            found = rec(i + 1, cross + len(back[i]) - same)
            size[c] -= 1
            inner[c] -= same
            if size[c] == 0:
                size.pop()
                inner.pop()
            if found is not None:
                return found
        return None

    return rec(0, 0)


@dataclass
class CubicReport:
    k: int
    conditions: dict[str, bool]
    witnesses: dict[str, object] = field(default_factory=dict)
    upper_embeddable: str = "not checked"

    @property
    def unanimous(self) -> bool:
        return len(set(self.conditions.values())) == 1

    def as_json(self) -> dict:
        def enc(w):
            if isinstance(w, frozenset):
                return sorted(w)
            if isinstance(w, tuple):
                return [sorted(c) for c in w]
            return w
        return {"k": self.k, "conditions": self.conditions, "unanimous": self.unanimous,
                "witnesses": {key: enc(w) for key, w in self.witnesses.items()},
                "condition_8": self.upper_embeddable}


def cubic_suite(C) -> CubicReport:
    C = _instance(C)
    G = C.G
    w2 = cond_independent_connected(C)
    w3 = cond_deletion_forest(C)
    w4 = cond_independent_tree(C)
    w5 = cond_spanning_tree_even_components(C)
    c6 = cond_rooted_odd_orientation(C)
    w7 = cond_partition_inequality(C)
    conditions = {
        "1": is_dual_critical(G),
        "2": w2 is not None,
        "3": w3 is not None,
        "4": w4 is not None,
        "5": w5 is not None,
        "6": c6,
        "7": w7 is None,
    }
    witnesses = {key: w for key, w in (("2", w2), ("3", w3), ("4", w4), ("5", w5)) if w is not None}
    if w7 is not None:
        witnesses["7_violation"] = w7
    return CubicReport(C.k, conditions, witnesses)


# --------------------------------------------------------------------------
# instances


K33 = MultiGraph(6, tuple((a, b) for a in range(3) for b in range(3, 6)))
PRISM = MultiGraph(6, ((0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)))
PETERSEN = MultiGraph(10, tuple(
    [(i, (i + 1) % 5) for i in range(5)]
    + [(i, i + 5) for i in range(5)]
    + [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
))


def random_cubic(n: int, seed: int, max_tries: int = 100000) -> MultiGraph:
    """Uniform simple 3-regular graph on ``n`` vertices by the pairing model:
    match ``3n`` points uniformly and reject pairings with loops or parallel edges."""
    if n < 4 or n % 2:
        raise GraphError("a simple cubic graph needs an even n >= 4")
    rng = random.Random(seed)
    points = [v for v in range(n) for _ in range(3)]
    for _ in range(max_tries):
        rng.shuffle(points)
        edges = tuple((min(a, b), max(a, b)) for a, b in zip(points[::2], points[1::2]))
        G = MultiGraph(n, tuple(sorted(edges)))
        if is_simple(G):
            return G
    raise GraphError("no simple pairing found")
