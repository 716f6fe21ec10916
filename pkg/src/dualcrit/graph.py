"""Undirected multigraphs with stable edge ids, plus the cut/parity arithmetic
and the parity-preserving rewrites the rest of the package is built on.

Vertex sets are handled internally as Python ``int`` bitmasks (bit ``v`` set
means vertex ``v`` is a member).  Public functions accept any iterable of
vertex ids.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

Edge = tuple[int, int]
VertexSet = frozenset[int]
OrderedPartition = tuple[frozenset[int], ...]


class GraphError(ValueError):
    """Raised when an operation's precondition on its graph arguments fails."""


class SizeLimitError(GraphError):
    """Raised when an exponential routine is asked to run above its hard limit."""


def mask_of(vertices: Iterable[int] | int) -> int:
    if isinstance(vertices, int):
        return vertices
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def parity(x: int) -> int:
    return x.bit_count() & 1


@dataclass(frozen=True)
class MultiGraph:
    """Undirected multigraph on vertices ``0..n-1``.

    ``edges[i]`` is the pair of endpoints of the edge with id ``i``; loops are
    pairs ``(v, v)``.  Instances are immutable, derived data is cached lazily.
    """

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        norm = []
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            norm.append((u, v))
        object.__setattr__(self, "edges", tuple(norm))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> MultiGraph:
        return cls(n, tuple((u, v) for u, v in edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return tuple(deg)

    @cached_property
    def odd_adjacency(self) -> tuple[int, ...]:
        """Bitmask per vertex of the neighbours joined by an odd number of edges.

        Every parity question about cuts only depends on this.
        """
        adj = [0] * self.n
        for u, v in self.edges:
            if u != v:
                adj[u] ^= 1 << v
                adj[v] ^= 1 << u
        return tuple(adj)

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Bitmask per vertex of all distinct non-loop neighbours."""
        adj = [0] * self.n
        for u, v in self.edges:
            if u != v:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        return tuple(adj)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, (u, v) in enumerate(self.edges):
            inc[u].append(i)
            if v != u:
                inc[v].append(i)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def has_loop(self) -> bool:
        return any(u == v for u, v in self.edges)

    def multiplicity(self, u: int, v: int) -> int:
        return sum(1 for a, b in self.edges if (a, b) == (u, v) or (a, b) == (v, u))

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, edges={list(self.edges)})"


# --------------------------------------------------------------------------
# counting


def degree(G: MultiGraph, v: int) -> int:
    if not 0 <= v < G.n:
        raise GraphError(f"vertex {v} out of range")
    return G.degrees[v]


def cut_size(G: MultiGraph, A: Iterable[int] | int, B: Iterable[int] | int) -> int:
    a, b = mask_of(A), mask_of(B)
    if a & b:
        raise GraphError("cut sides overlap")
    count = 0
    for u, v in G.edges:
        bu, bv = 1 << u, 1 << v
        if (a & bu and b & bv) or (a & bv and b & bu):
            count += 1
    return count


def cut_parity(G: MultiGraph, A: int, B: int) -> int:
    """Parity of ``cut_size(G, A, B)`` for bitmasks; no overlap check."""
    p = 0
    adj = G.odd_adjacency
    for v in members(A):
        p ^= parity(adj[v] & B)
    return p


def induced_edge_count(G: MultiGraph, X: Iterable[int] | int) -> int:
    x = mask_of(X)
    return sum(1 for u, v in G.edges if x >> u & 1 and x >> v & 1)


def good_parity(G: MultiGraph) -> bool:
    return (G.n - G.m) % 2 == 1


def is_even_graph(G: MultiGraph) -> bool:
    return all(d % 2 == 0 for d in G.degrees)


def is_connected(G: MultiGraph) -> bool:
    if G.n == 0:
        raise GraphError("connectivity of the empty graph is undefined")
    return _component_mask(G.adjacency, 0, G.full_mask) == G.full_mask


def _component_mask(adj: Sequence[int], start: int, alive: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in members(frontier):
            nxt |= adj[v]
        nxt &= alive & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def components(G: MultiGraph, alive: int | None = None) -> list[int]:
    """Vertex masks of the connected components of ``G[alive]``."""
    alive = G.full_mask if alive is None else alive
    out = []
    rest = alive
    while rest:
        start = (rest & -rest).bit_length() - 1
        comp = _component_mask(G.adjacency, start, alive)
        out.append(comp)
        rest &= ~comp
    return out


# --------------------------------------------------------------------------
# sub- and derived graphs


def induced_subgraph(G: MultiGraph, X: Iterable[int] | int) -> tuple[MultiGraph, list[int]]:
    """``G[X]`` relabelled densely; also returns ``new -> old`` vertex ids."""
    x = mask_of(X)
    keep = members(x)
    index = {v: i for i, v in enumerate(keep)}
    edges = [(index[u], index[v]) for u, v in G.edges if x >> u & 1 and x >> v & 1]
    return MultiGraph(len(keep), tuple(edges)), keep


def delete_vertices(G: MultiGraph, X: Iterable[int] | int) -> MultiGraph:
    return induced_subgraph(G, G.full_mask & ~mask_of(X))[0]


def spanning_tree(G: MultiGraph) -> frozenset[int]:
    """Edge ids of a BFS spanning tree rooted at vertex 0."""
    if G.n == 0:
        raise GraphError("empty graph has no spanning tree")
    seen = [False] * G.n
    seen[0] = True
    tree = []
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for e in G.incidence[u]:
            a, b = G.edges[e]
            w = b if a == u else a
            if not seen[w]:
                seen[w] = True
                tree.append(e)
                queue.append(w)
    if len(tree) != G.n - 1:
        raise GraphError("graph is disconnected")
    return frozenset(tree)


class RootedTree:
    """A spanning tree hung from vertex 0, for fast tree-path queries."""

    def __init__(self, G: MultiGraph, T: Iterable[int]):
        T = frozenset(T)
        if len(T) != G.n - 1 or any(not 0 <= e < G.m for e in T):
            raise GraphError("not a spanning tree edge set")
        self.parent = [-1] * G.n
        self.parent_edge = [-1] * G.n
        self.depth = [0] * G.n
        seen = [False] * G.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for e in G.incidence[u]:
                if e not in T:
                    continue
                a, b = G.edges[e]
                w = b if a == u else a
                if w == u or seen[w]:
                    continue
                seen[w] = True
                count += 1
                self.parent[w] = u
                self.parent_edge[w] = e
                self.depth[w] = self.depth[u] + 1
                queue.append(w)
        if count != G.n:
            raise GraphError("edge set does not span the graph acyclically")

    def path_edges(self, u: int, v: int) -> frozenset[int]:
        out = []
        while u != v:
            if self.depth[u] >= self.depth[v]:
                out.append(self.parent_edge[u])
                u = self.parent[u]
            else:
                out.append(self.parent_edge[v])
                v = self.parent[v]
        return frozenset(out)


def fundamental_cycle_tree_edges(G: MultiGraph, T: Iterable[int], e: int) -> frozenset[int]:
    T = frozenset(T)
    if e in T:
        raise GraphError(f"edge {e} is a tree edge")
    if not 0 <= e < G.m:
        raise GraphError(f"no edge {e}")
    u, v = G.edges[e]
    return RootedTree(G, T).path_edges(u, v)


def fundamental_cycles(G: MultiGraph, T: Iterable[int]) -> dict[int, frozenset[int]]:
    """Tree-edge part of the fundamental cycle of every non-tree edge."""
    T = frozenset(T)
    rt = RootedTree(G, T)
    return {e: rt.path_edges(*G.edges[e]) for e in range(G.m) if e not in T}


# --------------------------------------------------------------------------
# rewrites that keep dual-criticality


@dataclass(frozen=True)
class Rewritten:
    graph: MultiGraph
    vertex_map: tuple[int | None, ...]  # old vertex id -> new id
    edge_map: tuple[int | None, ...]    # old edge id -> new id (None if gone)


REWRITES = ("delete_parallel_pair", "add_parallel_pair", "subdivide_edge", "contract_deg2")


def rewrite(G: MultiGraph, op: str, *args: int) -> Rewritten:
    """Apply one of the four rewrites in :data:`REWRITES`.

    * ``delete_parallel_pair(e1, e2)``: two distinct non-loop edges with the
      same endpoints are removed.
    * ``add_parallel_pair(u, v)``: two new ``u-v`` edges (``u != v``) are
      appended.
    * ``subdivide_edge(e)``: a new vertex ``n`` is placed on ``e``; ``e`` keeps
      its id for the first half and the second half is appended.
    * ``contract_deg2(e)``: ``e`` is contracted into an endpoint of degree 2,
      which disappears; later vertex ids shift down by one.
    """
    ident_v = tuple(range(G.n))
    if op == "delete_parallel_pair":
        e1, e2 = args
        if e1 == e2 or not (0 <= e1 < G.m and 0 <= e2 < G.m):
            raise GraphError("need two distinct existing edges")
        a, b = G.edges[e1]
        if a == b or sorted(G.edges[e1]) != sorted(G.edges[e2]):
            raise GraphError("edges are not a parallel non-loop pair")
        emap: list[int | None] = []
        kept = []
        for i, e in enumerate(G.edges):
            if i in (e1, e2):
                emap.append(None)
            else:
                emap.append(len(kept))
                kept.append(e)
        return Rewritten(MultiGraph(G.n, tuple(kept)), ident_v, tuple(emap))

    if op == "add_parallel_pair":
        u, v = args
        if u == v or not (0 <= u < G.n and 0 <= v < G.n):
            raise GraphError("need two distinct existing vertices")
        H = MultiGraph(G.n, G.edges + ((u, v), (u, v)))
        return Rewritten(H, ident_v, tuple(range(G.m)))

    if op == "subdivide_edge":
        (e,) = args
        if not 0 <= e < G.m:
            raise GraphError(f"no edge {e}")
        u, v = G.edges[e]
        w = G.n
        edges = list(G.edges)
        edges[e] = (u, w)
        edges.append((w, v))
        return Rewritten(MultiGraph(G.n + 1, tuple(edges)), ident_v, tuple(range(G.m)))

    if op == "contract_deg2":
        (e,) = args
        if not 0 <= e < G.m:
            raise GraphError(f"no edge {e}")
        u, v = G.edges[e]
        if u == v:
            raise GraphError("cannot contract a loop")
        if G.degrees[v] == 2:
            w, x = v, u
        elif G.degrees[u] == 2:
            w, x = u, v
        else:
            raise GraphError("edge has no endpoint of degree 2")
        vmap = [i if i < w else (i - 1 if i > w else None) for i in range(G.n)]
        vmap[w] = vmap[x]
        emap = []
        kept = []
        for i, (a, b) in enumerate(G.edges):
            if i == e:
                emap.append(None)
                continue
            emap.append(len(kept))
            kept.append((vmap[a], vmap[b]))
        return Rewritten(MultiGraph(G.n - 1, tuple(kept)), tuple(vmap), tuple(emap))

    raise GraphError(f"unknown rewrite {op!r}")


def normalize_to_simple(G: MultiGraph) -> MultiGraph:
    """Simple graph with the same dual-criticality status.

    Loops become triangles through two fresh vertices, then parallel edges are
    removed in pairs.  The result may be disconnected.
    """
    n = G.n
    edges: list[Edge] = []
    for u, v in G.edges:
        if u == v:
            a, b = n, n + 1
            n += 2
            edges += [(u, a), (a, b), (b, u)]
        else:
            edges.append((u, v))
    count: dict[Edge, int] = {}
    first: dict[Edge, int] = {}
    for i, (u, v) in enumerate(edges):
        key = (min(u, v), max(u, v))
        count[key] = count.get(key, 0) + 1
        first.setdefault(key, i)
    kept = [edges[first[k]] for k in sorted(first, key=first.get) if count[k] % 2]
    return MultiGraph(n, tuple(kept))


def is_simple(G: MultiGraph) -> bool:
    seen = set()
    for u, v in G.edges:
        key = (min(u, v), max(u, v))
        if u == v or key in seen:
            return False
        seen.add(key)
    return True


# --------------------------------------------------------------------------
# ordered partitions


def check_partition(G: MultiGraph, classes: Iterable[Iterable[int]]) -> OrderedPartition:
    """Validate and freeze an ordered partition of ``V(G)``."""
    out = tuple(frozenset(c) for c in classes)
    covered = 0
    for c in out:
        if not c:
            raise GraphError("empty partition class")
        cm = mask_of(c)
        if any(not 0 <= v < G.n for v in c):
            raise GraphError("partition class has a vertex out of range")
        if covered & cm:
            raise GraphError("partition classes overlap")
        covered |= cm
    if covered != G.full_mask:
        raise GraphError("partition does not cover the vertex set")
    return out


def contract_partition(G: MultiGraph, classes: Iterable[Iterable[int]]) -> MultiGraph:
    """One vertex per class; crossing edges survive as parallel edges."""
    P = check_partition(G, classes)
    where = [0] * G.n
    for i, c in enumerate(P):
        for v in c:
            where[v] = i
    edges = [(where[u], where[v]) for u, v in G.edges if where[u] != where[v]]
    return MultiGraph(len(P), tuple(edges))


# --------------------------------------------------------------------------
# edge-list text format


def parse_edge_list(text: str) -> MultiGraph:
    """Parse ``n m`` followed by ``m`` lines ``u v``; ``#`` starts a comment."""
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    if not rows:
        raise GraphError("empty graph file")
    try:
        header = [int(t) for t in rows[0]]
        if len(header) != 2:
            raise GraphError("header must be 'n m'")
        n, m = header
        body = [tuple(int(t) for t in r) for r in rows[1:]]
    except ValueError as exc:
        raise GraphError(f"malformed graph file: {exc}") from None
    if len(body) != m or any(len(r) != 2 for r in body):
        raise GraphError(f"expected {m} edge lines of two integers, got {len(body)}")
    return MultiGraph(n, tuple(body))


def format_edge_list(G: MultiGraph) -> str:
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def read_graph(path: str) -> MultiGraph:
    with open(path) as fh:
        return parse_edge_list(fh.read())
