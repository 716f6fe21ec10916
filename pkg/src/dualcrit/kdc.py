"""k-dual-criticality: good k-partitions, the exact recursive search, the greedy
maximal partition with its improvement rules, and the kernel/FPT driver.

A good partition ``(P_0, P_1, ..., P_{k-1})`` has an odd number of edges
between ``P_i`` and the union of the classes before it, for every ``i >= 1``.
Only edge multiplicities mod 2 matter, so everything here works on the odd
adjacency masks of the graph; loops and parallel pairs are invisible.

Class positions are 0-based throughout: ``P[0]`` is the first class.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, NamedTuple

import numpy as np

from . import _kernels
from .graph import (
    GraphError,
    MultiGraph,
    OrderedPartition,
    SizeLimitError,
    check_partition,
    induced_subgraph,
    is_even_graph,
    mask_of,
    members,
    parity,
)

log = logging.getLogger(__name__)

ORACLE_LIMIT = 20


def _cut_odd(adj, A: int, B: int) -> bool:
    p = 0
    for v in members(B):
        p ^= parity(adj[v] & A)
    return bool(p)


def _is_even_class(adj, c: int) -> bool:
    return all(parity(adj[v] & c) == 0 for v in members(c))


def verify_good_partition(G: MultiGraph, P: Iterable[Iterable[int]]) -> bool:
    """Check the odd-cut condition of every class against its prefix by
    counting edges straight from the edge list."""
    P = check_partition(G, P)
    where = [0] * G.n
    for i, c in enumerate(P):
        for v in c:
            where[v] = i
    crossing = [0] * len(P)
    for u, v in G.edges:
        a, b = where[u], where[v]
        if a != b:
            crossing[max(a, b)] += 1
    return all(c % 2 == 1 for c in crossing[1:])


def is_left_aligned(P: OrderedPartition) -> bool:
    return all(len(c) <= 2 for c in P[1:])


def is_maximal(G: MultiGraph, P: OrderedPartition) -> bool:
    """Every class induces a subgraph with all degrees even."""
    adj = G.odd_adjacency
    return all(_is_even_class(adj, mask_of(c)) for c in P)


def _freeze(masks: Iterable[int]) -> OrderedPartition:
    return tuple(frozenset(members(m)) for m in masks)


# --------------------------------------------------------------------------
# exact searches


def recursive_kdc(G: MultiGraph, k: int) -> OrderedPartition | None:
    """Good k-partition by peeling last classes of one or two vertices.

    Single odd-degree vertices are tried before pairs of opposite degree
    parity; pairs in lexicographic order.  Failed ``(vertex set, k)`` states
    are memoised.
    """
    if not 1 <= k <= G.n:
        raise GraphError(f"k = {k} outside 1..{G.n}")
    adj = G.odd_adjacency
    failed: set[tuple[int, int]] = set()

    def search(mask: int, k: int) -> list[int] | None:
        if k == 1:
            return [mask] if mask else None
        if mask.bit_count() < k or (mask, k) in failed:
            return None
        verts = members(mask)
        odd = {v: parity(adj[v] & mask) for v in verts}
        for v in verts:
            if odd[v]:
                found = search(mask ^ (1 << v), k - 1)
                if found is not None:
                    return found + [1 << v]
        for v, w in combinations(verts, 2):
            if odd[v] != odd[w]:
                pair = (1 << v) | (1 << w)
                found = search(mask ^ pair, k - 1)
                if found is not None:
                    return found + [pair]
        failed.add((mask, k))
        return None

    found = search(G.full_mask, k)
    return None if found is None else _freeze(found)


class MaxdcValue(NamedTuple):
    maxdc: int
    contractions_needed: int


def maxdc_oracle(G: MultiGraph) -> MaxdcValue:
    """Largest k with a good k-partition, by subset DP over prefix sets.

    Only partitions whose non-first classes have one or two vertices are
    explored; some optimal partition always has that shape.
    """
    if G.n == 0:
        raise GraphError("graph has no vertices")
    if G.n > ORACLE_LIMIT:
        raise SizeLimitError(f"n = {G.n} exceeds the oracle limit {ORACLE_LIMIT}")
    best = int(_kernels.longest_pair_tail(np.array(G.odd_adjacency, dtype=np.int64), G.n))
    return MaxdcValue(best, G.n - best)


# --------------------------------------------------------------------------
# partition surgery


def split_noneulerian_class(G: MultiGraph, P: Iterable[Iterable[int]], i: int) -> OrderedPartition:
    """Split class ``i`` (which must induce a vertex of odd degree) into a
    singleton and the rest, ordered so the partition stays good."""
    P = check_partition(G, P)
    if not 0 <= i < len(P):
        raise GraphError(f"no class {i}")
    adj = G.odd_adjacency
    return _freeze(_split(adj, [mask_of(c) for c in P], i))


def _split(adj, classes: list[int], i: int) -> list[int]:
    c = classes[i]
    x = next((v for v in members(c) if parity(adj[v] & c)), None)
    if x is None:
        raise GraphError(f"class {i} induces an even graph")
    single, rest = 1 << x, c & ~(1 << x)
    if i == 0:
        pieces = [rest, single]
    elif _cut_odd(adj, _union_masks(classes[:i]), single):
        pieces = [single, rest]
    else:
        pieces = [rest, single]
    return classes[:i] + pieces + classes[i + 1:]


def _union_masks(ms: Iterable[int]) -> int:
    out = 0
    for m in ms:
        out |= m
    return out


def _movable(adj, classes: list[int], i: int) -> int:
    """A nonempty proper subset of class ``i`` (which induces an even graph)
    that can move into class ``i - 1`` keeping the partition good."""
    c = classes[i]
    prev = classes[i - 1]
    if i == 1:
        v = next(v for v in members(c) if parity(adj[v] & prev))
        return c & ~(1 << v)
    before = _union_masks(classes[:i - 1])
    vs = members(c)
    a, b = 1 << vs[0], 1 << vs[1]
    rest = c & ~a & ~b

    def z(s):
        return (_cut_odd(adj, before, s), _cut_odd(adj, prev, s))

    za, zb, zc = z(a), z(b), z(rest)
    for s, zs in ((a, za), (b, zb), (rest, zc)):
        if zs == (False, False):
            return s
    for (s, zs), (t, zt) in combinations(((a, za), (b, zb), (rest, zc)), 2):
        if zs == zt:
            return s | t
    raise AssertionError("three distinct nonzero parity vectors: prefix cut would be even")


def left_align(G: MultiGraph, P: Iterable[Iterable[int]]) -> OrderedPartition:
    """Refine a good partition until every class induces an even graph and
    every class after the first has at most two vertices."""
    P = check_partition(G, P)
    if not verify_good_partition(G, P):
        raise GraphError("partition is not good")
    adj = G.odd_adjacency
    return _freeze(_left_align(adj, [mask_of(c) for c in P]))


def _left_align(adj, classes: list[int]) -> list[int]:
    while True:
        odd_class = next((i for i, c in enumerate(classes) if not _is_even_class(adj, c)), None)
        if odd_class is not None:
            classes = _split(adj, classes, odd_class)
            continue
        big = next((i for i in range(len(classes) - 1, 0, -1) if classes[i].bit_count() >= 3), None)
        if big is None:
            return classes
        s = _movable(adj, classes, big)
        classes = classes[:big - 1] + [classes[big - 1] | s, classes[big] & ~s] + classes[big + 1:]


# --------------------------------------------------------------------------
# greedy maximal partition


def greedy_maximal_partition(G: MultiGraph) -> OrderedPartition:
    """Maximal left-aligned good partition built from the last class backwards.

    Repeatedly peel an odd-degree vertex, or a non-adjacent pair of opposite
    degree parity, whose removal leaves a graph with some odd degree.  At the
    fixpoint one odd vertex (if any) is split off and the remainder is the
    first class.
    """
    if G.n == 0:
        raise GraphError("graph has no vertices")
    nbr: list[set[int]] = [set() for _ in range(G.n)]
    for u, v in G.edges:
        if u != v:
            nbr[u] ^= {v}
            nbr[v] ^= {u}
    alive = set(range(G.n))
    odd = {v for v in range(G.n) if len(nbr[v]) % 2}

    def leaves_odd_vertex(cls: tuple[int, ...]) -> bool:
        count = len(odd) - sum(1 for c in cls if c in odd)
        flips = Counter(u for c in cls for u in nbr[c] if u in alive and u not in cls)
        for u, f in flips.items():
            if f % 2:
                count += -1 if u in odd else 1
        return count > 0

    def remove(cls: tuple[int, ...]) -> None:
        for c in cls:
            alive.discard(c)
            odd.discard(c)
        for c in cls:
            for u in nbr[c]:
                if u in alive:
                    odd.symmetric_difference_update((u,))

    tail: list[frozenset[int]] = []
    while True:
        chosen = next(((v,) for v in sorted(odd) if leaves_odd_vertex((v,))), None)
        if chosen is None:
            # an isolated partner changes nothing, so only even vertices with
            # live neighbours can rescue a failed single
            partners = sorted(w for w in alive if w not in odd and any(u in alive for u in nbr[w]))
            for v in sorted(odd):
                for w in partners:
                    if w not in nbr[v] and leaves_odd_vertex((v, w)):
                        chosen = (v, w)
                        break
                if chosen:
                    break
        if chosen is None:
            break
        remove(chosen)
        tail.append(frozenset(chosen))
    if odd:
        v = min(odd)
        tail.append(frozenset((v,)))
        alive.discard(v)
    return (frozenset(alive),) + tuple(reversed(tail))


# --------------------------------------------------------------------------
# improvement rules


@dataclass(frozen=True)
class SigmaIndex:
    """For each first-class vertex, the first later class it sends an even
    (``sigma0``) or odd (``sigma1``) number of edges to; ``math.inf`` if none."""

    sigma0: dict[int, float]
    sigma1: dict[int, float]


def sigma_indices(G: MultiGraph, P: Iterable[Iterable[int]]) -> SigmaIndex:
    P = check_partition(G, P)
    return _sigma(G.odd_adjacency, [mask_of(c) for c in P])


def _sigma(adj, classes: list[int]) -> SigmaIndex:
    s0: dict[int, float] = {}
    s1: dict[int, float] = {}
    for v in members(classes[0]):
        s0[v] = s1[v] = math.inf
        for s in range(1, len(classes)):
            if parity(adj[v] & classes[s]):
                if s1[v] == math.inf:
                    s1[v] = s
            elif s0[v] == math.inf:
                s0[v] = s
            if s0[v] != math.inf and s1[v] != math.inf:
                break
    return SigmaIndex(s0, s1)


def _good_even_chain(adj, prefix: int, c: int) -> list[int] | None:
    """Longest ordering of ``c`` into classes of one or two vertices, each
    inducing an even graph and each with an odd cut to what precedes it."""
    vs = members(c)
    best = None
    blockings = []

    def blocks(rest: list[int], acc: list[int]):
        if not rest:
            blockings.append(list(acc))
            return
        v, others = rest[0], rest[1:]
        blocks(others, acc + [1 << v])
        for j, w in enumerate(others):
            if not adj[v] >> w & 1:
                blocks(others[:j] + others[j + 1:], acc + [(1 << v) | (1 << w)])

    blocks(vs, [])
    for bl in sorted(blockings, key=len, reverse=True):
        if len(bl) < 2 or (best is not None and len(bl) < len(best)):
            break
        for order in permutations(bl):
            seen = prefix
            ok = True
            for b in order:
                if not _cut_odd(adj, seen, b):
                    ok = False
                    break
                seen |= b
            if ok:
                return list(order)
    return best


def _try_move(adj, classes: list[int], u: int, v: int, s: int) -> list[int] | None:
    pair = (1 << u) | (1 << v)
    first = classes[0] & ~pair
    prefix = _union_masks(classes[:s]) & ~pair
    merged = classes[s] | pair
    pieces = _good_even_chain(adj, prefix, merged)
    if pieces is None:
        # no direct split into small even classes; let the mover try
        out = _left_align(adj, [first] + classes[1:s] + [merged] + classes[s + 1:])
        if len(out) > len(classes):
            return out
        log.info("improvement with pair (%d, %d) into class %d has no even split; skipped", u, v, s)
        return None
    out = [first] + classes[1:s] + pieces + classes[s + 1:]
    if not _is_even_class(adj, first):
        out = _left_align(adj, out)
    return out


def _candidate_moves(adj, classes: list[int], sig: SigmaIndex):
    first = classes[0]
    later = _union_masks(classes[1:])
    iso = [v for v in members(first) if adj[v] & first == 0]
    core = [v for v in members(first) if adj[v] & first]

    def first_difference(u, v):
        diff = (adj[u] ^ adj[v]) & later
        return next(s for s in range(1, len(classes)) if diff & classes[s])

    # (1)/(3): equal finite sigma; isolated pairs use sigma1, adjacent core pairs sigma0
    for group, sigma, need_adjacent in ((iso, sig.sigma1, False), (core, sig.sigma0, True)):
        by_s: dict[float, list[int]] = {}
        for v in group:
            if sigma[v] != math.inf:
                by_s.setdefault(sigma[v], []).append(v)
        for s in sorted(by_s):
            for u, v in combinations(by_s[s], 2):
                if not need_adjacent or adj[u] >> v & 1:
                    yield u, v, int(s)
        # (2)/(4): infinite sigma but different neighbourhoods among later classes
        by_sig: dict[int, list[int]] = {}
        for v in group:
            if sigma[v] == math.inf:
                by_sig.setdefault(adj[v] & later, []).append(v)
        if len(by_sig) >= 2:
            reps = [vs for _, vs in sorted(by_sig.items())]
            for a, b in combinations(range(len(reps)), 2):
                for u in reps[a]:
                    for v in reps[b]:
                        if not need_adjacent or adj[u] >> v & 1:
                            yield min(u, v), max(u, v), first_difference(u, v)


def _require_maximal_left_aligned(G: MultiGraph, P: OrderedPartition) -> None:
    if not (verify_good_partition(G, P) and is_left_aligned(P) and is_maximal(G, P)):
        raise GraphError("partition must be good, maximal and left-aligned")


def improve_once(G: MultiGraph, P: Iterable[Iterable[int]]) -> OrderedPartition | None:
    """Apply the first applicable improvement rule; the result is a maximal
    left-aligned good partition with more classes, or ``None``."""
    P = check_partition(G, P)
    _require_maximal_left_aligned(G, P)
    out = _improve(G.odd_adjacency, [mask_of(c) for c in P])
    return None if out is None else _freeze(out)


def _improve(adj, classes: list[int]) -> list[int] | None:
    if classes[0].bit_count() < 3:
        return None
    sig = _sigma(adj, classes)
    for u, v, s in _candidate_moves(adj, classes, sig):
        out = _try_move(adj, classes, u, v, s)
        if out is not None:
            return out
    return None


# --------------------------------------------------------------------------
# kernel


@dataclass(frozen=True)
class EquivalenceWitness:
    kind: str                 # "c": adjacent, same closed nbhd; "d": non-adjacent, same open nbhd
    members: frozenset[int]


def _witness(adj, first: int, kind: str | None) -> EquivalenceWitness | None:
    buckets: dict[str, Counter] = {"d": Counter(), "c": Counter()}
    for v in members(first):
        buckets["d"][adj[v]] += 1
        buckets["c"][adj[v] | (1 << v)] += 1
    best = None
    for kd in ("d", "c"):
        if kind is not None and kd != kind:
            continue
        if not buckets[kd]:
            continue
        key, size = max(buckets[kd].items(), key=lambda kv: (kv[1], -kv[0]))
        if best is None or size > len(best.members):
            if kd == "d":
                mem = frozenset(v for v in members(first) if adj[v] == key)
            else:
                mem = frozenset(v for v in members(first) if adj[v] | (1 << v) == key)
            best = EquivalenceWitness(kd, mem)
    return best


def find_equivalence_witness(
    G: MultiGraph, P: Iterable[Iterable[int]], k: int, kind: str | None = None
) -> EquivalenceWitness:
    """At least ``k + 2`` pairwise equivalent vertices of the first class of a
    non-improvable maximal left-aligned partition with at most ``k`` classes
    and a first class of at least ``4k + 1`` vertices."""
    P = check_partition(G, P)
    if len(P) > k:
        raise GraphError(f"partition has {len(P)} > k = {k} classes")
    if len(P[0]) < 4 * k + 1:
        raise GraphError(f"first class has {len(P[0])} < 4k + 1 = {4 * k + 1} vertices")
    _require_maximal_left_aligned(G, P)
    adj = G.odd_adjacency
    classes = [mask_of(c) for c in P]
    if _improve(adj, classes) is not None:
        raise GraphError("partition can still be improved")
    w = _witness(adj, classes[0], kind)
    if w is None or len(w.members) < k + 2:
        raise GraphError("no equivalence class of size k + 2 in the first class")
    return w


@dataclass(frozen=True)
class Deletion:
    vertices: frozenset[int]           # original vertex ids removed
    witness: EquivalenceWitness        # the equivalence class they came from


@dataclass(frozen=True)
class KernelResult:
    k: int
    partition: OrderedPartition | None = None
    kernel: frozenset[int] | None = None
    removed: tuple[Deletion, ...] = ()
    even_graph: bool = False   # every degree even, so only k = 1 is possible

    def as_json(self) -> dict:
        if self.partition is not None:
            return {"k": self.k, "classes": [sorted(c) for c in self.partition]}
        if self.even_graph:
            return {"k": self.k, "kernel": sorted(self.kernel), "even_graph": True}
        return {
            "k": self.k,
            "kernel": sorted(self.kernel),
            "removed": [
                {"vertices": sorted(d.vertices), "kind": d.witness.kind,
                 "members": sorted(d.witness.members)}
                for d in self.removed
            ],
        }


def _maximal_improved(H: MultiGraph, target: int) -> list[int]:
    """Greedy partition improved until it has ``target`` classes or no rule applies."""
    adj = H.odd_adjacency
    classes = [mask_of(c) for c in greedy_maximal_partition(H)]
    while len(classes) < target and (better := _improve(adj, classes)) is not None:
        classes = better
    return classes


def _merge_to(classes: list[frozenset[int]], k: int) -> OrderedPartition:
    head = frozenset().union(*classes[: len(classes) - k + 1])
    return (head,) + tuple(classes[len(classes) - k + 1:])


def kernelize(G: MultiGraph, k: int) -> KernelResult:
    """Either a good k-partition, or a vertex set of at most ``6k`` vertices
    whose induced graph is k-dual-critical exactly when ``G`` is.

    Vertices outside the kernel were deleted in even-sized groups of mutually
    equivalent first-class vertices; putting them back into the first class
    of any good k-partition of the kernel gives a good k-partition of ``G``.

    A large graph with all degrees even has no good partition beyond k = 1.
    It gets the one-vertex kernel ``{0}``, flagged ``even_graph``. Deletions
    never change degree parities, so this is only checked once.
    """
    if not 1 <= k <= G.n:
        raise GraphError(f"k = {k} outside 1..{G.n}")
    if k == 1:
        return KernelResult(k, partition=(frozenset(range(G.n)),))
    if G.n > 6 * k and is_even_graph(G):
        return KernelResult(k, kernel=frozenset({0}), even_graph=True)
    alive = G.full_mask
    removed: list[Deletion] = []
    while True:
        H, back = induced_subgraph(G, alive)
        classes = _maximal_improved(H, k)
        if len(classes) >= k:
            orig = [frozenset(back[v] for v in members(c)) for c in classes]
            orig[0] = orig[0] | frozenset(members(G.full_mask & ~alive))
            return KernelResult(k, partition=_merge_to(orig, k), removed=tuple(removed))
        size_alive = alive.bit_count()
        if size_alive <= 6 * k:
            return KernelResult(k, kernel=frozenset(members(alive)), removed=tuple(removed))
        w = _witness(H.odd_adjacency, classes[0], None)
        if w is None or len(w.members) < k + 2:
            raise AssertionError("kernel step found no equivalence class of size k + 2")
        t = len(w.members)
        cap = (t - k) // 2 * 2
        excess = size_alive - 6 * k
        size = min(cap, excess + excess % 2)
        drop = sorted(w.members)[:size]
        removed.append(Deletion(
            frozenset(back[v] for v in drop),
            EquivalenceWitness(w.kind, frozenset(back[v] for v in w.members)),
        ))
        alive &= ~mask_of(back[v] for v in drop)


def fpt_kdc(G: MultiGraph, k: int) -> OrderedPartition | None:
    """Good k-partition via the kernel, or ``None`` if there is none."""
    res = kernelize(G, k)
    if res.partition is not None:
        return res.partition
    if len(res.kernel) < k:
        return None
    H, back = induced_subgraph(G, res.kernel)
    P = recursive_kdc(H, k)
    if P is None:
        return None
    outside = frozenset(range(G.n)) - res.kernel
    lifted = (frozenset(back[v] for v in P[0]) | outside,) + tuple(
        frozenset(back[v] for v in c) for c in P[1:]
    )
    if not verify_good_partition(G, lifted):
        raise AssertionError("lifted kernel partition is not good")
    return lifted


def maxdc(G: MultiGraph, method: str = "auto") -> int:
    """Largest k for which ``G`` is k-dual-critical.

    ``auto`` uses the subset-DP oracle up to its size limit and the FPT
    driver above it; ``fpt`` always uses the driver.
    """
    if G.n == 0:
        raise GraphError("graph has no vertices")
    if method == "auto" and G.n <= ORACLE_LIMIT:
        return maxdc_oracle(G).maxdc
    if method not in ("auto", "fpt"):
        raise ValueError(f"unknown method {method!r}")
    k = 1
    while k < G.n and fpt_kdc(G, k + 1) is not None:
        k += 1
    return k
