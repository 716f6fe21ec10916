"""Seeded graph generators and the named test graphs."""

from __future__ import annotations

import random

from .cubic import K33, PETERSEN, PRISM, random_cubic
from .graph import GraphError, MultiGraph


def path(n: int) -> MultiGraph:
    return MultiGraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> MultiGraph:
    if n < 3:
        raise GraphError("a simple cycle needs n >= 3")
    return MultiGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def star(leaves: int) -> MultiGraph:
    """Centre ``0`` with leaves ``1..leaves``."""
    return MultiGraph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


def complete(n: int) -> MultiGraph:
    return MultiGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def wheel(k: int) -> MultiGraph:
    """Hub ``0`` and rim cycle ``1..k``."""
    spokes = [(0, i) for i in range(1, k + 1)]
    rim = [(i, i % k + 1) for i in range(1, k + 1)]
    return MultiGraph(k + 1, tuple(spokes + rim))


def random_tree(n: int, seed: int) -> MultiGraph:
    rng = random.Random(seed)
    return MultiGraph(n, tuple((rng.randrange(i), i) for i in range(1, n)))


def evenclique_isolates(clique: int, isolates: int) -> MultiGraph:
    if clique < 2 or clique % 2:
        raise GraphError("the clique must have an even number >= 2 of vertices")
    if isolates < 0:
        raise GraphError("isolates must be non-negative")
    K = complete(clique)
    return MultiGraph(clique + isolates, K.edges)


def random_multigraph(n: int, m: int, seed: int, loops: bool = True) -> MultiGraph:
    """``m`` edges with endpoints drawn uniformly (loops allowed if ``loops``)."""
    if n < 1 or m < 0:
        raise GraphError("need n >= 1 and m >= 0")
    if not loops and n < 2 and m > 0:
        raise GraphError("no loop-free edge on one vertex")
    rng = random.Random(seed)
    edges = []
    while len(edges) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v or loops:
            edges.append((u, v))
    return MultiGraph(n, tuple(edges))


def random_simple(n: int, p: float, seed: int) -> MultiGraph:
    rng = random.Random(seed)
    return MultiGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p))


def random_dc(n: int, seed: int) -> tuple[MultiGraph, tuple[int, ...]]:
    """Dual-critical graph built by adding vertices one at a time, each joined
    to a uniformly random odd-sized set of earlier vertices, then relabelled
    at random.  Also returns the good ordering the construction implies."""
    if n < 1:
        raise GraphError("need n >= 1")
    rng = random.Random(seed)
    edges = []
    for i in range(1, n):
        # a uniform subset of the first i-1 vertices, completed to odd size by vertex i-1
        nb = [j for j in range(i - 1) if rng.random() < 0.5]
        if len(nb) % 2 == 0:
            nb.append(i - 1)
        edges += [(j, i) for j in nb]
    perm = list(range(n))
    rng.shuffle(perm)
    G = MultiGraph(n, tuple((perm[u], perm[v]) for u, v in edges))
    return G, tuple(perm)


def generate(kind: str, seed: int = 0, **params) -> MultiGraph:
    """Dispatch for the ``gen`` command."""
    if kind == "random":
        n = params.get("n") or 8
        m = params.get("m") if params.get("m") is not None else n + n // 2
        return random_multigraph(n, m, seed, loops=params.get("loops", False))
    if kind == "dc":
        return random_dc(params.get("n") or 8, seed)[0]
    if kind == "cubic":
        return random_cubic(params.get("n") or 10, seed)
    if kind == "evenclique_isolates":
        return evenclique_isolates(params.get("clique") or 6, params.get("isolates") or 0)
    raise GraphError(f"unknown generator {kind!r}")


# vertices: a1 = 0, a2 = 1, centre = 2, b1 = 3, b2 = 4
BOWTIE = MultiGraph(5, ((0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)))
TRIANGLE = cycle(3)
THETA3 = MultiGraph(2, ((0, 1), (0, 1), (0, 1)))
C4 = cycle(4)
K4 = complete(4)
K23 = MultiGraph(5, ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)))
C5CHORD = MultiGraph(5, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)))
W4 = wheel(4)
TWO_TRIANGLES_BRIDGE = MultiGraph(6, ((0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)))

NAMED: dict[str, MultiGraph] = {
    "K1": MultiGraph(1, ()),
    "K2": complete(2),
    "TRIANGLE": TRIANGLE,
    "THETA3": THETA3,
    "C4": C4,
    "K4": K4,
    "K23": K23,
    "C5CHORD": C5CHORD,
    "W4": W4,
    "K33": K33,
    "PRISM": PRISM,
    "PETERSEN": PETERSEN,
    "BOWTIE": BOWTIE,
    "TWO_TRIANGLES_BRIDGE": TWO_TRIANGLES_BRIDGE,
}
