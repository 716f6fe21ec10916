"""Planar embeddings as rotation systems, face tracing, dual multigraphs,
perfect matchings and factor-criticality.

Dart ``2e`` is the end of edge ``e`` at ``edges[e][0]`` (written ``e+``) and
dart ``2e + 1`` the end at ``edges[e][1]`` (``e-``).  Faces are the orbits
of "cross the edge, then turn to the next dart in the rotation".
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .exact import is_dual_critical
from .graph import GraphError, MultiGraph, SizeLimitError, delete_vertices, is_connected

MATCHING_LIMIT = 24


def _dart_vertex(G: MultiGraph, d: int) -> int:
    return G.edges[d >> 1][d & 1]


@dataclass(frozen=True)
class RotationSystem:
    graph: MultiGraph
    rotation: tuple[tuple[int, ...], ...]   # darts around each vertex, cyclic

    def __post_init__(self):
        G = self.graph
        if len(self.rotation) != G.n:
            raise GraphError("rotation must list every vertex")
        seen = sorted(d for rot in self.rotation for d in rot)
        if seen != list(range(2 * G.m)):
            raise GraphError("every dart must appear exactly once")
        for v, rot in enumerate(self.rotation):
            if any(_dart_vertex(G, d) != v for d in rot):
                raise GraphError(f"rotation at {v} lists a dart of another vertex")

    @classmethod
    def from_darts(cls, n: int, rotation: list[list[tuple[int, str]]]) -> RotationSystem:
        """Build graph and rotation together from ``(edge id, '+'|'-')`` darts:
        edge ``e`` runs from the vertex holding ``e+`` to the one holding ``e-``."""
        ends: dict[int, list] = {}
        for v, rot in enumerate(rotation):
            for e, side in rot:
                if side not in "+-" or len(side) != 1:
                    raise GraphError(f"bad dart side {side!r}")
                ends.setdefault(e, [None, None])
                slot = 0 if side == "+" else 1
                if ends[e][slot] is not None:
                    raise GraphError(f"dart {e}{side} listed twice")
                ends[e][slot] = v
        m = len(ends)
        if sorted(ends) != list(range(m)) or any(None in pair for pair in ends.values()):
            raise GraphError("edge ids must be 0..m-1, each with both darts")
        G = MultiGraph(n, tuple(tuple(ends[e]) for e in range(m)))
        rot = tuple(tuple(2 * e + (side == "-") for e, side in r) for r in rotation)
        return cls(G, rot)

    @classmethod
    def from_coordinates(cls, G: MultiGraph, pos: list[tuple[float, float]]) -> RotationSystem:
        """Rotation of a straight-line drawing: darts sorted counter-clockwise
        by the direction towards the other endpoint.  Simple graphs only."""
        rot: list[list[tuple[float, int]]] = [[] for _ in range(G.n)]
        for e, (u, v) in enumerate(G.edges):
            if u == v:
                raise GraphError("straight-line drawings have no loops")
            for d, a, b in ((2 * e, u, v), (2 * e + 1, v, u)):
                ang = math.atan2(pos[b][1] - pos[a][1], pos[b][0] - pos[a][0])
                rot[a].append((ang, d))
        return cls(G, tuple(tuple(d for _, d in sorted(r)) for r in rot))

    @cached_property
    def _succ(self) -> dict[int, int]:
        nxt = {}
        for rot in self.rotation:
            for i, d in enumerate(rot):
                nxt[d] = rot[(i + 1) % len(rot)]
        return nxt

    def next_dart(self, d: int) -> int:
        return self._succ[d ^ 1]

    def to_text(self) -> str:
        lines = [f"{self.graph.n} {self.graph.m}"]
        for v, rot in enumerate(self.rotation):
            darts = " ".join(f"{d >> 1}{'-' if d & 1 else '+'}" for d in rot)
            lines.append(f"{v}: {darts}".rstrip())
        return "\n".join(lines) + "\n"


def parse_rotation(text: str) -> RotationSystem:
    """Rotation file: ``n m`` then ``v: d1 d2 ...`` lines with darts ``e+``/``e-``."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise GraphError("empty rotation file")
    try:
        n, m = (int(x) for x in lines[0].split())
    except ValueError as exc:
        raise GraphError(f"bad header {lines[0]!r}") from exc
    rotation: list[list[tuple[int, str]]] = [[] for _ in range(n)]
    for ln in lines[1:]:
        head, _, body = ln.partition(":")
        try:
            v = int(head)
            darts = [(int(tok[:-1]), tok[-1]) for tok in body.split()]
        except ValueError as exc:
            raise GraphError(f"bad rotation line {ln!r}") from exc
        if not 0 <= v < n:
            raise GraphError(f"vertex {v} out of range")
        rotation[v] = darts
    R = RotationSystem.from_darts(n, rotation)
    if R.graph.m != m:
        raise GraphError(f"header says m = {m} but {R.graph.m} edges found")
    return R


def trace_faces(R: RotationSystem) -> list[tuple[int, ...]]:
    """Faces as dart cycles; raises unless the rotation is a sphere embedding
    of a connected graph."""
    G = R.graph
    if G.n == 0 or not is_connected(G):
        raise GraphError("face tracing needs a connected graph")
    if G.m == 0:
        return [()]
    seen = set()
    faces = []
    for start in range(2 * G.m):
        if start in seen:
            continue
        face = []
        d = start
        while d not in seen:
            seen.add(d)
            face.append(d)
            d = R.next_dart(d)
        faces.append(tuple(face))
    if G.n - G.m + len(faces) != 2:
        raise GraphError(f"Euler check fails: {G.n} - {G.m} + {len(faces)} != 2")
    return faces


def dual_rotation(R: RotationSystem) -> RotationSystem:
    """The dual embedding: dual edge ``e`` joins the faces holding darts
    ``2e`` and ``2e + 1``; each dual vertex's rotation is its face's dart cycle."""
    faces = trace_faces(R)
    face_of = {d: f for f, face in enumerate(faces) for d in face}
    edges = tuple((face_of[2 * e], face_of[2 * e + 1]) for e in range(R.graph.m))
    return RotationSystem(MultiGraph(len(faces), edges), tuple(faces))


def dual_graph(R: RotationSystem) -> MultiGraph:
    return dual_rotation(R).graph


@lru_cache(maxsize=None)
def _pm(adj: tuple[int, ...], mask: int) -> bool:
    if mask == 0:
        return True
    v = (mask & -mask).bit_length() - 1
    rest = mask & ~(1 << v)
    cand = adj[v] & rest
    while cand:
        low = cand & -cand
        if _pm(adj, rest & ~low):
            return True
        cand ^= low
    return False


def has_perfect_matching(G: MultiGraph) -> bool:
    if G.n > MATCHING_LIMIT:
        raise SizeLimitError(f"n = {G.n} exceeds the matching limit {MATCHING_LIMIT}")
    if G.n % 2:
        return False
    adj = [0] * G.n
    for u, v in G.edges:
        if u != v:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return _pm(tuple(adj), G.full_mask)


def is_factor_critical(G: MultiGraph) -> bool:
    if G.n == 0:
        raise GraphError("graph has no vertices")
    if G.n % 2 == 0:
        return False
    return all(has_perfect_matching(delete_vertices(G, [v])) for v in range(G.n))


@dataclass(frozen=True)
class DualityReport:
    dc_primal: bool
    fc_primal: bool
    dc_dual: bool
    fc_dual: bool

    @property
    def fc_implies_dual_dc(self) -> bool:
        return not self.fc_primal or self.dc_dual

    @property
    def dc_implies_dual_fc(self) -> bool:
        return not self.dc_primal or self.fc_dual

    @property
    def ok(self) -> bool:
        return self.fc_implies_dual_dc and self.dc_implies_dual_fc

    def as_json(self) -> dict:
        return {"dc_primal": self.dc_primal, "fc_primal": self.fc_primal,
                "dc_dual": self.dc_dual, "fc_dual": self.fc_dual,
                "fc_primal_implies_dc_dual": self.fc_implies_dual_dc,
                "dc_primal_implies_fc_dual": self.dc_implies_dual_fc}


def duality_check(R: RotationSystem) -> DualityReport:
    D = dual_graph(R)
    G = R.graph
    return DualityReport(is_dual_critical(G), is_factor_critical(G),
                         is_dual_critical(D), is_factor_critical(D))


def fc_builder(script: list[tuple]) -> MultiGraph:
    """Grow a factor-critical multigraph from one vertex.

    Steps: ``("add_edge", u, v)``, ``("add_loop", v)`` and ``("subdivide", e)``,
    the last replacing edge ``e`` by a path of length three through two new
    vertices (the path keeps edge id ``e`` for its first link).
    """
    n = 1
    edges: list[tuple[int, int]] = []
    for step in script:
        op, *args = step
        if op == "add_edge":
            u, v = args
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"add_edge refers to a missing vertex: {step}")
            edges.append((u, v))
        elif op == "add_loop":
            (v,) = args
            if not 0 <= v < n:
                raise GraphError(f"add_loop refers to a missing vertex: {step}")
            edges.append((v, v))
        elif op == "subdivide":
            (e,) = args
            if not 0 <= e < len(edges):
                raise GraphError(f"subdivide refers to a missing edge: {step}")
            u, v = edges[e]
            a, b = n, n + 1
            n += 2
            edges[e] = (u, a)
            edges.extend([(a, b), (b, v)])
        else:
            raise GraphError(f"unknown build step {op!r}")
    return MultiGraph(n, tuple(edges))


# --------------------------------------------------------------------------
# curated embeddings


def _circle(k: int, r: float = 1.0, phase: float = 0.0) -> list[tuple[float, float]]:
    return [(r * math.cos(phase + 2 * math.pi * i / k), r * math.sin(phase + 2 * math.pi * i / k))
            for i in range(k)]


def cycle_embedding(k: int) -> RotationSystem:
    G = MultiGraph(k, tuple((i, (i + 1) % k) for i in range(k)))
    return RotationSystem.from_coordinates(G, _circle(k))


def wheel_embedding(k: int) -> RotationSystem:
    """Hub ``0`` joined to a ``k``-cycle on ``1..k``."""
    rim = [(1 + i, 1 + (i + 1) % k) for i in range(k)]
    spokes = [(0, 1 + i) for i in range(k)]
    return RotationSystem.from_coordinates(MultiGraph(k + 1, tuple(spokes + rim)),
                                           [(0.0, 0.0)] + _circle(k))


def prism_embedding(k: int) -> RotationSystem:
    """Two concentric ``k``-cycles joined by rungs (``k = 4`` is the cube)."""
    outer = [(i, (i + 1) % k) for i in range(k)]
    inner = [(k + i, k + (i + 1) % k) for i in range(k)]
    rungs = [(i, k + i) for i in range(k)]
    return RotationSystem.from_coordinates(MultiGraph(2 * k, tuple(outer + inner + rungs)),
                                           _circle(k, 2.0) + _circle(k, 1.0))


def fan_embedding(k: int) -> RotationSystem:
    """Apex ``0`` joined to every vertex of the path ``1..k``."""
    path = [(i, i + 1) for i in range(1, k)]
    spokes = [(0, i) for i in range(1, k + 1)]
    pos = [(0.0, -1.0)] + [(float(i), 0.0) for i in range(k)]
    return RotationSystem.from_coordinates(MultiGraph(k + 1, tuple(spokes + path)), pos)


def grid_embedding(rows: int, cols: int) -> RotationSystem:
    idx = lambda r, c: r * cols + c  # noqa: E731
    edges = [(idx(r, c), idx(r, c + 1)) for r in range(rows) for c in range(cols - 1)]
    edges += [(idx(r, c), idx(r + 1, c)) for r in range(rows - 1) for c in range(cols)]
    pos = [(float(c), float(r)) for r in range(rows) for c in range(cols)]
    return RotationSystem.from_coordinates(MultiGraph(rows * cols, tuple(edges)), pos)


def k23_embedding() -> RotationSystem:
    """Parts ``{0, 1}`` and ``{2, 3, 4}``."""
    G = MultiGraph(5, ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)))
    return RotationSystem.from_coordinates(G, [(0.0, 1.0), (0.0, -1.0), (-1.0, 0.0), (0.0, 0.0), (1.0, 0.0)])


def k4_embedding() -> RotationSystem:
    G = MultiGraph(4, ((0, 1), (1, 2), (2, 0), (3, 0), (3, 1), (3, 2)))
    return RotationSystem.from_coordinates(G, _circle(3) + [(0.0, 0.0)])


def star_embedding(k: int) -> RotationSystem:
    G = MultiGraph(k + 1, tuple((0, i) for i in range(1, k + 1)))
    return RotationSystem.from_coordinates(G, [(0.0, 0.0)] + _circle(k))


def path_embedding(k: int) -> RotationSystem:
    G = MultiGraph(k, tuple((i, i + 1) for i in range(k - 1)))
    return RotationSystem.from_coordinates(G, [(float(i), 0.0) for i in range(k)])


def theta_embedding(parallel: int) -> RotationSystem:
    """Two vertices joined by ``parallel`` edges."""
    return RotationSystem.from_darts(2, [[(e, "+") for e in range(parallel)],
                                         [(e, "-") for e in reversed(range(parallel))]])


def bouquet_embedding(loops: int) -> RotationSystem:
    """One vertex with nested loops."""
    darts = [(e, "+") for e in range(loops)] + [(e, "-") for e in reversed(range(loops))]
    return RotationSystem.from_darts(1, [darts])


def curated_embeddings() -> dict[str, RotationSystem]:
    out = {
        "TRIANGLE": cycle_embedding(3),
        "THETA3": theta_embedding(3),
        "K23": k23_embedding(),
        "W4": wheel_embedding(4),
        "K1": RotationSystem(MultiGraph(1, ()), ((),)),
        "K2": path_embedding(2),
        "P4": path_embedding(4),
        "STAR3": star_embedding(3),
        "K4": k4_embedding(),
        "THETA2": theta_embedding(2),
        "THETA4": theta_embedding(4),
        "LOOP": bouquet_embedding(1),
        "BOUQUET2": bouquet_embedding(2),
    }
    for k in range(4, 9):
        out[f"C{k}"] = cycle_embedding(k)
    for k in (3, 5, 6):
        out[f"W{k}"] = wheel_embedding(k)
    for k in (3, 4, 5):
        out[f"PRISM{k}"] = prism_embedding(k)
    for k in (3, 4, 5):
        out[f"FAN{k}"] = fan_embedding(k)
    out["GRID2x3"] = grid_embedding(2, 3)
    out["GRID3x3"] = grid_embedding(3, 3)
    # duals of the above are embeddings too, and are often multigraphs
    for name in ("K23", "W5", "PRISM3", "FAN4", "GRID2x3", "P4"):
        out[f"DUAL_{name}"] = dual_rotation(out[name])
    return out
