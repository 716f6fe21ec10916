"""Independent re-checking of certificates.

Every check here recomputes what it needs from the raw edge list; nothing
from the search code is reused, so a bug there cannot vouch for itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import MultiGraph

KINDS = ("ordering", "t-odd", "partition", "kernel")


@dataclass(frozen=True)
class Check:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def detect_kind(cert: dict) -> str:
    if "kernel" in cert:
        return "kernel"
    if "classes" in cert:
        return "partition"
    if "ordering" in cert and "T" in cert:
        return "t-odd"
    if "ordering" in cert:
        return "ordering"
    raise ValueError("cannot tell the certificate kind")


def _is_permutation(order, n: int) -> bool:
    return isinstance(order, list) and sorted(order) == list(range(n))


def _back_counts(G: MultiGraph, order: list[int]) -> list[int] | None:
    pos = {v: i for i, v in enumerate(order)}
    back = [0] * G.n
    for u, v in G.edges:
        if u == v:
            return None
        back[u if pos[u] > pos[v] else v] += 1
    return back


def check_ordering(G: MultiGraph, cert: dict) -> Check:
    order = cert.get("ordering")
    if not _is_permutation(order, G.n):
        return Check(False, "ordering is not a permutation of the vertices")
    back = _back_counts(G, order)
    if back is None:
        return Check(False, "graph has a loop")
    if "indegrees" in cert and list(cert["indegrees"]) != back:
        return Check(False, "indegree list does not match the edge list")
    for v in order[1:]:
        if back[v] % 2 == 0:
            return Check(False, f"vertex {v} has an even number of earlier neighbours")
    return Check(True)


def check_t_odd(G: MultiGraph, cert: dict) -> Check:
    order = cert.get("ordering")
    if not _is_permutation(order, G.n):
        return Check(False, "ordering is not a permutation of the vertices")
    T = set(cert.get("T", []))
    if not T <= set(range(G.n)):
        return Check(False, "T has vertices outside the graph")
    back = _back_counts(G, order)
    if back is None:
        return Check(False, "graph has a loop")
    for v in range(G.n):
        if (back[v] % 2 == 1) != (v in T):
            return Check(False, f"indegree parity at {v} does not match T")
    return Check(True)


def _classes_ok(G: MultiGraph, classes) -> tuple[Check, list[int]]:
    where = [-1] * G.n
    for i, c in enumerate(classes):
        if not c:
            return Check(False, f"class {i} is empty"), where
        for v in c:
            if not (isinstance(v, int) and 0 <= v < G.n):
                return Check(False, f"vertex {v!r} out of range"), where
            if where[v] != -1:
                return Check(False, f"vertex {v} in two classes"), where
            where[v] = i
    if -1 in where:
        return Check(False, "classes do not cover the vertex set"), where
    return Check(True), where


def check_partition(G: MultiGraph, cert: dict) -> Check:
    classes = cert.get("classes")
    if not isinstance(classes, list) or not classes:
        return Check(False, "no classes")
    res, where = _classes_ok(G, classes)
    if not res:
        return res
    if "k" in cert and cert["k"] != len(classes):
        return Check(False, f"expected {cert['k']} classes, got {len(classes)}")
    cross = [0] * len(classes)
    for u, v in G.edges:
        if where[u] != where[v]:
            cross[max(where[u], where[v])] += 1
    for i in range(1, len(classes)):
        if cross[i] % 2 == 0:
            return Check(False, f"class {i} has an even cut to the classes before it")
    return Check(True)


def _odd_neighbours(G: MultiGraph, alive: set[int]) -> dict[int, set[int]]:
    nb: dict[int, set[int]] = {v: set() for v in alive}
    for u, v in G.edges:
        if u != v and u in alive and v in alive:
            nb[u] ^= {v}
            nb[v] ^= {u}
    return nb


def _equivalent(nb: dict[int, set[int]], kind: str, a: int, b: int) -> bool:
    if kind == "d":
        return b not in nb[a] and nb[a] == nb[b]
    if kind == "c":
        return b in nb[a] and nb[a] - {b} == nb[b] - {a}
    return False


def check_kernel(G: MultiGraph, cert: dict) -> Check:
    """Replay the recorded deletions: each removes an even number of
    pairwise equivalent vertices, keeping at least ``k`` of the class."""
    k = cert.get("k")
    if not isinstance(k, int) or k < 1:
        return Check(False, "certificate lacks k")
    kernel = set(cert.get("kernel", []))
    if len(kernel) > 6 * k:
        return Check(False, f"kernel has {len(kernel)} > 6k vertices")
    if cert.get("even_graph"):
        # all degrees even means every proper cut is even: only k = 1 works
        deg = [0] * G.n
        for u, v in G.edges:
            deg[u] += 1
            deg[v] += 1
        if any(d % 2 for d in deg):
            return Check(False, "graph has an odd-degree vertex")
        if len(kernel) != 1 or not kernel <= set(range(G.n)) or k < 2:
            return Check(False, "even-graph kernel must be one vertex with k >= 2")
        return Check(True)
    alive = set(range(G.n))
    for step in cert.get("removed", []):
        gone, mem, kind = set(step["vertices"]), set(step["members"]), step["kind"]
        if not (gone <= mem <= alive):
            return Check(False, "deletion is not inside its equivalence class")
        if len(gone) % 2:
            return Check(False, "odd-sized deletion")
        if len(mem) - len(gone) < k:
            return Check(False, "deletion leaves fewer than k equivalent vertices")
        nb = _odd_neighbours(G, alive)
        ms = sorted(mem)
        if not all(_equivalent(nb, kind, a, b) for i, a in enumerate(ms) for b in ms[i + 1:]):
            return Check(False, "witness vertices are not pairwise equivalent")
        alive -= gone
    if alive != kernel:
        return Check(False, "deletions do not leave the stated kernel")
    return Check(True)


def verify(G: MultiGraph, cert: dict, kind: str | None = None) -> Check:
    kind = kind or detect_kind(cert)
    if "n" in cert and cert["n"] != G.n or "m" in cert and cert["m"] != G.m:
        raise ValueError("certificate was made for a different graph size")
    if kind == "ordering":
        return check_ordering(G, cert)
    if kind == "t-odd":
        return check_t_odd(G, cert)
    if kind == "partition":
        return check_partition(G, cert)
    if kind == "kernel":
        return check_kernel(G, cert)
    raise ValueError(f"unknown certificate kind {kind!r}")
