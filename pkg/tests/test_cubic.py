import pytest

from dualcrit.cubic import (
    K33,
    PETERSEN,
    PRISM,
    CubicInstance,
    cotree_components_even,
    cubic_suite,
    is_forest,
    is_independent,
    is_tree,
    orientation_arcs,
    partition_terms,
    random_cubic,
    rooted_odd_orientation,
    spanning_trees,
)
from dualcrit.exact import back_degrees
from dualcrit.generators import K4
from dualcrit.graph import GraphError, MultiGraph, delete_vertices, is_simple

# two copies of K4 with one edge subdivided, joined by a bridge between the subdivision vertices
_HALF = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (4, 1)]
BRIDGED = MultiGraph(10, tuple(_HALF + [(a + 5, b + 5) for a, b in _HALF] + [(4, 9)]))
K4_K33 = MultiGraph(10, K4.edges + tuple((a + 4, b + 4) for a, b in K33.edges))


def test_instance_checks():
    assert CubicInstance.of(K33).k == 1
    assert CubicInstance.of(PETERSEN).k == 2
    with pytest.raises(GraphError):
        CubicInstance.of(K4)  # n = 4 is not 2 mod 4
    with pytest.raises(GraphError):
        CubicInstance.of(MultiGraph(6, ((0, 1),)))


def test_named_cubic_graphs_are_unanimously_true():
    for G in (K33, PRISM, PETERSEN):
        r = cubic_suite(G)
        assert r.unanimous and r.conditions["1"]
        assert r.as_json()["condition_8"] == "not checked"


def test_negative_instances_are_unanimously_false():
    for G in (BRIDGED, K4_K33):
        assert CubicInstance.of(G).k == 2
        r = cubic_suite(G)
        assert r.unanimous and not r.conditions["1"]
        assert "7_violation" in r.witnesses


def test_witnesses_check_out():
    for G in (K33, PRISM, PETERSEN, random_cubic(10, 4)):
        C = CubicInstance.of(G)
        w = cubic_suite(C).witnesses
        assert len(w["2"]) == C.k + 1 and is_independent(G, w["2"])
        assert is_forest(delete_vertices(G, w["3"])) and len(w["3"]) == C.k + 1
        assert is_independent(G, w["4"]) and is_tree(delete_vertices(G, w["4"]))
        assert cotree_components_even(G, w["5"])


def test_partition_terms_violation():
    r = cubic_suite(BRIDGED)
    P = r.witnesses["7_violation"]
    e, size, bad = partition_terms(BRIDGED, P)
    # the inequality e >= |P| + bp - 1 + 2k fails on the witness
    assert e < size + bad - 1 + 2 * r.k


def test_rooted_odd_orientation_is_acyclic_with_odd_indegrees():
    code = rooted_odd_orientation(K33, 0)
    assert code is not None
    arcs = orientation_arcs(K33, code)
    indeg = [0] * K33.n
    for _, head in arcs:
        indeg[head] += 1
    assert indeg[0] == 0 and all(d % 2 for d in indeg[1:])
    # an acyclic orientation comes from some vertex order
    order = []
    left = set(range(K33.n))
    while left:
        src = next(v for v in sorted(left) if not any(h == v and t in left for t, h in arcs))
        order.append(src)
        left.remove(src)
    assert [back_degrees(K33, order)[v] % 2 for v in order[1:]] == [1] * 5


def test_spanning_tree_count():
    assert sum(1 for _ in spanning_trees(K4)) == 16
    assert sum(1 for _ in spanning_trees(K33)) == 81


def test_random_cubic_is_simple_cubic_and_seeded():
    for seed in range(5):
        G = random_cubic(10, seed)
        assert is_simple(G) and all(d == 3 for d in G.degrees)
        assert G == random_cubic(10, seed)
    with pytest.raises(GraphError):
        random_cubic(5, 0)
