from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dualcrit.exact import is_dual_critical
from dualcrit.generators import (
    BOWTIE, K4, K23, NAMED, THETA3, TRIANGLE, TWO_TRIANGLES_BRIDGE, path, random_tree, star,
)
from dualcrit.graph import GraphError, MultiGraph, is_connected
from dualcrit.szegedy import (
    Outcome,
    Variant,
    audit_against_exact,
    build_intersection_matrix,
    connected_graphs,
    determinant_at,
    error_bound,
    randomized_det_test,
    szegedy_is_dc,
)


def test_tree_gives_empty_matrix():
    M = build_intersection_matrix(path(4))
    assert M.q == 0
    v = randomized_det_test(M)
    assert v.outcome is Outcome.NONZERO_DET and v.error_bound == 0


def test_triangle_matrix_cells():
    T = {0, 1}  # edges 01 and 12
    lit = build_intersection_matrix(TRIANGLE, T, "literal")
    assert lit.q == 1 and lit.cells[0][0] == frozenset({0, 1})
    zd = build_intersection_matrix(TRIANGLE, T, "zerodiag")
    assert zd.cells[0][0] == frozenset()


def test_k23_matrix_cells():
    # tree ax, ay, az, bx; the non-tree edges by and bz close two 4-cycles
    M = build_intersection_matrix(K23, {0, 1, 2, 3}, Variant.LITERAL)
    assert M.q == 2
    assert M.cells[0][1] == M.cells[1][0] == frozenset({0, 3})
    assert M.cells[0][0] == frozenset({0, 1, 3})
    assert M.cells[1][1] == frozenset({0, 2, 3})


def test_matrix_needs_connected_graph():
    with pytest.raises(GraphError):
        build_intersection_matrix(MultiGraph(2))


def test_triangle_literal_determinant_is_nonzero():
    M = build_intersection_matrix(TRIANGLE, {0, 1}, "literal")
    assert determinant_at(M, {0: 1, 1: 0}) == 1
    assert randomized_det_test(M).outcome is Outcome.NONZERO_DET


def test_k4_star_tree_vanishes():
    star_edges = {e for e, (u, v) in enumerate(K4.edges) if 0 in (u, v)}
    M = build_intersection_matrix(K4, star_edges, "literal")
    v = randomized_det_test(M, seed=3, trials=1000)
    assert v.outcome is Outcome.ZERO_DET_WHP and v.trials == 1000


def test_k4_literal_depends_on_the_tree():
    # only the four stars among the sixteen spanning trees give det = 0
    outcomes = {}
    for T in combinations(range(6), 3):
        sub = MultiGraph(4, tuple(K4.edges[e] for e in T))
        if not is_connected(sub):
            continue
        lit = randomized_det_test(build_intersection_matrix(K4, T, "literal"), 0, 40)
        zd = randomized_det_test(build_intersection_matrix(K4, T, "zerodiag"), 0, 40)
        assert zd.outcome is Outcome.ZERO_DET_WHP
        is_star = any(all(x in K4.edges[e] for e in T) for x in range(4))
        outcomes[T] = (is_star, lit.outcome)
    assert len(outcomes) == 16
    for is_star, outcome in outcomes.values():
        assert (outcome is Outcome.ZERO_DET_WHP) == is_star


def test_deterministic_for_fixed_seed():
    M = build_intersection_matrix(K23)
    a = randomized_det_test(M, seed=7, trials=5)
    b = randomized_det_test(M, seed=7, trials=5)
    assert a == b and a.witness == b.witness


def test_witness_reproduces_nonzero_determinant():
    for G, variant in ((K23, "literal"), (TRIANGLE, "literal"), (THETA3, "zerodiag")):
        M = build_intersection_matrix(G, variant=variant)
        v = randomized_det_test(M, seed=11)
        assert v.outcome is Outcome.NONZERO_DET
        assert determinant_at(M, v.witness) != 0


def test_error_bound_strictly_decreasing():
    bounds = [error_bound(3, t) for t in range(1, 8)]
    assert all(a > b for a, b in zip(bounds, bounds[1:]))
    assert error_bound(3, 1) == Fraction(3, 2**64)
    with pytest.raises(ValueError):
        randomized_det_test(build_intersection_matrix(K23), trials=0)


def test_szegedy_pipeline_examples():
    for variant in Variant:
        assert szegedy_is_dc(K23, variant).is_dc
    bow = szegedy_is_dc(BOWTIE)
    assert not bow.is_dc and bow.certain and bow.reason == "all degrees even"
    tri = szegedy_is_dc(TRIANGLE)
    assert not tri.is_dc and tri.certain and tri.reason == "bad parity"
    assert szegedy_is_dc(MultiGraph(1)).is_dc
    assert not szegedy_is_dc(MultiGraph(2)).is_dc
    assert szegedy_is_dc(K4).reason == "bad parity"
    bridge = szegedy_is_dc(TWO_TRIANGLES_BRIDGE, "zerodiag")
    assert bridge.label == "FalseWHP" and bridge.verdict.log2_error_bound < -2000


def test_zerodiag_matches_exact_on_named_graphs():
    for G in NAMED.values():
        assert szegedy_is_dc(G, "zerodiag").is_dc == is_dual_critical(G)


def test_literal_diagonal_known_discrepancies():
    # the literal diagonal misjudges these in both directions
    for name in ("W4", "K33", "PRISM", "PETERSEN"):
        assert is_dual_critical(NAMED[name])
        assert szegedy_is_dc(NAMED[name], "literal").label == "FalseWHP"
    assert not is_dual_critical(TWO_TRIANGLES_BRIDGE)
    assert szegedy_is_dc(TWO_TRIANGLES_BRIDGE, "literal").is_dc


@given(st.integers(1, 12), st.integers(0, 1000))
@settings(max_examples=40)
def test_trees_are_accepted(n, seed):
    G = random_tree(n, seed)
    assert is_dual_critical(G)
    assert szegedy_is_dc(G).is_dc
    assert szegedy_is_dc(star(n)).is_dc


def test_connected_graph_counts():
    # labelled connected graphs on 1..5 vertices
    assert [sum(1 for _ in connected_graphs(n)) for n in range(1, 6)] == [1, 1, 4, 38, 728]


def test_audit_small():
    rep = audit_against_exact(2, ["literal", "zerodiag"])
    for v in rep["variants"].values():
        assert v["graphs"] == 2 and v["disagreements"] == []
    rep = audit_against_exact(2, ["literal"], n_min=2)
    assert rep["variants"]["literal"]["graphs"] == 1


def test_audit_n4_zerodiag_k4():
    rep = audit_against_exact(4, ["zerodiag"], n_min=4)["variants"]["zerodiag"]
    assert rep["graphs"] == 38
    assert rep["disagreements"] == []
    with pytest.raises(GraphError):
        audit_against_exact(8)
