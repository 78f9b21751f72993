import pytest
from hypothesis import given
from hypothesis import strategies as st

from ologwd.category import SkeletonWdGraph, enumerate_covers, is_irreducible, morphism_exists
from ologwd.errors import NotSkeletonError, VertexSetMismatchError
from ologwd.graph import DirectedGraph, RelationSet

from oracles import all_posets, has_strict_intermediate, hasse_edges

VS4 = ["a", "b", "c", "d"]
POSETS4 = all_posets(VS4)


def _sk(vs, edges):
    return SkeletonWdGraph.of(DirectedGraph.from_edges(vs, edges))


def test_poset_count_on_four_labelled_points():
    # number of labelled posets on 1..4 points: 1, 3, 19, 219
    assert [len(all_posets(VS4[:n])) for n in range(1, 5)] == [1, 3, 19, 219]


def test_non_skeleton_graph_rejected():
    with pytest.raises(NotSkeletonError):
        _sk("abc", [("a", "b"), ("b", "c"), ("a", "c")])


def test_vertex_sets_must_match():
    with pytest.raises(VertexSetMismatchError):
        morphism_exists(_sk("ab", []), _sk("abc", []))


def test_chain_to_diamond_and_back():
    chain = _sk("ABCD", [("A", "B"), ("B", "C"), ("C", "D")])
    diamond = _sk("ABCD", [("A", "B"), ("A", "C"), ("B", "D"), ("C", "D")])
    m = morphism_exists(chain, diamond)
    assert m is not None and m.witness == diamond.order.pairs
    assert m.difference() == {("B", "C")}
    assert is_irreducible(m) and is_irreducible(m, brute_force=True)
    assert morphism_exists(diamond, chain) is None


def test_identity_is_not_irreducible():
    g = _sk("ab", [("a", "b")])
    m = morphism_exists(g, g)
    assert m.is_identity() and not is_irreducible(m) and not is_irreducible(m, brute_force=True)


def test_composite_is_not_irreducible():
    chain = _sk("abc", [("a", "b"), ("b", "c")])
    discrete = _sk("abc", [])
    m = morphism_exists(chain, discrete)
    assert m is not None and not is_irreducible(m) and not is_irreducible(m, brute_force=True)


def test_covers_of_the_discrete_order():
    discrete = _sk("abc", [])
    assert enumerate_covers(discrete, "down") == []
    assert len(enumerate_covers(discrete, "up")) == 6
    with pytest.raises(ValueError):
        enumerate_covers(discrete, "sideways")


@given(st.sampled_from(POSETS4))
def test_covers_match_oracle(p):
    g = _sk(VS4, hasse_edges(VS4, p))
    down = {frozenset(c.order.strict_pairs()) for c in enumerate_covers(g, "down")}
    up = {frozenset(c.order.strict_pairs()) for c in enumerate_covers(g, "up")}
    want_down = {q for q in POSETS4 if q < p and not has_strict_intermediate(p, q, POSETS4)}
    want_up = {q for q in POSETS4 if p < q and not has_strict_intermediate(q, p, POSETS4)}
    assert down == want_down and up == want_up
    for c in enumerate_covers(g, "down"):
        m = morphism_exists(g, c)
        assert m is not None and is_irreducible(m)


def test_from_order_uses_the_reduction():
    r = RelationSet.of("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    g = SkeletonWdGraph.from_order(r)
    assert g.graph.edge_set() == {("a", "b"), ("b", "c")}
