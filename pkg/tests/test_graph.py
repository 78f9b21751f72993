import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ologwd.errors import CycleError, NotPartialOrderError
from ologwd.graph import (
    DirectedGraph,
    RelationSet,
    covering_pairs,
    find_cycle,
    is_skeleton,
    is_wd_graph,
    restrict,
    skeleton_violation,
    transitive_closure,
    transitive_reduction,
    validate_wd_graph,
)

from oracles import hasse_edges, reach_bfs


@st.composite
def digraphs(draw, max_n: int = 6, acyclic: bool = False):
    n = draw(st.integers(1, max_n))
    vs = [f"v{i}" for i in range(n)]
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
    if acyclic:
        pair = pair.filter(lambda p: p[0] < p[1])
    edges = draw(st.lists(pair, max_size=2 * n))
    return DirectedGraph.from_edges(vs, [(vs[a], vs[b]) for a, b in edges])


def _nx(g: DirectedGraph) -> nx.MultiDiGraph:
    m = nx.MultiDiGraph()
    m.add_nodes_from(g.vertices)
    m.add_edges_from(g.arrows.values())
    return m


def test_from_edges_names_parallel_arrows_apart():
    g = DirectedGraph.from_edges("ab", [("a", "b"), ("a", "b")])
    assert sorted(g.arrows) == ["a->b", "a->b#2"]
    assert g.edge_pairs() == [("a", "b"), ("a", "b")]
    assert g.edge_set() == {("a", "b")}


def test_arrow_endpoints_must_be_vertices():
    with pytest.raises(ValueError):
        DirectedGraph({"a"}, {"x": ("a", "b")})


def test_loop_is_a_cycle():
    g = DirectedGraph.from_edges("ab", [("a", "b"), ("b", "b")])
    assert find_cycle(g) == ("b", "b")
    with pytest.raises(CycleError) as info:
        validate_wd_graph(g)
    assert info.value.cycle == ("b", "b")


def test_two_cycle_witness_is_closed_walk():
    g = DirectedGraph.from_edges("abc", [("a", "b"), ("b", "c"), ("c", "a")])
    cyc = find_cycle(g)
    assert cyc[0] == cyc[-1] and len(cyc) == 4
    for s, t in zip(cyc, cyc[1:]):
        assert (s, t) in g.edge_set()


def test_linear_extension_is_deterministic():
    g = DirectedGraph.from_edges("cab", [("c", "a")])
    assert validate_wd_graph(g).order() == ["b", "c", "a"]


@given(digraphs())
def test_acyclicity_agrees_with_networkx(g):
    want = nx.is_directed_acyclic_graph(_nx(g))
    assert is_wd_graph(g) == want
    if want:
        ext = validate_wd_graph(g)
        assert sorted(ext.labeling.values()) == list(range(1, len(g.vertices) + 1))
        assert all(ext[s] < ext[t] for s, t in g.arrows.values())
    else:
        cyc = find_cycle(g)
        assert all((s, t) in g.edge_set() for s, t in zip(cyc, cyc[1:]))


@given(digraphs(acyclic=True))
def test_closure_matches_bfs(g):
    assert transitive_closure(g).pairs == reach_bfs(g.vertices, g.edge_pairs())


@given(digraphs(acyclic=True))
def test_reduction_is_hasse_diagram_and_round_trips(g):
    r = transitive_closure(g)
    red = transitive_reduction(r)
    strict = r.strict_pairs()
    assert sorted(red.edge_pairs()) == hasse_edges(sorted(g.vertices), strict)
    assert covering_pairs(r) == red.edge_set()
    assert transitive_closure(red) == r
    assert is_skeleton(red)
    assert is_skeleton(g) == (sorted(g.edge_pairs()) == sorted(red.edge_pairs()))


def test_closure_needs_acyclic_graph():
    with pytest.raises(CycleError):
        transitive_closure(DirectedGraph.from_edges("ab", [("a", "b"), ("b", "a")]))


def test_reduction_rejects_non_orders():
    with pytest.raises(NotPartialOrderError, match="transitive"):
        transitive_reduction(RelationSet.of("abc", [("a", "b"), ("b", "c")]))
    with pytest.raises(NotPartialOrderError, match="antisymmetric"):
        transitive_reduction(RelationSet.of("ab", [("a", "b"), ("b", "a")]))
    with pytest.raises(NotPartialOrderError, match="reflexive"):
        transitive_reduction(RelationSet.of("ab", [("a", "b")], reflexive=False))


def test_skeleton_violations_name_their_witness():
    shortcut = DirectedGraph.from_edges("abc", [("a", "b"), ("b", "c"), ("a", "c")])
    parallel = DirectedGraph.from_edges("ab", [("a", "b"), ("a", "b")])
    assert skeleton_violation(shortcut) == ("shortcut", ("a", "c"))
    assert skeleton_violation(parallel) == ("parallel", ("a", "b"))
    assert not is_skeleton(shortcut) and not is_skeleton(parallel)
    assert skeleton_violation(DirectedGraph.from_edges("abc", [("a", "b"), ("b", "c")])) is None


def test_relation_pairs_must_lie_in_base():
    with pytest.raises(ValueError):
        RelationSet.of("a", [("a", "z")])


def test_restrict_drops_incident_arrows():
    g = DirectedGraph.from_edges("abc", [("a", "b"), ("b", "c")])
    h = restrict(g, {"a", "c"})
    assert h.vertices == {"a", "c"} and not h.arrows


@settings(max_examples=50)
@given(digraphs(acyclic=True))
def test_graph_equality_and_hash(g):
    h = DirectedGraph(g.vertices, dict(g.arrows))
    assert g == h and hash(g) == hash(h)
