import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ologwd import examples as ex
from ologwd.errors import SchemaError, UnknownSensorError
from ologwd.graph import DirectedGraph
from ologwd.trace import UNDEFINED, Trace, candidate_times, eval_sensor, match_wd, state_vector_holds
from ologwd.wiring import Label, SensingFunctionDecl, WiringDiagram

from helpers import random_skeleton_edges
from oracles import brute_force_matches, label_holds

F = SensingFunctionDecl("F")
DF = SensingFunctionDecl("dF", kind="derivative", base="F", window=5, codomain=frozenset({-1, 0, 1}))
SENS = {"F": F, "dF": DF}
TR = Trace.of([(0, "F", "•", 0), (10, "F", "•", 1), (20, "F", "•", 0)])


def test_step_semantics():
    assert eval_sensor(TR, F, "•", -1) is UNDEFINED
    assert [eval_sensor(TR, F, "•", t) for t in (0, 9.9, 10, 19, 20, 99)] == [0, 0, 1, 1, 0, 0]
    assert eval_sensor(TR, F, "other", 10) is UNDEFINED


def test_windowed_derivative():
    assert eval_sensor(TR, DF, "•", 4) is UNDEFINED
    assert eval_sensor(TR, DF, "•", 5) == 0
    assert [eval_sensor(TR, DF, "•", t) for t in (10, 14, 15, 20, 25)] == [1, 1, 0, -1, 0]


def test_abstract_sensor_cannot_be_read():
    with pytest.raises(ValueError):
        eval_sensor(TR, SensingFunctionDecl("f", kind="abstract"), "•", 0)


def test_trace_bookkeeping():
    assert TR.start == 0 and TR.timestamps() == [0, 10, 20] and TR.sensors() == {"F"}
    assert Trace(()).start is None
    with pytest.raises(SchemaError):
        Trace.of([(1, "F", "•", 0), (1, "F", "•", 1)])
    assert len(Trace.of([(1, "F", "•", 0), (1, "F", "•", 0)]).timestamps()) == 1


def test_candidate_times_include_window_shifts():
    assert candidate_times(TR, {"F": F}) == [0, 10, 20]
    assert candidate_times(TR, SENS) == [0, 5, 10, 15, 20, 25]


def test_state_vector_holds_and_unknown_sensors():
    assert state_vector_holds(TR, [Label("F", value=1), Label("dF", value=1)], 12, SENS)
    assert not state_vector_holds(TR, [Label("F", value=1), Label("dF", value=1)], 16, SENS)
    with pytest.raises(UnknownSensorError):
        state_vector_holds(TR, [Label("G")], 0, SENS)
    with pytest.raises(UnknownSensorError):
        state_vector_holds(TR, [Label("H")], 0, {"H": SensingFunctionDecl("H")})


def test_coffee_trace_matches_once():
    hits = match_wd(ex.coffee_trace(), ex.buy_coffee_derivative())
    assert [a.as_dict() for a in hits] == [{"enter": 10, "exit": 60, "pay": 30, "receive": 40}]
    assert match_wd(ex.coffee_trace(), ex.receive_first()) == []
    assert match_wd(ex.coffee_trace(pay_at=40, receive_at=30), ex.pay_first()) == []
    assert len(match_wd(ex.coffee_trace(pay_at=40, receive_at=30), ex.receive_first())) == 1


def test_empty_trace_and_limit():
    w = WiringDiagram.build({"a": [Label("F", value=0)], "b": [Label("F", value=0)]}, sensors=[F])
    assert match_wd(Trace(()), w) == []
    # unordered vertices, F = 0 at candidate times 0 and 20
    assert len(match_wd(TR, w)) == 4
    # declaring dF adds the shifted times 5 and 25
    assert len(match_wd(TR, w, sensors=SENS)) == 16
    assert len(match_wd(TR, w, limit=2)) == 2
    assert match_wd(TR, w, limit=0) == []


def test_undeclared_label_sensor():
    w = WiringDiagram.build({"a": [Label("G")]}, sensors=SENS)
    with pytest.raises(UnknownSensorError):
        match_wd(TR, w)


TRACE_LABELS = [Label("F1", value=v) for v in (0, 1)] + [Label("F2", value=v) for v in (0, 1)] + [
    Label(f"dF{i}", value=v) for i in (1, 2) for v in (-1, 0, 1)
]
TRACE_SENSORS = {
    "F1": SensingFunctionDecl("F1"),
    "F2": SensingFunctionDecl("F2"),
    "dF1": SensingFunctionDecl("dF1", kind="derivative", base="F1", window=3, codomain=frozenset({-1, 0, 1})),
    "dF2": SensingFunctionDecl("dF2", kind="derivative", base="F2", window=3, codomain=frozenset({-1, 0, 1})),
}


@st.composite
def traces_and_diagrams(draw):
    seed = draw(st.integers(0, 10**9))
    rng = random.Random(seed)
    stamps = sorted(rng.sample(range(0, 20), rng.randint(1, 8)))
    rows = []
    for s in ("F1", "F2"):
        for i, t in enumerate(stamps):
            if i == 0 or rng.random() < 0.5:
                rows.append((t, s, "•", rng.randint(0, 1)))
    vs = [f"x{i}" for i in range(rng.randint(1, 4))]
    g = DirectedGraph.from_edges(vs, random_skeleton_edges(rng, vs, p=0.4))
    vectors = {v: rng.sample(TRACE_LABELS, 1) for v in vs}
    return rows, WiringDiagram(g, vectors, TRACE_SENSORS)


def _key(assignments):
    return sorted(tuple(sorted(a.items())) for a in assignments)


@settings(max_examples=150, deadline=None)
@given(traces_and_diagrams())
def test_matcher_equals_brute_force_and_is_sound(case):
    rows, w = case
    hits = [a.as_dict() for a in match_wd(Trace.of(rows), w)]
    assert _key(hits) == _key(brute_force_matches(rows, w))
    for h in hits:
        for s, t in w.graph.edge_pairs():
            assert h[s] < h[t]
        for v, labels in w.state_vectors.items():
            assert all(label_holds(rows, TRACE_SENSORS[l.sensor], l, h[v]) for l in labels)


@settings(max_examples=100, deadline=None)
@given(traces_and_diagrams())
def test_dropping_an_arrow_never_loses_matches(case):
    rows, w = case
    if not w.graph.arrows:
        return
    aid = sorted(w.graph.arrows)[0]
    looser = w.replace(graph=DirectedGraph(w.vertices, {a: p for a, p in w.graph.arrows.items() if a != aid}))
    tr = Trace.of(rows)
    strict = set(_key([a.as_dict() for a in match_wd(tr, w)]))
    loose = set(_key([a.as_dict() for a in match_wd(tr, looser)]))
    assert strict <= loose
