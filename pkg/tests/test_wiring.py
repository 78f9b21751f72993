import pytest
from hypothesis import given
from hypothesis import strategies as st

from ologwd import examples as ex
from ologwd.errors import CycleError, EntityNotInSetError, NonNumericCodomainError, UnknownRelationError
from ologwd.graph import DirectedGraph
from ologwd.wiring import (
    BULLET,
    Interval,
    Label,
    Relation,
    SensingFunctionDecl,
    WiringDiagram,
    check_wd,
    derive_sensor,
    relation_sensor,
    validate_wd,
)

F = SensingFunctionDecl("F")


def _wd(vectors, edges=(), sensors=(F,)):
    return WiringDiagram.build(vectors, edges, sensors)


def test_interval_membership():
    iv = Interval(-1.5, 2)
    assert 0 in iv and 2 in iv and -1.5 in iv
    assert 3 not in iv and "x" not in iv and True not in iv
    with pytest.raises(ValueError):
        Interval(1, 0)


def test_derive_sensor_codomains():
    d = derive_sensor(F, 5)
    assert (d.id, d.kind, d.base, d.window) == ("dF", "derivative", "F", 5)
    assert d.codomain == {-1, 0, 1}
    level = SensingFunctionDecl("T", codomain=Interval(0, 10))
    assert derive_sensor(level, 1, id="dT").codomain == Interval(-10, 10)
    with pytest.raises(ValueError):
        derive_sensor(F, 0)
    with pytest.raises(NonNumericCodomainError):
        derive_sensor(SensingFunctionDecl("C", codomain=frozenset({"red", "blue"})), 1)


def test_sensor_declaration_checks():
    with pytest.raises(ValueError):
        SensingFunctionDecl("x", kind="weird")
    with pytest.raises(ValueError):
        SensingFunctionDecl("x", kind="derivative", base="F")
    with pytest.raises(ValueError):
        SensingFunctionDecl("x", kind="derivative", window=3)
    with pytest.raises(ValueError):
        SensingFunctionDecl("x", kind="relation", codomain=frozenset({0, 1, 2}))


def test_relation_sensor():
    rels = {"plugged": Relation("plugged", frozenset({"s1"}), frozenset({"c1", "c2"}))}
    s = relation_sensor(rels, "plugged", "s1", "c2")
    assert (s.kind, s.entities, s.codomain) == ("relation", ("s1", "c2"), {0, 1})
    with pytest.raises(UnknownRelationError):
        relation_sensor(rels, "owns", "s1", "c1")
    with pytest.raises(EntityNotInSetError):
        relation_sensor(rels, "plugged", "c1", "c1")
    with pytest.raises(EntityNotInSetError):
        relation_sensor(rels, "plugged", "s1", "s1")


def test_state_vector_needs_known_vertex():
    with pytest.raises(ValueError):
        WiringDiagram(DirectedGraph({"a"}), {"b": [Label("F")]})


def test_valid_chain():
    w = _wd({"a": [Label("F")], "b": [Label("F", value=0)]}, [("a", "b")])
    report = validate_wd(w)
    assert report.ok and report.checked == ("WD0", "WD1", "WD2", "WD3", "nonempty")
    assert check_wd(w) is w


def test_wd1_label_problems():
    w = _wd(
        {
            "a": [Label("G")],
            "b": [Label("F", arg="someone")],
            "c": [Label("F", value=7)],
        }
    )
    fails = validate_wd(w).failures
    assert [f.axiom for f in fails] == ["WD1"] * 3
    assert "undeclared sensor 'G'" in fails[0].message
    assert "argument" in fails[1].message and "codomain" in fails[2].message


def test_wd1_derivative_without_base():
    w = _wd({"a": [Label("dF", value=0)]}, sensors=[derive_sensor(SensingFunctionDecl("H"), 1, id="dF")])
    assert validate_wd(w).failed_axioms() == {"WD1"}


def test_wd2_and_wd3_failures():
    cyc = _wd({"a": [Label("F")], "b": [Label("F")]}, [("a", "b"), ("b", "a")])
    assert validate_wd(cyc).failed_axioms() == {"WD2", "WD3"}
    assert validate_wd(cyc, require_skeleton=False).failed_axioms() == {"WD2"}
    with pytest.raises(CycleError):
        check_wd(cyc)
    short = _wd({v: [Label("F")] for v in "abc"}, [("a", "b"), ("b", "c"), ("a", "c")])
    fails = validate_wd(short).failures
    assert [(f.axiom, f.witness) for f in fails] == [("WD3", ("a", "c"))]
    assert validate_wd(short, require_skeleton=False).ok


def test_nonempty_requirements():
    w = WiringDiagram(DirectedGraph({"a", "b"}), {"a": [Label("F")]}, {"F": F})
    assert validate_wd(w).failed_axioms() == {"nonempty"}
    assert validate_wd(w, require_nonempty=False).ok
    empty = WiringDiagram(DirectedGraph(()))
    assert validate_wd(empty).failed_axioms() == {"nonempty"}


def test_report_to_dict_is_json_ready():
    w = _wd({"a": [Label("G")]})
    d = validate_wd(w).to_dict()
    assert d["ok"] is False
    assert d["failures"][0]["witness"] == ["a", {"sensor": "G", "arg": BULLET, "value": 1}]


def test_sensor_override():
    w = _wd({"a": [Label("G")]})
    assert validate_wd(w, sensors={"G": SensingFunctionDecl("G")}).ok


def test_shipped_coffee_and_charger_diagrams_validate():
    for w in (
        ex.enter_shop(),
        ex.enter_shop_derivative(),
        ex.buy_coffee(),
        ex.buy_coffee_derivative(),
        ex.pay_first(),
        ex.receive_first(),
        ex.charger(),
        ex.bus(),
        ex.charger_steps(),
        ex.bus_steps(),
        *ex.four_vertex_shapes().values(),
    ):
        assert validate_wd(w).ok, w
    assert "WD2" in validate_wd(ex.cyclic()).failed_axioms()


def test_labels_sort_and_print():
    a, b = Label("F", value=0), Label("E")
    assert sorted([a, b]) == [b, a]
    assert str(a) == "(F,•,0)"


@given(st.sets(st.sampled_from([Label("F"), Label("F", value=0)]), min_size=1))
def test_equal_diagrams_hash_equal(labels):
    w1 = _wd({"a": labels})
    w2 = _wd({"a": list(labels)})
    assert w1 == w2 and hash(w1) == hash(w2)
    assert w1.labels() == frozenset(labels)
