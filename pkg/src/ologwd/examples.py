"""Builders for the worked examples: ologs, wiring diagrams, edit paths, traces.

The JSON files under ``ologwd/data`` are generated from these builders
(``python scripts/build_examples.py``) and a test checks they agree.
"""

from __future__ import annotations

from pathlib import Path

from .edits import AddVertex, ChangeLabel, EditPath, Specialize
from .graph import DirectedGraph
from .olog import Olog, OlogType, add_indicator_fibers, build_olog, fiber_product
from .trace import Trace
from .wiring import Interval, Label, SensingFunctionDecl, WiringDiagram

DATA_DIR = Path(__file__).parent / "data"

RECONSTRUCTED = "reconstructed: intermediate diagrams of the charger/bus comparison are not drawn in full in the source and were rebuilt from the listed operations"


# -- ologs ---------------------------------------------------------------


def transport_olog() -> Olog:
    o = build_olog(
        [
            ("transport_vehicle", "a transport vehicle"),
            ("power_source", "a type of power source"),
            ("human_power", "human power"),
            ("gas", "gas"),
        ],
        [
            ("has_power_source", "has as power source", "transport_vehicle", "power_source"),
            ("human_power.is", "is", "human_power", "power_source"),
            ("gas.is", "is", "gas", "power_source"),
        ],
    )
    o = fiber_product(
        o, "has_power_source", "human_power.is", "human_powered_vehicle", "a human-powered vehicle",
        ("human_powered_vehicle.is", "is"), ("human_powered_vehicle.power", "has as power source"),
    )
    o = fiber_product(
        o, "has_power_source", "gas.is", "gas_powered_vehicle", "a gas-powered vehicle",
        ("gas_powered_vehicle.is", "is"), ("gas_powered_vehicle.power", "has as power source"),
    )
    o = o.add_type("bicycle", "a bicycle").add_aspect("bicycle.is", "is", "bicycle", "human_powered_vehicle")
    o = o.add_type("gas_powered_passenger_car", "a gas-powered passenger car")
    return o.add_aspect("gas_powered_passenger_car.is", "is", "gas_powered_passenger_car", "gas_powered_vehicle")


def _pq(o: Olog, apex: str, f: str, g: str, text: str) -> Olog:
    """Fiber product whose projections are named ``apex->target``."""
    b, c = o.aspect(f).src, o.aspect(g).src
    return fiber_product(o, f, g, apex, text, (f"{apex}->{b}", "is"), (f"{apex}->{c}", "is"))


def relations_olog() -> Olog:
    """Ownership and access relations built from pair types by fiber products."""
    o = build_olog(
        [
            ("A", "a person"),
            ("B", "an entity"),
            ("A'", "a building"),
            ("D", "a pair (e, f) where e, f are entities"),
        ],
        [
            ("p1", "p1", "D", "B"),
            ("p2", "p2", "D", "B"),
            ("A->B", "is", "A", "B"),
            ("A'->B", "is", "A'", "B"),
        ],
    )
    o = _pq(o, "C", "p1", "A->B", "a pair (e, f) where e is a person, and f is an entity")
    o = _pq(o, "C'", "p2", "A'->B", "a pair (e, f) where e is an entity, and f is a building")
    o = _pq(o, "C''", "C'->D", "C->D", "a pair (e, f) where e is a person, and f is a building")
    for rel, verb in (("F", "owns"), ("F~", "has access to")):
        e = "E" if rel == "F" else "E~"
        o = o.add_type(rel, f"a pair (e, f) where e, f are entities, and e {verb} f")
        o = o.add_aspect(f"{rel}->D", "is", rel, "D")
        o = _pq(o, e, f"{rel}->D", "C->D", f"a pair (e, f) where e is a person, f is an entity, and e {verb} f")
        o = _pq(o, f"{e}'", f"{rel}->D", "C'->D", f"a pair (e, f) where e is an entity, f is a building, and e {verb} f")
        o = _pq(o, f"{e}''", f"{e}->{rel}", f"{e}'->{rel}", f"a pair (e, f) where e is a person, f is a building, and e {verb} f")
        o = o.add_aspect(f"{e}''->C''", "is", f"{e}''", "C''")
    return o


def _subtype_with_indicator(o: Olog, sub: str, text: str, sup: str, sup_indicator: str) -> Olog:
    """``sub -> sup`` plus the composite indicator ``sub -> {0,1}`` and its fibers."""
    inc = f"{sub}->{sup}"
    composite = f"{sup_indicator}.{inc}"
    o = o.add_type(sub, text).add_aspect(inc, "is", sub, sup)
    o = o.add_aspect(composite, f"{o.aspect(sup_indicator).text} after is", sub, "{0,1}")
    return add_indicator_fibers(o, sub, composite)


def charger_bus_olog() -> Olog:
    """Sensing-function and relation types for comparing a charger with a bus.

    ``P``/``A`` model {0,1}-valued sensing functions and the battery-increase
    sensor; ``T``/``G`` model relation triples and the plugged-in relation.
    ``H``, ``M`` and ``AP`` extend the same pattern to the bus-side labels.
    """
    o = Olog(
        (
            OlogType("P", "a pair (y, f) where y is an entity and f : {y} -> {0,1} is a sensing function"),
            OlogType("{0,1}", "{0,1}"),
            OlogType("T", "a triple (x, y, ~) where x, y are entities and ~ is a relation between entities"),
        )
    )
    o = o.add_aspect("e", "evaluates to", "P", "{0,1}").add_aspect("q", "holds as", "T", "{0,1}")
    o = add_indicator_fibers(o, "P", "e")
    o = add_indicator_fibers(o, "T", "q")
    o = _subtype_with_indicator(o, "A", "a pair (c, B_c^+) where c is an electric car", "P", "e")
    o = _subtype_with_indicator(o, "M", "a pair (p, M_p) where p is a person", "P", "e")
    o = _subtype_with_indicator(o, "AP", "a pair (p, A_p) where p is a person", "P", "e")
    o = _subtype_with_indicator(o, "G", "a triple (s, c, plugged into) where s is a charging station and c an electric car", "T", "q")
    return _subtype_with_indicator(o, "H", "a triple (b, p, inside) where b is a bus and p a person", "T", "q")


# -- sensors -------------------------------------------------------------

BIT = frozenset({0, 1})
DIFF = frozenset({-1, 0, 1})


def _base(sid: str, codomain=BIT, olog_type: str | None = None) -> SensingFunctionDecl:
    return SensingFunctionDecl(sid, "base", codomain=codomain, olog_type=olog_type)


def _deriv(sid: str, base: str, window: float = 5) -> SensingFunctionDecl:
    return SensingFunctionDecl(sid, "derivative", codomain=DIFF, base=base, window=window)


def coffee_sensors() -> list[SensingFunctionDecl]:
    """``F1`` inside the shop, ``F2`` paid, ``F3`` holding coffee, plus 5-second differences."""
    out = [_base(f"F{i}") for i in (1, 2, 3)]
    return out + [_deriv(f"dF{i}", f"F{i}") for i in (1, 2, 3)]


def score_sensors() -> list[SensingFunctionDecl]:
    return [_base(f"S_{x}", Interval(0, 100)) for x in "ABCD"]


def charger_bus_sensors() -> list[SensingFunctionDecl]:
    return [
        SensingFunctionDecl("C_sc", "relation", relation="plugged_into", entities=("s", "c")),
        _deriv("dC_sc", "C_sc"),
        _base("B_c_plus"),
        SensingFunctionDecl("T_bp", "relation", relation="inside", entities=("b", "p")),
        _deriv("dT_bp", "T_bp"),
        _base("A_p"),
        _base("M_p"),
        SensingFunctionDecl("F_xy", "abstract"),
        _deriv("dF_xy", "F_xy"),
        SensingFunctionDecl("f_y", "abstract"),
    ]


def L(sensor: str, value=1) -> Label:
    return Label(sensor, value=value)


def _chain(names_labels: list[tuple[str, list[Label]]], sensors) -> WiringDiagram:
    names = [n for n, _ in names_labels]
    return WiringDiagram.build(dict(names_labels), list(zip(names, names[1:])), sensors)


# -- coffee shop -----------------------------------------------------------


def enter_shop() -> WiringDiagram:
    return _chain([("outside", [L("F1", 0)]), ("inside", [L("F1", 1)])], coffee_sensors())


def enter_shop_derivative() -> WiringDiagram:
    return WiringDiagram.build({"enter": [L("dF1", 1)]}, [], coffee_sensors())


def buy_coffee() -> WiringDiagram:
    """Step-valued version: start, inside, paid / holding coffee, outside again."""
    return WiringDiagram.build(
        {
            "start": [L("F1", 0), L("F2", 0), L("F3", 0)],
            "inside": [L("F1", 1)],
            "paid": [L("F2", 1)],
            "holding": [L("F3", 1)],
            "left": [L("F1", 0)],
        },
        [("start", "inside"), ("inside", "paid"), ("inside", "holding"), ("paid", "left"), ("holding", "left")],
        coffee_sensors(),
    )


def buy_coffee_derivative() -> WiringDiagram:
    return WiringDiagram.build(
        {"enter": [L("dF1", 1)], "pay": [L("dF2", 1)], "receive": [L("dF3", 1)], "exit": [L("dF1", -1)]},
        [("enter", "pay"), ("enter", "receive"), ("pay", "exit"), ("receive", "exit")],
        coffee_sensors(),
    )


def pay_first() -> WiringDiagram:
    return _chain(
        [("enter", [L("dF1", 1)]), ("pay", [L("dF2", 1)]), ("receive", [L("dF3", 1)]), ("exit", [L("dF1", -1)])],
        coffee_sensors(),
    )


def receive_first() -> WiringDiagram:
    return _chain(
        [("enter", [L("dF1", 1)]), ("receive", [L("dF3", 1)]), ("pay", [L("dF2", 1)]), ("exit", [L("dF1", -1)])],
        coffee_sensors(),
    )


def coffee_trace(pay_at: float = 30, receive_at: float = 40) -> Trace:
    """Readings at change points: enter at 10, exit at 60."""
    return Trace.of(
        [
            (0, "F1", "•", 0),
            (0, "F2", "•", 0),
            (0, "F3", "•", 0),
            (10, "F1", "•", 1),
            (pay_at, "F2", "•", 1),
            (receive_at, "F3", "•", 1),
            (60, "F1", "•", 0),
        ]
    )


# -- order shapes on four vertices -------------------------------------------


def _scored(edges: list[tuple[str, str]]) -> WiringDiagram:
    return WiringDiagram.build({x: [Label(f"S_{x}", value=100)] for x in "ABCD"}, edges, score_sensors())


def four_vertex_shapes() -> dict[str, WiringDiagram]:
    return {
        "g1": _scored([("A", "B"), ("B", "C"), ("C", "D")]),
        "g2": _scored([("A", "B"), ("A", "C"), ("B", "D"), ("C", "D")]),
        "g3": _scored([("A", "B"), ("A", "D"), ("C", "D")]),
    }


def cyclic() -> WiringDiagram:
    return WiringDiagram.build({"a": [L("F1", 0)], "b": [L("F1", 1)]}, [("a", "b"), ("b", "a")], coffee_sensors())


# -- charger vs bus ------------------------------------------------------------


def charger() -> WiringDiagram:
    return _chain([("connect", [L("dC_sc")]), ("charge", [L("B_c_plus")])], charger_bus_sensors())


def bus() -> WiringDiagram:
    return _chain([("board", [L("dT_bp")]), ("accelerate", [L("A_p")]), ("move", [L("M_p")])], charger_bus_sensors())


def charger_steps() -> WiringDiagram:
    return _chain(
        [("unplugged", [L("C_sc", 0)]), ("plugged", [L("C_sc", 1)]), ("charge", [L("B_c_plus")])],
        charger_bus_sensors(),
    )


def bus_steps() -> WiringDiagram:
    return _chain(
        [
            ("outside", [L("T_bp", 0)]),
            ("inside", [L("T_bp", 1)]),
            ("accelerate", [L("A_p")]),
            ("move", [L("M_p")]),
        ],
        charger_bus_sensors(),
    )


def common_abstraction() -> WiringDiagram:
    """Shared abstract process of charger and bus: a relation starts holding, then some sensor rises."""
    return _chain([("connect", [L("dF_xy")]), ("charge", [L("f_y")])], charger_bus_sensors())


def common_abstraction_steps() -> WiringDiagram:
    return _chain(
        [("unplugged", [L("F_xy", 0)]), ("plugged", [L("F_xy", 1)]), ("charge", [L("f_y")])],
        charger_bus_sensors(),
    )


def _graph(vertices, edges) -> DirectedGraph:
    return DirectedGraph.from_edges(vertices, edges)


def charger_to_bus_path() -> EditPath:
    """Relabel the charger into the abstraction, then undo the bus-side edits.

    Bus side, read forward: drop the order pair (board, accelerate), delete
    the acceleration vertex, relabel the two remaining vertices.
    """
    return EditPath(
        (
            ChangeLabel("connect", L("dC_sc"), L("dF_xy")),
            ChangeLabel("charge", L("B_c_plus"), L("f_y")),
            ChangeLabel("charge", L("f_y"), L("M_p")),
            ChangeLabel("connect", L("dF_xy"), L("dT_bp")),
            AddVertex("accelerate", frozenset({L("A_p")}), frozenset(), frozenset({"charge"})),
            Specialize(_graph(["connect", "accelerate", "charge"], [("connect", "accelerate"), ("accelerate", "charge")])),
        )
    )


def charger_to_bus_steps_path() -> EditPath:
    return EditPath(
        (
            ChangeLabel("unplugged", L("C_sc", 0), L("F_xy", 0)),
            ChangeLabel("plugged", L("C_sc", 1), L("F_xy", 1)),
            ChangeLabel("charge", L("B_c_plus"), L("f_y")),
            ChangeLabel("charge", L("f_y"), L("M_p")),
            ChangeLabel("plugged", L("F_xy", 1), L("T_bp", 1)),
            ChangeLabel("unplugged", L("F_xy", 0), L("T_bp", 0)),
            AddVertex("accelerate", frozenset({L("A_p")}), frozenset({"unplugged"}), frozenset({"charge"})),
            Specialize(
                _graph(
                    ["unplugged", "plugged", "accelerate", "charge"],
                    [("unplugged", "plugged"), ("plugged", "accelerate"), ("accelerate", "charge")],
                )
            ),
        )
    )


CHARGER_BUS_LABEL_TYPES: list[tuple[Label, str]] = [
    (L("C_sc", 0), "G_0"),
    (L("C_sc", 1), "G_1"),
    (L("B_c_plus"), "A_1"),
    (L("F_xy", 0), "T_0"),
    (L("F_xy", 1), "T_1"),
    (L("f_y"), "P_1"),
    (L("T_bp", 0), "H_0"),
    (L("T_bp", 1), "H_1"),
    (L("M_p"), "M_1"),
    (L("A_p"), "AP_1"),
]


# -- writing the data directory ------------------------------------------------


def write_all(out: Path = DATA_DIR) -> list[Path]:
    """Regenerate every shipped data file; returns the written paths."""
    from .io import dumps, label_to_dict, olog_to_dict, path_to_dict, trace_to_lines, wd_to_dict

    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    def put(name: str, text: str) -> None:
        p = out / name
        p.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
        written.append(p)

    put("transport_olog.json", dumps(olog_to_dict(transport_olog())))
    put("relations_olog.json", dumps(olog_to_dict(relations_olog())))
    put("charger_bus_olog.json", dumps(olog_to_dict(charger_bus_olog())))

    wds = {
        "enter_shop.json": (enter_shop(), None),
        "enter_shop_derivative.json": (enter_shop_derivative(), None),
        "buy_coffee.json": (buy_coffee(), None),
        "buy_coffee_derivative.json": (buy_coffee_derivative(), None),
        "pay_first.json": (pay_first(), None),
        "receive_first.json": (receive_first(), None),
        "cyclic.json": (cyclic(), "deliberately invalid: contains an oriented cycle"),
        "charger.json": (charger(), None),
        "bus.json": (bus(), None),
        "charger_steps.json": (charger_steps(), None),
        "bus_steps.json": (bus_steps(), None),
        "common_abstraction.json": (common_abstraction(), RECONSTRUCTED),
        "common_abstraction_steps.json": (common_abstraction_steps(), RECONSTRUCTED),
    }
    for name, w in four_vertex_shapes().items():
        wds[f"shape_{name}.json"] = (w, None)
    for name, (w, note) in wds.items():
        put(name, dumps(wd_to_dict(w, note)))

    put("charger_to_bus.path.json", dumps(path_to_dict(charger_to_bus_path(), RECONSTRUCTED)))
    put("charger_to_bus_steps.path.json", dumps(path_to_dict(charger_to_bus_steps_path(), RECONSTRUCTED)))

    put("unit_costs.json", dumps({"costs": {"vertex": 1, "label": 1, "change": 1, "arrow": 1, "graph": 1}}))
    put(
        "olog_costs.json",
        dumps(
            {
                "costs": {"vertex": 1, "label": 1, "change": 1, "arrow": 1, "graph": 1},
                "label_change": {
                    "rule": "olog",
                    "olog": "charger_bus_olog.json",
                    "label_types": [{"label": label_to_dict(l), "type": t} for l, t in CHARGER_BUS_LABEL_TYPES],
                    "default_edge_cost": 1,
                },
            }
        ),
    )
    put("coffee_trace.jsonl", "\n".join(trace_to_lines(coffee_trace())))
    put("coffee_trace_swapped.jsonl", "\n".join(trace_to_lines(coffee_trace(pay_at=40, receive_at=30))))
    return written
