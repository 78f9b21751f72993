"""Sensing functions, labels and wiring diagrams (WD0-WD3, nonempty state vectors)."""

from __future__ import annotations

import numbers
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Iterable, Literal, Mapping

from .errors import (
    CycleError,
    EntityNotInSetError,
    NonNumericCodomainError,
    UnknownRelationError,
)
from .graph import DirectedGraph, find_cycle, skeleton_violation

BULLET = "•"

SensorKind = Literal["base", "derivative", "relation", "abstract"]


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    def __contains__(self, value: object) -> bool:
        return _is_number(value) and self.lo <= value <= self.hi  # type: ignore[operator]


def _is_number(x: object) -> bool:
    return isinstance(x, numbers.Real) and not isinstance(x, bool)


Codomain = frozenset | Interval


@dataclass(frozen=True)
class SensingFunctionDecl:
    """Declaration of a sensing function ``F : D_F -> C_F``.

    ``domain`` is a finite set of admissible arguments (``{"•"}`` for
    sensors with a single implicit subject). ``codomain`` is a finite set
    or an :class:`Interval`. Derivative sensors name their ``base`` and a
    positive ``window``; relation sensors record ``relation`` and the
    ordered ``entities`` pair.
    """

    id: str
    kind: SensorKind = "base"
    domain: frozenset = frozenset({BULLET})
    codomain: Codomain = frozenset({0, 1})
    base: str | None = None
    window: float | None = None
    relation: str | None = None
    entities: tuple[Any, Any] | None = None
    olog_type: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("base", "derivative", "relation", "abstract"):
            raise ValueError(f"unknown sensor kind {self.kind!r}")
        if self.kind == "derivative":
            if self.base is None:
                raise ValueError(f"derivative sensor {self.id!r} needs a base sensor")
            if self.window is None or not self.window > 0:
                raise ValueError(f"derivative sensor {self.id!r} needs a positive window")
        if self.kind == "relation" and self.codomain != frozenset({0, 1}):
            raise ValueError(f"relation sensor {self.id!r} must have codomain {{0, 1}}")

    def admits_arg(self, arg: object) -> bool:
        return arg in self.domain

    def admits_value(self, value: object) -> bool:
        return value in self.codomain


@dataclass(frozen=True)
class Relation:
    """A named binary relation between two finite entity sets."""

    id: str
    left: frozenset
    right: frozenset


def derive_sensor(
    base: SensingFunctionDecl, window: float, *, id: str | None = None, olog_type: str | None = None
) -> SensingFunctionDecl:
    """Windowed difference ``dF = F(now) - F(now - window)``."""
    if not window > 0:
        raise ValueError("window must be positive")
    cod = base.codomain
    if isinstance(cod, Interval):
        span = cod.hi - cod.lo
        new_cod: Codomain = Interval(-span, span)
    else:
        if not all(_is_number(v) for v in cod):
            raise NonNumericCodomainError(f"sensor {base.id!r} has non-numeric codomain")
        new_cod = frozenset(a - b for a in cod for b in cod)
    return SensingFunctionDecl(
        id=id or f"d{base.id}",
        kind="derivative",
        domain=base.domain,
        codomain=new_cod,
        base=base.id,
        window=window,
        olog_type=olog_type,
    )


def relation_sensor(
    relations: Mapping[str, Relation], relation_id: str, a: Any, b: Any, *, id: str | None = None
) -> SensingFunctionDecl:
    """Indicator ``F_{(a,b),R} : {•} -> {0,1}`` for one fixed pair of entities."""
    try:
        rel = relations[relation_id]
    except KeyError:
        raise UnknownRelationError(relation_id) from None
    if a not in rel.left:
        raise EntityNotInSetError(f"{a!r} is not in the left entity set of {relation_id!r}")
    if b not in rel.right:
        raise EntityNotInSetError(f"{b!r} is not in the right entity set of {relation_id!r}")
    return SensingFunctionDecl(
        id=id or f"{relation_id}[{a},{b}]",
        kind="relation",
        codomain=frozenset({0, 1}),
        relation=relation_id,
        entities=(a, b),
    )


@dataclass(frozen=True, order=False)
class Label:
    """A triple ``(F, x, y)``: sensor id, argument, value."""

    sensor: str
    arg: Any = BULLET
    value: Any = 1

    def sort_key(self) -> tuple[str, str, str]:
        return (self.sensor, repr(self.arg), repr(self.value))

    def __lt__(self, other: "Label") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return f"({self.sensor},{self.arg},{self.value})"


StateVector = frozenset  # frozenset[Label]


class WiringDiagram:
    """A quintuple ``(V, A, s, t, L_V)`` plus the sensor declarations its labels use.

    Construction only checks that state vectors sit on graph vertices;
    the axioms are checked by :func:`validate_wd` so that invalid diagrams
    can still be loaded and reported on.
    """

    __slots__ = ("graph", "state_vectors", "sensors")

    def __init__(
        self,
        graph: DirectedGraph,
        state_vectors: Mapping[str, Iterable[Label]] | None = None,
        sensors: Mapping[str, SensingFunctionDecl] | None = None,
    ):
        sv = {v: frozenset() for v in graph.vertices}
        for v, labels in (state_vectors or {}).items():
            if v not in sv:
                raise ValueError(f"state vector given for unknown vertex {v!r}")
            sv[v] = frozenset(labels)
        self.graph = graph
        self.state_vectors: Mapping[str, frozenset[Label]] = MappingProxyType(sv)
        self.sensors: Mapping[str, SensingFunctionDecl] = MappingProxyType(dict(sensors or {}))

    @classmethod
    def build(
        cls,
        vectors: Mapping[str, Iterable[Label]],
        edges: Iterable[tuple[str, str]] = (),
        sensors: Iterable[SensingFunctionDecl] | Mapping[str, SensingFunctionDecl] = (),
    ) -> "WiringDiagram":
        if not isinstance(sensors, Mapping):
            sensors = {s.id: s for s in sensors}
        return cls(DirectedGraph.from_edges(vectors, edges), vectors, sensors)

    @property
    def vertices(self) -> frozenset[str]:
        return self.graph.vertices

    def labels(self) -> frozenset[Label]:
        out: set[Label] = set()
        for ls in self.state_vectors.values():
            out |= ls
        return frozenset(out)

    def replace(self, graph: DirectedGraph | None = None, state_vectors: Mapping[str, Iterable[Label]] | None = None) -> "WiringDiagram":
        g = self.graph if graph is None else graph
        sv = self.state_vectors if state_vectors is None else state_vectors
        return WiringDiagram(g, sv, self.sensors)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WiringDiagram):
            return NotImplemented
        return self.graph == other.graph and dict(self.state_vectors) == dict(other.state_vectors)

    def __hash__(self) -> int:
        return hash((self.graph, frozenset(self.state_vectors.items())))

    def __repr__(self) -> str:
        vs = ", ".join(f"{v}: {{{', '.join(map(str, sorted(ls)))}}}" for v, ls in sorted(self.state_vectors.items()))
        es = ", ".join(f"{s}->{t}" for s, t in self.graph.edge_pairs())
        return f"WiringDiagram({vs}; {es})"


@dataclass(frozen=True)
class Failure:
    axiom: str
    message: str
    witness: Any = None


@dataclass
class ValidationReport:
    failures: list[Failure] = field(default_factory=list)
    checked: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.failures

    def failed_axioms(self) -> set[str]:
        return {f.axiom for f in self.failures}

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "checked": list(self.checked),
            "failures": [
                {"axiom": f.axiom, "message": f.message, "witness": _jsonable(f.witness)} for f in self.failures
            ],
        }


def _jsonable(x: Any) -> Any:
    if isinstance(x, (tuple, list, set, frozenset)):
        items = sorted(x, key=repr) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(i) for i in items]
    if isinstance(x, Label):
        return {"sensor": x.sensor, "arg": x.arg, "value": x.value}
    return x


def label_problem(label: Label, sensors: Mapping[str, SensingFunctionDecl]) -> str | None:
    decl = sensors.get(label.sensor)
    if decl is None:
        return f"label {label} uses undeclared sensor {label.sensor!r}"
    if not decl.admits_arg(label.arg):
        return f"label {label}: argument {label.arg!r} outside the domain of {decl.id!r}"
    if not decl.admits_value(label.value):
        return f"label {label}: value {label.value!r} outside the codomain of {decl.id!r}"
    return None


def validate_wd(
    w: WiringDiagram,
    require_skeleton: bool = True,
    require_nonempty: bool = True,
    sensors: Mapping[str, SensingFunctionDecl] | None = None,
) -> ValidationReport:
    """Check WD0-WD2 and optionally WD3 and membership in ``W_s^•``.

    Never raises for axiom failures; each one is a report entry with a
    witness. ``sensors`` overrides the diagram's own declarations.
    """
    registry = w.sensors if sensors is None else sensors
    report = ValidationReport(checked=("WD0", "WD1", "WD2") + (("WD3",) if require_skeleton else ()) + (("nonempty",) if require_nonempty else ()))
    g = w.graph
    for a, (s, t) in sorted(g.arrows.items()):
        if s not in g.vertices or t not in g.vertices:  # pragma: no cover - DirectedGraph forbids this
            report.failures.append(Failure("WD0", f"arrow {a!r} has a dangling endpoint", a))
    for v in sorted(g.vertices):
        for label in sorted(w.state_vectors[v]):
            problem = label_problem(label, registry)
            if problem:
                report.failures.append(Failure("WD1", f"vertex {v!r}: {problem}", (v, label)))
    for sid, decl in sorted(registry.items()):
        if decl.kind == "derivative" and decl.base not in registry:
            report.failures.append(Failure("WD1", f"derivative sensor {sid!r} refers to undeclared base {decl.base!r}", sid))
    cycle = find_cycle(g)
    if cycle is not None:
        kind = "a loop" if len(cycle) == 2 else "an oriented cycle"
        report.failures.append(Failure("WD2", f"graph has {kind}: {' -> '.join(cycle)}", cycle))
    elif require_skeleton:
        bad = skeleton_violation(g)
        if bad is not None:
            what, (s, t) = bad
            msg = f"parallel arrows {s} -> {t}" if what == "parallel" else f"arrow {s} -> {t} short-cuts a longer path"
            report.failures.append(Failure("WD3", msg, (s, t)))
    if require_skeleton and cycle is not None:
        report.failures.append(Failure("WD3", "skeleton check needs an acyclic graph", None))
    if require_nonempty:
        if not g.vertices:
            report.failures.append(Failure("nonempty", "diagram has no vertices", None))
        for v in sorted(g.vertices):
            if not w.state_vectors[v]:
                report.failures.append(Failure("nonempty", f"vertex {v!r} has an empty state vector", v))
    return report


def check_wd(w: WiringDiagram, **kwargs: Any) -> WiringDiagram:
    """Raise on the first validation failure, else return ``w`` unchanged."""
    report = validate_wd(w, **kwargs)
    for f in report.failures:
        if f.axiom == "WD2":
            raise CycleError(f.witness)
        raise ValueError(f"{f.axiom}: {f.message}")
    return w
