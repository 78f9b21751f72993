"""Elementary edit operations on skeleton wiring diagrams with nonempty state vectors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import ClassVar, Iterable, Mapping, Sequence, Union

from .errors import InvalidOpError, NonpositiveCostError, PathEndpointMismatchError
from .graph import DirectedGraph, find_cycle, is_skeleton, restrict, transitive_closure
from .iso import wd_isomorphic
from .olog import UNIT, EdgeCost, Olog, olog_distance
from .wiring import Label, WiringDiagram


@dataclass(frozen=True)
class AddVertex:
    """(i) New vertex with a nonempty state vector.

    ``preds``/``succs`` attach arrows ``p -> vertex`` and ``vertex -> s``;
    this is how the inverse of a vertex deletion restores the wires it
    removed.
    """

    vertex: str
    labels: frozenset[Label]
    preds: frozenset[str] = frozenset()
    succs: frozenset[str] = frozenset()
    kind: ClassVar[str] = "i"


@dataclass(frozen=True)
class DeleteVertex:
    """(ii) Remove a vertex, its state vector and every arrow touching it."""

    vertex: str
    kind: ClassVar[str] = "ii"


@dataclass(frozen=True)
class AddLabel:
    vertex: str
    label: Label
    kind: ClassVar[str] = "iii"


@dataclass(frozen=True)
class DeleteLabel:
    vertex: str
    label: Label
    kind: ClassVar[str] = "iv"


@dataclass(frozen=True)
class ChangeLabel:
    vertex: str
    old: Label
    new: Label
    kind: ClassVar[str] = "v"


@dataclass(frozen=True)
class AddArrow:
    src: str
    dst: str
    kind: ClassVar[str] = "vi"


@dataclass(frozen=True)
class DeleteArrow:
    src: str
    dst: str
    kind: ClassVar[str] = "vii"


@dataclass(frozen=True)
class Generalize:
    """(viii) Swap in ``graph`` where ``current => graph`` is irreducible."""

    graph: DirectedGraph
    kind: ClassVar[str] = "viii"


@dataclass(frozen=True)
class Specialize:
    """(ix) Swap in ``graph`` where ``graph => current`` is irreducible."""

    graph: DirectedGraph
    kind: ClassVar[str] = "ix"


EditOp = Union[AddVertex, DeleteVertex, AddLabel, DeleteLabel, ChangeLabel, AddArrow, DeleteArrow, Generalize, Specialize]

KIND_NAMES = {
    "i": "add-vertex",
    "ii": "delete-vertex",
    "iii": "add-label",
    "iv": "delete-label",
    "v": "change-label",
    "vi": "add-arrow",
    "vii": "delete-arrow",
    "viii": "generalize-graph",
    "ix": "specialize-graph",
}
INVERSE_KIND = {"i": "ii", "ii": "i", "iii": "iv", "iv": "iii", "v": "v", "vi": "vii", "vii": "vi", "viii": "ix", "ix": "viii"}
# an op and its inverse share a cost class, which keeps the distance symmetric
COST_CLASS = {
    "i": "vertex",
    "ii": "vertex",
    "iii": "label",
    "iv": "label",
    "v": "change",
    "vi": "arrow",
    "vii": "arrow",
    "viii": "graph",
    "ix": "graph",
}


def _need_vertex(w: WiringDiagram, v: str) -> None:
    if v not in w.vertices:
        raise InvalidOpError("unknown-vertex", repr(v))


def _check_graph(g: DirectedGraph) -> None:
    cycle = find_cycle(g)
    if cycle is not None:
        raise InvalidOpError("would-break-WD2", "cycle " + " -> ".join(cycle))
    if not is_skeleton(g):
        raise InvalidOpError("would-break-skeleton")


def _with_vector(w: WiringDiagram, v: str, labels: frozenset[Label]) -> WiringDiagram:
    sv = dict(w.state_vectors)
    sv[v] = labels
    return w.replace(state_vectors=sv)


def _replace_graph(w: WiringDiagram, g: DirectedGraph, generalize: bool) -> WiringDiagram:
    if g.vertices != w.vertices:
        raise InvalidOpError("vertex-set-mismatch")
    _check_graph(g)
    r_old = transitive_closure(w.graph).pairs
    r_new = transitive_closure(g).pairs
    small, big = (r_new, r_old) if generalize else (r_old, r_new)
    if not small <= big:
        raise InvalidOpError("wrong-direction", "no morphism in the required direction")
    if len(big - small) != 1:
        raise InvalidOpError("morphism-not-irreducible", f"orders differ in {len(big - small)} pairs")
    return w.replace(graph=g)


def apply_op(w: WiringDiagram, e: EditOp) -> WiringDiagram:
    """Apply one elementary edit; the result stays skeleton with nonempty vectors."""
    g = w.graph
    if isinstance(e, AddVertex):
        if e.vertex in w.vertices:
            raise InvalidOpError("duplicate-vertex", repr(e.vertex))
        if not e.labels:
            raise InvalidOpError("would-empty-state-vector", f"new vertex {e.vertex!r}")
        for u in e.preds | e.succs:
            _need_vertex(w, u)
        arrows = dict(g.arrows)
        for p in sorted(e.preds):
            arrows[f"{p}->{e.vertex}"] = (p, e.vertex)
        for s in sorted(e.succs):
            arrows[f"{e.vertex}->{s}"] = (e.vertex, s)
        ng = DirectedGraph(g.vertices | {e.vertex}, arrows)
        _check_graph(ng)
        sv = dict(w.state_vectors)
        sv[e.vertex] = frozenset(e.labels)
        return WiringDiagram(ng, sv, w.sensors)
    if isinstance(e, DeleteVertex):
        _need_vertex(w, e.vertex)
        if len(w.vertices) == 1:
            raise InvalidOpError("would-empty-diagram", "cannot delete the only vertex")
        ng = restrict(g, w.vertices - {e.vertex})
        sv = {v: ls for v, ls in w.state_vectors.items() if v != e.vertex}
        return WiringDiagram(ng, sv, w.sensors)
    if isinstance(e, AddLabel):
        _need_vertex(w, e.vertex)
        cur = w.state_vectors[e.vertex]
        if e.label in cur:
            raise InvalidOpError("duplicate-label", f"{e.label} already at {e.vertex!r}")
        return _with_vector(w, e.vertex, cur | {e.label})
    if isinstance(e, DeleteLabel):
        _need_vertex(w, e.vertex)
        cur = w.state_vectors[e.vertex]
        if e.label not in cur:
            raise InvalidOpError("unknown-label", f"{e.label} not at {e.vertex!r}")
        if len(cur) == 1:
            raise InvalidOpError("would-empty-state-vector", f"vertex {e.vertex!r}")
        return _with_vector(w, e.vertex, cur - {e.label})
    if isinstance(e, ChangeLabel):
        _need_vertex(w, e.vertex)
        cur = w.state_vectors[e.vertex]
        if e.old not in cur:
            raise InvalidOpError("unknown-label", f"{e.old} not at {e.vertex!r}")
        if e.new == e.old:
            raise InvalidOpError("same-label", str(e.old))
        if e.new in cur:
            raise InvalidOpError("duplicate-label", f"{e.new} already at {e.vertex!r}")
        return _with_vector(w, e.vertex, (cur - {e.old}) | {e.new})
    if isinstance(e, AddArrow):
        _need_vertex(w, e.src)
        _need_vertex(w, e.dst)
        if (e.src, e.dst) in g.edge_set():
            raise InvalidOpError("would-break-skeleton", f"arrow {e.src} -> {e.dst} already exists")
        arrows = dict(g.arrows)
        aid = f"{e.src}->{e.dst}"
        while aid in arrows:
            aid += "'"
        arrows[aid] = (e.src, e.dst)
        ng = DirectedGraph(g.vertices, arrows)
        _check_graph(ng)
        return w.replace(graph=ng)
    if isinstance(e, DeleteArrow):
        pair = (e.src, e.dst)
        if pair not in g.edge_set():
            raise InvalidOpError("unknown-arrow", f"{e.src} -> {e.dst}")
        return w.replace(graph=DirectedGraph(g.vertices, {a: p for a, p in g.arrows.items() if p != pair}))
    if isinstance(e, Generalize):
        return _replace_graph(w, e.graph, generalize=True)
    if isinstance(e, Specialize):
        return _replace_graph(w, e.graph, generalize=False)
    raise TypeError(f"not an edit operation: {e!r}")


def inverse_op(e: EditOp, context: WiringDiagram) -> EditOp:
    """The op undoing ``e`` when ``e`` is applied to ``context``."""
    apply_op(context, e)
    if isinstance(e, AddVertex):
        return DeleteVertex(e.vertex)
    if isinstance(e, DeleteVertex):
        g = context.graph
        preds = frozenset(s for s, t in g.arrows.values() if t == e.vertex)
        succs = frozenset(t for s, t in g.arrows.values() if s == e.vertex)
        return AddVertex(e.vertex, context.state_vectors[e.vertex], preds, succs)
    if isinstance(e, AddLabel):
        return DeleteLabel(e.vertex, e.label)
    if isinstance(e, DeleteLabel):
        return AddLabel(e.vertex, e.label)
    if isinstance(e, ChangeLabel):
        return ChangeLabel(e.vertex, e.new, e.old)
    if isinstance(e, AddArrow):
        return DeleteArrow(e.src, e.dst)
    if isinstance(e, DeleteArrow):
        return AddArrow(e.src, e.dst)
    if isinstance(e, Generalize):
        return Specialize(context.graph)
    if isinstance(e, Specialize):
        return Generalize(context.graph)
    raise TypeError(f"not an edit operation: {e!r}")


class OlogLabelCost:
    """Label-change cost ``d_O(i(L), i(L'))`` read off an olog.

    ``label_types`` is the injection ``i`` from labels to olog types.
    Labels outside the mapping fall back to the flat change cost.
    """

    def __init__(self, olog: Olog, label_types: Mapping[Label, str], edge_cost: EdgeCost = UNIT):
        seen: dict[str, Label] = {}
        for label, t in label_types.items():
            olog.type(t)
            if t in seen:
                raise ValueError(f"labels {seen[t]} and {label} both map to type {t!r}; the map must be injective")
            seen[t] = label
        self.olog = olog
        self.label_types = dict(label_types)
        self.edge_cost = edge_cost
        self._cache: dict[tuple[str, str], float] = {}

    def __call__(self, old: Label, new: Label) -> float | None:
        a, b = self.label_types.get(old), self.label_types.get(new)
        if a is None or b is None:
            return None
        key = (a, b) if a <= b else (b, a)
        if key not in self._cache:
            self._cache[key] = olog_distance(self.olog, self.edge_cost, *key)
        return self._cache[key]


@dataclass(frozen=True)
class CostFunction:
    """Positive cost per op class; ops and their inverses always cost the same.

    ``label_costs``, when set, prices change-label ops (and may return
    ``math.inf`` for labels in different olog components, which forbids
    the change).
    """

    vertex: float = 1.0
    label: float = 1.0
    change: float = 1.0
    arrow: float = 1.0
    graph: float = 1.0
    label_costs: OlogLabelCost | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        for name in ("vertex", "label", "change", "arrow", "graph"):
            c = getattr(self, name)
            if not (c > 0) or math.isinf(c):
                raise NonpositiveCostError(f"{name} cost must be a positive real, got {c!r}")

    def class_cost(self, cost_class: str) -> float:
        return getattr(self, cost_class)

    def change_cost(self, old: Label, new: Label) -> float:
        if self.label_costs is not None:
            c = self.label_costs(old, new)
            if c is not None:
                return c
        return self.change

    def cost(self, e: EditOp) -> float:
        if isinstance(e, ChangeLabel):
            return self.change_cost(e.old, e.new)
        return self.class_cost(COST_CLASS[e.kind])


UNIT_COSTS = CostFunction()


@dataclass(frozen=True)
class EditPath:
    ops: tuple[EditOp, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "ops", tuple(self.ops))
        if not self.ops:
            raise ValueError("an edit path has at least one operation")

    def __len__(self) -> int:
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def kinds(self) -> list[str]:
        return [e.kind for e in self.ops]


def replay_path(w: WiringDiagram, p: EditPath | Sequence[EditOp], c: CostFunction = UNIT_COSTS) -> tuple[WiringDiagram, float]:
    """Fold :func:`apply_op` over ``p``; returns the end diagram and the summed cost."""
    total = 0.0
    for i, e in enumerate(p):
        try:
            w = apply_op(w, e)
        except InvalidOpError as err:
            raise err.at(i) from None
        cost = c.cost(e)
        if math.isinf(cost):
            raise InvalidOpError("no-finite-cost", f"{e!r} has infinite cost", i)
        total += cost
    return w, total


def replay_steps(w: WiringDiagram, p: Iterable[EditOp], c: CostFunction = UNIT_COSTS) -> list[tuple[EditOp, float, WiringDiagram]]:
    """Every intermediate diagram along ``p`` with the cost of the op that produced it."""
    out = []
    for i, e in enumerate(p):
        try:
            w = apply_op(w, e)
        except InvalidOpError as err:
            raise err.at(i) from None
        out.append((e, c.cost(e), w))
    return out


def invert_path(w: WiringDiagram, p: EditPath | Sequence[EditOp]) -> EditPath:
    """Path from the end of ``p`` (started at ``w``) back to ``w``."""
    inverses = []
    for i, e in enumerate(p):
        try:
            inverses.append(inverse_op(e, w))
            w = apply_op(w, e)
        except InvalidOpError as err:
            raise err.at(i) from None
    return EditPath(tuple(reversed(inverses)))


def wd_distance_upper(w: WiringDiagram, w2: WiringDiagram, p: EditPath | Sequence[EditOp], c: CostFunction = UNIT_COSTS) -> float:
    """Cost of a witness path from ``w`` to ``w2``: an upper bound on their distance."""
    end, total = replay_path(w, p, c)
    if not wd_isomorphic(end, w2):
        raise PathEndpointMismatchError("edit path does not end at a diagram isomorphic to the target")
    return total
