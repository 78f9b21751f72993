"""Finding occurrences of a wiring diagram in a time-indexed sensor trace."""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping

from .errors import SchemaError, UnknownSensorError
from .graph import validate_wd_graph
from .wiring import Label, SensingFunctionDecl, WiringDiagram


class _Undefined:
    __slots__ = ()

    def __repr__(self) -> str:
        return "UNDEFINED"

    def __bool__(self) -> bool:
        return False


UNDEFINED: Any = _Undefined()


@dataclass(frozen=True)
class Sample:
    t: float
    sensor: str
    arg: Any
    value: Any


@dataclass
class Trace:
    """Time-sorted sensor readings, read as step functions."""

    samples: tuple[Sample, ...]
    time_unit: str = "s"
    _series: dict[tuple[str, Any], tuple[list[float], list[Any]]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        self.samples = tuple(sorted(self.samples, key=lambda s: s.t))
        series: dict[tuple[str, Any], tuple[list[float], list[Any]]] = {}
        for s in self.samples:
            ts, vs = series.setdefault((s.sensor, s.arg), ([], []))
            if ts and ts[-1] == s.t:
                if vs[-1] != s.value:
                    raise SchemaError(f"two values for ({s.sensor}, {s.arg}) at t={s.t}")
                continue
            ts.append(s.t)
            vs.append(s.value)
        self._series = series

    @classmethod
    def of(cls, rows: Iterable[tuple[float, str, Any, Any]], time_unit: str = "s") -> "Trace":
        return cls(tuple(Sample(*r) for r in rows), time_unit)

    @property
    def start(self) -> float | None:
        return self.samples[0].t if self.samples else None

    def timestamps(self) -> list[float]:
        return sorted({s.t for s in self.samples})

    def sensors(self) -> frozenset[str]:
        return frozenset(k[0] for k in self._series)

    def value_at(self, sensor: str, arg: Any, t: float) -> Any:
        ser = self._series.get((sensor, arg))
        if ser is None:
            return UNDEFINED
        ts, vs = ser
        i = bisect.bisect_right(ts, t)
        return vs[i - 1] if i else UNDEFINED


def eval_sensor(
    tr: Trace,
    decl: SensingFunctionDecl,
    arg: Any,
    t: float,
) -> Any:
    """``F(arg)`` at time ``t``, or :data:`UNDEFINED`.

    Base and relation sensors take the last reading at or before ``t``.
    A derivative is ``F(t) - F(t - window)`` and is undefined when
    ``t - window`` falls before the first sample of the trace.
    """
    if decl.kind in ("base", "relation"):
        return tr.value_at(decl.id, arg, t)
    if decl.kind == "derivative":
        start = tr.start
        if start is None or t - decl.window < start:
            return UNDEFINED
        base_id = decl.base
        now = tr.value_at(base_id, arg, t)
        before = tr.value_at(base_id, arg, t - decl.window)
        if now is UNDEFINED or before is UNDEFINED:
            return UNDEFINED
        return now - before
    raise ValueError(f"sensor {decl.id!r} is abstract and has no readings")


def _check_sensor(tr: Trace, label: Label, sensors: Mapping[str, SensingFunctionDecl]) -> SensingFunctionDecl:
    decl = sensors.get(label.sensor)
    if decl is None:
        raise UnknownSensorError(f"label {label} uses undeclared sensor {label.sensor!r}")
    read = decl.base if decl.kind == "derivative" else decl.id
    if read not in tr.sensors():
        raise UnknownSensorError(f"trace has no readings for sensor {read!r}")
    return decl


def state_vector_holds(
    tr: Trace, labels: Iterable[Label], t: float, sensors: Mapping[str, SensingFunctionDecl]
) -> bool:
    for label in labels:
        decl = _check_sensor(tr, label, sensors)
        v = eval_sensor(tr, decl, label.arg, t)
        if v is UNDEFINED or v != label.value:
            return False
    return True


@dataclass(frozen=True)
class Assignment:
    times: Mapping[str, float]

    def as_dict(self) -> dict[str, float]:
        return dict(sorted(self.times.items()))


def candidate_times(tr: Trace, sensors: Mapping[str, SensingFunctionDecl]) -> list[float]:
    """Every moment at which some sensor value (or windowed difference) can change."""
    base = tr.timestamps()
    out = set(base)
    for decl in sensors.values():
        if decl.kind == "derivative":
            out.update(t + decl.window for t in base)
    return sorted(out)


def match_wd(
    tr: Trace,
    w: WiringDiagram,
    limit: int | None = None,
    sensors: Mapping[str, SensingFunctionDecl] | None = None,
) -> list[Assignment]:
    """All vertex-to-time maps where each state vector holds and arrows strictly increase.

    Vertices are placed in topological order; each vertex only considers
    candidate times after the latest time of its predecessors.
    """
    registry = w.sensors if sensors is None else sensors
    for v in w.vertices:
        for label in w.state_vectors[v]:
            if label.sensor not in registry:
                raise UnknownSensorError(f"label {label} uses undeclared sensor {label.sensor!r}")
    if not tr.samples:
        return []
    for v in w.vertices:
        for label in w.state_vectors[v]:
            _check_sensor(tr, label, registry)

    order = validate_wd_graph(w.graph).order()
    times = candidate_times(tr, registry)
    preds = w.graph.predecessors()
    holding = {v: [t for t in times if state_vector_holds(tr, w.state_vectors[v], t, registry)] for v in order}

    out: list[Assignment] = []
    current: dict[str, float] = {}

    def place(i: int) -> bool:
        if i == len(order):
            out.append(Assignment(dict(current)))
            return limit is not None and len(out) >= limit
        v = order[i]
        ts = holding[v]
        earliest = max((current[p] for p in preds[v]), default=None)
        start = 0 if earliest is None else bisect.bisect_right(ts, earliest)
        for t in ts[start:]:
            current[v] = t
            if place(i + 1):
                return True
        current.pop(v, None)
        return False

    if limit is None or limit > 0:
        place(0)
    return out
