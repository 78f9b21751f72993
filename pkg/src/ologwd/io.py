"""JSON file formats and DOT export.

Every loader raises :class:`SchemaError` on malformed input. Dumpers
produce sorted, deterministic JSON; ``math.inf`` is written as ``"inf"``.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Iterable, Mapping

from .edits import (
    AddArrow,
    AddLabel,
    AddVertex,
    ChangeLabel,
    CostFunction,
    DeleteArrow,
    DeleteLabel,
    DeleteVertex,
    EditOp,
    EditPath,
    Generalize,
    OlogLabelCost,
    Specialize,
)
from .errors import OlogWdError, SchemaError
from .graph import DirectedGraph
from .olog import Aspect, EdgeCost, Olog, OlogType, PullbackSquare
from .trace import Sample, Trace
from .wiring import BULLET, Interval, Label, Relation, SensingFunctionDecl, WiringDiagram

ROMAN_CLASS = {
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


def _need(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, Mapping) or key not in obj:
        raise SchemaError(f"{where}: missing field {key!r}")
    return obj[key]


def _list(obj: Any, where: str) -> list:
    if not isinstance(obj, list):
        raise SchemaError(f"{where}: expected a list")
    return obj


def _str(obj: Any, where: str) -> str:
    if not isinstance(obj, str):
        raise SchemaError(f"{where}: expected a string, got {obj!r}")
    return obj


def read_json(path: str | Path) -> Any:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise SchemaError(f"{path}: invalid JSON ({e.msg} at line {e.lineno})") from None


def _jsonify(x: Any) -> Any:
    if isinstance(x, float) and math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if isinstance(x, float) and x.is_integer():
        return int(x)
    if isinstance(x, Mapping):
        return {str(k): _jsonify(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonify(v) for v in x]
    return x


def dumps(obj: Any) -> str:
    return json.dumps(_jsonify(obj), sort_keys=True, indent=2, ensure_ascii=False)


# -- ologs ---------------------------------------------------------------


def olog_from_dict(d: Any) -> Olog:
    """Parse an olog; structural problems (dangling aspects, open squares) raise domain errors."""
    where = "olog"
    types = tuple(
        OlogType(_str(_need(t, "id", where), where), str(t.get("text", t["id"]))) for t in _list(_need(d, "types", where), where)
    )
    aspects = tuple(
        Aspect(
            _str(_need(a, "id", where), where),
            str(a.get("text", "")),
            _str(_need(a, "src", where), where),
            _str(_need(a, "dst", where), where),
        )
        for a in _list(d.get("aspects", []), where)
    )
    squares = tuple(
        PullbackSquare(*(_str(_need(p, k, where), where) for k in ("apex", "p1", "p2", "f", "g")))
        for p in _list(d.get("pullbacks", []), where)
    )
    return Olog(types, aspects, squares)


def olog_to_dict(o: Olog) -> dict:
    return {
        "types": [{"id": t.id, "text": t.text} for t in o.types],
        "aspects": [{"id": a.id, "text": a.text, "src": a.src, "dst": a.dst} for a in o.aspects],
        "pullbacks": [{"apex": p.apex, "p1": p.p1, "p2": p.p2, "f": p.f, "g": p.g} for p in o.pullbacks],
    }


def load_olog(path: str | Path) -> Olog:
    return olog_from_dict(read_json(path))


# -- sensors and wiring diagrams ------------------------------------------


def _codomain_from(d: Any, where: str):
    if d is None:
        return frozenset({0, 1})
    if isinstance(d, Mapping) and "values" in d:
        return frozenset(_list(d["values"], where))
    if isinstance(d, Mapping) and "interval" in d:
        lo, hi = _list(d["interval"], where)
        return Interval(lo, hi)
    raise SchemaError(f"{where}: codomain needs 'values' or 'interval'")


def _codomain_to(c) -> dict:
    if isinstance(c, Interval):
        return {"interval": [c.lo, c.hi]}
    return {"values": sorted(c, key=repr)}


def sensor_from_dict(d: Any) -> SensingFunctionDecl:
    sid = _str(_need(d, "id", "sensor"), "sensor")
    where = f"sensor {sid!r}"
    entities = d.get("entities")
    try:
        return SensingFunctionDecl(
            id=sid,
            kind=d.get("kind", "base"),
            domain=frozenset(d.get("domain", [BULLET])),
            codomain=_codomain_from(d.get("codomain"), where),
            base=d.get("base"),
            window=d.get("window"),
            relation=d.get("relation"),
            entities=tuple(entities) if entities is not None else None,
            olog_type=d.get("olog_type"),
        )
    except (ValueError, TypeError) as e:
        raise SchemaError(f"{where}: {e}") from None


def sensor_to_dict(s: SensingFunctionDecl) -> dict:
    out: dict[str, Any] = {"id": s.id, "kind": s.kind, "domain": sorted(s.domain, key=repr), "codomain": _codomain_to(s.codomain)}
    for k in ("base", "window", "relation", "olog_type"):
        v = getattr(s, k)
        if v is not None:
            out[k] = v
    if s.entities is not None:
        out["entities"] = list(s.entities)
    return out


def label_from_dict(d: Any) -> Label:
    return Label(_str(_need(d, "sensor", "label"), "label"), d.get("arg", BULLET), d.get("value", 1))


def label_to_dict(l: Label) -> dict:
    return {"sensor": l.sensor, "arg": l.arg, "value": l.value}


def relations_from_list(items: Iterable[Any]) -> dict[str, Relation]:
    out = {}
    for r in items:
        rid = _str(_need(r, "id", "relation"), "relation")
        out[rid] = Relation(rid, frozenset(r.get("left", [])), frozenset(r.get("right", [])))
    return out


def wd_from_dict(d: Any) -> WiringDiagram:
    where = "wiring diagram"
    sensors: dict[str, SensingFunctionDecl] = {}
    for s in _list(d.get("sensors", []), where) if isinstance(d, Mapping) else []:
        decl = sensor_from_dict(s)
        if decl.id in sensors:
            raise SchemaError(f"{where}: duplicate sensor id {decl.id!r}")
        sensors[decl.id] = decl
    vectors: dict[str, list[Label]] = {}
    for v in _list(_need(d, "vertices", where), where):
        vid = _str(_need(v, "id", where), where)
        if vid in vectors:
            raise SchemaError(f"{where}: duplicate vertex id {vid!r}")
        vectors[vid] = [label_from_dict(l) for l in _list(v.get("labels", []), where)]
    arrows: dict[str, tuple[str, str]] = {}
    for k, a in enumerate(_list(d.get("arrows", []), where)):
        aid = str(a.get("id", f"a{k}")) if isinstance(a, Mapping) else None
        if aid is None:
            raise SchemaError(f"{where}: arrow must be an object")
        if aid in arrows:
            raise SchemaError(f"{where}: duplicate arrow id {aid!r}")
        src, dst = _str(_need(a, "src", where), where), _str(_need(a, "dst", where), where)
        for end in (src, dst):
            if end not in vectors:
                raise SchemaError(f"{where}: arrow {aid!r} refers to unknown vertex {end!r}")
        arrows[aid] = (src, dst)
    return WiringDiagram(DirectedGraph(vectors, arrows), vectors, sensors)


def wd_to_dict(w: WiringDiagram, note: str | None = None) -> dict:
    out: dict[str, Any] = {}
    if note:
        out["note"] = note
    out["sensors"] = [sensor_to_dict(s) for _, s in sorted(w.sensors.items())]
    out["vertices"] = [{"id": v, "labels": [label_to_dict(l) for l in sorted(w.state_vectors[v])]} for v in sorted(w.vertices)]
    out["arrows"] = [{"id": a, "src": s, "dst": t} for a, (s, t) in sorted(w.graph.arrows.items())]
    return out


def load_wd(path: str | Path) -> WiringDiagram:
    return wd_from_dict(read_json(path))


# -- traces --------------------------------------------------------------


def trace_from_lines(lines: Iterable[str], source: str = "trace") -> Trace:
    samples = []
    unit = "s"
    for n, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            d = json.loads(line)
        except json.JSONDecodeError as e:
            raise SchemaError(f"{source}:{n}: invalid JSON ({e.msg})") from None
        if isinstance(d, Mapping) and "time_unit" in d and "t" not in d:
            unit = str(d["time_unit"])
            continue
        where = f"{source}:{n}"
        t = _need(d, "t", where)
        if not isinstance(t, (int, float)) or isinstance(t, bool):
            raise SchemaError(f"{where}: timestamp must be a number")
        samples.append(Sample(t, _str(_need(d, "sensor", where), where), d.get("arg", BULLET), _need(d, "value", where)))
    return Trace(tuple(samples), unit)


def load_trace(path: str | Path) -> Trace:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise SchemaError(f"cannot read {path}: {e.strerror}") from None
    return trace_from_lines(text.splitlines(), str(path))


def trace_to_lines(tr: Trace) -> list[str]:
    out = [json.dumps({"time_unit": tr.time_unit})]
    for s in tr.samples:
        out.append(json.dumps({"t": s.t, "sensor": s.sensor, "arg": s.arg, "value": s.value}, ensure_ascii=False))
    return out


# -- cost configs --------------------------------------------------------


def costs_from_dict(d: Any, base_dir: str | Path = ".") -> CostFunction:
    where = "cost config"
    raw = d.get("costs", {}) if isinstance(d, Mapping) else None
    if not isinstance(raw, Mapping):
        raise SchemaError(f"{where}: 'costs' must be an object")
    values: dict[str, float] = {}
    for key, c in raw.items():
        cls = ROMAN_CLASS.get(key, key)
        if cls not in ("vertex", "label", "change", "arrow", "graph"):
            raise SchemaError(f"{where}: unknown cost key {key!r}")
        if not isinstance(c, (int, float)) or isinstance(c, bool):
            raise SchemaError(f"{where}: cost {key!r} must be a number")
        if cls in values and values[cls] != c:
            raise SchemaError(f"{where}: op {key!r} and its inverse must cost the same")
        values[cls] = float(c)
    label_costs = None
    lc = d.get("label_change")
    if lc is not None:
        if not isinstance(lc, Mapping):
            raise SchemaError(f"{where}: 'label_change' must be an object")
        rule = lc.get("rule", "flat")
        if rule == "olog":
            olog = load_olog(Path(base_dir) / _str(_need(lc, "olog", where), where))
            mapping = {label_from_dict(_need(e, "label", where)): _str(_need(e, "type", where), where) for e in _list(lc.get("label_types", []), where)}
            edge = EdgeCost(dict(lc.get("edge_costs", {})), lc.get("default_edge_cost", 1.0))
            try:
                label_costs = OlogLabelCost(olog, mapping, edge)
            except (OlogWdError, ValueError) as e:
                raise SchemaError(f"{where}: {e}") from None
        elif rule != "flat":
            raise SchemaError(f"{where}: unknown label_change rule {rule!r}")
    try:
        return CostFunction(**values, label_costs=label_costs)
    except OlogWdError as e:
        raise SchemaError(f"{where}: {e}") from None


def load_costs(path: str | Path) -> CostFunction:
    return costs_from_dict(read_json(path), Path(path).parent)


# -- edit paths ----------------------------------------------------------


def _labels(items: Any, where: str) -> frozenset[Label]:
    return frozenset(label_from_dict(l) for l in _list(items, where))


def op_from_dict(d: Any) -> EditOp:
    kind = _need(d, "kind", "edit op")
    where = f"edit op {kind!r}"
    v = lambda: _str(_need(d, "vertex", where), where)  # noqa: E731
    if kind == "i":
        return AddVertex(v(), _labels(_need(d, "labels", where), where), frozenset(d.get("in", [])), frozenset(d.get("out", [])))
    if kind == "ii":
        return DeleteVertex(v())
    if kind == "iii":
        return AddLabel(v(), label_from_dict(_need(d, "label", where)))
    if kind == "iv":
        return DeleteLabel(v(), label_from_dict(_need(d, "label", where)))
    if kind == "v":
        return ChangeLabel(v(), label_from_dict(_need(d, "old", where)), label_from_dict(_need(d, "new", where)))
    if kind in ("vi", "vii"):
        src, dst = _str(_need(d, "src", where), where), _str(_need(d, "dst", where), where)
        return AddArrow(src, dst) if kind == "vi" else DeleteArrow(src, dst)
    if kind in ("viii", "ix"):
        verts = [_str(x, where) for x in _list(_need(d, "vertices", where), where)]
        edges = [tuple(e) for e in _list(_need(d, "arrows", where), where)]
        if any(len(e) != 2 for e in edges):
            raise SchemaError(f"{where}: arrows must be [src, dst] pairs")
        try:
            g = DirectedGraph.from_edges(verts, edges)
        except (OlogWdError, ValueError) as e:
            raise SchemaError(f"{where}: {e}") from None
        return Generalize(g) if kind == "viii" else Specialize(g)
    raise SchemaError(f"unknown edit op kind {kind!r}")


def op_to_dict(e: EditOp) -> dict:
    out: dict[str, Any] = {"kind": e.kind}
    if isinstance(e, AddVertex):
        out.update(vertex=e.vertex, labels=[label_to_dict(l) for l in sorted(e.labels)], **{"in": sorted(e.preds), "out": sorted(e.succs)})
    elif isinstance(e, DeleteVertex):
        out["vertex"] = e.vertex
    elif isinstance(e, (AddLabel, DeleteLabel)):
        out.update(vertex=e.vertex, label=label_to_dict(e.label))
    elif isinstance(e, ChangeLabel):
        out.update(vertex=e.vertex, old=label_to_dict(e.old), new=label_to_dict(e.new))
    elif isinstance(e, (AddArrow, DeleteArrow)):
        out.update(src=e.src, dst=e.dst)
    else:
        out.update(vertices=sorted(e.graph.vertices), arrows=[list(p) for p in e.graph.edge_pairs()])
    return out


def path_from_dict(d: Any) -> EditPath:
    ops = [op_from_dict(o) for o in _list(_need(d, "ops", "edit path"), "edit path")]
    if not ops:
        raise SchemaError("edit path: needs at least one op")
    return EditPath(tuple(ops))


def path_to_dict(p: EditPath, note: str | None = None) -> dict:
    out: dict[str, Any] = {"ops": [op_to_dict(e) for e in p]}
    if note:
        out["note"] = note
    return out


def load_path(path: str | Path) -> EditPath:
    return path_from_dict(read_json(path))


# -- DOT -----------------------------------------------------------------


def _esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _q(s: str) -> str:
    return f'"{_esc(s)}"'


def wd_to_dot(w: WiringDiagram, name: str = "wd") -> str:
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;", "  node [shape=box];"]
    for v in sorted(w.vertices):
        text = "\\n".join(_esc(x) for x in [v] + [str(l) for l in sorted(w.state_vectors[v])])
        lines.append(f'  {_q(v)} [label="{text}"];')
    for a, (s, t) in sorted(w.graph.arrows.items(), key=lambda kv: (kv[1], kv[0])):
        lines.append(f"  {_q(s)} -> {_q(t)};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def olog_to_dot(o: Olog, name: str = "olog") -> str:
    lines = [f"digraph {_q(name)} {{", "  node [shape=box];"]
    for t in sorted(o.types, key=lambda t: t.id):
        lines.append(f"  {_q(t.id)} [label={_q(t.text)}];")
    for a in sorted(o.aspects, key=lambda a: a.id):
        lines.append(f"  {_q(a.src)} -> {_q(a.dst)} [label={_q(a.text)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = [
    "costs_from_dict",
    "dumps",
    "label_from_dict",
    "label_to_dict",
    "load_costs",
    "load_olog",
    "load_path",
    "load_trace",
    "load_wd",
    "olog_from_dict",
    "olog_to_dict",
    "olog_to_dot",
    "op_from_dict",
    "op_to_dict",
    "path_from_dict",
    "path_to_dict",
    "relations_from_list",
    "sensor_from_dict",
    "sensor_to_dict",
    "trace_from_lines",
    "trace_to_lines",
    "wd_from_dict",
    "wd_to_dict",
    "wd_to_dot",
]
