"""Command-line front end.

Exit codes: 0 success, 1 domain failure, 2 parse or schema failure,
3 exact search ran out of budget.
"""

from __future__ import annotations

import functools
import json
import logging
import math
import os
import sys
from pathlib import Path
from typing import Any, Callable

import click

from . import examples as ex
from .category import SkeletonWdGraph, enumerate_covers
from .edits import UNIT_COSTS, EditPath, replay_steps, wd_distance_upper
from .errors import BudgetExceededError, OlogWdError, SchemaError
from .io import (
    dumps,
    load_costs,
    load_olog,
    load_path,
    load_trace,
    load_wd,
    olog_to_dot,
    op_to_dict,
    read_json,
    wd_to_dot,
)
from .olog import EdgeCost, olog_shortest_path
from .search import LabelUniverse, wd_distance_search
from .trace import match_wd
from .wiring import validate_wd

log = logging.getLogger("ologwd")

EXIT_DOMAIN, EXIT_SCHEMA, EXIT_BUDGET = 1, 2, 3


class Failed(Exception):
    def __init__(self, code: int, payload: Any = None, message: str = ""):
        self.code = code
        self.payload = payload
        self.message = message


def _fmt(x: float) -> str:
    if math.isinf(x):
        return "inf"
    return str(int(x)) if float(x).is_integer() else f"{x:g}"


def _emit(fmt: str, payload: Any, text: str) -> None:
    click.echo(dumps(payload) if fmt == "json" else text.rstrip("\n"))


def command(fn: Callable) -> Callable:
    """Map library errors to exit codes and print failures in the chosen format."""

    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> None:
        fmt = kwargs.get("fmt", "text")
        try:
            fn(*args, **kwargs)
        except Failed as f:
            if f.payload is not None:
                _emit(fmt, f.payload, f.message)
            elif f.message:
                click.echo(f.message, err=True)
            sys.exit(f.code)
        except SchemaError as e:
            _emit(fmt, {"error": "schema", "message": str(e)}, f"parse error: {e}")
            sys.exit(EXIT_SCHEMA)
        except BudgetExceededError as e:
            _emit(
                fmt,
                {"error": "budget", "budget": e.budget, "best_bound": e.best_bound},
                f"budget {_fmt(e.budget)} exceeded; best known bound {_fmt(e.best_bound)}",
            )
            sys.exit(EXIT_BUDGET)
        except OlogWdError as e:
            _emit(fmt, {"error": type(e).__name__, "message": str(e)}, f"error: {e}")
            sys.exit(EXIT_DOMAIN)

    return wrapper


fmt_option = click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)


@click.group()
def main() -> None:
    """Ologs, wiring diagrams, edit distances and trace matching."""
    level = os.environ.get("OLOGWD_LOG_LEVEL", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING), format="%(levelname)s %(name)s: %(message)s")


# -- validate ------------------------------------------------------------------


@main.command()
@click.option("--wd", "wds", multiple=True, type=click.Path(dir_okay=False), help="Wiring diagram JSON (repeatable).")
@click.option("--olog", "ologs", multiple=True, type=click.Path(dir_okay=False))
@click.option("--trace", "traces", multiple=True, type=click.Path(dir_okay=False))
@click.option("--costs", "cost_files", multiple=True, type=click.Path(dir_okay=False))
@click.option("--path", "paths", multiple=True, type=click.Path(dir_okay=False), help="Edit path; replayed when exactly one --wd is given.")
@click.option("--no-skeleton", is_flag=True, help="Skip the skeleton (WD3) check.")
@fmt_option
@command
def validate(wds, ologs, traces, cost_files, paths, no_skeleton, fmt) -> None:
    """Check artifacts against their schemas and the diagram axioms."""
    if not (wds or ologs or traces or cost_files or paths):
        raise click.UsageError("give at least one artifact to validate")
    results: list[dict[str, Any]] = []
    loaded_wds = []
    for p in wds:
        w = load_wd(p)
        loaded_wds.append(w)
        rep = validate_wd(w, require_skeleton=not no_skeleton)
        results.append({"file": p, "kind": "wd", **rep.to_dict()})
    for p in ologs:
        try:
            o = load_olog(p)
            results.append({"file": p, "kind": "olog", "ok": True, "types": len(o.types), "aspects": len(o.aspects), "failures": []})
        except SchemaError:
            raise
        except OlogWdError as e:
            results.append({"file": p, "kind": "olog", "ok": False, "failures": [{"message": str(e)}]})
    for p in traces:
        tr = load_trace(p)
        results.append({"file": p, "kind": "trace", "ok": True, "samples": len(tr.samples), "failures": []})
    for p in cost_files:
        load_costs(p)
        results.append({"file": p, "kind": "costs", "ok": True, "failures": []})
    for p in paths:
        path = load_path(p)
        entry: dict[str, Any] = {"file": p, "kind": "path", "ok": True, "ops": len(path), "failures": []}
        if len(loaded_wds) == 1:
            try:
                replay_steps(loaded_wds[0], path)
            except OlogWdError as e:
                entry.update(ok=False, failures=[{"message": str(e)}])
        results.append(entry)
    ok = all(r["ok"] for r in results)
    lines = []
    for r in results:
        lines.append(f"{r['file']} ({r['kind']}): {'pass' if r['ok'] else 'FAIL'}")
        for f in r["failures"]:
            tag = f.get("axiom")
            lines.append(f"  {tag + ': ' if tag else ''}{f['message']}")
    _emit(fmt, {"ok": ok, "results": results}, "\n".join(lines))
    if not ok:
        raise Failed(EXIT_DOMAIN)


# -- olog-dist -----------------------------------------------------------------


def _edge_costs(path: str | None) -> EdgeCost:
    if path is None:
        return EdgeCost()
    d = read_json(path)
    if not isinstance(d, dict) or not isinstance(d.get("edge_costs", {}), dict):
        raise SchemaError(f"{path}: expected {{'edge_costs': {{...}}, 'default_edge_cost': number}}")
    return EdgeCost(dict(d.get("edge_costs", {})), d.get("default_edge_cost", 1.0))


@main.command("olog-dist")
@click.option("--olog", "olog_file", required=True, type=click.Path(dir_okay=False))
@click.option("--from", "src", required=True, help="Type id.")
@click.option("--to", "dst", required=True, help="Type id.")
@click.option("--edge-costs", type=click.Path(dir_okay=False), help="JSON with per-aspect costs; unit costs by default.")
@fmt_option
@command
def olog_dist(olog_file, src, dst, edge_costs, fmt) -> None:
    """Shortest-distance metric between two olog types, with a witness path."""
    o = load_olog(olog_file)
    d, path = olog_shortest_path(o, _edge_costs(edge_costs), src, dst)
    steps = []
    here = src
    for aid in path:
        a = o.aspect(aid)
        there = a.dst if a.src == here else a.src
        steps.append({"aspect": aid, "from": here, "to": there})
        here = there
    text = [_fmt(d)]
    if path:
        text.append("path: " + ", ".join(f"{s['aspect']} ({s['from']} - {s['to']})" for s in steps))
    _emit(fmt, {"from": src, "to": dst, "distance": d, "path": steps}, "\n".join(text))


# -- wd-dist -------------------------------------------------------------------


def _op_rows(w, path: EditPath, costs) -> list[dict[str, Any]]:
    return [{"op": op_to_dict(e), "cost": c} for e, c, _ in replay_steps(w, path, costs)]


def _op_text(rows: list[dict[str, Any]]) -> list[str]:
    out = []
    for i, r in enumerate(rows, 1):
        op = dict(r["op"])
        kind = op.pop("kind")
        out.append(f"  {i}. ({kind}) {json.dumps(op, sort_keys=True, ensure_ascii=False)}  cost {_fmt(r['cost'])}")
    return out


@main.command("wd-dist")
@click.argument("source", type=click.Path(dir_okay=False))
@click.argument("target", type=click.Path(dir_okay=False))
@click.option("--costs", "cost_file", type=click.Path(dir_okay=False), help="Cost config; unit costs by default.")
@click.option("--path", "path_file", type=click.Path(dir_okay=False), help="Edit path: report its cost as an upper bound.")
@click.option("--exact", is_flag=True, help="Run exact search (the default when --path is absent).")
@click.option("--budget", type=float, default=10.0, show_default=True)
@click.option("--max-vertices", type=int, default=None, help="Cap on intermediate diagram size.")
@click.option("--radius", type=float, default=0.0, help="Add mapped labels within this olog distance to the universe.")
@fmt_option
@command
def wd_dist(source, target, cost_file, path_file, exact, budget, max_vertices, radius, fmt) -> None:
    """Distance between two wiring diagrams: exact, or an upper bound from a path."""
    w1, w2 = load_wd(source), load_wd(target)
    costs = load_costs(cost_file) if cost_file else UNIT_COSTS
    for w, p in ((w1, source), (w2, target)):
        rep = validate_wd(w)
        if not rep.ok:
            raise Failed(EXIT_DOMAIN, {"error": "invalid-diagram", "file": p, **rep.to_dict()}, f"{p}: not a valid diagram")
    payload: dict[str, Any] = {}
    text: list[str] = []
    if path_file:
        path = load_path(path_file)
        bound = wd_distance_upper(w1, w2, path, costs)
        rows = _op_rows(w1, path, costs)
        payload["upper"] = {"bound": bound, "ops": rows}
        text += [f"upper bound: {_fmt(bound)}", "path:"] + _op_text(rows)
    if exact or not path_file:
        universe = LabelUniverse.default(w1, w2, costs, radius, max_vertices)
        res = wd_distance_search(w1, w2, costs, universe, budget)
        log.info("exact search expanded %d states, stored %d", res.expanded, res.generated)
        rows = _op_rows(w1, res.path, costs) if res.path else []
        payload["exact"] = {"distance": res.distance, "ops": rows}
        text += [f"distance: {_fmt(res.distance)}"]
        text += (["path:"] + _op_text(rows)) if rows else ["path: (isomorphic, no edits)"]
    _emit(fmt, payload, "\n".join(text))


# -- match ---------------------------------------------------------------------


@main.command()
@click.option("--trace", "trace_file", required=True, type=click.Path(dir_okay=False))
@click.option("--wd", "wd_file", required=True, type=click.Path(dir_okay=False))
@click.option("--limit", type=int, default=None, help="Stop after this many assignments.")
@fmt_option
@command
def match(trace_file, wd_file, limit, fmt) -> None:
    """Occurrences of a diagram in a trace, as vertex-to-time tables."""
    tr, w = load_trace(trace_file), load_wd(wd_file)
    found = [a.as_dict() for a in match_wd(tr, w, limit)]
    if not found:
        text = "no match"
    else:
        verts = sorted(w.vertices)
        width = max(len(v) for v in verts)
        blocks = []
        for i, a in enumerate(found, 1):
            blocks.append(f"assignment {i}:\n" + "\n".join(f"  {v.ljust(width)}  {_fmt(a[v])}" for v in verts))
        text = "\n".join(blocks)
    _emit(fmt, {"assignments": found, "count": len(found), "time_unit": tr.time_unit}, text)


# -- export-dot ----------------------------------------------------------------


@main.command("export-dot")
@click.option("--wd", "wd_file", type=click.Path(dir_okay=False))
@click.option("--olog", "olog_file", type=click.Path(dir_okay=False))
@command
def export_dot(wd_file, olog_file) -> None:
    """Deterministic DOT rendering of a diagram or an olog."""
    if bool(wd_file) == bool(olog_file):
        raise click.UsageError("give exactly one of --wd or --olog")
    if wd_file:
        click.echo(wd_to_dot(load_wd(wd_file), Path(wd_file).stem), nl=False)
    else:
        click.echo(olog_to_dot(load_olog(olog_file), Path(olog_file).stem), nl=False)


# -- covers --------------------------------------------------------------------


@main.command()
@click.option("--wd", "wd_file", required=True, type=click.Path(dir_okay=False))
@click.option("--direction", type=click.Choice(["up", "down", "both"]), default="both", show_default=True)
@fmt_option
@command
def covers(wd_file, direction, fmt) -> None:
    """Graphs one irreducible morphism away from the diagram's graph."""
    g = SkeletonWdGraph.of(load_wd(wd_file).graph)
    dirs = ["down", "up"] if direction == "both" else [direction]
    payload: dict[str, Any] = {}
    text: list[str] = []
    for d in dirs:
        found = [[list(p) for p in c.graph.edge_pairs()] for c in enumerate_covers(g, d)]
        found.sort()
        payload[d] = found
        text.append(f"{d} ({len(found)}):")
        for arrows in found:
            text.append("  " + (", ".join(f"{s}->{t}" for s, t in arrows) or "(no arrows)"))
    _emit(fmt, payload, "\n".join(text))


# -- reproduce -----------------------------------------------------------------


def _reproduce_checks(data: Path) -> list[tuple[str, Any, Any]]:
    """(description, expected, observed) for each worked example."""
    unit = EdgeCost()
    out: list[tuple[str, Any, Any]] = []
    t = load_olog(data / "transport_olog.json")
    out.append(("transport olog: bicycle to gas-powered passenger car", 4, olog_shortest_path(t, unit, "bicycle", "gas_powered_passenger_car")[0]))
    out.append(("transport olog: human- to gas-powered vehicle", 2, olog_shortest_path(t, unit, "human_powered_vehicle", "gas_powered_vehicle")[0]))
    r = load_olog(data / "relations_olog.json")
    out.append(("relations olog: owns to has access to", 2, olog_shortest_path(r, unit, "F", "F~")[0]))
    out.append(("relations olog: person owning a building to person with access", 2, olog_shortest_path(r, unit, "E''", "E~''")[0]))
    for name in (
        "enter_shop", "buy_coffee", "buy_coffee_derivative", "pay_first", "receive_first",
        "charger", "bus", "charger_steps", "bus_steps",
    ):
        out.append((f"{name}.json validates", True, validate_wd(load_wd(data / f"{name}.json")).ok))
    out.append(("cyclic.json is rejected", False, validate_wd(load_wd(data / "cyclic.json")).ok))
    for src, dst, path, want in (
        ("charger", "bus", "charger_to_bus", 6),
        ("charger_steps", "bus_steps", "charger_to_bus_steps", 8),
    ):
        w1, w2 = load_wd(data / f"{src}.json"), load_wd(data / f"{dst}.json")
        p = load_path(data / f"{path}.path.json")
        out.append((f"{path} path replays to {dst} (unit cost)", want, wd_distance_upper(w1, w2, p, UNIT_COSTS)))
    tr = load_trace(data / "coffee_trace.jsonl")
    out.append(("coffee trace matches the diamond once", 1, len(match_wd(tr, load_wd(data / "buy_coffee_derivative.json")))))
    out.append(("coffee trace vs receive-first chain", 0, len(match_wd(tr, load_wd(data / "receive_first.json")))))
    swapped = load_trace(data / "coffee_trace_swapped.jsonl")
    out.append(("swapped trace vs pay-first chain", 0, len(match_wd(swapped, load_wd(data / "pay_first.json")))))
    return out


@main.command()
@click.option("--data", "data_dir", type=click.Path(file_okay=False), default=None, help="Data directory; the packaged one by default.")
@fmt_option
@command
def reproduce(data_dir, fmt) -> None:
    """Recompute every worked example from the shipped data files."""
    data = Path(data_dir) if data_dir else ex.DATA_DIR
    checks = _reproduce_checks(data)
    rows = [{"check": d, "expected": e, "observed": o, "ok": e == o} for d, e, o in checks]
    ok = all(r["ok"] for r in rows)
    text = "\n".join(f"{'ok  ' if r['ok'] else 'FAIL'} {r['check']}: {_fmt(r['observed']) if isinstance(r['observed'], (int, float)) and not isinstance(r['observed'], bool) else r['observed']}" for r in rows)
    _emit(fmt, {"ok": ok, "checks": rows}, text)
    if not ok:
        raise Failed(EXIT_DOMAIN)


if __name__ == "__main__":  # pragma: no cover
    main()
