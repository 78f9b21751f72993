"""Independent reference implementations used only by the tests.

Each oracle is deliberately naive (BFS, exhaustive enumeration,
permutation canonicalization) and shares no code with the package's
algorithms beyond the public data classes and ``apply_op``.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from typing import Iterable, Sequence

from ologwd import WiringDiagram
from ologwd.edits import (
    AddArrow,
    AddLabel,
    AddVertex,
    ChangeLabel,
    CostFunction,
    DeleteArrow,
    DeleteLabel,
    DeleteVertex,
    Generalize,
    Specialize,
    apply_op,
)
from ologwd.errors import InvalidOpError
from ologwd.graph import DirectedGraph
from ologwd.trace import UNDEFINED
from ologwd.wiring import Label, SensingFunctionDecl

Pair = tuple[str, str]


# -- reachability and orders ---------------------------------------------


def reach_bfs(vertices: Iterable[str], edges: Iterable[Pair]) -> frozenset[Pair]:
    """Reflexive-transitive closure by one BFS per vertex."""
    vs = list(vertices)
    adj: dict[str, list[str]] = {v: [] for v in vs}
    for s, t in edges:
        adj[s].append(t)
    out = set()
    for v in vs:
        seen = {v}
        q = deque([v])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    q.append(w)
        out.update((v, w) for w in seen)
    return frozenset(out)


def upper_triangular_dags(n: int) -> Iterable[tuple[list[str], list[Pair]]]:
    """Every DAG on ``n`` vertices up to isomorphism (with repeats): edges i -> j for i < j only."""
    vs = [f"v{i}" for i in range(n)]
    slots = [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)]
    for mask in range(1 << len(slots)):
        yield vs, [slots[k] for k in range(len(slots)) if mask >> k & 1]


def is_poset(vertices: Sequence[str], strict: frozenset[Pair]) -> bool:
    for a, b in strict:
        if a == b or (b, a) in strict:
            return False
    for a, b in strict:
        for c in vertices:
            if (b, c) in strict and (a, c) not in strict:
                return False
    return True


def all_posets(vertices: Sequence[str]) -> list[frozenset[Pair]]:
    """Every strict partial order on the labelled vertex set."""
    slots = [(a, b) for a in vertices for b in vertices if a != b]
    out = []
    for mask in range(1 << len(slots)):
        strict = frozenset(slots[k] for k in range(len(slots)) if mask >> k & 1)
        if is_poset(vertices, strict):
            out.append(strict)
    return out


def hasse_edges(vertices: Sequence[str], strict: frozenset[Pair]) -> list[Pair]:
    return sorted(
        (a, b) for a, b in strict if not any((a, c) in strict and (c, b) in strict for c in vertices)
    )


def has_strict_intermediate(big: frozenset[Pair], small: frozenset[Pair], posets: Iterable[frozenset[Pair]]) -> bool:
    return any(small < p < big for p in posets)


# -- trace evaluation -----------------------------------------------------


def step_value(rows: Sequence[tuple[float, str, object, object]], sensor: str, arg: object, t: float) -> object:
    """Last reading of ``(sensor, arg)`` at or before ``t`` by linear scan."""
    best_t, best_v = None, UNDEFINED
    for ts, s, a, v in rows:
        if s == sensor and a == arg and ts <= t and (best_t is None or ts >= best_t):
            best_t, best_v = ts, v
    return best_v


def label_holds(rows, decl: SensingFunctionDecl, label: Label, t: float) -> bool:
    if decl.kind == "derivative":
        start = min(r[0] for r in rows)
        if t - decl.window < start:
            return False
        a = step_value(rows, decl.base, label.arg, t)
        b = step_value(rows, decl.base, label.arg, t - decl.window)
        if a is UNDEFINED or b is UNDEFINED:
            return False
        return a - b == label.value
    v = step_value(rows, decl.id, label.arg, t)
    return v is not UNDEFINED and v == label.value


def brute_force_matches(rows, w: WiringDiagram) -> list[dict[str, float]]:
    """Every order-respecting assignment, by full product over candidate times."""
    if not rows:
        return []
    stamps = sorted({r[0] for r in rows})
    cands = set(stamps)
    for d in w.sensors.values():
        if d.kind == "derivative":
            cands.update(t + d.window for t in stamps)
    cands = sorted(cands)
    vs = sorted(w.vertices)
    holding = [
        [t for t in cands if all(label_holds(rows, w.sensors[l.sensor], l, t) for l in w.state_vectors[v])] for v in vs
    ]
    idx = {v: i for i, v in enumerate(vs)}
    pairs = [(idx[s], idx[t]) for s, t in w.graph.edge_pairs()]
    out = []
    for combo in itertools.product(*holding):
        if all(combo[s] < combo[t] for s, t in pairs):
            out.append(dict(zip(vs, combo)))
    return out


# -- wiring-diagram edit distance ------------------------------------------


def perm_canonical(w: WiringDiagram) -> tuple:
    """Smallest relabelled encoding over all vertex permutations."""
    vs = sorted(w.vertices)
    edges = w.graph.edge_pairs()
    best = None
    for perm in itertools.permutations(range(len(vs))):
        pos = {v: perm[i] for i, v in enumerate(vs)}
        vec = [None] * len(vs)
        for v in vs:
            vec[pos[v]] = tuple(sorted(l.sort_key() for l in w.state_vectors[v]))
        enc = (tuple(vec), tuple(sorted((pos[s], pos[t]) for s, t in edges)))
        if best is None or enc < best:
            best = enc
    return best


def _skeleton_graphs(vertices: Sequence[str]) -> list[DirectedGraph]:
    return [DirectedGraph.from_edges(vertices, hasse_edges(vertices, p)) for p in all_posets(vertices)]


def _subsets(xs: Sequence) -> list[frozenset]:
    return [frozenset(c) for k in range(len(xs) + 1) for c in itertools.combinations(xs, k)]


def candidate_ops(w: WiringDiagram, labels: Sequence[Label], cap: int, graphs_cache: dict) -> Iterable:
    """Every syntactically possible op; ``apply_op`` decides which are valid."""
    vs = sorted(w.vertices)
    label_sets = [s for s in _subsets(labels) if s]
    if len(vs) < cap:
        fresh = "n" + str(len(vs))
        while fresh in w.vertices:
            fresh += "_"
        for ls in label_sets:
            for preds in _subsets(vs):
                for succs in _subsets(vs):
                    yield AddVertex(fresh, ls, preds, succs)
    for v in vs:
        yield DeleteVertex(v)
        for l in labels:
            yield AddLabel(v, l)
            yield DeleteLabel(v, l)
            for l2 in labels:
                if l2 != l:
                    yield ChangeLabel(v, l, l2)
    for a in vs:
        for b in vs:
            if a != b:
                yield AddArrow(a, b)
                yield DeleteArrow(a, b)
    key = tuple(vs)
    if key not in graphs_cache:
        graphs_cache[key] = _skeleton_graphs(vs)
    for g in graphs_cache[key]:
        yield Generalize(g)
        yield Specialize(g)


def _rename(w: WiringDiagram) -> WiringDiagram:
    """Rename vertices to ``n0..`` so fresh names never collide."""
    names = {v: f"n{i}" for i, v in enumerate(sorted(w.vertices))}
    g = DirectedGraph.from_edges(names.values(), [(names[s], names[t]) for s, t in w.graph.edge_pairs()])
    return WiringDiagram(g, {names[v]: ls for v, ls in w.state_vectors.items()}, w.sensors)


class BruteForceDistance:
    """Dijkstra over the full op graph of a small universe, built lazily per source."""

    def __init__(self, labels: Sequence[Label], cap: int, costs: CostFunction):
        self.labels = list(labels)
        self.cap = cap
        self.costs = costs
        self._graphs: dict = {}
        self._edges: dict[tuple, list[tuple[float, tuple, WiringDiagram]]] = {}

    def neighbours(self, key: tuple, w: WiringDiagram) -> list[tuple[float, tuple, WiringDiagram]]:
        if key not in self._edges:
            best: dict[tuple, tuple[float, WiringDiagram]] = {}
            for e in candidate_ops(w, self.labels, self.cap, self._graphs):
                try:
                    nw = apply_op(w, e)
                except InvalidOpError:
                    continue
                c = self.costs.cost(e)
                if math.isinf(c):
                    continue
                k = perm_canonical(nw)
                if k not in best or c < best[k][0]:
                    best[k] = (c, nw)
            self._edges[key] = [(c, k, _rename(nw)) for k, (c, nw) in best.items()]
        return self._edges[key]

    def distance(self, w: WiringDiagram, w2: WiringDiagram) -> float:
        src, dst = perm_canonical(w), perm_canonical(w2)
        dist = {src: 0.0}
        reps = {src: _rename(w)}
        heap = [(0.0, src)]
        done = set()
        while heap:
            d, k = heapq.heappop(heap)
            if k in done:
                continue
            if k == dst:
                return d
            done.add(k)
            for c, nk, nw in self.neighbours(k, reps[k]):
                if d + c < dist.get(nk, math.inf):
                    dist[nk] = d + c
                    reps.setdefault(nk, nw)
                    heapq.heappush(heap, (d + c, nk))
        return math.inf
