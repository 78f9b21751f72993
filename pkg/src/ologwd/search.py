"""Exact wiring-diagram distance by best-first search over isomorphism classes.

States are compact: vertex names, one label bitmask per vertex and the
skeleton arrow set over vertex indices. Duplicate states are merged by
canonical form. The search is A* with a lower bound that only looks at
state vectors: an optimal assignment of current vertices to target
vertices, priced by a set edit distance between their label sets. Every
edit changes that bound by at most its own cost, so the bound is
consistent and the first time the target is popped its cost is exact.
"""

from __future__ import annotations

import heapq
import itertools
import math
from dataclasses import dataclass
from typing import Iterator

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
    Specialize,
    UNIT_COSTS,
)
from .errors import BudgetExceededError
from .graph import DirectedGraph
from .iso import canonical_form
from .olog import olog_distance
from .wiring import Label, WiringDiagram

EPS = 1e-9


@dataclass(frozen=True)
class LabelUniverse:
    """The finite label set (and optional vertex cap) that edits may draw from."""

    labels: frozenset[Label]
    max_vertices: int | None = None

    @classmethod
    def default(
        cls,
        w: WiringDiagram,
        w2: WiringDiagram,
        costs: CostFunction | None = None,
        radius: float = 0.0,
        max_vertices: int | None = None,
    ) -> "LabelUniverse":
        """Labels of both diagrams, plus mapped labels within ``radius`` in the olog."""
        labels = set(w.labels() | w2.labels())
        lc = costs.label_costs if costs is not None else None
        if radius > 0 and lc is not None:
            anchors = [lc.label_types[l] for l in labels if l in lc.label_types]
            for label, t in lc.label_types.items():
                if label in labels:
                    continue
                if any(olog_distance(lc.olog, lc.edge_cost, a, t) <= radius + EPS for a in anchors):
                    labels.add(label)
        return cls(frozenset(labels), max_vertices)


@dataclass(frozen=True)
class _Node:
    names: tuple[str, ...]
    masks: tuple[int, ...]
    arrows: frozenset[tuple[int, int]]


@dataclass
class SearchResult:
    distance: float
    path: EditPath | None
    expanded: int = 0
    generated: int = 0


def _reach(n: int, arrows) -> list[int] | None:
    """Strict-descendant bitmask per vertex, or ``None`` on a cycle."""
    succ = [0] * n
    indeg = [0] * n
    for s, t in arrows:
        succ[s] |= 1 << t
        indeg[t] += 1
    order = [v for v in range(n) if indeg[v] == 0]
    i = 0
    while i < len(order):
        v = order[i]
        i += 1
        m = succ[v]
        while m:
            b = m & -m
            m ^= b
            t = b.bit_length() - 1
            indeg[t] -= 1
            if indeg[t] == 0:
                order.append(t)
    if len(order) != n:
        return None
    reach = [0] * n
    for v in reversed(order):
        r = succ[v]
        m = succ[v]
        while m:
            b = m & -m
            m ^= b
            r |= reach[b.bit_length() - 1]
        reach[v] = r
    return reach


def _hasse(n: int, reach: list[int]) -> frozenset[tuple[int, int]]:
    out = set()
    for i in range(n):
        ri = reach[i]
        for j in range(n):
            if ri >> j & 1:
                # j covers i unless some k with i < k < j
                m = ri & ~(1 << j)
                covered = False
                while m:
                    b = m & -m
                    m ^= b
                    if reach[b.bit_length() - 1] >> j & 1:
                        covered = True
                        break
                if not covered:
                    out.add((i, j))
    return frozenset(out)


def _skeleton_reach(n: int, arrows) -> list[int] | None:
    """Reachability if ``arrows`` form a skeleton DAG, else ``None``."""
    reach = _reach(n, arrows)
    if reach is None:
        return None
    if _hasse(n, reach) != frozenset(arrows):
        return None
    return reach


def _bits(m: int) -> Iterator[int]:
    while m:
        b = m & -m
        m ^= b
        yield b.bit_length() - 1


class _Searcher:
    def __init__(self, costs: CostFunction, universe: LabelUniverse):
        self.costs = costs
        self.labels: list[Label] = sorted(universe.labels)
        self.index = {l: i for i, l in enumerate(self.labels)}
        self.k = len(self.labels)
        self.max_vertices = universe.max_vertices
        k = self.k
        self.change = [[math.inf] * k for _ in range(k)]
        for a in range(k):
            for b in range(k):
                if a != b:
                    self.change[a][b] = costs.change_cost(self.labels[a], self.labels[b])
        # cheapest way to turn one label into another inside a vector
        close = [row[:] for row in self.change]
        two_indel = 2 * costs.label
        for a in range(k):
            close[a][a] = 0.0
            for b in range(k):
                close[a][b] = min(close[a][b], two_indel) if a != b else 0.0
        for m in range(k):
            for a in range(k):
                for b in range(k):
                    if close[a][m] + close[m][b] < close[a][b]:
                        close[a][b] = close[a][m] + close[m][b]
        self.close = close
        self._setedit: dict[tuple[int, int], float] = {}
        self._h: dict[tuple[int, ...], float] = {}
        self._keys: dict[tuple, tuple] = {}
        self.goal_masks: tuple[int, ...] = ()
        self.arrow_configs: dict[tuple[int, frozenset], list[tuple[int, int]]] = {}

    # -- encoding ---------------------------------------------------------
    def node_of(self, w: WiringDiagram) -> _Node:
        names = tuple(sorted(w.vertices))
        pos = {v: i for i, v in enumerate(names)}
        masks = []
        for v in names:
            m = 0
            for l in w.state_vectors[v]:
                if l not in self.index:
                    raise ValueError(f"label {l} is outside the label universe")
                m |= 1 << self.index[l]
            masks.append(m)
        arrows = frozenset((pos[s], pos[t]) for s, t in w.graph.edge_pairs())
        return _Node(names, tuple(masks), arrows)

    def key(self, node: _Node) -> tuple:
        raw = (node.masks, node.arrows)
        hit = self._keys.get(raw)
        if hit is None:
            hit = self._keys[raw] = canonical_form(node.masks, sorted(node.arrows))
        return hit

    def label_set(self, mask: int) -> frozenset[Label]:
        return frozenset(self.labels[i] for i in _bits(mask))

    # -- lower bound ------------------------------------------------------
    def setedit(self, a: int, b: int) -> float:
        key = (a, b)
        hit = self._setedit.get(key)
        if hit is not None:
            return hit
        xs = list(_bits(a & ~b))
        ys = list(_bits(b & ~a))
        indel = self.costs.label
        close = self.close

        best: dict[tuple[int, int], float] = {}

        def go(i: int, used: int) -> float:
            if i == len(xs):
                return indel * (len(ys) - bin(used).count("1"))
            memo = best.get((i, used))
            if memo is not None:
                return memo
            r = indel + go(i + 1, used)
            for j, y in enumerate(ys):
                if not used >> j & 1:
                    r = min(r, close[xs[i]][y] + go(i + 1, used | 1 << j))
            best[(i, used)] = r
            return r

        val = go(0, 0)
        self._setedit[key] = val
        return val

    def h(self, masks: tuple[int, ...]) -> float:
        key = tuple(sorted(masks))
        hit = self._h.get(key)
        if hit is not None:
            return hit
        goal = self.goal_masks
        m = len(goal)
        cv = self.costs.vertex
        memo: dict[tuple[int, int], float] = {}

        def go(i: int, used: int) -> float:
            if i == len(key):
                return cv * (m - bin(used).count("1"))
            hit2 = memo.get((i, used))
            if hit2 is not None:
                return hit2
            r = cv + go(i + 1, used)
            for j in range(m):
                if not used >> j & 1:
                    r = min(r, self.setedit(key[i], goal[j]) + go(i + 1, used | 1 << j))
            memo[(i, used)] = r
            return r

        val = go(0, 0)
        self._h[key] = val
        return val

    # -- successor generation --------------------------------------------
    def _fresh(self, names: tuple[str, ...]) -> str:
        taken = set(names)
        for i in itertools.count(1):
            cand = f"v{i}"
            if cand not in taken:
                return cand
        raise AssertionError  # pragma: no cover

    def _attach_configs(self, n: int, arrows: frozenset) -> list[tuple[int, int]]:
        """All (pred mask, succ mask) wirings of a new vertex that keep a skeleton DAG."""
        ck = (n, arrows)
        hit = self.arrow_configs.get(ck)
        if hit is not None:
            return hit
        out = []
        for assign in itertools.product((0, 1, 2), repeat=n):
            pm = sm = 0
            new = set(arrows)
            for v, a in enumerate(assign):
                if a == 1:
                    pm |= 1 << v
                    new.add((v, n))
                elif a == 2:
                    sm |= 1 << v
                    new.add((n, v))
            if _skeleton_reach(n + 1, new) is not None:
                out.append((pm, sm))
        self.arrow_configs[ck] = out
        return out

    def successors(self, node: _Node) -> Iterator[tuple[tuple, float, _Node]]:
        c = self.costs
        names, masks, arrows = node.names, node.masks, node.arrows
        n = len(names)
        reach = _reach(n, arrows)
        assert reach is not None
        full = (1 << self.k) - 1

        # (i) add a vertex
        if self.max_vertices is None or n < self.max_vertices:
            name = self._fresh(names)
            for pm, sm in self._attach_configs(n, arrows):
                new_arrows = arrows | {(v, n) for v in _bits(pm)} | {(n, v) for v in _bits(sm)}
                for mask in range(1, full + 1):
                    yield (("i", name, mask, pm, sm), c.vertex, _Node(names + (name,), masks + (mask,), frozenset(new_arrows)))
        # (ii) delete a vertex with its wires
        if n > 1:
            for v in range(n):
                remap = {u: (u if u < v else u - 1) for u in range(n) if u != v}
                new_arrows = frozenset((remap[s], remap[t]) for s, t in arrows if s != v and t != v)
                yield (("ii", v), c.vertex, _Node(names[:v] + names[v + 1 :], masks[:v] + masks[v + 1 :], new_arrows))
        # (iii)-(v) label edits
        for v in range(n):
            m = masks[v]
            for l in range(self.k):
                bit = 1 << l
                if m & bit:
                    if m != bit:
                        yield (("iv", v, l), c.label, _Node(names, masks[:v] + (m ^ bit,) + masks[v + 1 :], arrows))
                    for l2 in range(self.k):
                        if not m >> l2 & 1:
                            cost = self.change[l][l2]
                            if cost < math.inf:
                                nm = (m ^ bit) | (1 << l2)
                                yield (("v", v, l, l2), cost, _Node(names, masks[:v] + (nm,) + masks[v + 1 :], arrows))
                else:
                    yield (("iii", v, l), c.label, _Node(names, masks[:v] + (m | bit,) + masks[v + 1 :], arrows))
        # (vi) add an arrow, (vii) delete an arrow
        for i in range(n):
            for j in range(n):
                if i == j or (i, j) in arrows:
                    continue
                new = arrows | {(i, j)}
                if _skeleton_reach(n, new) is not None:
                    yield (("vi", i, j), c.arrow, _Node(names, masks, frozenset(new)))
        for a in sorted(arrows):
            yield (("vii",) + a, c.arrow, _Node(names, masks, arrows - {a}))
        # (viii) drop one covering pair from the order
        for i, j in sorted(arrows):
            r2 = list(reach)
            r2[i] &= ~(1 << j)
            new = _hasse(n, r2)
            yield (("viii", new), c.graph, _Node(names, masks, new))
        # (ix) add one pair to the order, keeping it transitive
        for i in range(n):
            for j in range(n):
                if i == j or reach[i] >> j & 1 or reach[j] >> i & 1:
                    continue
                below = [a for a in range(n) if a == i or reach[a] >> i & 1]
                above = (reach[j] | 1 << j)
                if all((reach[a] | (1 << a)) & above == above for a in below if a != i) and all(
                    reach[i] >> b & 1 for b in _bits(above) if b != j
                ):
                    r2 = list(reach)
                    r2[i] |= 1 << j
                    new = _hasse(n, r2)
                    yield (("ix", new), c.graph, _Node(names, masks, new))

    def to_op(self, node: _Node, desc: tuple) -> EditOp:
        names = node.names
        kind = desc[0]
        if kind == "i":
            _, name, mask, pm, sm = desc
            return AddVertex(
                name,
                self.label_set(mask),
                frozenset(names[v] for v in _bits(pm)),
                frozenset(names[v] for v in _bits(sm)),
            )
        if kind == "ii":
            return DeleteVertex(names[desc[1]])
        if kind == "iii":
            return AddLabel(names[desc[1]], self.labels[desc[2]])
        if kind == "iv":
            return DeleteLabel(names[desc[1]], self.labels[desc[2]])
        if kind == "v":
            return ChangeLabel(names[desc[1]], self.labels[desc[2]], self.labels[desc[3]])
        if kind == "vi":
            return AddArrow(names[desc[1]], names[desc[2]])
        if kind == "vii":
            return DeleteArrow(names[desc[1]], names[desc[2]])
        graph = DirectedGraph.from_edges(names, sorted((names[s], names[t]) for s, t in desc[1]))
        return Generalize(graph) if kind == "viii" else Specialize(graph)

    def constructive_bound(self, start: _Node, goal: _Node) -> float:
        # delete all but one vertex, rebuild the target, delete the survivor
        if self.max_vertices is not None and len(goal.names) + 1 > self.max_vertices:
            return math.inf
        return self.costs.vertex * (len(start.names) + len(goal.names))


def wd_distance_search(
    w: WiringDiagram,
    w2: WiringDiagram,
    costs: CostFunction = UNIT_COSTS,
    universe: LabelUniverse | None = None,
    budget: float = 10.0,
) -> SearchResult:
    """Minimum-cost edit path from ``w`` to ``w2`` with edits drawn from ``universe``.

    Raises :class:`BudgetExceededError` if the distance exceeds ``budget``.
    """
    if universe is None:
        universe = LabelUniverse.default(w, w2)
    s = _Searcher(costs, universe)
    start, goal = s.node_of(w), s.node_of(w2)
    cap = universe.max_vertices
    if cap is not None and max(len(start.names), len(goal.names)) > cap:
        raise ValueError(f"diagram has more than max_vertices={cap} vertices")
    s.goal_masks = goal.masks
    start_key, goal_key = s.key(start), s.key(goal)
    if start_key == goal_key:
        return SearchResult(0.0, None)

    best_bound = s.constructive_bound(start, goal)
    # Partial expansion: a node is queued with a threshold F and only the
    # children with f in (previous F, F] are canonicalized and stored; the
    # node is queued again at its smallest deferred child f.
    records: dict[tuple, tuple[float, _Node, tuple | None, tuple | None]] = {start_key: (0.0, start, None, None)}
    counter = itertools.count()
    heap = [(s.h(start.masks), -0.0, next(counter), start_key, -math.inf)]
    expanded = generated = 0
    while heap:
        f, neg_g, _, key, f_lo = heapq.heappop(heap)
        g = -neg_g
        if g > records[key][0] + EPS:
            continue
        if key == goal_key:
            ops = []
            k = key
            while True:
                _, _, parent, desc = records[k]
                if parent is None:
                    break
                ops.append(s.to_op(records[parent][1], desc))
                k = parent
            ops.reverse()
            return SearchResult(g, EditPath(tuple(ops)), expanded, generated)
        if f > budget + EPS:
            break
        expanded += 1
        node = records[key][1]
        next_f = math.inf
        for desc, cost, child in s.successors(node):
            ng = g + cost
            hc = s.h(child.masks)
            fc = ng + hc
            if fc <= f_lo + EPS:
                continue
            if fc > f + EPS:
                if fc <= budget + EPS:
                    next_f = min(next_f, fc)
                elif hc == 0 and ng < best_bound and s.key(child) == goal_key:
                    best_bound = ng
                continue
            generated += 1
            ck = s.key(child)
            old = records.get(ck)
            if old is None or ng < old[0] - EPS:
                records[ck] = (ng, child, key, desc)
                heapq.heappush(heap, (fc, -ng, next(counter), ck, -math.inf))
        if next_f < math.inf:
            heapq.heappush(heap, (next_f, neg_g, next(counter), key, f))
    raise BudgetExceededError(budget, best_bound)


def wd_distance_exact(
    w: WiringDiagram,
    w2: WiringDiagram,
    costs: CostFunction = UNIT_COSTS,
    universe: LabelUniverse | None = None,
    budget: float = 10.0,
) -> float:
    """``d(w, w2)``: 0 for isomorphic diagrams, else the cheapest edit path cost."""
    return wd_distance_search(w, w2, costs, universe, budget).distance
