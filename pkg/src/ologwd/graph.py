"""Finite directed multigraphs, WD-graph checks, closure and reduction."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import CycleError, NotPartialOrderError

Vertex = str
Pair = tuple[Vertex, Vertex]


class DirectedGraph:
    """A quadruple ``(V, A, s, t)`` with opaque string ids.

    Parallel arrows and loops are representable; whether a graph is a WD
    graph (acyclic) or skeleton is decided by the functions below.
    """

    __slots__ = ("_vertices", "_arrows", "_hash")

    def __init__(self, vertices: Iterable[Vertex], arrows: Mapping[str, Pair] | None = None):
        vs = frozenset(vertices)
        arr: dict[str, Pair] = {}
        for aid, (s, t) in (arrows or {}).items():
            if s not in vs or t not in vs:
                raise ValueError(f"arrow {aid!r} has an endpoint outside the vertex set: {s!r} -> {t!r}")
            arr[aid] = (s, t)
        self._vertices = vs
        self._arrows = MappingProxyType(arr)
        self._hash: int | None = None

    @classmethod
    def from_edges(cls, vertices: Iterable[Vertex], edges: Iterable[Pair]) -> "DirectedGraph":
        """Build a graph naming each arrow ``"src->dst"`` (suffixed on repeats)."""
        arrows: dict[str, Pair] = {}
        for s, t in edges:
            aid = f"{s}->{t}"
            k = 1
            while aid in arrows:
                k += 1
                aid = f"{s}->{t}#{k}"
            arrows[aid] = (s, t)
        return cls(vertices, arrows)

    @property
    def vertices(self) -> frozenset[Vertex]:
        return self._vertices

    @property
    def arrows(self) -> Mapping[str, Pair]:
        return self._arrows

    def source(self, arrow: str) -> Vertex:
        return self._arrows[arrow][0]

    def target(self, arrow: str) -> Vertex:
        return self._arrows[arrow][1]

    def edge_pairs(self) -> list[Pair]:
        """Endpoint pairs of all arrows, with multiplicity, in a stable order."""
        return sorted(self._arrows.values())

    def edge_set(self) -> frozenset[Pair]:
        return frozenset(self._arrows.values())

    def successors(self) -> dict[Vertex, set[Vertex]]:
        out: dict[Vertex, set[Vertex]] = {v: set() for v in self._vertices}
        for s, t in self._arrows.values():
            out[s].add(t)
        return out

    def predecessors(self) -> dict[Vertex, set[Vertex]]:
        inc: dict[Vertex, set[Vertex]] = {v: set() for v in self._vertices}
        for s, t in self._arrows.values():
            inc[t].add(s)
        return inc

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DirectedGraph):
            return NotImplemented
        return self._vertices == other._vertices and dict(self._arrows) == dict(other._arrows)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self._vertices, frozenset(self._arrows.items())))
        return self._hash

    def __repr__(self) -> str:
        edges = ", ".join(f"{s}->{t}" for s, t in self.edge_pairs())
        return f"DirectedGraph(vertices={sorted(self._vertices)}, arrows=[{edges}])"


@dataclass(frozen=True)
class LinearExtension:
    """A bijection ``vertex -> {1..n}`` increasing along every arrow."""

    labeling: Mapping[Vertex, int]

    def order(self) -> list[Vertex]:
        return sorted(self.labeling, key=self.labeling.__getitem__)

    def __getitem__(self, v: Vertex) -> int:
        return self.labeling[v]


@dataclass(frozen=True)
class RelationSet:
    """A binary relation on ``base``; ``pairs`` includes the diagonal when reflexive."""

    base: frozenset[Vertex]
    pairs: frozenset[Pair]

    def __post_init__(self) -> None:
        for x, y in self.pairs:
            if x not in self.base or y not in self.base:
                raise ValueError(f"pair {(x, y)!r} is outside the base set")

    @classmethod
    def of(cls, base: Iterable[Vertex], pairs: Iterable[Pair], reflexive: bool = True) -> "RelationSet":
        b = frozenset(base)
        ps = set(pairs)
        if reflexive:
            ps.update((x, x) for x in b)
        return cls(b, frozenset(ps))

    def __contains__(self, pair: object) -> bool:
        return pair in self.pairs

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Pair]:
        return iter(sorted(self.pairs))

    def strict_pairs(self) -> frozenset[Pair]:
        return frozenset(p for p in self.pairs if p[0] != p[1])

    def partial_order_violation(self) -> tuple[str, object] | None:
        """First failed axiom as ``(reason, witness)``, or ``None``."""
        for x in sorted(self.base):
            if (x, x) not in self.pairs:
                return "not reflexive", (x, x)
        for x, y in sorted(self.pairs):
            if x != y and (y, x) in self.pairs:
                return "not antisymmetric", (x, y)
        succ: dict[Vertex, set[Vertex]] = {x: set() for x in self.base}
        for x, y in self.pairs:
            succ[x].add(y)
        for x in sorted(self.base):
            for y in sorted(succ[x]):
                for z in sorted(succ[y]):
                    if z not in succ[x]:
                        return "not transitive", ((x, y), (y, z))
        return None

    def is_partial_order(self) -> bool:
        return self.partial_order_violation() is None


def find_cycle(g: DirectedGraph) -> tuple[Vertex, ...] | None:
    """Return a closed walk witnessing a loop or oriented cycle, else ``None``."""
    for s, t in g.edge_pairs():
        if s == t:
            return (s, s)
    succ = {v: sorted(ws) for v, ws in g.successors().items()}
    state: dict[Vertex, int] = {v: 0 for v in g.vertices}  # 0 new, 1 on stack, 2 done
    for root in sorted(g.vertices):
        if state[root]:
            continue
        stack: list[tuple[Vertex, Iterator[Vertex]]] = [(root, iter(succ[root]))]
        path = [root]
        state[root] = 1
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                path.pop()
                state[v] = 2
            elif state[nxt] == 1:
                return tuple(path[path.index(nxt):]) + (nxt,)
            elif state[nxt] == 0:
                state[nxt] = 1
                path.append(nxt)
                stack.append((nxt, iter(succ[nxt])))
    return None


def validate_wd_graph(g: DirectedGraph) -> LinearExtension:
    """Certify that ``g`` is a WD graph by producing a linear extension.

    Kahn's algorithm with the smallest available vertex id first, so the
    result is deterministic. Raises :class:`CycleError` otherwise.
    """
    indeg = {v: 0 for v in g.vertices}
    for s, t in g.arrows.values():
        indeg[t] += 1
    succ = g.successors()
    mult: dict[Pair, int] = {}
    for p in g.arrows.values():
        mult[p] = mult.get(p, 0) + 1
    heap = [v for v, d in indeg.items() if d == 0]
    heapq.heapify(heap)
    labeling: dict[Vertex, int] = {}
    while heap:
        v = heapq.heappop(heap)
        labeling[v] = len(labeling) + 1
        for w in succ[v]:
            indeg[w] -= mult[(v, w)]
            if indeg[w] == 0:
                heapq.heappush(heap, w)
    if len(labeling) != len(g.vertices):
        cycle = find_cycle(g)
        assert cycle is not None
        raise CycleError(cycle)
    return LinearExtension(MappingProxyType(labeling))


def is_wd_graph(g: DirectedGraph) -> bool:
    return find_cycle(g) is None


def _reachability(vertices: Iterable[Vertex], edges: Iterable[Pair], order: list[Vertex]) -> dict[Vertex, set[Vertex]]:
    # strict descendants, filled in reverse topological order
    succ: dict[Vertex, set[Vertex]] = {v: set() for v in vertices}
    for s, t in edges:
        succ[s].add(t)
    reach: dict[Vertex, set[Vertex]] = {}
    for v in reversed(order):
        r: set[Vertex] = set()
        for w in succ[v]:
            r.add(w)
            r |= reach[w]
        reach[v] = r
    return reach


def transitive_closure(g: DirectedGraph) -> RelationSet:
    """Reflexive-transitive closure ``R(G)`` of the arrow relation."""
    order = validate_wd_graph(g).order()
    reach = _reachability(g.vertices, g.arrows.values(), order)
    pairs = {(v, v) for v in g.vertices}
    pairs.update((v, w) for v, ws in reach.items() for w in ws)
    return RelationSet(g.vertices, frozenset(pairs))


def covering_pairs(r: RelationSet) -> frozenset[Pair]:
    """Pairs ``x < y`` with nothing strictly between them (the Hasse diagram)."""
    strict = r.strict_pairs()
    above: dict[Vertex, set[Vertex]] = {x: set() for x in r.base}
    for x, y in strict:
        above[x].add(y)
    covers = set()
    for x, y in strict:
        if not any((z, y) in strict for z in above[x] if z != y):
            covers.add((x, y))
    return frozenset(covers)


def is_skeleton(g: DirectedGraph) -> bool:
    """WD3: no arrow duplicates or short-cuts another path between its endpoints."""
    edges = g.edge_pairs()
    if len(set(edges)) != len(edges):
        return False
    return set(edges) == covering_pairs(transitive_closure(g))


def skeleton_violation(g: DirectedGraph) -> tuple[str, Pair] | None:
    """Witness for a WD3 failure: ``("parallel", pair)`` or ``("shortcut", pair)``."""
    seen: set[Pair] = set()
    for p in g.edge_pairs():
        if p in seen:
            return "parallel", p
        seen.add(p)
    covers = covering_pairs(transitive_closure(g))
    for p in sorted(seen - covers):
        return "shortcut", p
    return None


def transitive_reduction(r: RelationSet) -> DirectedGraph:
    """Hasse diagram of a finite partial order, as a skeleton WD graph."""
    bad = r.partial_order_violation()
    if bad is not None:
        raise NotPartialOrderError(*bad)
    return DirectedGraph.from_edges(r.base, sorted(covering_pairs(r)))


def restrict(g: DirectedGraph, keep: Iterable[Vertex]) -> DirectedGraph:
    """Induced subgraph on ``keep``; arrows touching removed vertices are dropped."""
    ks = frozenset(keep)
    return DirectedGraph(ks, {a: p for a, p in g.arrows.items() if p[0] in ks and p[1] in ks})
