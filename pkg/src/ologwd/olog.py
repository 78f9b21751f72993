"""Ologs as text-labelled directed graphs, fiber products, shortest-distance metric."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    CospanMismatchError,
    DuplicateIdError,
    NonpositiveCostError,
    UnknownAspectError,
    UnknownTypeError,
)

INF = math.inf


@dataclass(frozen=True)
class OlogType:
    id: str
    text: str


@dataclass(frozen=True)
class Aspect:
    id: str
    text: str
    src: str
    dst: str


@dataclass(frozen=True)
class PullbackSquare:
    """Recorded square ``apex -p1-> B -f-> D <-g- C <-p2- apex``."""

    apex: str
    p1: str
    p2: str
    f: str
    g: str


@dataclass(frozen=True)
class Olog:
    """An olog presentation: types, aspects and the recorded fiber-product squares.

    No path equations are stored. Every builder method returns a new olog.
    """

    types: tuple[OlogType, ...] = ()
    aspects: tuple[Aspect, ...] = ()
    pullbacks: tuple[PullbackSquare, ...] = ()
    _type_index: Mapping[str, OlogType] = field(init=False, repr=False, compare=False)
    _aspect_index: Mapping[str, Aspect] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        tix: dict[str, OlogType] = {}
        for t in self.types:
            if t.id in tix:
                raise DuplicateIdError(f"duplicate type id {t.id!r}")
            tix[t.id] = t
        aix: dict[str, Aspect] = {}
        for a in self.aspects:
            if a.id in aix:
                raise DuplicateIdError(f"duplicate aspect id {a.id!r}")
            for end in (a.src, a.dst):
                if end not in tix:
                    raise UnknownTypeError(end)
            aix[a.id] = a
        object.__setattr__(self, "_type_index", MappingProxyType(tix))
        object.__setattr__(self, "_aspect_index", MappingProxyType(aix))
        for sq in self.pullbacks:
            self._check_square(sq)

    def _check_square(self, sq: PullbackSquare) -> None:
        p1, p2, f, g = (self.aspect(x) for x in (sq.p1, sq.p2, sq.f, sq.g))
        if not (p1.src == p2.src == sq.apex and p1.dst == f.src and p2.dst == g.src and f.dst == g.dst):
            raise CospanMismatchError(f"pullback square at {sq.apex!r} does not close up")

    def type(self, type_id: str) -> OlogType:
        try:
            return self._type_index[type_id]
        except KeyError:
            raise UnknownTypeError(type_id) from None

    def aspect(self, aspect_id: str) -> Aspect:
        try:
            return self._aspect_index[aspect_id]
        except KeyError:
            raise UnknownAspectError(aspect_id) from None

    def has_type(self, type_id: str) -> bool:
        return type_id in self._type_index

    def type_ids(self) -> list[str]:
        return [t.id for t in self.types]

    def add_type(self, type_id: str, text: str) -> "Olog":
        return Olog(self.types + (OlogType(type_id, text),), self.aspects, self.pullbacks)

    def add_aspect(self, aspect_id: str, text: str, src: str, dst: str) -> "Olog":
        return Olog(self.types, self.aspects + (Aspect(aspect_id, text, src, dst),), self.pullbacks)


def fiber_product(
    o: Olog,
    f: str,
    g: str,
    apex: str,
    apex_text: str,
    p1: tuple[str, str],
    p2: tuple[str, str],
) -> Olog:
    """Add the pullback of the cospan ``B -f-> D <-g- C``.

    ``p1`` and ``p2`` are ``(aspect id, text)`` for the new projections
    ``apex -> B`` and ``apex -> C``. The input olog is left untouched.
    """
    fa, ga = o.aspect(f), o.aspect(g)
    if fa.dst != ga.dst:
        raise CospanMismatchError(f"{f!r} ends at {fa.dst!r} but {g!r} ends at {ga.dst!r}")
    if o.has_type(apex):
        raise DuplicateIdError(f"duplicate type id {apex!r}")
    for aid, _ in (p1, p2):
        if aid in o._aspect_index:
            raise DuplicateIdError(f"duplicate aspect id {aid!r}")
    if p1[0] == p2[0]:
        raise DuplicateIdError(f"duplicate aspect id {p1[0]!r}")
    return Olog(
        o.types + (OlogType(apex, apex_text),),
        o.aspects + (Aspect(p1[0], p1[1], apex, fa.src), Aspect(p2[0], p2[1], apex, ga.src)),
        o.pullbacks + (PullbackSquare(apex, p1[0], p2[0], f, g),),
    )


def add_relation_types(
    o: Olog,
    relation: str,
    kind1: str,
    kind2: str,
    *,
    pair_type: str | None = None,
    relation_text: str | None = None,
) -> Olog:
    """Expand the relation template: ``P_rel -is-> P``, ``P -p1-> K1``, ``P -p2-> K2``.

    ``kind1`` and ``kind2`` must already be types. The pair type ``P`` is
    created unless it exists. Returns the olog with the new relation type
    ``P_<relation>``.
    """
    pair = pair_type or f"P({kind1},{kind2})"
    k1, k2 = o.type(kind1), o.type(kind2)
    if not o.has_type(pair):
        o = o.add_type(pair, f"a pair (x, y) where x is {k1.text} and y is {k2.text}")
        o = o.add_aspect(f"{pair}.p1", "p1", pair, kind1)
        o = o.add_aspect(f"{pair}.p2", "p2", pair, kind2)
    rel = f"P_{relation}"
    o = o.add_type(rel, relation_text or f"a pair (x, y) in {pair} with x {relation} y")
    return o.add_aspect(f"{rel}.is", "is", rel, pair)


def add_indicator_fibers(o: Olog, subject: str, indicator: str, *, prefix: str | None = None) -> Olog:
    """Split ``subject`` by a {0,1}-valued aspect into its 0- and 1-fibers.

    ``indicator`` is an aspect ``subject -> {0,1}``. The value types
    ``{0}``, ``{1}`` and the inclusions ``i_0``, ``i_1`` are created when
    missing. Adds ``<prefix>_0`` and ``<prefix>_1`` as fiber products.
    """
    q = o.aspect(indicator)
    if q.src != subject:
        raise CospanMismatchError(f"aspect {indicator!r} does not start at {subject!r}")
    bits = q.dst
    for j in (0, 1):
        if not o.has_type(f"{{{j}}}"):
            o = o.add_type(f"{{{j}}}", f"{{{j}}}")
        if f"i_{j}" not in o._aspect_index:
            o = o.add_aspect(f"i_{j}", f"i_{j}", f"{{{j}}}", bits)
    name = prefix or subject
    for j in (0, 1):
        apex = f"{name}_{j}"
        o = fiber_product(
            o,
            indicator,
            f"i_{j}",
            apex,
            f"an instance of {o.type(subject).text} with {q.text} = {j}",
            (f"{apex}.is", "is"),
            (f"{apex}.val", ""),
        )
    return o


@dataclass(frozen=True)
class EdgeCost:
    """Positive cost per aspect; aspects missing from ``costs`` use ``default``."""

    costs: Mapping[str, float] = field(default_factory=dict)
    default: float | None = 1.0

    def __post_init__(self) -> None:
        for aid, c in self.costs.items():
            if not c > 0 or c != c:
                raise NonpositiveCostError(f"cost of aspect {aid!r} must be > 0, got {c!r}")
        if self.default is not None and not self.default > 0:
            raise NonpositiveCostError(f"default cost must be > 0, got {self.default!r}")

    def __call__(self, aspect_id: str) -> float:
        c = self.costs.get(aspect_id, self.default)
        if c is None:
            raise NonpositiveCostError(f"no cost given for aspect {aspect_id!r}")
        return c


UNIT = EdgeCost()


def _undirected(o: Olog, cost: EdgeCost) -> dict[str, list[tuple[float, str, str]]]:
    adj: dict[str, list[tuple[float, str, str]]] = {t.id: [] for t in o.types}
    for a in o.aspects:
        w = cost(a.id)
        adj[a.src].append((w, a.dst, a.id))
        if a.dst != a.src:
            adj[a.dst].append((w, a.src, a.id))
    return adj


def olog_shortest_path(o: Olog, cost: EdgeCost, x: str, y: str) -> tuple[float, list[str]]:
    """Distance and one shortest path (aspect ids, from ``x``) ignoring arrow direction."""
    o.type(x)
    o.type(y)
    adj = _undirected(o, cost)
    dist = {x: 0.0}
    prev: dict[str, tuple[str, str]] = {}
    heap = [(0.0, x)]
    done: set[str] = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        if v == y:
            break
        for w, u, aid in sorted(adj[v]):
            nd = d + w
            if nd < dist.get(u, INF):
                dist[u] = nd
                prev[u] = (v, aid)
                heapq.heappush(heap, (nd, u))
    if y not in done:
        return INF, []
    path: list[str] = []
    v = y
    while v != x:
        v, aid = prev[v]
        path.append(aid)
    path.reverse()
    return dist[y], path


def olog_distance(o: Olog, cost: EdgeCost, x: str, y: str) -> float:
    """Shortest-distance metric between two types; ``math.inf`` across components."""
    return olog_shortest_path(o, cost, x, y)[0]


def olog_distances_from(o: Olog, cost: EdgeCost, x: str) -> dict[str, float]:
    """Single-source distances to every reachable type."""
    o.type(x)
    adj = _undirected(o, cost)
    dist = {x: 0.0}
    heap = [(0.0, x)]
    done: set[str] = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        for w, u, _ in adj[v]:
            if d + w < dist.get(u, INF):
                dist[u] = d + w
                heapq.heappush(heap, (d + w, u))
    return dist


def build_olog(types: Iterable[tuple[str, str]], aspects: Iterable[tuple[str, str, str, str]]) -> Olog:
    return Olog(tuple(OlogType(*t) for t in types), tuple(Aspect(*a) for a in aspects))
