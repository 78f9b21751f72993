"""The category R(V) of skeleton WD graphs on a fixed vertex set.

There is a morphism ``G1 => G2`` exactly when ``R(G2) ⊆ R(G1)``, so
hom-sets have at most one element and a morphism is just its inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Literal

from .errors import NotSkeletonError, VertexSetMismatchError
from .graph import DirectedGraph, Pair, RelationSet, is_skeleton, transitive_closure, transitive_reduction


@dataclass(frozen=True)
class SkeletonWdGraph:
    graph: DirectedGraph
    order: RelationSet

    @classmethod
    def of(cls, graph: DirectedGraph) -> "SkeletonWdGraph":
        if not is_skeleton(graph):
            raise NotSkeletonError(f"{graph!r} is not a skeleton WD graph")
        return cls(graph, transitive_closure(graph))

    @classmethod
    def from_order(cls, order: RelationSet) -> "SkeletonWdGraph":
        return cls(transitive_reduction(order), order)

    @property
    def vertices(self) -> frozenset[str]:
        return self.graph.vertices


@dataclass(frozen=True)
class WdMorphism:
    src: SkeletonWdGraph
    dst: SkeletonWdGraph

    @property
    def witness(self) -> frozenset[Pair]:
        """The inclusion ``R(dst) ⊆ R(src)``, as the included pair set."""
        return self.dst.order.pairs

    def difference(self) -> frozenset[Pair]:
        return self.src.order.pairs - self.dst.order.pairs

    def is_identity(self) -> bool:
        return self.src.order == self.dst.order


def morphism_exists(g1: SkeletonWdGraph, g2: SkeletonWdGraph) -> WdMorphism | None:
    if g1.vertices != g2.vertices:
        raise VertexSetMismatchError(f"vertex sets differ: {sorted(g1.vertices)} vs {sorted(g2.vertices)}")
    if g2.order.pairs <= g1.order.pairs:
        return WdMorphism(g1, g2)
    return None


def _intermediate_order_exists(m: WdMorphism) -> bool:
    diff = sorted(m.difference())
    lower = m.dst.order.pairs
    for k in range(1, len(diff)):
        for extra in combinations(diff, k):
            if RelationSet(m.src.order.base, lower | frozenset(extra)).is_partial_order():
                return True
    return False


def is_irreducible(m: WdMorphism, *, brute_force: bool = False) -> bool:
    """True iff no partial order lies strictly between ``R(dst)`` and ``R(src)``.

    The default test is ``|R(src) \\ R(dst)| == 1``; ``brute_force=True``
    enumerates every intermediate relation instead. Identity morphisms are
    not irreducible.
    """
    diff = m.difference()
    if not diff:
        return False
    if brute_force:
        return not _intermediate_order_exists(m)
    return len(diff) == 1


def enumerate_covers(g: SkeletonWdGraph, direction: Literal["up", "down"]) -> list[SkeletonWdGraph]:
    """Neighbours of ``g`` along irreducible morphisms.

    ``down``: every ``g'`` with an irreducible ``g => g'`` (one order pair
    removed). ``up``: every ``g''`` with an irreducible ``g'' => g`` (one
    pair added).
    """
    base = g.order.base
    pairs = g.order.pairs
    out: list[SkeletonWdGraph] = []
    if direction == "down":
        candidates = [pairs - {p} for p in sorted(g.order.strict_pairs())]
    elif direction == "up":
        candidates = [
            pairs | {(x, y)} for x in sorted(base) for y in sorted(base) if x != y and (x, y) not in pairs and (y, x) not in pairs
        ]
    else:
        raise ValueError(f"direction must be 'up' or 'down', not {direction!r}")
    for cand in candidates:
        r = RelationSet(base, frozenset(cand))
        if r.is_partial_order():
            out.append(SkeletonWdGraph.from_order(r))
    return out
