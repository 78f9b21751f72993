"""Random generators shared by the property and acceptance tests."""

from __future__ import annotations

import random
from typing import Sequence

from ologwd import Label, SensingFunctionDecl, WiringDiagram
from ologwd.graph import DirectedGraph

from oracles import hasse_edges, reach_bfs

SENSORS = [SensingFunctionDecl(f"F{i}") for i in range(1, 5)]
LABELS = [Label(s.id) for s in SENSORS]


def random_skeleton_edges(rng: random.Random, vs: Sequence[str], p: float = 0.5) -> list[tuple[str, str]]:
    """Hasse diagram of the order generated by random forward edges over a shuffled ``vs``."""
    order = list(vs)
    rng.shuffle(order)
    edges = [(order[i], order[j]) for i in range(len(order)) for j in range(i + 1, len(order)) if rng.random() < p]
    strict = frozenset((a, b) for a, b in reach_bfs(vs, edges) if a != b)
    return hasse_edges(vs, strict)


def random_wd(
    rng: random.Random,
    labels: Sequence[Label] = LABELS,
    sensors: Sequence[SensingFunctionDecl] = SENSORS,
    max_vertices: int = 3,
) -> WiringDiagram:
    n = rng.randint(1, max_vertices)
    vs = [f"x{i}" for i in range(n)]
    vectors = {v: rng.sample(list(labels), rng.randint(1, min(2, len(labels)))) for v in vs}
    g = DirectedGraph.from_edges(vs, random_skeleton_edges(rng, vs))
    return WiringDiagram(g, vectors, {s.id: s for s in sensors})
