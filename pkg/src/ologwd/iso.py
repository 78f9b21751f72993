"""Canonical forms for small vertex-labelled digraphs.

Colour refinement splits vertices by state vector and neighbourhood;
only orderings inside each colour class are tried, so diagrams with a
handful of vertices canonicalize quickly.
"""

from __future__ import annotations

from itertools import permutations, product
from typing import Hashable, Sequence

from .wiring import WiringDiagram


def _refine(keys: Sequence[Hashable], succ: list[list[int]], pred: list[list[int]]) -> list[int]:
    n = len(keys)
    sigs = [(keys[v], len(succ[v]), len(pred[v])) for v in range(n)]
    ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
    colors = [ranks[s] for s in sigs]
    while True:
        sigs2 = [
            (colors[v], tuple(sorted(colors[w] for w in succ[v])), tuple(sorted(colors[u] for u in pred[v])))
            for v in range(n)
        ]
        ranks2 = {s: i for i, s in enumerate(sorted(set(sigs2)))}
        new = [ranks2[s] for s in sigs2]
        if len(ranks2) == len(set(colors)):
            return new
        colors = new


def canonical_form(keys: Sequence[Hashable], edges: Sequence[tuple[int, int]]) -> tuple:
    """Isomorphism-invariant encoding of vertices ``0..n-1`` with ``keys`` and ``edges``.

    ``keys`` must be mutually comparable. Parallel edges are kept with
    multiplicity.
    """
    n = len(keys)
    succ: list[list[int]] = [[] for _ in range(n)]
    pred: list[list[int]] = [[] for _ in range(n)]
    for s, t in edges:
        succ[s].append(t)
        pred[t].append(s)
    colors = _refine(keys, succ, pred)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(colors[v], []).append(v)
    ordered = [groups[c] for c in sorted(groups)]
    key_part = tuple(keys[g[0]] for g in ordered for _ in g)
    best: tuple | None = None
    for choice in product(*(permutations(g) for g in ordered)):
        pos = [0] * n
        i = 0
        for block in choice:
            for v in block:
                pos[v] = i
                i += 1
        enc = tuple(sorted((pos[s], pos[t]) for s, t in edges))
        if best is None or enc < best:
            best = enc
    return (key_part, best if best is not None else ())


def wd_canonical_key(w: WiringDiagram) -> tuple:
    verts = sorted(w.vertices)
    index = {v: i for i, v in enumerate(verts)}
    keys = [tuple(sorted(l.sort_key() for l in w.state_vectors[v])) for v in verts]
    edges = [(index[s], index[t]) for s, t in w.graph.edge_pairs()]
    return canonical_form(keys, edges)


def wd_isomorphic(w1: WiringDiagram, w2: WiringDiagram) -> bool:
    """True iff a vertex bijection preserves arrows and state vectors exactly."""
    if len(w1.vertices) != len(w2.vertices) or len(w1.graph.arrows) != len(w2.graph.arrows):
        return False
    return wd_canonical_key(w1) == wd_canonical_key(w2)
