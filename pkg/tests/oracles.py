"""Independent brute-force oracles for the graph miner.

Nothing here reuses the DFS-code machinery: isomorphism classes come from a
minimum-encoding over label-preserving vertex orderings, embeddings from a
naive backtracking assignment, and frequent-subgraph sets from exhaustive
edge-subset enumeration.
"""

from __future__ import annotations

import itertools
import math
from collections import defaultdict

from featsmith.graphs import LabeledGraph


def canon_key(g: LabeledGraph) -> tuple:
    """Complete isomorphism invariant: minimum encoding over label-preserving
    vertex orderings (vertices blocked by label, permuted within blocks)."""
    n = g.num_vertices
    by_label = defaultdict(list)
    for vid in range(n):
        by_label[g.vertex_labels[vid]].append(vid)
    blocks = [by_label[lab] for lab in sorted(by_label)]
    label_seq = tuple(
        lab for lab in sorted(by_label) for _ in by_label[lab]
    )
    best = None
    for perm_parts in itertools.product(
        *(itertools.permutations(block) for block in blocks)
    ):
        pos = {}
        i = 0
        for part in perm_parts:
            for vid in part:
                pos[vid] = i
                i += 1
        if g.directed:
            enc = tuple(sorted((pos[s], pos[d], lab) for s, d, lab in g.edges))
        else:
            enc = tuple(
                sorted(
                    (min(pos[s], pos[d]), max(pos[s], pos[d]), lab)
                    for s, d, lab in g.edges
                )
            )
        if best is None or enc < best:
            best = enc
    return (g.directed, label_seq, best)


def brute_has_embedding(pattern: LabeledGraph, host: LabeledGraph) -> bool:
    """Naive injective-assignment search, pattern vertices in id order."""
    pn, hn = pattern.num_vertices, host.num_vertices
    if pn > hn:
        return False
    if host.directed:
        host_edges = {(s, d): lab for s, d, lab in host.edges}
    else:
        host_edges = {}
        for s, d, lab in host.edges:
            host_edges[(s, d)] = lab
            host_edges[(d, s)] = lab

    def ok(vmap: dict[int, int]) -> bool:
        for s, d, lab in pattern.edges:
            if s in vmap and d in vmap:
                if host_edges.get((vmap[s], vmap[d])) != lab:
                    return False
        return True

    def assign(pv: int, vmap: dict[int, int], used: set[int]) -> bool:
        if pv == pn:
            return True
        for hv in range(hn):
            if hv in used:
                continue
            if host.vertex_labels[hv] != pattern.vertex_labels[pv]:
                continue
            vmap[pv] = hv
            used.add(hv)
            if ok(vmap) and assign(pv + 1, vmap, used):
                return True
            del vmap[pv]
            used.discard(hv)
        return False

    return assign(0, {}, set())


def _connected(labels: list[str], edges: list[tuple[int, int, str]]) -> bool:
    if not labels:
        return False
    n = len(labels)
    seen = {0}
    changed = True
    while changed:
        changed = False
        for s, d, _ in edges:
            if s in seen and d not in seen:
                seen.add(d)
                changed = True
            elif d in seen and s not in seen:
                seen.add(s)
                changed = True
    return len(seen) == n


def iter_connected_subgraphs(g: LabeledGraph, max_edges: int):
    """Every connected subgraph: single vertices plus connected edge subsets
    (vertex set induced by the chosen edges)."""
    for lab in g.vertex_labels:
        yield LabeledGraph((lab,), (), g.directed)
    edge_list = list(g.edges)
    for k in range(1, min(len(edge_list), max_edges) + 1):
        for subset in itertools.combinations(edge_list, k):
            vids = sorted({v for s, d, _ in subset for v in (s, d)})
            remap = {v: i for i, v in enumerate(vids)}
            labels = [g.vertex_labels[v] for v in vids]
            edges = [(remap[s], remap[d], lab) for s, d, lab in subset]
            if _connected(labels, edges):
                yield LabeledGraph(tuple(labels), tuple(edges), g.directed)


def brute_mine(
    corpus,
    fraction: float,
    groups=None,
    max_edges: int = 20,
) -> dict[tuple, tuple[LabeledGraph, int]]:
    """Exhaustively enumerate frequent connected subgraphs.

    Returns {canon_key: (representative graph, support)}.
    """
    if groups is None:
        groups = list(range(len(corpus)))
    min_count = math.ceil(fraction * len(set(groups)))
    hits: dict[tuple, set] = defaultdict(set)
    reps: dict[tuple, LabeledGraph] = {}
    for gid, g in enumerate(corpus):
        seen_here = set()
        for sub in iter_connected_subgraphs(g, max_edges):
            key = canon_key(sub)
            if key in seen_here:
                continue
            seen_here.add(key)
            hits[key].add(groups[gid])
            reps.setdefault(key, sub)
    return {
        key: (reps[key], len(gids))
        for key, gids in hits.items()
        if len(gids) >= min_count
    }
