"""Generic labeled graphs, canonical DFS codes, and frequent-subgraph mining.

The miner follows the classic DFS-code / rightmost-path-extension scheme:
patterns are grown one edge at a time along the rightmost path of their DFS
tree, and a grown code is explored further only if it is the canonical
(minimal) code of its graph.  Support is transaction-based: a corpus graph
counts once no matter how many embeddings it contains.  An optional group
mapping lets callers count support over coarser units (e.g. one sentence
owning several trees).

Both directed and undirected graphs are supported.  For directed graphs the
DFS-code tuples carry a direction token relative to the traversal, so the
canonical form distinguishes a->b from b->a.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from typing import Sequence


class GraphError(ValueError):
    pass


# Direction tokens as seen from the traversal source vertex.
DIR_NONE = "-"   # undirected edge
DIR_OUT = "<"    # edge points source -> target (sorts before DIR_IN)
DIR_IN = ">"     # edge points target -> source


@dataclass
class LabeledGraph:
    """Vertex/edge-labeled graph with dense integer vertex ids.

    Treated as immutable after construction; at most one edge may exist
    between any unordered vertex pair (no self loops, no multi-edges).
    """

    vertex_labels: tuple[str, ...]
    edges: tuple[tuple[int, int, str], ...]
    directed: bool = False

    def __post_init__(self):
        self.vertex_labels = tuple(self.vertex_labels)
        self.edges = tuple((int(s), int(d), str(l)) for s, d, l in self.edges)
        n = len(self.vertex_labels)
        seen = set()
        for src, dst, _ in self.edges:
            if not (0 <= src < n and 0 <= dst < n):
                raise GraphError(f"edge ({src},{dst}) references unknown vertex")
            if src == dst:
                raise GraphError(f"self-loop on vertex {src}")
            key = frozenset((src, dst))
            if key in seen:
                raise GraphError(f"duplicate edge between {src} and {dst}")
            seen.add(key)
        self._adj = None

    @property
    def num_vertices(self) -> int:
        return len(self.vertex_labels)

    def adjacency(self) -> list[list[tuple[int, str, str]]]:
        """Per-vertex list of (other, edge_label, direction_token)."""
        if self._adj is None:
            adj = [[] for _ in range(self.num_vertices)]
            for src, dst, lab in self.edges:
                if self.directed:
                    adj[src].append((dst, lab, DIR_OUT))
                    adj[dst].append((src, lab, DIR_IN))
                else:
                    adj[src].append((dst, lab, DIR_NONE))
                    adj[dst].append((src, lab, DIR_NONE))
            for lst in adj:
                lst.sort()
            self._adj = adj
        return self._adj

    def is_connected(self) -> bool:
        if self.num_vertices == 0:
            return False
        seen = {0}
        stack = [0]
        adj = self.adjacency()
        while stack:
            for other, _, _ in adj[stack.pop()]:
                if other not in seen:
                    seen.add(other)
                    stack.append(other)
        return len(seen) == self.num_vertices

    def to_text(self) -> str:
        """Debug dump: header line, then vertex and edge lines."""
        lines = ["t %s" % ("directed" if self.directed else "undirected")]
        for vid, lab in enumerate(self.vertex_labels):
            lines.append(f"v {vid} {lab}")
        for src, dst, lab in sorted(self.edges):
            lines.append(f"e {src} {dst} {lab}")
        return "\n".join(lines)

    @classmethod
    def from_text(cls, text: str) -> "LabeledGraph":
        directed = False
        labels: list[str] = []
        edges = []
        for line in text.splitlines():
            parts = line.split(" ", 3 if line.startswith("e") else 2)
            if not parts or not parts[0]:
                continue
            if parts[0] == "t":
                directed = parts[1] == "directed"
            elif parts[0] == "v":
                labels.append(parts[2])
            elif parts[0] == "e":
                edges.append((int(parts[1]), int(parts[2]), parts[3]))
        return cls(tuple(labels), tuple(edges), directed)


# A DFS-code edge: (frm, to, frm_label, direction, edge_label, to_label).
# Backward edges (frm > to) repeat labels already fixed by earlier tuples but
# keep them anyway; equality and ordering stay well-defined.
DFSEdge = tuple[int, int, str, str, str]


@dataclass(frozen=True)
class DFSCode:
    """Canonical DFS code: edge tuples, or a bare root label for K1."""

    edges: tuple[DFSEdge, ...]
    root_label: str | None = None

    def sort_key(self):
        return (len(self.edges), self.edges, self.root_label or "")

    def to_graph(self, directed: bool) -> LabeledGraph:
        if not self.edges:
            if self.root_label is None:
                raise GraphError("empty DFS code")
            return LabeledGraph((self.root_label,), (), directed)
        labels: dict[int, str] = {}
        edges = []
        for frm, to, flab, dirtok, elab, tlab in self.edges:
            if flab:
                labels.setdefault(frm, flab)
            if tlab:
                labels.setdefault(to, tlab)
            if dirtok == DIR_IN:
                edges.append((to, frm, elab))
            else:
                edges.append((frm, to, elab))
        n = max(labels) + 1
        return LabeledGraph(
            tuple(labels[i] for i in range(n)), tuple(edges), directed
        )


@dataclass
class _PDFS:
    """One growth step of an embedding: traversal (u -> v) plus its parent."""

    gid: int
    u: int
    v: int
    elabel: str
    dirtok: str
    prev: "_PDFS | None"


def _chain(p: _PDFS) -> list[_PDFS]:
    out = []
    while p is not None:
        out.append(p)
        p = p.prev
    out.reverse()
    return out


class _Embedding:
    """Materialized view of a PDFS chain against one host graph."""

    def __init__(self, code_edges: Sequence[DFSEdge], p: _PDFS):
        self.gid = p.gid
        steps = _chain(p)
        self.vmap: dict[int, int] = {}
        self.used_pairs: set[frozenset] = set()
        for (frm, to, _, _, _, _), step in zip(code_edges, steps):
            if frm < to:  # forward edge discovers `to`
                self.vmap.setdefault(frm, step.u)
                self.vmap[to] = step.v
            self.used_pairs.add(frozenset((step.u, step.v)))
        self.used_vertices = set(self.vmap.values())


def _rightmost_path(code_edges: Sequence[DFSEdge]) -> list[int]:
    """Indices of code edges on the rightmost path, rightmost edge first."""
    path = []
    want = None
    for i in range(len(code_edges) - 1, -1, -1):
        frm, to = code_edges[i][0], code_edges[i][1]
        if frm < to and (want is None or to == want):
            path.append(i)
            want = frm
    return path


# Extension descriptors:
#   ("b", to_idx, dirtok, elabel)                backward from rightmost vertex
#   ("f", frm_idx, dirtok, elabel, to_label)     forward off the rightmost path
def _ext_sort_key(ext):
    if ext[0] == "b":
        return (0, ext[1], ext[2], ext[3], "")
    return (1, -ext[1], ext[2], ext[3], ext[4])


def _ext_to_dfsedge(ext, code_edges: Sequence[DFSEdge], root_label: str) -> DFSEdge:
    def vlabel(idx: int) -> str:
        if idx == 0:
            return root_label
        for frm, to, flab, _, _, tlab in code_edges:
            if to == idx:
                return tlab
        raise GraphError(f"unknown code vertex {idx}")

    maxtoc = max((e[1] for e in code_edges), default=0)
    if ext[0] == "b":
        _, to, dirtok, elab = ext
        return (maxtoc, to, vlabel(maxtoc), dirtok, elab, vlabel(to))
    _, frm, dirtok, elab, tlab = ext
    return (frm, maxtoc + 1, vlabel(frm), dirtok, elab, tlab)


def _extensions(
    code_edges: Sequence[DFSEdge],
    graphs: dict[int, LabeledGraph],
    projected: list[_PDFS],
):
    """All rightmost-path extensions over the given projections.

    Returns {extension_descriptor: [PDFS, ...]}.  Liberal within the
    rightmost path; non-canonical growths are pruned later by the
    minimality check.
    """
    rmpath = _rightmost_path(code_edges)
    maxtoc = max(e[1] for e in code_edges)
    rm_vertices = [code_edges[i][0] for i in reversed(rmpath)] + [maxtoc]
    exts: dict[tuple, list[_PDFS]] = defaultdict(list)
    for p in projected:
        g = graphs[p.gid]
        emb = _Embedding(code_edges, p)
        adj = g.adjacency()
        rm_host = emb.vmap[maxtoc]
        # Backward: rightmost vertex to an earlier rightmost-path vertex.
        for idx in rm_vertices[:-1]:
            host = emb.vmap[idx]
            for other, elab, dirtok in adj[rm_host]:
                if other != host:
                    continue
                if frozenset((rm_host, other)) in emb.used_pairs:
                    continue
                exts[("b", idx, dirtok, elab)].append(
                    _PDFS(p.gid, rm_host, other, elab, dirtok, p)
                )
        # Forward: any rightmost-path vertex to a fresh host vertex.
        for idx in reversed(rm_vertices):
            host = emb.vmap[idx]
            for other, elab, dirtok in adj[host]:
                if other in emb.used_vertices:
                    continue
                key = ("f", idx, dirtok, elab, g.vertex_labels[other])
                exts[key].append(_PDFS(p.gid, host, other, elab, dirtok, p))
    return exts


def min_dfs_code(g: LabeledGraph) -> DFSCode:
    """Lexicographically minimal DFS code; invariant under vertex renumbering."""
    if g.num_vertices == 0:
        raise GraphError("empty graph has no DFS code")
    if not g.is_connected():
        raise GraphError("graph is disconnected; mine per connected component")
    if not g.edges:
        return DFSCode((), root_label=g.vertex_labels[0])

    graphs = {0: g}
    roots: dict[tuple, list[_PDFS]] = defaultdict(list)
    for u in range(g.num_vertices):
        for other, elab, dirtok in g.adjacency()[u]:
            key = (g.vertex_labels[u], dirtok, elab, g.vertex_labels[other])
            roots[key].append(_PDFS(0, u, other, elab, dirtok, None))
    first = min(roots)
    root_label = first[0]
    code: list[DFSEdge] = [(0, 1, first[0], first[1], first[2], first[3])]
    projected = roots[first]
    while True:
        exts = _extensions(code, graphs, projected)
        if not exts:
            break
        best = min(exts, key=_ext_sort_key)
        code.append(_ext_to_dfsedge(best, code, root_label))
        projected = exts[best]
    return DFSCode(tuple(code))


def _is_min(code_edges: Sequence[DFSEdge], directed: bool) -> bool:
    probe = DFSCode(tuple(code_edges))
    return min_dfs_code(probe.to_graph(directed)).edges == probe.edges


def find_embeddings(
    pattern: LabeledGraph,
    host: LabeledGraph,
    limit: int | None = None,
) -> list[dict[int, int]]:
    """Label-preserving subgraph-isomorphic embeddings (pattern -> host).

    Non-induced semantics: the host may carry extra edges between mapped
    vertices.  Directedness of pattern and host must agree.
    """
    if pattern.directed != host.directed:
        raise GraphError("pattern/host directedness mismatch")
    if pattern.num_vertices == 0:
        return []
    order = _connected_order(pattern)
    padj = pattern.adjacency()
    hadj = host.adjacency()
    hset = [set(lst) for lst in hadj]
    results: list[dict[int, int]] = []

    def compatible(pv: int, hv: int, vmap: dict[int, int]) -> bool:
        if pattern.vertex_labels[pv] != host.vertex_labels[hv]:
            return False
        for other, elab, dirtok in padj[pv]:
            if other in vmap:
                if (vmap[other], elab, dirtok) not in hset[hv]:
                    return False
        return True

    def back(pos: int, vmap: dict[int, int], used: set[int]):
        if limit is not None and len(results) >= limit:
            return
        if pos == len(order):
            results.append(dict(vmap))
            return
        pv = order[pos]
        if pos == 0:
            candidates = range(host.num_vertices)
        else:
            anchor = next(
                (o for o, _, _ in padj[pv] if o in vmap), None
            )
            if anchor is None:
                candidates = range(host.num_vertices)
            else:
                candidates = [o for o, _, _ in hadj[vmap[anchor]]]
        for hv in candidates:
            if hv in used:
                continue
            if compatible(pv, hv, vmap):
                vmap[pv] = hv
                used.add(hv)
                back(pos + 1, vmap, used)
                del vmap[pv]
                used.discard(hv)
            if limit is not None and len(results) >= limit:
                return

    back(0, {}, set())
    return results


def _connected_order(g: LabeledGraph) -> list[int]:
    """Vertex visitation order where each vertex (after the first) touches a prior one."""
    order = [0]
    seen = {0}
    adj = g.adjacency()
    frontier = [0]
    while frontier:
        v = frontier.pop(0)
        for other, _, _ in adj[v]:
            if other not in seen:
                seen.add(other)
                order.append(other)
                frontier.append(other)
    if len(order) != g.num_vertices:
        raise GraphError("pattern is disconnected")
    return order


def subgraph_support(pattern: LabeledGraph, corpus: Sequence[LabeledGraph]) -> int:
    """Number of corpus graphs containing >=1 embedding of `pattern`."""
    if not pattern.is_connected():
        raise GraphError("pattern is disconnected")
    count = 0
    for g in corpus:
        if find_embeddings(pattern, g, limit=1):
            count += 1
    return count


@dataclass
class MinedPattern:
    """A frequent subgraph with its canonical code and one witness per graph."""

    graph: LabeledGraph
    code: DFSCode
    support: int
    embeddings: dict[int, dict[int, int]]
    maximal: bool = False

    def sort_key(self):
        return self.code.sort_key()


def mine_frequent_subgraphs(
    corpus: Sequence[LabeledGraph],
    min_support_fraction: float,
    *,
    groups: Sequence | None = None,
    max_edges: int = 20,
    min_support_count: int | None = None,
) -> list[MinedPattern]:
    """All connected frequent subgraphs at ceil(fraction * |groups|) support.

    `groups[i]` names the support-counting unit of corpus graph i (defaults
    to the graph itself).  `min_support_count` overrides the fraction with
    an exact absolute threshold.  Output is deterministic, ordered by
    canonical code; patterns with no frequent proper super-pattern are
    flagged maximal.
    """
    if not corpus:
        raise GraphError("empty corpus")
    if not (0 < min_support_fraction <= 1):
        raise GraphError("min_support_fraction must be in (0, 1]")
    if len({g.directed for g in corpus}) > 1:
        raise GraphError("corpus mixes directed and undirected graphs")
    directed = corpus[0].directed
    if groups is None:
        groups = list(range(len(corpus)))
    group_of = {gid: groups[gid] for gid in range(len(corpus))}
    min_count = (
        min_support_count
        if min_support_count is not None
        else math.ceil(min_support_fraction * len(set(groups)))
    )
    if min_count < 1:
        raise GraphError("support threshold must be >= 1")
    graphs = dict(enumerate(corpus))

    def support_of(gids) -> int:
        return len({group_of[gid] for gid in gids})

    patterns: list[MinedPattern] = []

    # Frequent single vertices.
    label_hits: dict[str, dict[int, int]] = defaultdict(dict)
    for gid, g in graphs.items():
        for vid, lab in enumerate(g.vertex_labels):
            label_hits[lab].setdefault(gid, vid)
    for lab in sorted(label_hits):
        hits = label_hits[lab]
        if support_of(hits) >= min_count:
            patterns.append(
                MinedPattern(
                    graph=LabeledGraph((lab,), (), directed),
                    code=DFSCode((), root_label=lab),
                    support=support_of(hits),
                    embeddings={gid: {0: vid} for gid, vid in sorted(hits.items())},
                )
            )

    # Edge-based patterns via rightmost-path extension.
    roots: dict[tuple, list[_PDFS]] = defaultdict(list)
    for gid, g in sorted(graphs.items()):
        adj = g.adjacency()
        for u in range(g.num_vertices):
            for other, elab, dirtok in adj[u]:
                key = (g.vertex_labels[u], dirtok, elab, g.vertex_labels[other])
                roots[key].append(_PDFS(gid, u, other, elab, dirtok, None))

    def witness_map(code_edges, projected) -> dict[int, dict[int, int]]:
        out: dict[int, dict[int, int]] = {}
        for p in projected:
            if p.gid not in out:
                out[p.gid] = _Embedding(code_edges, p).vmap
        return dict(sorted(out.items()))

    def grow(code_edges: list[DFSEdge], projected: list[_PDFS]):
        if support_of({p.gid for p in projected}) < min_count:
            return
        if not _is_min(code_edges, directed):
            return
        patterns.append(
            MinedPattern(
                graph=DFSCode(tuple(code_edges)).to_graph(directed),
                code=DFSCode(tuple(code_edges)),
                support=support_of({p.gid for p in projected}),
                embeddings=witness_map(code_edges, projected),
            )
        )
        if len(code_edges) >= max_edges:
            return
        exts = _extensions(code_edges, graphs, projected)
        for ext in sorted(exts, key=_ext_sort_key):
            root_label = code_edges[0][2]
            code_edges.append(_ext_to_dfsedge(ext, code_edges, root_label))
            grow(code_edges, exts[ext])
            code_edges.pop()

    for key in sorted(roots):
        edge: DFSEdge = (0, 1, key[0], key[1], key[2], key[3])
        grow([edge], roots[key])

    patterns.sort(key=lambda p: p.sort_key())
    _flag_maximal(patterns)
    return patterns


def _flag_maximal(patterns: list[MinedPattern]) -> None:
    """A pattern is maximal when no other mined pattern properly contains it."""
    for p in patterns:
        p.maximal = True
    for i, small in enumerate(patterns):
        for big in patterns:
            if big is small:
                continue
            if (len(big.graph.edges), big.graph.num_vertices) < (
                len(small.graph.edges),
                small.graph.num_vertices,
            ):
                continue
            if (
                len(big.graph.edges) == len(small.graph.edges)
                and big.graph.num_vertices == small.graph.num_vertices
            ):
                continue
            if find_embeddings(small.graph, big.graph, limit=1):
                small.maximal = False
                break
