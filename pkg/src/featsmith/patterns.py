"""Per-feature pattern mining: API matching, usage corpora, frequent DFG
subgraphs, and text-form skeleton recovery.

A feature is matched to the thread-mentioned API whose camel-split stemmed
name overlaps its words the most (occurrence count, then name, break ties).
Files using that API are abstracted to data-flow graphs and mined for
frequent subgraphs; the closed, API-containing patterns become skeletons:
statements are regenerated from the exemplar's covered operations in order,
results bound to fresh typed locals, retained constants kept (enum constants
hoisted into declarations), and everything else turned into typed holes.
"""

from __future__ import annotations

import math
import re
from collections import Counter, defaultdict
from dataclasses import dataclass, field

from .apiindex import APIIndex
from .config import PipelineConfig
from .features import FunctionalFeature
from .flow import DataFlowGraph, build_cfg, build_dfg, dominators, to_ssa
from .graphs import LabeledGraph, MinedPattern, find_embeddings, mine_frequent_subgraphs
from .ingest import SourceFile, Thread
from .ir import IRInstr, lower_methods
from .javaparse import Node, ParseError, parse_compilation_unit, statement_stats
from .lexicon import stem, stemmed_tokens
from .synth import (
    ConstRef,
    CtorCall,
    Expression,
    HoleFillStats,
    MethodCall,
    VarRef,
    canonical_form,
    render,
)


class NoMatchError(ValueError):
    pass


class EmptyCorpusError(ValueError):
    pass


class NoPatternError(ValueError):
    pass


@dataclass(frozen=True)
class APIRef:
    kind: str  # method | type
    name: str
    qualified: str
    overlap_score: int
    occurrence_count: int


@dataclass
class Hole:
    id: str
    kind: str  # HOLE | BODY
    expected_type: str | None
    marker: str

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "expected_type": self.expected_type,
            "marker": self.marker,
        }


@dataclass
class SkeletonCode:
    text: str
    holes: list[Hole]
    tree: Node | None = None

    def hole(self, hole_id: str) -> Hole | None:
        return next((h for h in self.holes if h.id == hole_id), None)

    def to_dict(self) -> dict:
        return {"text": self.text, "holes": [h.to_dict() for h in self.holes]}

    @classmethod
    def from_dict(cls, raw: dict) -> "SkeletonCode":
        holes = [Hole(**h) for h in raw.get("holes", [])]
        return cls(text=raw["text"], holes=holes, tree=parse_compilation_unit(raw["text"]))


@dataclass
class CodePattern:
    feature_id: str
    api: APIRef
    skeleton: SkeletonCode
    support: int
    provenance: str
    hole_stats: HoleFillStats = field(default_factory=HoleFillStats)


# -- API matching ----------------------------------------------------------------


def feature_words(feature: FunctionalFeature) -> list[str]:
    nf = feature.canonical
    words = [nf.action.verb]
    if nf.action.particle:
        words.append(nf.action.particle)
    words.extend(nf.object.words())
    if nf.condition:
        if nf.condition.verb:
            words.append(nf.condition.verb)
        words.extend(nf.condition.object.words())
    return words


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def code_terms_from_threads(threads: list[Thread]) -> list[str]:
    """Identifier-shaped tokens from the threads' code blocks (with repeats)."""
    out: list[str] = []
    for t in threads:
        for text in t.code_texts():
            out.extend(_IDENT.findall(text))
    return out


def match_api(
    feature: FunctionalFeature, thread_codes: list[str], index: APIIndex
) -> APIRef:
    """Pick the thread-mentioned API with the most overlapping name tokens."""
    member_names = index.member_names() & {t for t in thread_codes}
    known_methods = {m.name for m in index.methods if not m.constructor}
    known_types = set(index.types)
    candidates = {t for t in member_names if t in known_methods or t in known_types}
    if not candidates:
        raise NoMatchError(f"feature {feature.feature_id}: no known API mentioned in threads")
    occurrences = Counter(t for t in thread_codes if t in candidates)
    fwords = {stem(w) for w in feature_words(feature)}
    scored: list[tuple[int, int, str]] = []
    for name in candidates:
        overlap = len(set(stemmed_tokens(name)) & fwords)
        if overlap >= 1:
            scored.append((overlap, occurrences[name], name))
    if not scored:
        raise NoMatchError(
            f"feature {feature.feature_id}: zero token overlap with any mentioned API"
        )
    scored.sort(key=lambda s: (-s[0], -s[1], s[2]))
    overlap, occ, name = scored[0]
    if name in known_methods:
        owners = {m.owner for m in index.methods_named(name)}
        qualified = f"{sorted(owners)[0]}.{name}" if len(owners) == 1 else name
        kind = "method"
    else:
        qualified = name
        kind = "type"
    return APIRef(
        kind=kind, name=name, qualified=qualified, overlap_score=overlap, occurrence_count=occ
    )


def build_usage_corpus(api: APIRef, files: list[SourceFile]) -> list[SourceFile]:
    """Files mentioning the API's simple name as a whole token, in path order."""
    pattern = re.compile(rf"\b{re.escape(api.name)}\b")
    hits = [f for f in files if pattern.search(f.text)]
    hits.sort(key=lambda f: f.path)
    if not hits:
        raise EmptyCorpusError(f"no client file uses {api.name}")
    return hits


# -- corpus analysis ---------------------------------------------------------------


@dataclass
class MethodAnalysis:
    file_path: str
    method_name: str
    ir: object
    ssa: object
    dfg: DataFlowGraph


def analyze_files(
    files: list[SourceFile],
    index: APIIndex,
    config: PipelineConfig | None = None,
    warnings: list[str] | None = None,
) -> list[MethodAnalysis]:
    """Parse, lower, and abstract every usable method into a data-flow graph."""
    config = config or PipelineConfig()
    sink = warnings if warnings is not None else []
    out: list[MethodAnalysis] = []
    for f in files:
        try:
            unit = parse_compilation_unit(f.text)
        except ParseError as exc:
            sink.append(f"{f.path}: parse failed ({exc})")
            continue
        total, unsupported = statement_stats(unit)
        if total and unsupported / total > config.max_unsupported_ratio:
            sink.append(f"{f.path}: skipped ({unsupported}/{total} statements unsupported)")
            continue
        for mir in lower_methods(unit):
            if not mir.program.instrs:
                continue
            cfg = build_cfg(mir.program)
            ssa = to_ssa(cfg, mir.program)
            dfg = build_dfg(ssa, index)
            if not any(n.role == "op" for n in dfg.nodes):
                continue
            out.append(
                MethodAnalysis(
                    file_path=f.path,
                    method_name=mir.name,
                    ir=mir.program,
                    ssa=ssa,
                    dfg=dfg,
                )
            )
    return out


def api_op_labels(api: APIRef, index: APIIndex) -> set[str]:
    if api.kind == "method":
        return {api.name}
    labels = {f"new:{api.name}"}
    labels.update(m.name for m in index.methods if m.owner == api.name and not m.constructor)
    return labels


# -- mining ------------------------------------------------------------------------


def mine_pattern(
    corpus: list[SourceFile],
    api: APIRef,
    threshold_fraction: float,
    index: APIIndex,
    config: PipelineConfig | None = None,
    analyses: list[MethodAnalysis] | None = None,
) -> list[CodePattern]:
    """Closed frequent DFG subgraphs containing the API node, as skeletons.

    Mining walks the support threshold down from unanimity to the configured
    floor and stops at the first level that yields an API-containing closed
    pattern; that level necessarily holds the highest-support patterns, so
    the expensive low-support enumeration only runs when nothing better
    exists.
    """
    config = config or PipelineConfig()
    if analyses is None:
        analyses = analyze_files(corpus, index, config)
    if not analyses:
        raise NoPatternError(f"{api.name}: no analyzable files in corpus")
    graphs = [a.dfg.graph for a in analyses]
    groups = [a.file_path for a in analyses]
    n_files = len(set(groups))
    floor = max(1, math.ceil(threshold_fraction * n_files))
    wanted = api_op_labels(api, index)

    chosen: list[MinedPattern] = []
    for level in range(n_files, floor - 1, -1):
        mined = mine_frequent_subgraphs(
            graphs,
            threshold_fraction,
            groups=groups,
            max_edges=config.max_pattern_edges,
            min_support_count=level,
        )
        candidates = [
            p
            for p in mined
            if any(lab in wanted for lab in p.graph.vertex_labels)
            and "unknown" not in p.graph.vertex_labels
        ]
        closed = _closed_only(candidates, mined)
        if closed:
            chosen = closed
            break
    if not chosen:
        raise NoPatternError(f"{api.name}: no frequent subgraph contains the API node")

    chosen.sort(
        key=lambda p: (
            -p.support,
            -p.graph.num_vertices,
            -len(p.graph.edges),
            p.code.sort_key(),
        )
    )
    retention_floor = max(2, floor)
    out = []
    for p in chosen:
        skeleton, stats = recover_skeleton(
            p, analyses, index, retention_threshold=retention_floor
        )
        exemplar = min(
            (analyses[gid].file_path, analyses[gid].method_name) for gid in p.embeddings
        )
        out.append(
            CodePattern(
                feature_id="",
                api=api,
                skeleton=skeleton,
                support=p.support,
                provenance=exemplar[0],
                hole_stats=stats,
            )
        )
    return out


def _closed_only(
    candidates: list[MinedPattern], all_mined: list[MinedPattern]
) -> list[MinedPattern]:
    """Patterns with no equally-frequent proper super-pattern."""
    out = []
    for p in candidates:
        closed = True
        for q in all_mined:
            if q is p or q.support != p.support:
                continue
            if (q.graph.num_vertices, len(q.graph.edges)) <= (
                p.graph.num_vertices,
                len(p.graph.edges),
            ):
                continue
            if find_embeddings(p.graph, q.graph, limit=1):
                closed = False
                break
        if closed:
            out.append(p)
    return out


# -- skeleton recovery -----------------------------------------------------------


def _lower_name(type_name: str) -> str:
    base = type_name.split("<")[0].split(".")[-1]
    return (base[0].lower() + base[1:]) if base else "v"


def _is_qual_const(text: str) -> bool:
    return bool(re.fullmatch(r"[A-Z]\w*(\.\w+)+", text))


def _host_arg_node(graph: LabeledGraph, op_nid: int, pos: int) -> int | None:
    want = f"arg{pos}"
    for src, dst, lab in graph.edges:
        if dst == op_nid and want in lab.split("+"):
            return src
    return None


def _resolve_const_text(analysis: MethodAnalysis, nid: int, depth: int = 0) -> str | None:
    """Constant text of a data node, chasing through assign plumbing."""
    node = analysis.dfg.nodes[nid]
    if node.const_text is not None:
        return node.const_text
    if depth > 4 or node.value is None:
        return None
    producer = _producer_of(analysis, nid)
    if producer is not None and producer[1].instr.kind in ("decl", "move"):
        src = _host_arg_node(analysis.dfg.graph, producer[0], 1)
        if src is not None:
            return _resolve_const_text(analysis, src, depth + 1)
    return None


def _producer_of(analysis: MethodAnalysis, data_nid: int):
    """(op node id, ssa instr) producing this data node, if any."""
    for src, dst, lab in analysis.dfg.graph.edges:
        if dst == data_nid and "res" in lab.split("+"):
            node = analysis.dfg.nodes[src]
            ssa_ins = _ssa_of(analysis, node.instr)
            if ssa_ins is not None:
                return src, ssa_ins
    return None


def _ssa_of(analysis: MethodAnalysis, raw: IRInstr | None):
    if raw is None:
        return None
    for ins in analysis.ssa.instrs:
        if ins.instr is raw:
            return ins
    return None


def recover_skeleton(
    pattern: MinedPattern,
    analyses: list[MethodAnalysis],
    index: APIIndex,
    retention_threshold: int = 2,
) -> tuple[SkeletonCode, HoleFillStats]:
    """Rebuild text-form skeleton code from a mined pattern.

    The exemplar is the lexicographically smallest witness; covered
    operations are re-rendered in its (canonical) instruction order, with
    uncovered expression positions becoming typed ``<$HOLE>`` markers keyed
    by the source value (so one variable yields one hole id) and uncovered
    mandatory blocks becoming ``<$BODY>``.
    """
    if not pattern.embeddings:
        raise NoPatternError("pattern has no witness embeddings")
    gid = min(pattern.embeddings, key=lambda g: (analyses[g].file_path, analyses[g].method_name, g))
    analysis = analyses[gid]
    vmap = pattern.embeddings[gid]
    host_of_pattern = dict(vmap)
    pattern_of_host = {h: p for p, h in vmap.items()}
    dfg = analysis.dfg
    graph = dfg.graph

    covered_ops = {
        h for p, h in vmap.items() if dfg.nodes[h].role == "op"
    }
    retained = _retained_constants(pattern, analyses, retention_threshold)

    # hole bookkeeping: host data node -> placeholder
    hole_types: dict[int, str | None] = {}
    hole_order: list[int] = []

    def hole_marker(nid: int) -> str:
        if nid not in hole_types:
            label = dfg.nodes[nid].label if nid >= 0 else "unknown"
            pvid = pattern_of_host.get(nid)
            if pvid is not None:
                label = pattern.graph.vertex_labels[pvid]
            hole_types[nid] = None if label == "unknown" else label
            hole_order.append(nid)
        return f"\x00H{nid}\x00"

    bind_names: dict[int, str] = {}
    name_counts: Counter = Counter()
    hoisted: dict[str, str] = {}
    pre_lines: dict[int, list[str]] = defaultdict(list)  # op nid -> hoist decls

    def bind_name(op_nid: int, type_name: str | None) -> str:
        if op_nid not in bind_names:
            base = _lower_name(type_name or "value")
            name_counts[base] += 1
            bind_names[op_nid] = f"{base}_{name_counts[base]}"
        return bind_names[op_nid]

    def operand_text(op_nid: int, pos: int, ssa_ins) -> str:
        nid = _host_arg_node(graph, op_nid, pos)
        if nid is None:
            return hole_marker(-op_nid * 100 - pos)  # missing in host: plain hole
        pvid = pattern_of_host.get(nid)
        if pvid is not None and pvid in retained:
            text = retained[pvid]
            if _is_qual_const(text):
                if text not in hoisted:
                    tname = dfg.nodes[nid].label
                    local = bind_name(-nid - 1, tname)
                    hoisted[text] = local
                    pre_lines[op_nid].append(f"{tname} {local} = {text};")
                return hoisted[text]
            return text
        producer = _producer_of(analysis, nid)
        if producer is not None and producer[0] in covered_ops:
            node = dfg.nodes[nid]
            return bind_name(producer[0], node.type_name if node.type_name != "unknown" else None)
        if producer is not None and producer[1].instr.kind in ("decl", "move"):
            # look through uncovered assign plumbing to a retained source
            src = _host_arg_node(graph, producer[0], 1)
            if src is not None and pattern_of_host.get(src) in retained:
                return operand_text(producer[0], 1, producer[1])
        return hole_marker(nid)

    # try/catch wrapping: covered catch markers group their covered ops
    catch_hosts = sorted(
        h for h in covered_ops if dfg.nodes[h].label.startswith("catch:")
    )
    op_catch: dict[int, int] = {}
    for src, dst, lab in graph.edges:
        if "ex" in lab.split("+") and dst in catch_hosts and src in covered_ops:
            op_catch[src] = dst
    dom = dominators(analysis.ssa.cfg)

    def handler_block(catch_nid: int) -> str | None:
        raw = dfg.nodes[catch_nid].instr
        ssa_ins = _ssa_of(analysis, raw)
        return ssa_ins.block if ssa_ins else None

    def source_order(ssa_ins) -> tuple:
        origin = ssa_ins.instr.origin
        start = origin.byte_span[0] if origin is not None else 0
        return (start, analysis.ssa.instrs.index(ssa_ins))

    rendered: list[tuple[str, int | None]] = []  # (line, catch host or None)
    for ssa_ins in sorted(analysis.ssa.instrs, key=source_order):
        raw = ssa_ins.instr
        op_nid = _op_node_of(analysis, raw)
        if op_nid is None or op_nid not in covered_ops:
            continue
        if raw.kind == "catch":
            continue
        line = _render_instr(ssa_ins, op_nid, analysis, index, operand_text, bind_name)
        if line is None:
            continue
        group = op_catch.get(op_nid)
        if group is None:
            hb = {handler_block(c) for c in catch_hosts}
            blk_dom = dom.get(ssa_ins.block, set())
            inside = next((c for c in catch_hosts if handler_block(c) in blk_dom), None)
            group = (-inside - 1000) if inside is not None else None
        for pre in pre_lines.pop(op_nid, ()):  # hoisted constants come first
            rendered.append((pre, group))
        rendered.append((line, group))

    lines = _assemble(rendered, catch_hosts, dfg, analysis)

    text = "\n".join(lines) + ("\n" if lines else "")
    # number holes by first textual occurrence
    holes: list[Hole] = []
    ordered: list[int] = []
    for m in re.finditer(r"\x00H(-?\d+)\x00", text):
        nid = int(m.group(1))
        if nid not in ordered:
            ordered.append(nid)
    numbered_order = []
    for i, nid in enumerate(ordered, start=1):
        marker = f"<$HOLE{i}>"
        text = text.replace(f"\x00H{nid}\x00", marker)
        numbered_order.append(nid)
        holes.append(
            Hole(id=f"HOLE{i}", kind="HOLE", expected_type=hole_types[nid], marker=marker)
        )
    hole_order[:] = numbered_order
    n_bodies = text.count("<$BODY>")
    for i in range(n_bodies):
        hid = "BODY" if i == 0 else f"BODY{i + 1}"
        holes.append(Hole(id=hid, kind="BODY", expected_type=None, marker="<$BODY>"))
    if n_bodies > 1:
        # number the later markers so fills stay addressable
        parts = text.split("<$BODY>")
        text = parts[0]
        for i, part in enumerate(parts[1:], start=1):
            marker = "<$BODY>" if i == 1 else f"<$BODY{i}>"
            text += marker + part
        for i, h in enumerate([h for h in holes if h.kind == "BODY"]):
            h.marker = "<$BODY>" if i == 0 else f"<$BODY{i + 1}>"

    tree = parse_compilation_unit(text)
    skeleton = SkeletonCode(text=text, holes=holes, tree=tree)
    stats = _collect_fill_stats(pattern, analyses, index, hole_order, holes, gid)
    return skeleton, stats


def _op_node_of(analysis: MethodAnalysis, raw: IRInstr) -> int | None:
    for i, node in enumerate(analysis.dfg.nodes):
        if node.role == "op" and node.instr is raw:
            return i
    return None


def _render_instr(ssa_ins, op_nid, analysis, index, operand_text, bind_name) -> str | None:
    raw = ssa_ins.instr
    dfg = analysis.dfg

    def arg(pos: int) -> str:
        return operand_text(op_nid, pos, ssa_ins)

    n_args = len(ssa_ins.args)
    args = ", ".join(arg(i + 1) for i in range(n_args))
    target = None
    if ssa_ins.dst is not None and raw.kind in ("call", "new", "getfield", "cast", "binop"):
        res_nid = analysis.dfg.value_node.get(ssa_ins.dst.resolve().vid)
        rtype = dfg.nodes[res_nid].type_name if res_nid is not None else None
        if rtype in (None, "unknown", "void"):
            target = None
        else:
            target = (rtype, bind_name(op_nid, rtype))
    if raw.kind == "call":
        recv = arg(0) + "." if ssa_ins.recv is not None else ""
        core = f"{recv}{raw.method}({args})"
    elif raw.kind == "new":
        core = f"new {raw.type_name}({args})"
    elif raw.kind == "getfield":
        core = f"{arg(0)}.{raw.field_name}"
    elif raw.kind == "putfield":
        core = f"{arg(0)}.{raw.field_name} = {args}"
    elif raw.kind == "binop":
        core = f"{arg(1)} {raw.op} {arg(2)}" if n_args == 2 else f"{raw.op}{arg(1)}"
    elif raw.kind == "cast":
        core = f"({raw.type_name}) {arg(1)}"
    elif raw.kind == "pstop":
        core = f"{arg(1)}{raw.op}"
    elif raw.kind in ("decl", "move"):
        rhs = arg(1)
        res_nid = analysis.dfg.value_node.get(ssa_ins.dst.resolve().vid) if ssa_ins.dst else None
        rtype = dfg.nodes[res_nid].type_name if res_nid is not None else "unknown"
        if rtype in ("unknown",):
            return None
        name = bind_name(op_nid, rtype)
        return f"{rtype} {name} = {rhs};"
    else:
        return None
    if target is not None:
        return f"{target[0]} {target[1]} = {core};"
    return f"{core};"


def _assemble(rendered, catch_hosts, dfg, analysis) -> list[str]:
    """Wrap catch-grouped lines in try/catch; everything else stays flat.

    `rendered` groups are None (flat), a catch host id (inside that try), or
    -(catch host id + 1000) (inside that handler's body).
    """
    handler_bodies: dict[int, list[str]] = defaultdict(list)
    flow: list[tuple[str, int | None]] = []
    for line, group in rendered:
        if group is not None and group < 0:
            handler_bodies[-(group + 1000)].append(line)
        else:
            flow.append((line, group))

    lines: list[str] = []
    i = 0
    while i < len(flow):
        line, group = flow[i]
        if group is None:
            lines.append(line)
            i += 1
            continue
        catch_nid = group
        body = []
        while i < len(flow) and flow[i][1] == catch_nid:
            body.append(flow[i][0])
            i += 1
        raw = dfg.nodes[catch_nid].instr
        ctype = raw.type_name
        cname = raw.dst or "e"
        handler = handler_bodies.get(catch_nid)
        handler_text = (
            "\n".join("    " + l for l in handler) if handler else "    <$BODY>"
        )
        lines.append("try {")
        lines.extend("    " + l for l in body)
        lines.append(f"}} catch ({ctype} {cname}) {{")
        lines.append(handler_text)
        lines.append("}")
    return lines


def _retained_constants(
    pattern: MinedPattern, analyses: list[MethodAnalysis], threshold: int
) -> dict[int, str]:
    """Pattern data vertices whose witness values agree often enough to keep."""
    out: dict[int, str] = {}
    for pvid, label in enumerate(pattern.graph.vertex_labels):
        votes: Counter = Counter()
        for gid, vmap in pattern.embeddings.items():
            if pvid not in vmap:
                continue
            text = _resolve_const_text(analyses[gid], vmap[pvid])
            if text is not None:
                votes[text] += 1
        if votes:
            text, count = votes.most_common(1)[0]
            if count >= threshold:
                out[pvid] = text
    return out


def _collect_fill_stats(
    pattern: MinedPattern,
    analyses: list[MethodAnalysis],
    index: APIIndex,
    hole_order: list[int],
    holes: list[Hole],
    exemplar_gid: int,
) -> HoleFillStats:
    """Def-use extraction: for every hole, chase each witness's filler back
    through definitions until free variables, yielding canonical expressions."""
    stats = HoleFillStats()
    exemplar_vmap = pattern.embeddings[exemplar_gid]
    host_to_pattern = {h: p for p, h in exemplar_vmap.items()}
    for hole, host_nid in zip([h for h in holes if h.kind == "HOLE"], hole_order):
        pvid = host_to_pattern.get(host_nid)
        if pvid is None:
            continue  # hole position outside the pattern: no cross-corpus anchor
        for gid, vmap in sorted(pattern.embeddings.items()):
            if pvid not in vmap:
                continue
            expr = _extract_expression(analyses[gid], vmap[pvid], index)
            if expr is not None:
                stats.add(
                    hole.id,
                    canonical_form(expr),
                    render(expr),
                    expr.result_type(),
                )
    return stats


def _extract_expression(
    analysis: MethodAnalysis, nid: int, index: APIIndex, depth: int = 0
) -> Expression | None:
    node = analysis.dfg.nodes[nid]
    if node.const_text is not None:
        return ConstRef(node.const_text, node.type_name)
    if depth > 5:
        return VarRef("deep", node.type_name)
    producer = _producer_of(analysis, nid)
    if producer is None:
        base = node.value.base if node.value is not None else "v"
        return VarRef(base, node.type_name)
    op_nid, ssa_ins = producer
    raw = ssa_ins.instr
    graph = analysis.dfg.graph

    def sub(pos: int) -> Expression | None:
        child = _host_arg_node(graph, op_nid, pos)
        if child is None:
            return None
        return _extract_expression(analysis, child, index, depth + 1)

    if raw.kind in ("decl", "move"):
        inner = sub(1)
        return inner
    if raw.kind == "new":
        args = []
        for i in range(len(ssa_ins.args)):
            a = sub(i + 1)
            if a is None:
                return VarRef(node.value.base if node.value else "v", node.type_name)
            args.append(a)
        return CtorCall(raw.type_name, tuple(args))
    if raw.kind == "call":
        recv = sub(0) if ssa_ins.recv is not None else None
        if recv is None:
            return VarRef(node.value.base if node.value else "v", node.type_name)
        method = index.lookup_method(recv.result_type().split("<")[0], raw.method)
        owner = method.owner if method else recv.result_type()
        returns = method.returns if method else node.type_name
        args = []
        for i in range(len(ssa_ins.args)):
            a = sub(i + 1)
            if a is None:
                return VarRef(node.value.base if node.value else "v", node.type_name)
            args.append(a)
        return MethodCall(recv, owner, raw.method, returns, tuple(args))
    # phi, pstop, binop, cast, getfield terminate the chase
    base = node.value.base if node.value is not None else "v"
    return VarRef(base, node.type_name)
