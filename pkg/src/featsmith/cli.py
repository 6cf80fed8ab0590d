"""Command-line interface.

Subcommands mirror the pipeline stages: ingest, extract-features,
mine-patterns, build, search, synthesize, evaluate, serve.  Thresholds and
word-list overrides come from a JSON config file (--config); flags override
file values where both exist.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .apiindex import APIIndex
from .artifact import (
    BuildError,
    NLIArtifact,
    _feature_to_dict,
    build_nli,
    extract_sentences,
    search_features,
)
from .chunker import chunk_sentence
from .config import PipelineConfig, SearchBudget
from .features import analyze_sentence, cluster_features
from .ingest import load_client_corpus, load_threads
from .metrics import jaccard_distance, recommendation_metrics
from .parsetree import parse_tree_from_bracketed
from .synth import ContextVar, ProgrammingContext, build_type_graph, synthesize_hole


def _config_from(args) -> PipelineConfig:
    cfg = PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
    if getattr(args, "min_stars", None) is not None:
        cfg.min_stars = args.min_stars
    if getattr(args, "min_support", None) is not None:
        cfg.feature_min_support = args.min_support
    if getattr(args, "support_fraction", None) is not None:
        cfg.pattern_support_fraction = args.support_fraction
    if getattr(args, "tags", None):
        cfg.tag_filter = tuple(args.tags)
    return cfg


def _load_parses(path: str | None) -> dict | None:
    """Sidecar parse trees: JSONL of {thread_id, index, tree}."""
    if not path:
        return None
    out = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        if not line.strip():
            continue
        rec = json.loads(line)
        out[(rec["thread_id"], rec["index"])] = rec["tree"]
    return out


def _collect_instances(threads, cfg, parses):
    instances = []
    for sentence in extract_sentences(threads, cfg):
        if sentence.short:
            continue
        bracketed = (parses or {}).get((sentence.thread_id, sentence.index))
        tree = (
            parse_tree_from_bracketed(bracketed)
            if bracketed
            else chunk_sentence(sentence.masked_text)
        )
        instances.extend(analyze_sentence(sentence, tree, cfg.filters).instances)
    return instances


def cmd_ingest(args) -> int:
    cfg = _config_from(args)
    report: dict = {}
    if args.threads:
        corpus = load_threads(args.threads, set(cfg.tag_filter))
        report["threads"] = len(corpus)
        report["sentences"] = len(extract_sentences(corpus, cfg))
        if args.out:
            Path(args.out).mkdir(parents=True, exist_ok=True)
            (Path(args.out) / "threads.jsonl").write_text(corpus.to_jsonl(), encoding="utf-8")
    if args.client:
        warnings: list[str] = []
        files = load_client_corpus(args.client, cfg.min_stars, warnings=warnings)
        report["client_files"] = len(files)
        report["client_warnings"] = warnings
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def cmd_extract_features(args) -> int:
    cfg = _config_from(args)
    threads = load_threads(args.threads, set(cfg.tag_filter))
    instances = _collect_instances(threads, cfg, _load_parses(args.parses))
    features = cluster_features(instances, cfg.feature_min_support, cfg.synonyms)
    payload = [_feature_to_dict(f) for f in features]
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def _build(args) -> NLIArtifact:
    cfg = _config_from(args)
    threads = load_threads(args.threads, set(cfg.tag_filter))
    client = load_client_corpus(args.client, cfg.min_stars)
    index = APIIndex.load(args.api_index)
    return build_nli(threads, client, index, cfg, parses=_load_parses(args.parses))


def cmd_mine_patterns(args) -> int:
    artifact = _build(args)
    payload = [
        {
            "feature": e.feature.canonical.text(),
            "api": e.pattern.api.qualified,
            "support": e.pattern.support,
            "skeleton": e.pattern.skeleton.text,
            "holes": [h.to_dict() for h in e.pattern.skeleton.holes],
        }
        for e in artifact.entries
    ]
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def cmd_build(args) -> int:
    artifact = _build(args)
    artifact.save(args.out)
    print(
        json.dumps(
            {
                "out": args.out,
                "entries": len(artifact.entries),
                "excluded": len(artifact.build_meta.get("excluded", [])),
                "hash": artifact.content_hash(),
            },
            indent=2,
            sort_keys=True,
        )
    )
    return 0


def cmd_search(args) -> int:
    artifact = NLIArtifact.load(args.artifact)
    for e in search_features(artifact, args.query):
        print(f"{e.entry_id}\t{e.feature.support}\t{e.feature.canonical.text()}")
    return 0


def _parse_context(spec: str | None) -> ProgrammingContext:
    if not spec:
        return ProgrammingContext([])
    variables = []
    for i, part in enumerate(p.strip() for p in spec.split(",") if p.strip()):
        name, _, type_name = part.partition(":")
        variables.append(ContextVar(name.strip(), type_name.strip(), i))
    return ProgrammingContext(variables)


def cmd_synthesize(args) -> int:
    artifact = NLIArtifact.load(args.artifact)
    entry = artifact.entry(args.entry)
    if entry is None:
        print(f"no entry {args.entry}", file=sys.stderr)
        return 2
    ctx = _parse_context(args.context)
    tg = build_type_graph(artifact.api_index)
    budget = SearchBudget(max_chain_calls=args.chain_length, max_results=args.max_results)
    holes = entry.pattern.skeleton.holes
    if args.hole:
        holes = [h for h in holes if h.id == args.hole]
    out = {}
    for hole in holes:
        if hole.kind != "HOLE" or not hole.expected_type:
            continue
        ranked = synthesize_hole(
            hole.expected_type, ctx, tg, budget, entry.pattern.hole_stats, hole.id
        )
        out[hole.id] = [
            {"rank": r.rank, "text": r.text, "cost": r.cost, "frequency": r.corpus_frequency}
            for r in ranked
        ]
    print(json.dumps(out, indent=2, sort_keys=True))
    return 0


def cmd_evaluate(args) -> int:
    report: dict = {}
    if args.log:
        records = [
            json.loads(line)
            for line in Path(args.log).read_text(encoding="utf-8").splitlines()
            if line.strip()
        ]
        mrr, hit1 = recommendation_metrics(records)
        report["interactions"] = len(records)
        report["mrr"] = mrr
        report["hit1"] = hit1
    if args.api_sets:
        pairs = json.loads(Path(args.api_sets).read_text(encoding="utf-8"))
        distances = [
            jaccard_distance(p.get("mined", []), p.get("reference", [])) for p in pairs
        ]
        report["jaccard"] = distances
        report["jaccard_average"] = sum(distances) / len(distances) if distances else None
    if not report:
        print("nothing to evaluate: pass --log and/or --api-sets", file=sys.stderr)
        return 2
    print(json.dumps(report, indent=2, sort_keys=True))
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    artifact = NLIArtifact.load(args.artifact)
    app = create_app(artifact, log_path=args.log)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="featsmith", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, threads=False, client=False, index=False):
        p.add_argument("--config", help="JSON config file")
        if threads:
            p.add_argument("--threads", required=True, help="thread corpus file/dir")
            p.add_argument("--tags", nargs="*", default=None, help="tag filter")
            p.add_argument("--parses", help="sidecar bracketed parse trees (JSONL)")
        if client:
            p.add_argument("--client", required=True, help="client source tree")
            p.add_argument("--min-stars", type=int, default=None)
        if index:
            p.add_argument("--api-index", required=True, help="API signature file")
            p.add_argument("--support-fraction", type=float, default=None)
            p.add_argument("--min-support", type=int, default=None)

    p = sub.add_parser("ingest", help="validate and summarize corpora")
    p.add_argument("--config")
    p.add_argument("--threads")
    p.add_argument("--tags", nargs="*", default=None)
    p.add_argument("--client")
    p.add_argument("--min-stars", type=int, default=None)
    p.add_argument("--out", help="write normalized corpus dumps here")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("extract-features", help="sentences -> functional features")
    common(p, threads=True)
    p.add_argument("--min-support", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_extract_features)

    p = sub.add_parser("mine-patterns", help="run the pipeline, print patterns")
    common(p, threads=True, client=True, index=True)
    p.set_defaults(func=cmd_mine_patterns)

    p = sub.add_parser("build", help="build and save the catalog artifact")
    common(p, threads=True, client=True, index=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("search", help="search features in an artifact")
    p.add_argument("--artifact", required=True)
    p.add_argument("--query", default="")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("synthesize", help="rank hole fills for an entry")
    p.add_argument("--artifact", required=True)
    p.add_argument("--entry", required=True)
    p.add_argument("--hole")
    p.add_argument("--context", help='comma list "name:Type,..."')
    p.add_argument("--chain-length", type=int, default=4)
    p.add_argument("--max-results", type=int, default=10)
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("evaluate", help="metrics from logs / API-set pairs")
    p.add_argument("--log", help="interaction log JSONL")
    p.add_argument("--api-sets", help="JSON list of {mined, reference} pairs")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("serve", help="serve an artifact over HTTP")
    p.add_argument("--artifact", required=True)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8571)
    p.add_argument("--log", default="interactions.jsonl")
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (BuildError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        if isinstance(exc, BuildError) and exc.diagnostics:
            print(json.dumps(exc.diagnostics, indent=2, sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
