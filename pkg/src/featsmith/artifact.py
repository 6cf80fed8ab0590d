"""The persisted catalog: feature/pattern entries plus build orchestration.

`build_nli` runs the offline pipeline end to end: sentences -> filtered
phrases -> clustered features -> API matching -> usage corpora -> mined
patterns -> skeletons with fill statistics.  Features that fail API matching
or pattern mining are recorded as exclusions in the build metadata rather
than silently dropped.  The artifact serializes to canonical JSON, so equal
inputs produce byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

from .apiindex import APIIndex
from .chunker import chunk_sentence
from .config import PipelineConfig
from .features import (
    Action,
    Condition,
    FeatureInstance,
    FunctionalFeature,
    NormalizedFeature,
    ObjectPhrase,
    analyze_sentence,
    cluster_features,
)
from .ingest import Sentence, SourceFile, ThreadCorpus, split_sentences
from .lexicon import stem
from .parsetree import parse_tree_from_bracketed
from .patterns import (
    CodePattern,
    EmptyCorpusError,
    NoMatchError,
    NoPatternError,
    SkeletonCode,
    APIRef,
    analyze_files,
    build_usage_corpus,
    code_terms_from_threads,
    feature_words,
    match_api,
    mine_pattern,
)
from .synth import HoleFillStats


class BuildError(ValueError):
    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


@dataclass
class NLIEntry:
    feature: FunctionalFeature
    pattern: CodePattern

    @property
    def entry_id(self) -> str:
        return self.feature.feature_id


@dataclass
class NLIArtifact:
    library: str
    api_index: APIIndex
    entries: list[NLIEntry]
    build_meta: dict = field(default_factory=dict)
    schema_version: int = 1

    def entry(self, entry_id: str) -> NLIEntry | None:
        return next((e for e in self.entries if e.entry_id == entry_id), None)

    # -- serialization ----------------------------------------------------
    def to_dict(self) -> dict:
        return {
            "schema_version": self.schema_version,
            "library": self.library,
            "api_index": self.api_index.to_dict(),
            "entries": [_entry_to_dict(e) for e in self.entries],
            "build": self.build_meta,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=1, ensure_ascii=False) + "\n"

    def content_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode("utf-8")).hexdigest()

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.to_json(), encoding="utf-8")

    @classmethod
    def from_dict(cls, raw: dict) -> "NLIArtifact":
        if raw.get("schema_version") != 1:
            raise BuildError(f"unsupported artifact schema {raw.get('schema_version')!r}")
        return cls(
            library=raw["library"],
            api_index=APIIndex.from_dict(raw["api_index"]),
            entries=[_entry_from_dict(e) for e in raw["entries"]],
            build_meta=raw.get("build", {}),
        )

    @classmethod
    def load(cls, path: str | Path) -> "NLIArtifact":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def _object_to_dict(o: ObjectPhrase) -> dict:
    return {
        "noun": o.noun,
        "determiner": o.determiner,
        "adjective": o.adjective,
        "modifiers": list(o.modifiers),
    }


def _object_from_dict(raw: dict) -> ObjectPhrase:
    return ObjectPhrase(
        noun=raw["noun"],
        determiner=raw.get("determiner"),
        adjective=raw.get("adjective"),
        modifiers=tuple(raw.get("modifiers", ())),
    )


def _feature_to_dict(f: FunctionalFeature) -> dict:
    nf = f.canonical
    return {
        "id": f.feature_id,
        "text": nf.text(),
        "action": {"verb": nf.action.verb, "particle": nf.action.particle},
        "object": _object_to_dict(nf.object),
        "condition": (
            {
                "preposition": nf.condition.preposition,
                "verb": nf.condition.verb,
                "object": _object_to_dict(nf.condition.object),
            }
            if nf.condition
            else None
        ),
        "surface_forms": sorted(f.surface_forms),
        "support": f.support,
        "thread_refs": sorted(f.thread_refs),
    }


def _feature_from_dict(raw: dict) -> FunctionalFeature:
    cond = raw.get("condition")
    nf = NormalizedFeature(
        Action(raw["action"]["verb"], raw["action"].get("particle")),
        _object_from_dict(raw["object"]),
        Condition(cond["preposition"], _object_from_dict(cond["object"]), cond.get("verb"))
        if cond
        else None,
    )
    return FunctionalFeature(
        canonical=nf,
        surface_forms=frozenset(raw.get("surface_forms", ())),
        support=raw["support"],
        thread_refs=frozenset(raw.get("thread_refs", ())),
        feature_id=raw["id"],
    )


def _entry_to_dict(e: NLIEntry) -> dict:
    p = e.pattern
    return {
        "feature": _feature_to_dict(e.feature),
        "pattern": {
            "api": {
                "kind": p.api.kind,
                "name": p.api.name,
                "qualified": p.api.qualified,
                "overlap_score": p.api.overlap_score,
                "occurrence_count": p.api.occurrence_count,
            },
            "skeleton": p.skeleton.to_dict(),
            "support": p.support,
            "provenance": p.provenance,
            "hole_stats": p.hole_stats.to_dict(),
        },
    }


def _entry_from_dict(raw: dict) -> NLIEntry:
    feature = _feature_from_dict(raw["feature"])
    p = raw["pattern"]
    pattern = CodePattern(
        feature_id=feature.feature_id,
        api=APIRef(**p["api"]),
        skeleton=SkeletonCode.from_dict(p["skeleton"]),
        support=p["support"],
        provenance=p["provenance"],
        hole_stats=HoleFillStats.from_dict(p["hole_stats"]),
    )
    return NLIEntry(feature=feature, pattern=pattern)


# -- pipeline --------------------------------------------------------------------


def extract_sentences(
    thread_corpus: ThreadCorpus, config: PipelineConfig
) -> list[Sentence]:
    out: list[Sentence] = []
    for thread in thread_corpus:
        idx = 0
        for block in thread.all_blocks():
            if block.kind != "prose":
                continue
            sentences = split_sentences(
                block,
                thread.id,
                min_chars=config.min_sentence_chars,
                abbreviations=config.abbreviations,
                start_index=idx,
            )
            idx += len(sentences)
            out.extend(sentences)
    return out


def build_nli(
    thread_corpus: ThreadCorpus,
    client_corpus: list[SourceFile],
    api_index: APIIndex,
    config: PipelineConfig | None = None,
    parses: dict[tuple[str, int], str] | None = None,
) -> NLIArtifact:
    """Run the offline pipeline and assemble the persisted catalog.

    `parses` optionally maps (thread id, sentence index) to a bracketed parse
    tree; sentences without one go through the bundled chunker.
    """
    config = config or PipelineConfig()
    diagnostics: dict = {"warnings": []}

    if not len(thread_corpus):
        raise BuildError("feature stage: thread corpus is empty", diagnostics)
    sentences = extract_sentences(thread_corpus, config)
    diagnostics["sentences"] = len(sentences)

    instances: list[FeatureInstance] = []
    kept_phrases = 0
    for sentence in sentences:
        if sentence.short:
            continue
        bracketed = (parses or {}).get((sentence.thread_id, sentence.index))
        tree = (
            parse_tree_from_bracketed(bracketed)
            if bracketed
            else chunk_sentence(sentence.masked_text)
        )
        analysis = analyze_sentence(sentence, tree, config.filters)
        kept_phrases += len(analysis.kept)
        instances.extend(analysis.instances)
    diagnostics["kept_phrases"] = kept_phrases
    diagnostics["instances"] = len(instances)
    if not instances:
        raise BuildError("feature stage: no phrase survived filtering", diagnostics)

    features = cluster_features(instances, config.feature_min_support, config.synonyms)
    diagnostics["features"] = len(features)
    if not features:
        raise BuildError(
            "cluster stage: no feature reached minimum support "
            f"{config.feature_min_support}",
            diagnostics,
        )

    threads_by_id = {t.id: t for t in thread_corpus}
    analyses = analyze_files(
        client_corpus, api_index, config, warnings=diagnostics["warnings"]
    )
    analyses_by_path: dict[str, list] = {}
    for a in analyses:
        analyses_by_path.setdefault(a.file_path, []).append(a)

    entries: list[NLIEntry] = []
    excluded: list[dict] = []
    for feature in features:
        threads = [threads_by_id[t] for t in sorted(feature.thread_refs) if t in threads_by_id]
        codes = code_terms_from_threads(threads)
        try:
            api = match_api(feature, codes, api_index)
            corpus = build_usage_corpus(api, client_corpus)
            corpus_analyses = [
                a for f in corpus for a in analyses_by_path.get(f.path, ())
            ]
            patterns = mine_pattern(
                corpus,
                api,
                config.pattern_support_fraction,
                api_index,
                config,
                analyses=corpus_analyses,
            )
        except (NoMatchError, EmptyCorpusError, NoPatternError) as exc:
            excluded.append(
                {
                    "feature_id": feature.feature_id,
                    "feature": feature.canonical.text(),
                    "reason": type(exc).__name__,
                    "detail": str(exc),
                }
            )
            continue
        best = patterns[0]
        best.feature_id = feature.feature_id
        entries.append(NLIEntry(feature=feature, pattern=best))

    if not entries:
        raise BuildError(
            "pattern stage: every feature was excluded", {**diagnostics, "excluded": excluded}
        )

    build_meta = {
        "corpus_hashes": {
            "threads": hashlib.sha256(thread_corpus.to_jsonl().encode("utf-8")).hexdigest(),
            "client": hashlib.sha256(
                "\n".join(
                    f"{f.path}:{hashlib.sha256(f.text.encode('utf-8')).hexdigest()}"
                    for f in sorted(client_corpus, key=lambda f: f.path)
                ).encode("utf-8")
            ).hexdigest(),
        },
        "thresholds": config.thresholds_dict(),
        "excluded": excluded,
        "counts": {
            "sentences": diagnostics["sentences"],
            "instances": diagnostics["instances"],
            "features": diagnostics["features"],
            "entries": len(entries),
        },
    }
    return NLIArtifact(
        library=api_index.library,
        api_index=api_index,
        entries=entries,
        build_meta=build_meta,
    )


def search_features(artifact: NLIArtifact, query: str) -> list[NLIEntry]:
    """Rank entries by stemmed-token overlap with the query; empty query
    returns everything ordered by support."""
    entries = list(artifact.entries)
    tokens = {stem(w) for w in query.split() if w}
    if not tokens:
        return sorted(entries, key=lambda e: (-e.feature.support, e.entry_id))
    scored = []
    for e in entries:
        words = {stem(w) for w in feature_words(e.feature)}
        overlap = len(words & tokens)
        if overlap > 0:
            scored.append((overlap, e))
    scored.sort(key=lambda pair: (-pair[0], -pair[1].feature.support, pair[1].entry_id))
    return [e for _, e in scored]
