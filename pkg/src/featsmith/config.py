"""Pipeline configuration and the bundled word-list resources.

Every threshold the CLI exposes lives here so that config files, CLI flags,
and build metadata stay in sync.  Word lists are plain editable text files
shipped as package data; a config file may point at replacements (recommended
when a stop word collides with a domain term of the target library).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, fields
from importlib import resources
from pathlib import Path


def _read_list(text: str) -> list[str]:
    out = []
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            out.append(line.lower())
    return out


def load_wordlist(name: str, override: str | Path | None = None) -> list[str]:
    if override is not None:
        return _read_list(Path(override).read_text(encoding="utf-8"))
    return _read_list(
        resources.files("featsmith.data").joinpath(name).read_text(encoding="utf-8")
    )


class SynonymLexicon:
    """Verb-lemma equivalence classes from a flat file, one class per line."""

    def __init__(self, classes: list[list[str]]):
        self._rep: dict[str, str] = {}
        self.classes = []
        for cls in classes:
            members = sorted({w.lower() for w in cls})
            if len(members) < 2:
                continue
            self.classes.append(members)
            rep = members[0]
            for m in members:
                self._rep[m] = rep

    @classmethod
    def from_lines(cls, lines: list[str]) -> "SynonymLexicon":
        return cls([line.split() for line in lines])

    @classmethod
    def bundled(cls, override: str | Path | None = None) -> "SynonymLexicon":
        return cls.from_lines(load_wordlist("synonyms.txt", override))

    def representative(self, lemma: str) -> str:
        return self._rep.get(lemma.lower(), lemma.lower())

    def are_synonyms(self, a: str, b: str) -> bool:
        return self.representative(a) == self.representative(b)


@dataclass
class FilterConfig:
    """Knobs for the three-filter phrase voting pipeline."""

    grammatical_stopwords: tuple[str, ...]
    qa_stopwords: tuple[str, ...]
    programming_stopterms: tuple[str, ...]
    qa_expressions: tuple[str, ...]
    upvote_weight: int = 1
    downvote_weight: int = 1
    # Rule ids promoted from downvote to veto; none by default.
    veto_rules: tuple[str, ...] = ()

    @classmethod
    def bundled(cls, **overrides) -> "FilterConfig":
        return cls(
            grammatical_stopwords=tuple(load_wordlist("stopwords_grammatical.txt")),
            qa_stopwords=tuple(load_wordlist("stopwords_qa.txt")),
            programming_stopterms=tuple(load_wordlist("stopwords_programming.txt")),
            qa_expressions=tuple(load_wordlist("qa_expressions.txt")),
            **overrides,
        )


@dataclass
class SearchBudget:
    """Bounds for type-directed expression search."""

    max_chain_calls: int = 4
    max_results: int = 10
    max_search_nodes: int = 50_000


@dataclass
class PipelineConfig:
    tag_filter: tuple[str, ...] = ()
    min_stars: int = 5
    min_sentence_chars: int = 15
    feature_min_support: int = 2
    pattern_support_fraction: float = 0.05
    max_pattern_edges: int = 20
    # Skip a source file when more than this share of statements is unsupported.
    max_unsupported_ratio: float = 0.5
    budget: SearchBudget = field(default_factory=SearchBudget)
    filters: FilterConfig = field(default_factory=FilterConfig.bundled)
    synonyms: SynonymLexicon = field(default_factory=SynonymLexicon.bundled)
    abbreviations: tuple[str, ...] = field(
        default_factory=lambda: tuple(load_wordlist("abbreviations.txt"))
    )
    particles: tuple[str, ...] = field(
        default_factory=lambda: tuple(load_wordlist("particles.txt"))
    )

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        """Load overrides from a JSON config file; unset keys keep defaults."""
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        cfg = cls()
        simple = {
            f.name
            for f in fields(cls)
            if f.name not in ("budget", "filters", "synonyms")
        }
        for key, value in raw.items():
            if key in simple:
                current = getattr(cfg, key)
                setattr(cfg, key, tuple(value) if isinstance(current, tuple) else value)
            elif key == "budget":
                cfg.budget = SearchBudget(**value)
            elif key == "filters":
                files = {
                    k: tuple(load_wordlist("", override=v))
                    for k, v in value.pop("files", {}).items()
                }
                cfg.filters = FilterConfig.bundled(**{**files, **{
                    k: tuple(v) if isinstance(v, list) else v for k, v in value.items()
                }})
            elif key == "synonyms_file":
                cfg.synonyms = SynonymLexicon.bundled(override=value)
            else:
                raise KeyError(f"unknown config key: {key}")
        return cfg

    def thresholds_dict(self) -> dict:
        """The threshold subset recorded in build metadata."""
        return {
            "min_stars": self.min_stars,
            "min_sentence_chars": self.min_sentence_chars,
            "feature_min_support": self.feature_min_support,
            "pattern_support_fraction": self.pattern_support_fraction,
            "max_pattern_edges": self.max_pattern_edges,
            "max_unsupported_ratio": self.max_unsupported_ratio,
            "upvote_weight": self.filters.upvote_weight,
            "downvote_weight": self.filters.downvote_weight,
        }
