"""featsmith: mine functional features and code patterns, synthesize snippets.

Pipeline stages (each importable on its own):

  ingest      Q&A thread and client-source corpora
  features    verb-phrase filtering, normal form, frequent-subtree clustering
  graphs      generic labeled graphs, canonical DFS codes, subgraph mining
  javaparse   tolerant Java-subset parser
  ir          style-normalizing lowering with canonical dumps
  flow        CFG, SSA, type-annotated data-flow graphs
  patterns    API matching, pattern mining, skeleton recovery
  synth       type-directed hole filling with the integer cost model
  artifact    catalog build/serialization/search
  service     HTTP API over a built artifact
"""

from .apiindex import APIIndex
from .artifact import NLIArtifact, NLIEntry, build_nli, search_features
from .config import FilterConfig, PipelineConfig, SearchBudget, SynonymLexicon
from .features import FunctionalFeature, NormalizedFeature
from .graphs import LabeledGraph, MinedPattern, mine_frequent_subgraphs, min_dfs_code
from .ingest import load_client_corpus, load_threads, mask_code_terms, split_sentences
from .metrics import jaccard_distance, recommendation_metrics
from .patterns import CodePattern, SkeletonCode, match_api, mine_pattern
from .synth import (
    ProgrammingContext,
    RankedExpression,
    build_type_graph,
    cost,
    instantiate,
    synthesize_hole,
)

__all__ = [
    "APIIndex",
    "NLIArtifact",
    "NLIEntry",
    "build_nli",
    "search_features",
    "FilterConfig",
    "PipelineConfig",
    "SearchBudget",
    "SynonymLexicon",
    "FunctionalFeature",
    "NormalizedFeature",
    "LabeledGraph",
    "MinedPattern",
    "mine_frequent_subgraphs",
    "min_dfs_code",
    "load_client_corpus",
    "load_threads",
    "mask_code_terms",
    "split_sentences",
    "jaccard_distance",
    "recommendation_metrics",
    "CodePattern",
    "SkeletonCode",
    "match_api",
    "mine_pattern",
    "ProgrammingContext",
    "RankedExpression",
    "build_type_graph",
    "cost",
    "instantiate",
    "synthesize_hole",
]

__version__ = "0.1.0"
