"""Functional-feature extraction: verb-phrase candidates, the three-filter
voting pipeline, normal-form rewriting, and frequent-subtree clustering.

A phrase survives filtering unless some evidence vetoes it or its downvotes
outnumber its upvotes (ties keep).  Survivors are rewritten into the
Action/Object/[Condition] normal form, rebuilt as rooted labeled trees with
synonym-canonical verbs, and clustered by frequent-subtree mining; maximal
frequent subtrees that still decode to a well-formed feature become the
catalog entries.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field

from .config import FilterConfig, SynonymLexicon
from .graphs import LabeledGraph, find_embeddings, mine_frequent_subgraphs
from .ingest import Sentence
from .lexicon import lemmatize_verb, singularize_noun
from .parsetree import ParseTree, leaf_spans

VERB_TAGS = ("VB", "VBD", "VBG", "VBN", "VBP", "VBZ")
NOUN_TAGS = ("NN", "NNS", "NNP", "NNPS")
_PUNCT_LABELS = {",", ".", ":", "``", "''", "-LRB-", "-RRB-"}


class NormalizationError(ValueError):
    pass


@dataclass(frozen=True)
class Evidence:
    filter_name: str  # stopword | context | structure
    vote: str  # up | down | veto
    rule_id: str


@dataclass
class PhraseCandidate:
    subtree: ParseTree
    sentence_ref: Sentence | None
    span: tuple[int, int]
    # Tokens of the whole sentence tree; the context filter inspects the
    # prefix before this phrase.
    sentence_tokens: tuple[str, ...] = ()
    evidence: list[Evidence] = field(default_factory=list)

    @property
    def text(self) -> str:
        return self.subtree.text()

    def preceding_text(self) -> str:
        return _norm_spaces(" ".join(self.sentence_tokens[: self.span[0]]))


@dataclass(frozen=True)
class ObjectPhrase:
    noun: str
    determiner: str | None = None
    adjective: str | None = None
    modifiers: tuple[str, ...] = ()

    def words(self) -> list[str]:
        return [self.adjective] * bool(self.adjective) + list(self.modifiers) + [self.noun]


@dataclass(frozen=True)
class Condition:
    preposition: str
    object: ObjectPhrase
    verb: str | None = None


@dataclass(frozen=True)
class Action:
    verb: str
    particle: str | None = None


@dataclass(frozen=True)
class NormalizedFeature:
    action: Action
    object: ObjectPhrase
    condition: Condition | None = None

    def __post_init__(self):
        if not self.action.verb:
            raise NormalizationError("action verb must be nonempty")
        if not self.object.noun:
            raise NormalizationError("object noun must be nonempty")
        if self.condition and not (self.condition.preposition and self.condition.object.noun):
            raise NormalizationError("condition needs a preposition and an object noun")

    def text(self) -> str:
        parts = [self.action.verb]
        if self.action.particle:
            parts.append(self.action.particle)
        parts.extend(self.object.words())
        if self.condition:
            parts.append(self.condition.preposition)
            if self.condition.verb:
                parts.append(self.condition.verb)
            parts.extend(self.condition.object.words())
        return " ".join(parts)

    def to_parse_tree(self) -> ParseTree:
        """Rebuild a minimal parse tree that normalizes back to this feature."""

        def np(obj: ObjectPhrase) -> ParseTree:
            kids = []
            if obj.determiner:
                kids.append(ParseTree("DT", (), obj.determiner))
            if obj.adjective:
                kids.append(ParseTree("JJ", (), obj.adjective))
            for m in obj.modifiers:
                kids.append(ParseTree("NN", (), m))
            kids.append(ParseTree("NN", (), obj.noun))
            return ParseTree("NP", tuple(kids))

        kids = [ParseTree("VB", (), self.action.verb)]
        if self.action.particle:
            kids.append(ParseTree("PRT", (ParseTree("RP", (), self.action.particle),)))
        kids.append(np(self.object))
        if self.condition:
            pp_kids = [ParseTree("IN", (), self.condition.preposition)]
            if self.condition.verb:
                pp_kids.append(
                    ParseTree(
                        "S",
                        (
                            ParseTree(
                                "VP",
                                (
                                    ParseTree("VBG", (), self.condition.verb),
                                    np(self.condition.object),
                                ),
                            ),
                        ),
                    )
                )
            else:
                pp_kids.append(np(self.condition.object))
            kids.append(ParseTree("PP", tuple(pp_kids)))
        return ParseTree("VP", tuple(kids))


@dataclass
class FeatureInstance:
    """A normalized phrase together with where it came from."""

    feature: NormalizedFeature
    sentence_id: str
    thread_id: str
    surface: str


@dataclass
class FunctionalFeature:
    canonical: NormalizedFeature
    surface_forms: frozenset[str]
    support: int
    thread_refs: frozenset[str]
    feature_id: str = ""


def extract_verb_phrases(
    tree: ParseTree, sentence: Sentence | None = None
) -> list[PhraseCandidate]:
    """Every VP-labeled subtree (nested included), in document order."""
    spans = leaf_spans(tree)
    tokens = tuple(tree.tokens())
    out = []
    for pos, node in enumerate(tree.subtrees()):
        if node.label == "VP":
            out.append(
                PhraseCandidate(
                    subtree=node,
                    sentence_ref=sentence,
                    span=spans[pos],
                    sentence_tokens=tokens,
                )
            )
    return out


def _direct_verbs(vp: ParseTree) -> list[str]:
    return [c.token for c in vp.children if c.is_leaf and c.label in VERB_TAGS]


def _content_children(vp: ParseTree) -> list[ParseTree]:
    return [c for c in vp.children if c.label not in _PUNCT_LABELS]


def prune_subclauses(vp: ParseTree) -> ParseTree:
    """Drop sub-clause children (S/SBAR) directly under the phrase."""
    kept = tuple(c for c in vp.children if c.label not in ("S", "SBAR"))
    if not kept:
        kept = vp.children
    return ParseTree(vp.label, kept) if kept != vp.children else vp


_PATTERNS = {
    ("VB", "NP"): 1,
    ("VB", "PRT", "NP"): 2,
    ("VB", "NP", "PP"): 3,
    ("VB", "PP"): 4,
    ("VB", "PRT", "NP", "PP"): 2,  # case 2 object plus case 6 condition
}


def _shape(vp: ParseTree) -> tuple[str, ...]:
    shape = []
    for child in _content_children(vp):
        if child.label in VERB_TAGS:
            shape.append("VB")
        else:
            shape.append(child.label)
    return tuple(shape)


def structural_check(candidate: PhraseCandidate) -> tuple[bool, ParseTree]:
    """Prune sub-clauses, then test the phrase against the normal-form shapes.

    A phrase with no verb as a direct child is incompatible outright.
    """
    vp = candidate.subtree
    if vp.label != "VP":
        raise ValueError("structural_check expects a VP-rooted candidate")
    pruned = prune_subclauses(vp)
    if not _direct_verbs(pruned):
        return False, pruned
    return _shape(pruned) in _PATTERNS, pruned


def _norm_spaces(text: str) -> str:
    text = text.lower()
    text = re.sub(r"\s+([,.;:!?])", r"\1", text)
    text = re.sub(r"\s+('\w)", r"\1", text)  # i 'd -> i'd
    return re.sub(r"\s+", " ", text).strip()


def apply_filters(
    candidate: PhraseCandidate,
    context: Sentence | None,
    config: FilterConfig,
) -> tuple[str, list[Evidence]]:
    """Run the stopword, context, and structure filters; count the votes.

    Returns ("keep" | "drop", evidence).  Drop when any evidence vetoes or
    upvotes are strictly less than downvotes.
    """
    evidence: list[Evidence] = []
    vp = candidate.subtree
    grammatical = set(config.grammatical_stopwords)
    qa = set(config.qa_stopwords)
    prog_single = {t for t in config.programming_stopterms if " " not in t}
    prog_multi = [t for t in config.programming_stopterms if " " in t]

    # Filter 1: stop words.
    for verb in _direct_verbs(vp):
        lemma = lemmatize_verb(verb)
        if lemma in grammatical:
            evidence.append(Evidence("stopword", "down", f"stopword:grammatical:{lemma}"))
        if lemma in qa:
            evidence.append(Evidence("stopword", "down", f"stopword:qa:{lemma}"))
        if lemma in prog_single:
            evidence.append(Evidence("stopword", "down", f"stopword:programming:{lemma}"))
    for child in vp.children:
        if child.label == "NP":
            for leaf in child.subtrees():
                if leaf.is_leaf and leaf.label in ("PRP", "PRP$"):
                    evidence.append(
                        Evidence("stopword", "down", f"stopword:pronoun:{leaf.token.lower()}")
                    )
    phrase_text = _norm_spaces(vp.text())
    for term in prog_multi:
        if re.search(rf"\b{re.escape(term)}\b", phrase_text):
            evidence.append(Evidence("stopword", "down", f"stopword:term:{term}"))

    # Filter 2: context.  The preceding text in the same sentence must end
    # with a Q&A lead-in expression.
    if candidate.span[0] > 0:
        preceding = candidate.preceding_text()
        for expr in config.qa_expressions:
            if preceding == expr or preceding.endswith(" " + expr):
                evidence.append(Evidence("context", "up", f"context:qa-lead:{expr}"))
                break

    # Filter 3: structure.
    compatible, _ = structural_check(candidate)
    if not _direct_verbs(prune_subclauses(vp)):
        evidence.append(Evidence("structure", "down", "structure:no-verb"))
    elif not compatible:
        evidence.append(Evidence("structure", "down", "structure:incompatible"))

    for i, ev in enumerate(evidence):
        if any(ev.rule_id.startswith(rule) for rule in config.veto_rules):
            evidence[i] = Evidence(ev.filter_name, "veto", ev.rule_id)

    return tally_votes(evidence, config), evidence


def tally_votes(evidence: list[Evidence], config: FilterConfig) -> str:
    """Drop on any veto, or when weighted upvotes fall below downvotes.

    A tie keeps the phrase: only strictly fewer upvotes remove it.
    """
    if any(ev.vote == "veto" for ev in evidence):
        return "drop"
    up = sum(config.upvote_weight for ev in evidence if ev.vote == "up")
    down = sum(config.downvote_weight for ev in evidence if ev.vote == "down")
    return "drop" if up < down else "keep"


def normalize(pruned: ParseTree) -> NormalizedFeature:
    """Rewrite a structure-compatible phrase into the normal form."""
    shape = _shape(pruned)
    case = _PATTERNS.get(shape)
    if case is None:
        raise NormalizationError(f"no transformation rule for child sequence {shape}")
    kids = _content_children(pruned)
    verb = lemmatize_verb(kids[0].token)
    particle = None
    obj = None
    condition = None
    rest = kids[1:]
    if rest and rest[0].label == "PRT":
        particle = rest[0].tokens()[0].lower()
        rest = rest[1:]
    if rest and rest[0].label == "NP":
        obj = _object_from_np(rest[0])
        rest = rest[1:]
        if rest and rest[0].label == "PP":
            condition = _condition_from_pp(rest[0])
    elif rest and rest[0].label == "PP":
        # Case 4: the preposition acts as particle, the inner NP as object.
        pp = rest[0]
        inner = _content_children(pp)
        particle = inner[0].token.lower()
        np = inner[1]
        np_kids = _content_children(np)
        if np_kids and np_kids[0].label == "NP":
            obj = _object_from_np(np_kids[0])
            nested_pp = next((c for c in np_kids[1:] if c.label == "PP"), None)
            if nested_pp is not None:
                condition = _condition_from_pp(nested_pp)
        else:
            obj = _object_from_np(np)
    if obj is None:
        raise NormalizationError(f"no object recoverable from {shape}")
    return NormalizedFeature(Action(verb, particle), obj, condition)


def _object_from_np(np: ParseTree) -> ObjectPhrase:
    """Case 5: map a word chain headed by a noun onto dt/adj/modifiers/noun."""
    determiner = None
    adjective = None
    nouns: list[str] = []
    for leaf in (c for c in np.children if c.is_leaf):
        if leaf.label == "DT" and determiner is None:
            determiner = leaf.token.lower()
        elif leaf.label == "JJ" and adjective is None:
            adjective = leaf.token.lower()
        elif leaf.label in NOUN_TAGS or leaf.label == "PRP":
            nouns.append(singularize_noun(leaf.token))
    if not nouns:
        raise NormalizationError(f"object phrase has no head noun: {np.to_bracketed()}")
    return ObjectPhrase(
        noun=nouns[-1],
        determiner=determiner,
        adjective=adjective,
        modifiers=tuple(nouns[:-1]),
    )


def _condition_from_pp(pp: ParseTree) -> Condition:
    """Case 6: IN becomes the preposition, the NP the condition object."""
    kids = _content_children(pp)
    if not kids or kids[0].label not in ("IN", "TO") or not kids[0].is_leaf:
        raise NormalizationError(f"condition must start with a preposition: {pp.to_bracketed()}")
    prep = kids[0].token.lower()
    verb = None
    np = None
    for child in kids[1:]:
        if child.label == "NP":
            np = child
            break
        if child.label in ("S", "VP"):
            vp = child if child.label == "VP" else next(
                (c for c in child.children if c.label == "VP"), None
            )
            if vp is not None:
                verbs = _direct_verbs(vp)
                if verbs:
                    verb = lemmatize_verb(verbs[0])
                np = next((c for c in vp.children if c.label == "NP"), None)
                break
    if np is None:
        raise NormalizationError(f"condition has no object: {pp.to_bracketed()}")
    return Condition(preposition=prep, object=_object_from_np(np), verb=verb)


# --- clustering -----------------------------------------------------------
#
# Normalized features are rebuilt as rooted labeled trees per the normal
# form (action/object/condition roles only; POS detail and determiners are
# deliberately dropped).  Verbs are canonicalized to their synonym-class
# representative before mining so that merely lexically different phrases
# cluster together; the display verb is recovered afterwards from the
# supporting instances.

_ROOT = "feat"


def feature_to_graph(feature: NormalizedFeature, synonyms: SynonymLexicon) -> LabeledGraph:
    labels: list[str] = [_ROOT]
    edges: list[tuple[int, int, str]] = []

    def add(parent: int, label: str, edge: str) -> int:
        labels.append(label)
        vid = len(labels) - 1
        edges.append((parent, vid, edge))
        return vid

    act = add(0, f"act:{synonyms.representative(feature.action.verb)}", "action")
    if feature.action.particle:
        add(act, f"prt:{feature.action.particle}", "prt")

    def add_object(parent: int, obj: ObjectPhrase) -> None:
        node = add(parent, "obj", "object")
        if obj.adjective:
            add(node, f"adj:{obj.adjective}", "adj")
        for m in dict.fromkeys(obj.modifiers):
            add(node, f"mod:{m}", "mod")
        add(node, f"noun:{obj.noun}", "noun")

    add_object(0, feature.object)
    if feature.condition:
        cond = add(0, f"cond:{feature.condition.preposition}", "cond")
        if feature.condition.verb:
            add(cond, f"cvb:{synonyms.representative(feature.condition.verb)}", "cvb")
        add_object(cond, feature.condition.object)
    return LabeledGraph(tuple(labels), tuple(edges), directed=True)


def _children(g: LabeledGraph, vid: int, edge_label: str) -> list[int]:
    return sorted(d for s, d, l in g.edges if s == vid and l == edge_label)


def _decode_object(g: LabeledGraph, obj_vid: int, order: list[str]) -> ObjectPhrase | None:
    nouns = _children(g, obj_vid, "noun")
    if not nouns:
        return None
    adj = _children(g, obj_vid, "adj")
    mods = {g.vertex_labels[v][4:] for v in _children(g, obj_vid, "mod")}
    ordered = [m for m in order if m in mods] + sorted(mods - set(order))
    return ObjectPhrase(
        noun=g.vertex_labels[nouns[0]][5:],
        adjective=g.vertex_labels[adj[0]][4:] if adj else None,
        modifiers=tuple(ordered),
    )


def decode_feature_graph(
    g: LabeledGraph, witness: NormalizedFeature | None = None
) -> NormalizedFeature | None:
    """Interpret a mined subtree as a feature; None when essentials are missing.

    `witness` supplies display detail the class-labeled tree lost: the
    original verb and the modifier order.
    """
    roots = [v for v, lab in enumerate(g.vertex_labels) if lab == _ROOT]
    if len(roots) != 1:
        return None
    root = roots[0]
    acts = _children(g, root, "action")
    objs = _children(g, root, "object")
    if not acts or not objs:
        return None
    verb = g.vertex_labels[acts[0]][4:]
    prts = _children(g, acts[0], "prt")
    particle = g.vertex_labels[prts[0]][4:] if prts else None
    obj = _decode_object(g, objs[0], list(witness.object.modifiers) if witness else [])
    if obj is None:
        return None
    condition = None
    conds = _children(g, root, "cond")
    if conds:
        cond_vid = conds[0]
        cond_objs = _children(g, cond_vid, "object")
        if not cond_objs:
            return None
        cond_order = (
            list(witness.condition.object.modifiers)
            if witness and witness.condition
            else []
        )
        cond_obj = _decode_object(g, cond_objs[0], cond_order)
        if cond_obj is None:
            return None
        cvbs = _children(g, cond_vid, "cvb")
        condition = Condition(
            preposition=g.vertex_labels[cond_vid][5:],
            object=cond_obj,
            verb=g.vertex_labels[cvbs[0]][4:] if cvbs else None,
        )
    return NormalizedFeature(Action(verb, particle), obj, condition)


def cluster_features(
    instances: list[FeatureInstance],
    min_support: int,
    synonyms: SynonymLexicon,
) -> list[FunctionalFeature]:
    """Mine maximal frequent feature subtrees over the normalized instances.

    Support counts distinct sentences.  Two phrases with identical objects
    and synonymous action verbs land on the same class-labeled tree and
    therefore merge; the displayed verb is the most frequent original verb
    among the supporting instances (ties lexicographic).
    """
    if min_support < 2:
        raise ValueError("min_support must be >= 2")
    if not instances:
        return []
    corpus = [feature_to_graph(inst.feature, synonyms) for inst in instances]
    groups = [inst.sentence_id for inst in instances]
    if min_support > len(set(groups)):
        return []
    mined = mine_frequent_subgraphs(
        corpus, 1.0, groups=groups, min_support_count=min_support
    )

    decodable = []
    for p in mined:
        witness_inst = instances[min(p.embeddings)]
        decoded = decode_feature_graph(p.graph, witness_inst.feature)
        if decoded is not None:
            decodable.append((p, decoded))
    # keep only patterns not contained in another decodable frequent pattern
    out: list[FunctionalFeature] = []
    for i, (p, decoded) in enumerate(decodable):
        contained = False
        for j, (q, _) in enumerate(decodable):
            if i == j:
                continue
            if len(q.graph.edges) <= len(p.graph.edges):
                continue
            if find_embeddings(p.graph, q.graph, limit=1):
                contained = True
                break
        if contained:
            continue
        supporting = [instances[gid] for gid in p.embeddings]
        verb_votes = Counter(inst.feature.action.verb for inst in supporting)
        display_verb = min(
            verb_votes, key=lambda v: (-verb_votes[v], v)
        )
        canonical = NormalizedFeature(
            Action(display_verb, decoded.action.particle),
            decoded.object,
            decoded.condition,
        )
        out.append(
            FunctionalFeature(
                canonical=canonical,
                surface_forms=frozenset(inst.surface for inst in supporting),
                support=p.support,
                thread_refs=frozenset(inst.thread_id for inst in supporting),
            )
        )
    out.sort(key=lambda f: (-f.support, f.canonical.text()))
    for i, feat in enumerate(out, start=1):
        feat.feature_id = f"f{i:03d}"
    return out


@dataclass
class SentenceAnalysis:
    sentence: Sentence
    candidates: list[PhraseCandidate]
    kept: list[PhraseCandidate]
    instances: list[FeatureInstance]


def analyze_sentence(
    sentence: Sentence,
    tree: ParseTree,
    config: FilterConfig,
) -> SentenceAnalysis:
    """Filter and normalize one parsed sentence into feature instances."""
    candidates = extract_verb_phrases(tree, sentence)
    kept: list[PhraseCandidate] = []
    instances: list[FeatureInstance] = []
    for cand in candidates:
        verdict, evidence = apply_filters(cand, sentence, config)
        cand.evidence = evidence
        if verdict == "drop":
            continue
        compatible, pruned = structural_check(cand)
        if not compatible:
            continue
        kept.append(cand)
        try:
            feature = normalize(pruned)
        except NormalizationError:
            continue
        instances.append(
            FeatureInstance(
                feature=feature,
                sentence_id=f"{sentence.thread_id}#{sentence.index}",
                thread_id=sentence.thread_id,
                surface=cand.text,
            )
        )
    return SentenceAnalysis(sentence, candidates, kept, instances)
