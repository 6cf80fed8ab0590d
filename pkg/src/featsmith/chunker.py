"""Fallback heuristic chunker: lexicon tagging plus VP/NP chunk rules.

Produces bracketed-style parse trees so that fixtures and small corpora run
without an external constituency parser.  It covers plain declarative and
how-question sentences over the bundled lexicon; anything fancier should be
fed in as pre-parsed bracketed trees instead.
"""

from __future__ import annotations

import re
from functools import lru_cache

from .config import load_wordlist
from .lexicon import lemmatize_verb, singularize_noun
from .parsetree import ParseTree

_AUX_LEMMAS = {"be", "have", "do"}
_SUBORDINATORS = {"because", "if", "when", "since", "although", "while", "as"}
_TOKEN_RE = re.compile(r"[A-Za-z0-9_']+|[^\sA-Za-z0-9_']")


@lru_cache(maxsize=1)
def _lexicon() -> dict[str, str]:
    table: dict[str, str] = {}
    for line in load_wordlist("pos_lexicon.txt"):
        word, _, tag = line.partition(" ")
        table[word] = tag.strip().upper()
    return table


@lru_cache(maxsize=1)
def _particles() -> frozenset[str]:
    return frozenset(load_wordlist("particles.txt"))


def tokenize(text: str) -> list[str]:
    return _TOKEN_RE.findall(text)


def tag_tokens(tokens: list[str]) -> list[str]:
    lex = _lexicon()
    tags: list[str] = []
    for i, tok in enumerate(tokens):
        low = tok.lower()
        if not tok[0].isalnum() and "'" not in tok:
            tags.append(tok if tok in (",", ".", ":") else ".")
        elif re.fullmatch(r"cterm\d+", low):
            tags.append("NN")
        elif low == "to":
            tags.append("TO")  # refined below
        elif low in ("'m", "'re"):
            tags.append("VBP")
        elif low in ("'s", "'d", "'ll"):
            tags.append("MD")
        elif low in lex:
            tags.append(lex[low])
        elif low.endswith("ing") and len(low) > 4:
            tags.append("VBG")
        elif low.endswith("ed") and len(low) > 3:
            tags.append("VBN")
        elif low.endswith("ly") and len(low) > 3:
            tags.append("RB")
        elif low.endswith("s") and not low.endswith("ss") and lex.get(singularize_noun(low)) == "NN":
            tags.append("NNS")
        elif low.endswith("s") and not low.endswith("ss") and lex.get(lemmatize_verb(low), "").startswith("VB"):
            tags.append("VBZ")
        else:
            tags.append("NN")
    # "to" is TO before a verb, otherwise a preposition
    for i, tok in enumerate(tokens):
        if tags[i] == "TO":
            nxt = tags[i + 1] if i + 1 < len(tokens) else ""
            if not nxt.startswith("VB"):
                tags[i] = "IN"
    return tags


class _Cursor:
    def __init__(self, tokens: list[str], tags: list[str]):
        self.tokens = tokens
        self.tags = tags
        self.i = 0

    def peek(self, offset: int = 0) -> tuple[str, str]:
        j = self.i + offset
        if j >= len(self.tokens):
            return "", ""
        return self.tokens[j], self.tags[j]

    def take(self) -> tuple[str, str]:
        tok, tag = self.peek()
        self.i += 1
        return tok, tag

    @property
    def done(self) -> bool:
        return self.i >= len(self.tokens)


def _leaf(tag: str, token: str) -> ParseTree:
    return ParseTree(tag, (), token)


_NP_TAGS = {"DT", "JJ", "NN", "NNS", "NNP", "CD", "PRP", "PRP$", "VBN"}


def _parse_np(cur: _Cursor) -> ParseTree | None:
    kids = []
    _, tag = cur.peek()
    if tag == "PRP":
        tok, tag = cur.take()
        return ParseTree("NP", (_leaf(tag, tok),))
    while True:
        tok, tag = cur.peek()
        if tag not in _NP_TAGS or tag == "PRP":
            break
        if tag == "VBN" and kids and kids[-1].label in ("NN", "NNS"):
            break
        if tag in ("NN", "NNS") and not _np_continues(cur):
            kids.append(_leaf(tag, cur.take()[0]))
            break
        kids.append(_leaf("JJ" if tag == "VBN" else tag, cur.take()[0]))
    if not kids:
        return None
    return ParseTree("NP", tuple(kids))


def _np_continues(cur: _Cursor) -> bool:
    _, nxt = cur.peek(1)
    return nxt in ("NN", "NNS", "NNP", "CD")


def _parse_pp(cur: _Cursor) -> ParseTree | None:
    tok, tag = cur.peek()
    if tag != "IN" or tok.lower() in _SUBORDINATORS:
        return None
    mark = cur.i
    prep = _leaf("IN", cur.take()[0])
    np = _parse_np(cur)
    if np is None:
        cur.i = mark
        return None
    # a further preposition folds into a nested noun phrase
    nested = _parse_pp(cur)
    if nested is not None:
        np = ParseTree("NP", (np, nested))
    return ParseTree("PP", (prep, np))


def _parse_sbar(cur: _Cursor) -> ParseTree | None:
    tok, tag = cur.peek()
    if tag != "IN" or tok.lower() not in _SUBORDINATORS:
        return None
    mark = cur.i
    intro = _leaf("IN", cur.take()[0])
    clause = _parse_clause(cur)
    if clause is None:
        cur.i = mark
        return None
    return ParseTree("SBAR", (intro, clause))


def _parse_vp(cur: _Cursor) -> ParseTree | None:
    tok, tag = cur.peek()
    if tag == "RB":  # skip adverbs like "just", "please"
        cur.take()
        return _parse_vp(cur)
    if not (tag.startswith("VB") or tag == "MD"):
        return None
    verb_tok, verb_tag = cur.take()
    kids: list[ParseTree] = [_leaf(verb_tag, verb_tok)]
    nxt_tok, nxt_tag = cur.peek()
    if nxt_tag == "RB":
        kids.append(_leaf("RB", cur.take()[0]))
        nxt_tok, nxt_tag = cur.peek()
    lemma = lemmatize_verb(verb_tok)
    # auxiliary or modal followed by a verb keeps nesting VPs
    if (verb_tag == "MD" or lemma in _AUX_LEMMAS) and (
        nxt_tag.startswith("VB") or nxt_tag == "MD"
    ):
        inner = _parse_vp(cur)
        if inner is not None:
            kids.append(inner)
            return ParseTree("VP", tuple(kids))
    # verb with a to-infinitive complement
    if nxt_tag == "TO":
        to_leaf = _leaf("TO", cur.take()[0])
        inner = _parse_vp(cur)
        if inner is not None:
            kids.append(ParseTree("S", (ParseTree("VP", (to_leaf, inner)),)))
            return ParseTree("VP", tuple(kids))
    # particle
    nxt_tok, nxt_tag = cur.peek()
    if (
        nxt_tok.lower() in _particles()
        and nxt_tag in ("IN", "RB", "RP")
        and cur.peek(1)[1] in _NP_TAGS
    ):
        kids.append(ParseTree("PRT", (_leaf("RP", cur.take()[0].lower()),)))
    np = _parse_np(cur)
    if np is not None:
        kids.append(np)
    while True:
        pp = _parse_pp(cur)
        if pp is None:
            break
        kids.append(pp)
    sbar = _parse_sbar(cur)
    if sbar is not None:
        kids.append(sbar)
    return ParseTree("VP", tuple(kids))


def _parse_clause(cur: _Cursor) -> ParseTree | None:
    kids = []
    np = _parse_np(cur)
    if np is not None:
        kids.append(np)
    vp = _parse_vp(cur)
    if vp is not None:
        kids.append(vp)
    elif np is None:
        return None
    if not kids:
        return None
    return ParseTree("S", tuple(kids))


def chunk_sentence(text: str) -> ParseTree:
    """Best-effort parse of one sentence into a bracketed-style tree."""
    tokens = tokenize(text)
    if not tokens:
        return ParseTree("S", (_leaf(".", "."),))
    tags = tag_tokens(tokens)
    cur = _Cursor(tokens, tags)
    kids: list[ParseTree] = []
    while not cur.done:
        tok, tag = cur.peek()
        if tag == "UH":
            kids.append(ParseTree("INTJ", (_leaf("UH", cur.take()[0]),)))
        elif tag in (",", ".", ":"):
            kids.append(_leaf(tag, cur.take()[0]))
        elif tag == "CC":
            kids.append(_leaf("CC", cur.take()[0]))
        elif tag == "WRB":
            # inverted question: WRB aux NP VP
            wh = ParseTree("WHADVP", (_leaf("WRB", cur.take()[0]),))
            sq_kids: list[ParseTree] = []
            _, t2 = cur.peek()
            if t2 == "MD" or lemmatize_verb(cur.peek()[0]) in _AUX_LEMMAS:
                tok2, tag2 = cur.take()
                sq_kids.append(_leaf(tag2, tok2))
            subj = _parse_np(cur)
            if subj is not None:
                sq_kids.append(subj)
            vp = _parse_vp(cur)
            if vp is not None:
                sq_kids.append(vp)
            if sq_kids:
                kids.append(ParseTree("SBARQ", (wh, ParseTree("SQ", tuple(sq_kids)))))
            else:
                kids.append(wh)
        else:
            clause = _parse_clause(cur)
            if clause is not None:
                kids.append(clause)
            else:
                tok, tag = cur.take()
                kids.append(_leaf(tag if tag else "NN", tok))
    return ParseTree("S", tuple(kids))
