"""Small rule-based word machinery: lemmas, plurals, stems, camel-case splits.

A deliberately compact stand-in for a full lexical toolkit: suffix rules plus
an exception table cover the verbs and nouns that show up in feature phrases
and API names.  Limits are documented in the README.
"""

from __future__ import annotations

import re

_VERB_IRREGULAR = {
    "is": "be", "are": "be", "am": "be", "was": "be", "were": "be",
    "been": "be", "being": "be",
    "has": "have", "had": "have", "having": "have",
    "does": "do", "did": "do", "done": "do", "doing": "do",
    "got": "get", "gotten": "get", "getting": "get",
    "went": "go", "gone": "go", "going": "go",
    "made": "make", "making": "make",
    "wrote": "write", "written": "write", "writing": "write",
    "read": "read", "reading": "read",
    "set": "set", "setting": "set",
    "put": "put", "putting": "put",
    "ran": "run", "running": "run",
    "took": "take", "taken": "take", "taking": "take",
    "found": "find", "finding": "find",
    "tried": "try", "trying": "try", "tries": "try",
    "came": "come", "coming": "come",
    "said": "say", "saying": "say",
    "kept": "keep", "keeping": "keep",
    "built": "build", "building": "build",
    "threw": "throw", "thrown": "throw", "throwing": "throw",
    "drew": "draw", "drawn": "draw", "drawing": "draw",
    "met": "meet", "meeting": "meet",
    "saving": "save", "used": "use", "using": "use",
    "creating": "create", "created": "create",
    "merging": "merge", "merged": "merge",
    "parsing": "parse", "parsed": "parse",
    "deleting": "delete", "deleted": "delete",
    "iterating": "iterate", "iterated": "iterate",
    "changing": "change", "changed": "change",
    "removing": "remove", "removed": "remove",
    "updating": "update", "updated": "update",
    "storing": "store", "stored": "store",
    "configuring": "configure", "configured": "configure",
}

_NOUN_IRREGULAR = {
    "children": "child", "indices": "index", "data": "data",
    "sheets": "sheet", "classes": "class", "statuses": "status",
    "men": "man", "women": "woman",
}

_VOWELS = "aeiou"


def _undouble(word: str) -> str:
    if len(word) >= 3 and word[-1] == word[-2] and word[-1] not in _VOWELS + "sl":
        return word[:-1]
    return word


def lemmatize_verb(word: str) -> str:
    """Base form of a verb via exceptions plus suffix stripping."""
    w = word.lower()
    if w in _VERB_IRREGULAR:
        return _VERB_IRREGULAR[w]
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith(("ches", "shes", "sses", "xes", "zes")):
        return w[:-2]
    if w.endswith("s") and not w.endswith("ss") and len(w) > 3:
        return w[:-1]
    if w.endswith("ing") and len(w) > 5:
        stem = _undouble(w[:-3])
        return stem + "e" if stem.endswith(("at", "iz", "rg", "rs", "us", "ang")) else stem
    if w.endswith("ied") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith("ed") and len(w) > 4:
        stem = _undouble(w[:-2])
        return stem
    return w


def singularize_noun(word: str) -> str:
    """Singular form of a noun; leaves mass/irregular nouns alone."""
    w = word.lower()
    if w in _NOUN_IRREGULAR:
        return _NOUN_IRREGULAR[w]
    if w.endswith("ies") and len(w) > 4:
        return w[:-3] + "y"
    if w.endswith(("ches", "shes", "sses", "xes", "zes")):
        return w[:-2]
    if w.endswith("s") and not w.endswith(("ss", "us", "is")) and len(w) > 3:
        return w[:-1]
    return w


def stem(token: str) -> str:
    """Aggressive shared stem for lexical overlap between phrases and API names.

    Applied identically to both sides of a comparison, so only consistency
    matters, not linguistic correctness.
    """
    w = token.lower()
    if w.endswith("ies") and len(w) > 4:
        w = w[:-3] + "y"
    elif w.endswith(("ches", "shes", "sses", "xes", "zes")):
        w = w[:-2]
    elif w.endswith("s") and not w.endswith(("ss", "us", "is")) and len(w) > 3:
        w = w[:-1]
    if w.endswith("ing") and len(w) > 5:
        w = _undouble(w[:-3])
    elif w.endswith("ed") and len(w) > 4:
        w = _undouble(w[:-2])
    if w.endswith("e") and len(w) > 3:
        w = w[:-1]
    if w.endswith("y") and len(w) > 3:
        w = w[:-1] + "i"
    return w


_CAMEL_RE = re.compile(
    r"[A-Z]+(?=[A-Z][a-z0-9])|[A-Z]?[a-z0-9]+|[A-Z]+|\d+"
)


def camel_split(name: str) -> list[str]:
    """Split an identifier on camel-case humps, digits, and separators.

    camel_split("setFillForegroundColor") == ["set", "Fill", "Foreground", "Color"]
    camel_split("SOLID_FOREGROUND") == ["SOLID", "FOREGROUND"]
    camel_split("HSSFWorkbook") == ["HSSF", "Workbook"]
    """
    parts = []
    for chunk in re.split(r"[._$\s]+", name):
        parts.extend(_CAMEL_RE.findall(chunk))
    return [p for p in parts if p]


def stemmed_tokens(name: str) -> list[str]:
    return [stem(p) for p in camel_split(name)]
