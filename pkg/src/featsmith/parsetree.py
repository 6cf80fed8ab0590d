"""Constituency parse trees in bracketed text form.

Trees normally come from an external parser as one bracketed expression per
line; the bundled chunker produces the same structure for self-contained
runs.  Leaves carry a token, internal nodes carry at least one child.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator


class TreeParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


@dataclass(frozen=True)
class ParseTree:
    label: str
    children: tuple["ParseTree", ...] = ()
    token: str | None = None

    def __post_init__(self):
        if self.token is not None and self.children:
            raise ValueError("a node carries either a token or children")
        if self.token is None and not self.children:
            raise ValueError(f"internal node {self.label!r} needs children")

    @property
    def is_leaf(self) -> bool:
        return self.token is not None

    def tokens(self) -> list[str]:
        if self.is_leaf:
            return [self.token]
        out = []
        for child in self.children:
            out.extend(child.tokens())
        return out

    def text(self) -> str:
        return " ".join(self.tokens())

    def subtrees(self) -> Iterator["ParseTree"]:
        """Pre-order traversal (document order)."""
        yield self
        for child in self.children:
            yield from child.subtrees()

    def to_bracketed(self) -> str:
        if self.is_leaf:
            return f"({self.label} {self.token})"
        inner = " ".join(c.to_bracketed() for c in self.children)
        return f"({self.label} {inner})"

    def count(self, label: str) -> int:
        return sum(1 for t in self.subtrees() if t.label == label)


def parse_tree_from_bracketed(text: str) -> ParseTree:
    """Parse one bracketed tree expression, e.g. "(VP (VB set) (NP (DT the) (NN area)))"."""
    pos = 0
    n = len(text)

    def skip_ws():
        nonlocal pos
        while pos < n and text[pos].isspace():
            pos += 1

    def parse_node() -> ParseTree:
        nonlocal pos
        skip_ws()
        if pos >= n or text[pos] != "(":
            raise TreeParseError("expected '('", pos)
        pos += 1
        skip_ws()
        start = pos
        while pos < n and not text[pos].isspace() and text[pos] not in "()":
            pos += 1
        label = text[start:pos]
        if not label:
            raise TreeParseError("empty node label", start)
        children: list[ParseTree] = []
        token_parts: list[str] = []
        while True:
            skip_ws()
            if pos >= n:
                raise TreeParseError("unbalanced brackets: missing ')'", pos)
            if text[pos] == ")":
                pos += 1
                break
            if text[pos] == "(":
                if token_parts:
                    raise TreeParseError("node mixes tokens and children", pos)
                children.append(parse_node())
            else:
                start = pos
                while pos < n and not text[pos].isspace() and text[pos] not in "()":
                    pos += 1
                token_parts.append(text[start:pos])
        if children:
            return ParseTree(label, tuple(children))
        if not token_parts:
            raise TreeParseError(f"empty node ({label})", pos)
        return ParseTree(label, (), " ".join(token_parts))

    tree = parse_node()
    skip_ws()
    if pos != n:
        raise TreeParseError("trailing content after tree", pos)
    return tree


def leaf_spans(root: ParseTree) -> dict[int, tuple[int, int]]:
    """Token-index span of every subtree, keyed by pre-order position."""
    spans: dict[int, tuple[int, int]] = {}
    counter = {"pre": 0, "tok": 0}

    def walk(node: ParseTree) -> tuple[int, int]:
        me = counter["pre"]
        counter["pre"] += 1
        if node.is_leaf:
            lo = counter["tok"]
            counter["tok"] += 1
            spans[me] = (lo, lo + 1)
            return spans[me]
        lo = None
        hi = None
        for child in node.children:
            clo, chi = walk(child)
            lo = clo if lo is None else lo
            hi = chi
        spans[me] = (lo, hi)
        return spans[me]

    walk(root)
    return spans
