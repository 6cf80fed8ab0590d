"""Corpus ingestion: Q&A threads and client source files.

Threads arrive either as one JSON object per line or one JSON file per
thread (schema in README).  Prose blocks get their code-like terms masked
with fresh placeholders before sentence splitting, so stray identifiers and
dotted names cannot derail the downstream phrase analysis; the placeholder
table restores the original text losslessly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable


class IngestError(ValueError):
    pass


@dataclass(frozen=True)
class Block:
    kind: str  # "prose" | "code"
    text: str

    def __post_init__(self):
        if self.kind not in ("prose", "code"):
            raise IngestError(f"block kind must be prose|code, got {self.kind!r}")


@dataclass(frozen=True)
class Thread:
    id: str
    title: str
    body_blocks: tuple[Block, ...]
    tags: frozenset[str]
    answer_blocks: tuple[Block, ...] = ()

    def all_blocks(self) -> tuple[Block, ...]:
        title_block = (Block("prose", self.title),) if self.title else ()
        return title_block + self.body_blocks + self.answer_blocks

    def code_texts(self) -> list[str]:
        return [b.text for b in self.all_blocks() if b.kind == "code"]


@dataclass
class ThreadCorpus:
    threads: tuple[Thread, ...]

    def __iter__(self):
        return iter(self.threads)

    def __len__(self):
        return len(self.threads)

    def to_jsonl(self) -> str:
        lines = []
        for t in self.threads:
            lines.append(
                json.dumps(
                    {
                        "id": t.id,
                        "title": t.title,
                        "tags": sorted(t.tags),
                        "body_blocks": [
                            {"kind": b.kind, "text": b.text} for b in t.body_blocks
                        ],
                        "answer_blocks": [
                            {"kind": b.kind, "text": b.text} for b in t.answer_blocks
                        ],
                    },
                    sort_keys=True,
                    ensure_ascii=False,
                )
            )
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass
class Sentence:
    thread_id: str
    index: int
    text: str
    masked_text: str
    term_table: dict[str, str]
    short: bool = False


@dataclass(frozen=True)
class SourceFile:
    path: str
    text: str
    repo_meta: dict

    @property
    def stars(self) -> int:
        return int(self.repo_meta.get("stars", 0))


_REQUIRED_THREAD_FIELDS = ("id", "title", "tags", "body_blocks")


def _thread_from_record(record: dict, where: str) -> Thread:
    for name in _REQUIRED_THREAD_FIELDS:
        if name not in record:
            raise IngestError(f"{where}: missing required field {name!r}")

    def blocks(key: str) -> tuple[Block, ...]:
        out = []
        for i, raw in enumerate(record.get(key) or []):
            try:
                out.append(Block(kind=raw["kind"], text=raw["text"]))
            except (KeyError, TypeError) as exc:
                raise IngestError(f"{where}: bad block {i} in {key}: {exc}") from exc
        return tuple(out)

    return Thread(
        id=str(record["id"]),
        title=str(record["title"]),
        tags=frozenset(str(t) for t in record["tags"]),
        body_blocks=blocks("body_blocks"),
        answer_blocks=blocks("answer_blocks"),
    )


def load_threads(path: str | Path, tag_filter: Iterable[str] = ()) -> ThreadCorpus:
    """Load every thread under `path` whose tags intersect `tag_filter`.

    An empty filter keeps everything.  Order is stable by thread id.
    """
    path = Path(path)
    if not path.exists():
        raise IngestError(f"thread corpus path does not exist: {path}")
    wanted = {t.lower() for t in tag_filter}
    files = [path] if path.is_file() else sorted(
        p for p in path.rglob("*") if p.suffix in (".json", ".jsonl")
    )
    threads: dict[str, Thread] = {}
    for f in files:
        try:
            text = f.read_text(encoding="utf-8")
        except OSError as exc:
            raise IngestError(f"unreadable thread file {f}: {exc}") from exc
        if f.suffix == ".jsonl":
            records = []
            for lineno, line in enumerate(text.splitlines(), start=1):
                if not line.strip():
                    continue
                try:
                    records.append((f"{f}:{lineno}", json.loads(line)))
                except json.JSONDecodeError as exc:
                    raise IngestError(f"{f}:{lineno}: invalid JSON: {exc}") from exc
        else:
            try:
                records = [(str(f), json.loads(text))]
            except json.JSONDecodeError as exc:
                raise IngestError(f"{f}: invalid JSON: {exc}") from exc
        for where, record in records:
            thread = _thread_from_record(record, where)
            if thread.id in threads:
                raise IngestError(f"{where}: duplicate thread id {thread.id!r}")
            if not wanted or {t.lower() for t in thread.tags} & wanted:
                threads[thread.id] = thread
    return ThreadCorpus(tuple(threads[i] for i in sorted(threads)))


# Code-like term recognition, applied in precedence order.  The rule set is
# ours (versioned here); see README for the rationale and limits.
_INLINE_TAG = re.compile(r"<code>.*?</code>|`[^`\n]+`", re.DOTALL)
_CALL_CHAIN = re.compile(
    r"(?:[A-Za-z_]\w*\.)*[A-Za-z_]\w*\((?:[^()]|\([^()]*\))*\)"
    r"(?:\.[A-Za-z_]\w*\((?:[^()]|\([^()]*\))*\))*;?"
)
_DOTTED = re.compile(r"\b[A-Za-z_]\w*(?:\.[A-Za-z_]\w+)+\b")
_CAMEL = re.compile(
    r"\b[a-z]+(?:[A-Z][A-Za-z0-9]*)+\b"
    r"|\b[A-Z][a-z0-9]+(?:[A-Z][A-Za-z0-9]*)+\b"
    r"|\b[A-Z]{2,}(?:_[A-Z0-9]+)+\b"
)
_MASK_RULES = (_INLINE_TAG, _CALL_CHAIN, _DOTTED, _CAMEL)
_PLACEHOLDER = re.compile(r"\bcterm\d+\b")


def mask_code_terms(
    text: str, abbreviations: Iterable[str] = ()
) -> tuple[str, dict[str, str]]:
    """Replace inline code-like terms with fresh `ctermN` placeholders."""
    abbrevs = {a.lower().rstrip(".") for a in abbreviations}
    table: dict[str, str] = {}
    counter = 1
    masked = text

    def fresh() -> str:
        nonlocal counter
        while True:
            name = f"cterm{counter}"
            counter += 1
            if name not in text:
                return name

    for rule in _MASK_RULES:
        def repl(m: re.Match) -> str:
            term = m.group(0)
            if rule is _DOTTED:
                segments = term.split(".")
                if all(len(s) <= 1 for s in segments) or term.lower() in abbrevs:
                    return term
            placeholder = fresh()
            table[placeholder] = term
            return placeholder

        masked = rule.sub(repl, masked)
    return masked, table


def unmask(masked: str, table: dict[str, str]) -> str:
    # A later rule may fold an earlier placeholder into its match (e.g. a
    # dotted name built around an inline-tag placeholder), so substitute to
    # a fixpoint; table size bounds the iteration.
    text = masked
    for _ in range(len(table) + 1):
        replaced = _PLACEHOLDER.sub(lambda m: table.get(m.group(0), m.group(0)), text)
        if replaced == text:
            break
        text = replaced
    return text


def _sentence_boundaries(masked: str, abbreviations: Iterable[str]) -> list[int]:
    """Indices where a new sentence starts (always includes 0)."""
    abbrevs = {a.lower() for a in abbreviations}
    bounds = [0]
    i = 0
    n = len(masked)
    while i < n:
        ch = masked[i]
        if ch in ".!?":
            # swallow a run of terminal punctuation
            j = i
            while j + 1 < n and masked[j + 1] in ".!?":
                j += 1
            if ch == ".":
                m = re.search(r"(\S+)$", masked[: i + 1])
                token = m.group(1).lower() if m else ""
                if token in abbrevs or re.fullmatch(r"\w\.", token):
                    i = j + 1
                    continue
                if j + 1 < n and masked[j + 1].isdigit():
                    i = j + 1
                    continue
            k = j + 1
            while k < n and masked[k] in "\"')]":
                k += 1
            if k >= n or masked[k].isspace():
                while k < n and masked[k].isspace():
                    k += 1
                if k < n:
                    bounds.append(k)
            i = k
            continue
        i += 1
    return bounds


def split_sentences(
    block: Block,
    thread_id: str = "",
    *,
    min_chars: int = 15,
    abbreviations: Iterable[str] = (),
    start_index: int = 0,
) -> list[Sentence]:
    """Mask code-like terms in a prose block, then split it into sentences.

    Sentences shorter than `min_chars` are flagged, never dropped; the
    per-sentence term tables restore the original text exactly.
    """
    if block.kind != "prose":
        raise IngestError("split_sentences expects a prose block")
    masked_all, table = mask_code_terms(block.text, abbreviations)
    bounds = _sentence_boundaries(masked_all, abbreviations)
    bounds.append(len(masked_all))
    sentences = []
    for idx, (lo, hi) in enumerate(zip(bounds, bounds[1:])):
        masked = masked_all[lo:hi].strip()
        if not masked:
            continue
        local = {p: table[p] for p in _PLACEHOLDER.findall(masked) if p in table}
        text = unmask(masked, local)
        sentences.append(
            Sentence(
                thread_id=thread_id,
                index=start_index + idx,
                text=text,
                masked_text=masked,
                term_table=local,
                short=len(text) < min_chars,
            )
        )
    return sentences


def load_client_corpus(
    path: str | Path,
    min_stars: int = 5,
    *,
    warnings: list[str] | None = None,
) -> list[SourceFile]:
    """Load source files from a repo tree, filtered by repository stars.

    Layout: one directory per repository, holding a `repo.json` metadata file
    ({"repo_id", "stars"}) and `.java` sources at any depth.  Missing metadata
    counts as zero stars (excluded at the default threshold).  Unreadable
    files are skipped with a warning record: corpus loading is best-effort.
    """
    root = Path(path)
    if not root.exists():
        raise IngestError(f"client corpus path does not exist: {root}")
    sink = warnings if warnings is not None else []
    out: list[SourceFile] = []
    repo_dirs = sorted(p for p in root.iterdir() if p.is_dir()) or [root]
    for repo_dir in repo_dirs:
        meta = {"repo_id": repo_dir.name, "stars": 0}
        meta_path = repo_dir / "repo.json"
        if meta_path.exists():
            try:
                raw = json.loads(meta_path.read_text(encoding="utf-8"))
                meta["repo_id"] = str(raw.get("repo_id", repo_dir.name))
                meta["stars"] = int(raw.get("stars", 0))
            except (json.JSONDecodeError, ValueError) as exc:
                sink.append(f"{meta_path}: bad repo metadata ({exc}); stars=0")
        if meta["stars"] < min_stars:
            continue
        for src in sorted(repo_dir.rglob("*.java")):
            try:
                text = src.read_text(encoding="utf-8")
            except (OSError, UnicodeDecodeError) as exc:
                sink.append(f"{src}: skipped ({exc})")
                continue
            out.append(
                SourceFile(
                    path=src.relative_to(root).as_posix(),
                    text=text,
                    repo_meta=dict(meta),
                )
            )
    out.sort(key=lambda f: f.path)
    return out
