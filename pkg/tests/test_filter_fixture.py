from __future__ import annotations

import json
from pathlib import Path

import pytest

from featsmith.chunker import chunk_sentence
from featsmith.config import FilterConfig, load_wordlist
from featsmith.features import analyze_sentence
from featsmith.ingest import Block, split_sentences
from featsmith.parsetree import parse_tree_from_bracketed

FIXTURE = json.loads(
    (Path(__file__).parent / "fixtures" / "filter_fixture.json").read_text()
)
CFG = FilterConfig.bundled()
ABBREVS = tuple(load_wordlist("abbreviations.txt"))


def run_row(row):
    sentences = split_sentences(
        Block("prose", row["text"]), thread_id=row["id"], abbreviations=ABBREVS
    )
    assert len(sentences) == 1, f"{row['id']}: expected one sentence"
    sentence = sentences[0]
    tree = (
        parse_tree_from_bracketed(row["tree"])
        if row["tree"]
        else chunk_sentence(sentence.masked_text)
    )
    return analyze_sentence(sentence, tree, CFG)


@pytest.mark.parametrize("row", FIXTURE["sentences"], ids=lambda r: r["id"])
def test_filter_fixture_row(row):
    analysis = run_row(row)
    if row.get("candidates") is not None:
        assert len(analysis.candidates) == row["candidates"], (
            f"{row['id']}: candidate count",
            [c.text for c in analysis.candidates],
        )
    # survivors are matched on unmasked phrase text
    kept = [
        " ".join(
            sentence_restore(analysis.sentence, c.text).split()
        )
        for c in analysis.kept
    ]
    assert kept == row["kept"], (row["id"], kept, [c.text for c in analysis.candidates])


def sentence_restore(sentence, phrase_text: str) -> str:
    from featsmith.ingest import unmask

    return unmask(phrase_text, sentence.term_table)


def test_fixture_has_forty_sentences():
    assert len(FIXTURE["sentences"]) == 40


def test_long_sentence_row_matches_acceptance_shape():
    row = FIXTURE["sentences"][0]
    analysis = run_row(row)
    assert len(analysis.candidates) == 7
    assert len(analysis.kept) == 1
