from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from featsmith.config import load_wordlist
from featsmith.ingest import (
    Block,
    IngestError,
    load_client_corpus,
    load_threads,
    mask_code_terms,
    split_sentences,
    unmask,
)

ABBREVS = tuple(load_wordlist("abbreviations.txt"))


def _thread_record(tid, tags=("apache-poi",), body="Some body prose."):
    return {
        "id": tid,
        "title": f"Title {tid}",
        "tags": list(tags),
        "body_blocks": [{"kind": "prose", "text": body}],
        "answer_blocks": [],
    }


def test_load_threads_tag_filter(tmp_path):
    for tid, tags in [("t1", ["apache-poi"]), ("t2", ["jsoup"]), ("t3", ["apache-poi", "java"])]:
        (tmp_path / f"{tid}.json").write_text(json.dumps(_thread_record(tid, tags)))
    corpus = load_threads(tmp_path, {"apache-poi"})
    assert [t.id for t in corpus] == ["t1", "t3"]


def test_load_threads_empty_dir(tmp_path):
    assert len(load_threads(tmp_path, {"x"})) == 0


def test_load_threads_missing_id_names_field_and_file(tmp_path):
    record = _thread_record("t1")
    del record["id"]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(record))
    with pytest.raises(IngestError) as exc:
        load_threads(tmp_path, set())
    assert "id" in str(exc.value) and "bad.json" in str(exc.value)


def test_load_threads_jsonl_offsets(tmp_path):
    f = tmp_path / "corpus.jsonl"
    f.write_text(json.dumps(_thread_record("a")) + "\n{not json}\n")
    with pytest.raises(IngestError) as exc:
        load_threads(f, set())
    assert ":2" in str(exc.value)


def test_mask_call_chain_single_placeholder():
    text = "Try to use below code: setFillForegroundColor(IndexedColors.YELLOW.getIndex());"
    masked, table = mask_code_terms(text)
    assert len(table) == 1
    placeholder, original = next(iter(table.items()))
    assert original == "setFillForegroundColor(IndexedColors.YELLOW.getIndex());"
    assert masked == f"Try to use below code: {placeholder}"
    assert unmask(masked, table) == text


def test_mask_plain_prose_is_identity():
    text = "I want to set the color of a cell"
    masked, table = mask_code_terms(text)
    assert masked == text
    assert table == {}


def test_mask_two_camelcase_terms_round_trip():
    text = "call getCellStyle then setFont"
    masked, table = mask_code_terms(text)
    assert len(table) == 2
    assert "getCellStyle" not in masked and "setFont" not in masked
    assert unmask(masked, table) == text


def test_mask_inline_code_tags_and_dotted():
    text = "Use <code>wb.write(out)</code> or see Sheet.getRow for details, e.g. rows."
    masked, table = mask_code_terms(text, ABBREVS)
    assert unmask(masked, table) == text
    assert "Sheet.getRow" in table.values()
    assert "<code>wb.write(out)</code>" in table.values()
    assert "e.g" not in {v.rstrip(".") for v in table.values()}


def test_placeholder_freshness():
    text = "cterm1 is already here and setFillPattern too"
    masked, table = mask_code_terms(text)
    assert set(table) == {"cterm2"}
    assert unmask(masked, table) == text


@settings(max_examples=200, deadline=None)
@given(st.text(min_size=0, max_size=120))
def test_mask_round_trip_property(text):
    masked, table = mask_code_terms(text, ABBREVS)
    assert unmask(masked, table) == text
    for placeholder in table:
        assert placeholder not in text


def test_split_two_sentences():
    got = split_sentences(Block("prose", "First sentence here. Second sentence there."))
    assert [s.text for s in got] == ["First sentence here.", "Second sentence there."]
    assert [s.index for s in got] == [0, 1]


def test_split_short_sentence_flagged():
    got = split_sentences(Block("prose", "Hi."), min_chars=15)
    assert len(got) == 1
    assert got[0].short


def test_split_abbreviation_does_not_break():
    text = "Use terminal punctuation, e.g. a period, to end sentences. Next one."
    got = split_sentences(Block("prose", text), abbreviations=ABBREVS)
    assert len(got) == 2
    assert got[0].text.startswith("Use terminal punctuation, e.g. a period")


def test_split_reassembles_block_modulo_whitespace():
    text = "One sentence. Another one! A third? Yes."
    got = split_sentences(Block("prose", text), abbreviations=ABBREVS)
    assert " ".join(s.text for s in got).split() == text.split()


def test_split_rejects_code_block():
    with pytest.raises(IngestError):
        split_sentences(Block("code", "int x = 1;"))


def test_sentence_masking_round_trip_with_code_terms():
    text = "Call getCellStyle first. IndexedColors.YELLOW is the color."
    got = split_sentences(Block("prose", text), abbreviations=ABBREVS)
    assert len(got) == 2
    assert got[0].text == "Call getCellStyle first."
    assert got[1].text == "IndexedColors.YELLOW is the color."
    for s in got:
        assert unmask(s.masked_text, s.term_table) == s.text


def _write_repo(root, name, stars, files):
    repo = root / name
    repo.mkdir(parents=True)
    if stars is not None:
        (repo / "repo.json").write_text(json.dumps({"repo_id": name, "stars": stars}))
    for fname, text in files.items():
        p = repo / fname
        p.parent.mkdir(parents=True, exist_ok=True)
        p.write_text(text)


def test_client_corpus_star_threshold(tmp_path):
    _write_repo(tmp_path, "low", 3, {f"f{i}.java": "class A {}" for i in range(5)})
    _write_repo(tmp_path, "high", 7, {f"g{i}.java": "class B {}" for i in range(5)})
    files = load_client_corpus(tmp_path, min_stars=5)
    assert len(files) == 5
    assert all(f.path.startswith("high/") for f in files)


def test_client_corpus_min_stars_zero_keeps_all(tmp_path):
    _write_repo(tmp_path, "low", 3, {"a.java": "class A {}"})
    _write_repo(tmp_path, "high", 7, {"b.java": "class B {}"})
    assert len(load_client_corpus(tmp_path, min_stars=0)) == 2


def test_client_corpus_missing_metadata_defaults_to_zero_stars(tmp_path):
    _write_repo(tmp_path, "nometa", None, {"a.java": "class A {}"})
    assert load_client_corpus(tmp_path, min_stars=5) == []
    files = load_client_corpus(tmp_path, min_stars=0)
    assert len(files) == 1 and files[0].stars == 0


def test_corpus_serialization_deterministic(tmp_path):
    for tid in ("b", "a"):
        (tmp_path / f"{tid}.json").write_text(json.dumps(_thread_record(tid)))
    first = load_threads(tmp_path, set()).to_jsonl()
    second = load_threads(tmp_path, set()).to_jsonl()
    assert first == second
    assert first.index('"id": "a"') < first.index('"id": "b"')
