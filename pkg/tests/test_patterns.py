from __future__ import annotations

import pytest

from featsmith.config import PipelineConfig
from featsmith.features import Action, FunctionalFeature, NormalizedFeature, ObjectPhrase
from featsmith.ingest import SourceFile, Thread, Block
from featsmith.patterns import (
    EmptyCorpusError,
    NoMatchError,
    NoPatternError,
    analyze_files,
    build_usage_corpus,
    code_terms_from_threads,
    match_api,
    mine_pattern,
)

from toylib import make_toy_index

INDEX = make_toy_index()
CFG = PipelineConfig()


def feat(verb, noun, mods=(), particle=None) -> FunctionalFeature:
    return FunctionalFeature(
        canonical=NormalizedFeature(
            Action(verb, particle), ObjectPhrase(noun, "the", None, tuple(mods))
        ),
        surface_forms=frozenset({f"{verb} the {' '.join(mods)} {noun}"}),
        support=3,
        thread_refs=frozenset({"t1"}),
        feature_id="f001",
    )


def test_overlap_of_set_cell_color_is_two():
    feature = feat("set", "color", mods=("cell",))
    got = match_api(feature, ["setFillForegroundColor"], INDEX)
    assert got.overlap_score == 2  # "set" and "color"
    assert got.qualified == "CellStyle.setFillForegroundColor"


def test_tie_breaks_by_occurrence_count():
    feature = feat("set", "color", mods=("cell",))
    # both overlap 2 with "set cell color"; the 3x-mentioned one wins
    codes = ["setCellValue", "setFillForegroundColor"] + ["setFillForegroundColor"] * 2
    got = match_api(feature, codes, INDEX)
    assert got.name == "setFillForegroundColor"
    assert got.occurrence_count == 3
    flipped = ["setFillForegroundColor"] + ["setCellValue"] * 3
    assert match_api(feature, flipped, INDEX).name == "setCellValue"


def test_zero_overlap_raises_nomatch():
    feature = feat("parse", "text")
    with pytest.raises(NoMatchError):
        match_api(feature, ["addMergedRegion"], INDEX)


def test_code_terms_extraction_counts_occurrences():
    threads = [
        Thread(
            id="t1",
            title="How to color a cell",
            tags=frozenset({"toysheet"}),
            body_blocks=(
                Block("prose", "Use this:"),
                Block("code", "style.setFillForegroundColor(x);\nstyle.setFillForegroundColor(y);"),
            ),
        )
    ]
    terms = code_terms_from_threads(threads)
    assert terms.count("setFillForegroundColor") == 2


def _file(path: str, body: str, stars=7) -> SourceFile:
    return SourceFile(path=path, text=body, repo_meta={"repo_id": "r", "stars": stars})


def test_usage_corpus_token_containment():
    files = [
        _file(f"a/f{i}.java", "sheet.addMergedRegion(a);" if i < 4 else "x.other();")
        for i in range(10)
    ]
    api = match_api(feat("merge", "cell"), ["addMergedRegion"], INDEX)
    got = build_usage_corpus(api, files)
    assert len(got) == 4


def test_usage_corpus_respects_token_boundary():
    files = [_file("a/x.java", "foo.addMergedRegionX(a);")]
    api = match_api(feat("merge", "cell"), ["addMergedRegion"], INDEX)
    with pytest.raises(EmptyCorpusError):
        build_usage_corpus(api, files)


COLOR_BODY = """
void paint(Workbook wb, Cell cell, short color) {{
    CellStyle style = wb.createCellStyle();
    {lines}
}}
"""


def color_corpus(n=20, swap_from=None, with_cellstyle=True):
    files = []
    for i in range(n):
        calls = [
            "style.setFillForegroundColor(color);",
            "style.setFillPattern(FillPatternType.SOLID_FOREGROUND);",
        ]
        if swap_from is not None and i >= swap_from:
            calls.reverse()
        if with_cellstyle:
            calls.append("cell.setCellStyle(style);")
        files.append(_file(f"repo/color{i:02d}.java", COLOR_BODY.format(lines="\n    ".join(calls))))
    return files


def test_mine_pattern_contains_all_three_calls():
    corpus = color_corpus(20)
    api = match_api(feat("set", "color", mods=("cell",)), ["setFillForegroundColor"], INDEX)
    patterns = mine_pattern(corpus, api, 0.05, INDEX, CFG)
    top = patterns[0]
    assert top.support == 20
    labels = " ".join(top.skeleton.text.split())
    for call in ("setFillForegroundColor", "setFillPattern", "setCellStyle"):
        assert call in labels


def test_mine_pattern_invariant_under_swapped_call_order():
    api = match_api(feat("set", "color", mods=("cell",)), ["setFillForegroundColor"], INDEX)
    a = mine_pattern(color_corpus(20), api, 0.05, INDEX, CFG)[0]
    b = mine_pattern(color_corpus(20, swap_from=10), api, 0.05, INDEX, CFG)[0]
    assert a.support == b.support == 20
    assert a.skeleton.text == b.skeleton.text


def test_unanimity_threshold_restricts_to_shared_part():
    corpus = color_corpus(4, with_cellstyle=True) + color_corpus(1, with_cellstyle=False)
    fixed = [
        SourceFile(path=f"repo/u{i}.java", text=f.text, repo_meta=f.repo_meta)
        for i, f in enumerate(corpus)
    ]
    api = match_api(feat("set", "color", mods=("cell",)), ["setFillForegroundColor"], INDEX)
    top = mine_pattern(fixed, api, 1.0, INDEX, CFG)[0]
    assert top.support == 5
    assert "setCellStyle" not in top.skeleton.text
    assert "setFillPattern" in top.skeleton.text


COLOR_PAIR_BODY = """
void paint(CellStyle style, short color) {{
    style.setFillForegroundColor({color});
    style.setFillPattern(FillPatternType.{pattern});
}}
"""


def color_pair_corpus(n=10):
    files = []
    for i in range(n):
        color = "color" if i % 2 == 0 else str(10 + i)  # varying values
        files.append(
            _file(
                f"repo/pair{i:02d}.java",
                COLOR_PAIR_BODY.format(color=color, pattern="SOLID_FOREGROUND"),
            )
        )
    return files


def mined_color_pair():
    api = match_api(feat("set", "color", mods=("cell",)), ["setFillForegroundColor"], INDEX)
    return mine_pattern(color_pair_corpus(), api, 0.05, INDEX, CFG)[0]


def test_color_pair_skeleton_shape():
    top = mined_color_pair()
    text = top.skeleton.text
    assert text.count("<$HOLE1>") == 2  # shared receiver hole
    assert "<$HOLE2>" in text
    assert "FillPatternType.SOLID_FOREGROUND" in text  # retained constant
    assert "FillPatternType fillPatternType_1 = FillPatternType.SOLID_FOREGROUND;" in text
    hole1 = top.skeleton.hole("HOLE1")
    hole2 = top.skeleton.hole("HOLE2")
    assert hole1.expected_type == "CellStyle"
    assert hole2.expected_type == "short"
    assert top.provenance == "repo/pair00.java"


def test_color_pair_skeleton_reparses():
    top = mined_color_pair()
    assert top.skeleton.tree is not None
    holes = [n for n in top.skeleton.tree.walk() if n.kind == "Hole"]
    assert len(holes) == 3  # HOLE1 twice + HOLE2


def test_hole_ids_stable_across_reruns():
    a = mined_color_pair()
    b = mined_color_pair()
    assert a.skeleton.text == b.skeleton.text
    assert [h.to_dict() for h in a.skeleton.holes] == [h.to_dict() for h in b.skeleton.holes]


def test_fill_stats_from_def_use_extraction():
    top = mined_color_pair()
    obs = top.hole_stats.observations("HOLE2")
    assert obs, "color hole should have corpus fillers"
    canons = {o["canonical"] for o in obs}
    assert "var:short" in canons  # parameter-fed fillers abstract to their type
    assert any(o["canonical"].isdigit() for o in obs)  # literal fillers stay literal


TRY_BODY = """
void save(OutputStream out) {{
    Workbook wb = new HSSFWorkbook();
    try {{
        wb.write(out);
    }} catch (IOException e) {{
        {handler}
    }}
}}
"""


def try_corpus(n=8):
    handlers = ["e.printStackTrace();", "log(e);", "", "report(e);"]
    return [
        _file(f"repo/save{i:02d}.java", TRY_BODY.format(handler=handlers[i % len(handlers)]))
        for i in range(n)
    ]


def test_exception_pattern_renders_body_hole():
    api = match_api(feat("write", "workbook"), ["write", "write", "HSSFWorkbook"], INDEX)
    assert api.name == "write"
    top = mine_pattern(try_corpus(), api, 0.05, INDEX, CFG)[0]
    text = top.skeleton.text
    assert "try {" in text
    assert "catch (IOException e)" in text
    assert "<$BODY>" in text
    assert "new HSSFWorkbook()" in text
    assert "workbook_1.write(<$HOLE1>)" in text.replace("\n", " ")
    body_holes = [h for h in top.skeleton.holes if h.kind == "BODY"]
    assert len(body_holes) == 1


def test_full_coverage_single_statement_zero_holes():
    files = [_file(f"repo/n{i}.java", "void m() { new HSSFWorkbook(); }") for i in range(4)]
    api = match_api(feat("create", "workbook"), ["HSSFWorkbook"], INDEX)
    assert api.kind == "type"
    top = mine_pattern(files, api, 0.05, INDEX, CFG)[0]
    assert top.skeleton.holes == []
    assert top.skeleton.text.strip() == "new HSSFWorkbook();"


def test_skeleton_completeness_every_op_origin_present():
    top = mined_color_pair()
    for call in ("setFillForegroundColor", "setFillPattern"):
        assert call in top.skeleton.text


def test_analyze_files_skips_mostly_unsupported():
    bad = _file(
        "repo/bad.java",
        "list.forEach(x -> x.run());\nswitch (a) { }\nint ok = 1;",
    )
    warnings: list[str] = []
    got = analyze_files([bad], INDEX, CFG, warnings)
    assert got == []
    assert any("skipped" in w for w in warnings)
