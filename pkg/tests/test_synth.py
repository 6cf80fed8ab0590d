from __future__ import annotations

import random
from dataclasses import dataclass

import pytest

from featsmith.apiindex import APIConstant, APIIndex, APIMethod
from featsmith.config import SearchBudget
from featsmith.synth import (
    ConstRef,
    ContextVar,
    CtorCall,
    Expression,
    HoleFillStats,
    MethodCall,
    ProgrammingContext,
    RankedExpression,
    SynthError,
    TypeFillError,
    VarRef,
    build_type_graph,
    canonical_form,
    corpus_frequency,
    cost,
    instantiate,
    render,
    synthesize_hole,
)

from toylib import make_toy_index


def search_tree_index() -> APIIndex:
    """Search-tree fixture: exactly four method chains from Workbook to Cell."""
    m = APIMethod
    return APIIndex(
        "searchtree",
        {"Workbook": (), "Sheet": (), "Row": (), "Cell": ()},
        [
            m("Workbook", "createSheet", (), "Sheet"),
            m("Workbook", "getSheetAt", (), "Sheet"),
            m("Sheet", "createRow", (), "Row"),
            m("Sheet", "getRow", (), "Row"),
            m("Row", "createCell", (), "Cell"),
        ],
    )


def reachability_index() -> APIIndex:
    m = APIMethod
    return APIIndex(
        "reach",
        {"Workbook": (), "Sheet": (), "Row": (), "Cell": ()},
        [
            m("Workbook", "createSheet", (), "Sheet"),
            m("Sheet", "createRow", (), "Row"),
            m("Row", "createCell", (), "Cell"),
            m("Sheet", "getRow", (), "Row"),
            m("Row", "getCell", (), "Cell"),
            m("Workbook", "getSheetAt", (), "Sheet"),
        ],
    )


def neo_index() -> APIIndex:
    m = APIMethod
    return APIIndex(
        "neo",
        {"GraphDatabaseFactory": (), "GraphDatabaseService": ()},
        [
            m("GraphDatabaseFactory", "<init>", (), "GraphDatabaseFactory", constructor=True),
            m(
                "GraphDatabaseFactory",
                "newEmbeddedDatabase",
                ("String",),
                "GraphDatabaseService",
            ),
        ],
    )


def test_type_graph_reproduces_reachability():
    tg = build_type_graph(reachability_index())
    assert tg.nodes == {"Workbook", "Sheet", "Row", "Cell"}
    assert tg.reachable_types("Workbook") == {"Workbook", "Sheet", "Row", "Cell"}
    assert tg.reachable_types("Row") == {"Row", "Cell"}
    method_edges = [e for e in tg.edges() if e[2].startswith("method:")]
    assert len(method_edges) == 6


def test_empty_index_empty_graph():
    tg = build_type_graph(APIIndex("empty", {}, []))
    assert tg.nodes == set()
    assert tg.edges() == []


def test_upcast_edge_from_declared_subtype():
    tg = build_type_graph(make_toy_index())
    assert ("HSSFWorkbook", "Workbook", "upcast") in tg.edges()
    # methods inherited through the up-cast are callable on the subtype
    assert any(m.name == "createSheet" for m in tg.methods_from["HSSFWorkbook"])


def test_cost_context_variable_is_free():
    ctx = ProgrammingContext.of(("s", "CellStyle"))
    assert cost(VarRef("s", "CellStyle"), ctx) == 0


def test_cost_constructor_chain_is_three():
    ctx = ProgrammingContext.of(("p", "String"))
    expr = MethodCall(
        CtorCall("GraphDatabaseFactory"),
        "GraphDatabaseFactory",
        "newEmbeddedDatabase",
        "GraphDatabaseService",
        (VarRef("p", "String"),),
    )
    assert cost(expr, ctx) == 3  # 2 (constructor) + 1 (call) + 0 (context arg)


def test_cost_string_literal_is_free():
    ctx = ProgrammingContext.of()
    assert cost(ConstRef('"out.xls"', "String"), ctx) == 0


def _random_expr(rng: random.Random, depth: int = 0) -> Expression:
    roll = rng.random()
    if depth >= 3 or roll < 0.3:
        return rng.choice([VarRef("v", "T"), ConstRef("1", "int")])
    if roll < 0.6:
        return CtorCall("T", tuple(_random_expr(rng, depth + 1) for _ in range(rng.randint(0, 2))))
    return MethodCall(
        _random_expr(rng, depth + 1),
        "T",
        "m",
        "T",
        tuple(_random_expr(rng, depth + 1) for _ in range(rng.randint(0, 2))),
    )


def _oracle_cost(e: Expression) -> int:
    # direct recursive transcription of the pricing rules
    if isinstance(e, (VarRef, ConstRef)):
        return 0
    if isinstance(e, CtorCall):
        return 2 + sum(_oracle_cost(a) for a in e.args)
    return 1 + _oracle_cost(e.receiver) + sum(_oracle_cost(a) for a in e.args)


def test_cost_matches_bruteforce_on_random_trees():
    rng = random.Random(5)
    ctx = ProgrammingContext.of(("v", "T"))
    for _ in range(200):
        e = _random_expr(rng)
        assert cost(e, ctx) == _oracle_cost(e)


def _assert_well_typed(e: Expression, index: APIIndex, ctx: ProgrammingContext):
    if isinstance(e, VarRef):
        v = ctx.lookup(e.name)
        assert v is not None and v.type_name == e.type_name
    elif isinstance(e, ConstRef):
        pass
    elif isinstance(e, CtorCall):
        ctor = next(m for m in index.constructors_of(e.type_name) if len(m.params) == len(e.args))
        for pt, a in zip(ctor.params, e.args):
            assert index.assignable(a.result_type(), pt)
            _assert_well_typed(a, index, ctx)
    elif isinstance(e, MethodCall):
        m = index.lookup_method(e.receiver.result_type(), e.method)
        assert m is not None and m.returns == e.returns
        for pt, a in zip(m.params, e.args):
            assert index.assignable(a.result_type(), pt)
            _assert_well_typed(a, index, ctx)
        _assert_well_typed(e.receiver, index, ctx)


def test_search_tree_exactly_four_chains():
    index = search_tree_index()
    tg = build_type_graph(index)
    ctx = ProgrammingContext.of(("wb", "Workbook"))
    got = synthesize_hole(
        "Cell", ctx, tg, SearchBudget(max_chain_calls=3, max_results=0, max_search_nodes=50000)
    )
    texts = {r.text for r in got}
    assert texts == {
        "wb.createSheet().createRow().createCell()",
        "wb.createSheet().getRow().createCell()",
        "wb.getSheetAt().createRow().createCell()",
        "wb.getSheetAt().getRow().createCell()",
    }
    assert len(got) == 4
    assert all(r.cost == 3 for r in got)
    for r in got:
        _assert_well_typed(r.expression, index, ctx)
    # ranked order equals the brute-force (cost, frequency, text) sort
    resorted = sorted(got, key=lambda r: (r.cost, -r.corpus_frequency, r.text))
    assert [r.text for r in got] == [r.text for r in resorted]
    assert [r.rank for r in got] == [1, 2, 3, 4]


def test_context_variable_dominates():
    index = make_toy_index()
    tg = build_type_graph(index)
    ctx = ProgrammingContext.of(("wb", "Workbook"), ("s", "CellStyle"))
    got = synthesize_hole("CellStyle", ctx, tg, SearchBudget())
    assert got[0].text == "s" and got[0].cost == 0
    assert all(r.cost >= got[0].cost for r in got)
    costs = [r.cost for r in got]
    assert costs == sorted(costs)


def test_most_recent_same_type_variable_first():
    index = make_toy_index()
    tg = build_type_graph(index)
    ctx = ProgrammingContext(
        [
            ContextVar("early", "CellStyle", 3),
            ContextVar("late", "CellStyle", 7),
        ]
    )
    got = synthesize_hole("CellStyle", ctx, tg, SearchBudget())
    assert [r.text for r in got[:2]] == ["late", "early"]


def test_subtype_variable_satisfies_supertype_target():
    index = make_toy_index()
    tg = build_type_graph(index)
    ctx = ProgrammingContext.of(("hw", "HSSFWorkbook"))
    got = synthesize_hole("Workbook", ctx, tg, SearchBudget())
    assert got[0].text == "hw"


def test_corpus_frequency_counts_and_breaks_ties():
    stats = HoleFillStats()
    seen = MethodCall(VarRef("w", "Workbook"), "Workbook", "createSheet", "Sheet")
    for _ in range(5):
        stats.add("HOLE1", canonical_form(seen), render(seen), "Sheet")
    assert corpus_frequency(seen, stats, "HOLE1") == 5
    unseen = MethodCall(VarRef("w", "Workbook"), "Workbook", "getSheetAt", "Sheet")
    assert corpus_frequency(unseen, stats, "HOLE1") == 0

    index = search_tree_index()
    tg = build_type_graph(index)
    ctx = ProgrammingContext.of(("wb", "Workbook"))
    stats2 = HoleFillStats()
    fav = MethodCall(
        MethodCall(
            MethodCall(VarRef("x", "Workbook"), "Workbook", "getSheetAt", "Sheet"),
            "Sheet",
            "getRow",
            "Row",
        ),
        "Row",
        "createCell",
        "Cell",
    )
    for _ in range(4):
        stats2.add("H", canonical_form(fav), render(fav), "Cell")
    other = MethodCall(
        MethodCall(
            MethodCall(VarRef("x", "Workbook"), "Workbook", "createSheet", "Sheet"),
            "Sheet",
            "createRow",
            "Row",
        ),
        "Row",
        "createCell",
        "Cell",
    )
    stats2.add("H", canonical_form(other), render(other), "Cell")
    got = synthesize_hole("Cell", ctx, tg, SearchBudget(max_chain_calls=3), stats2, "H")
    assert got[0].text == "wb.getSheetAt().getRow().createCell()"
    assert got[0].corpus_frequency == 4


def test_budget_completeness_matches_bruteforce_enumeration():
    index = search_tree_index()
    tg = build_type_graph(index)
    ctx = ProgrammingContext.of(("wb", "Workbook"))

    def brute_chains(max_calls: int) -> set[str]:
        out = set()

        def extend(expr_text: str, cur_type: str, calls: int):
            if calls > 0 and cur_type == "Cell":
                out.add(expr_text)
            if calls >= max_calls:
                return
            for m in index.methods:
                if m.owner == cur_type and not m.constructor:
                    extend(f"{expr_text}.{m.name}()", m.returns, calls + 1)

        extend("wb", "Workbook", 0)
        return out

    for L in (1, 2, 3, 4):
        got = synthesize_hole(
            "Cell", ctx, tg, SearchBudget(max_chain_calls=L, max_results=0)
        )
        assert {r.text for r in got} == brute_chains(L)


def test_scalar_hole_gets_corpus_suggestions_only():
    index = make_toy_index()
    tg = build_type_graph(index)
    ctx = ProgrammingContext.of(("wb", "Workbook"))
    assert synthesize_hole("String", ctx, tg, SearchBudget()) == []
    stats = HoleFillStats()
    stats.add("H1", '"out.xls"', '"out.xls"', "String")
    got = synthesize_hole("String", ctx, tg, SearchBudget(), stats, "H1")
    assert [r.text for r in got] == ['"out.xls"']
    assert got[0].cost == 0


@dataclass
class _Hole:
    id: str
    kind: str
    expected_type: str | None
    marker: str


@dataclass
class _Skeleton:
    text: str
    holes: list[_Hole]


COLOR_PAIR_SKELETON = _Skeleton(
    text=(
        "<$HOLE1>.setFillForegroundColor(<$HOLE2>);\n"
        "FillPatternType fillPatternType_1 = FillPatternType.SOLID_FOREGROUND;\n"
        "<$HOLE1>.setFillPattern(fillPatternType_1);\n"
    ),
    holes=[
        _Hole("HOLE1", "HOLE", "CellStyle", "<$HOLE1>"),
        _Hole("HOLE2", "HOLE", "short", "<$HOLE2>"),
    ],
)


def test_instantiate_color_pair_skeleton():
    index = make_toy_index()
    ctx = ProgrammingContext.of(("style", "CellStyle"))
    snippet = instantiate(
        COLOR_PAIR_SKELETON,
        {"HOLE1": VarRef("style", "CellStyle"), "HOLE2": ConstRef("42", "int")},
        ctx,
        index,
    )
    assert "<$" not in snippet.text
    assert snippet.text.count("style.set") == 2
    stmts = [c.kind for c in snippet.tree.children]
    assert len(stmts) == 3


def test_instantiate_missing_fill_names_hole():
    index = make_toy_index()
    ctx = ProgrammingContext.of(("style", "CellStyle"))
    with pytest.raises(TypeFillError) as exc:
        instantiate(COLOR_PAIR_SKELETON, {"HOLE2": ConstRef("42", "int")}, ctx, index)
    assert exc.value.hole == "HOLE1"


def test_instantiate_wrong_type_rejected():
    index = make_toy_index()
    ctx = ProgrammingContext.of(("wb", "Workbook"), ("style", "CellStyle"))
    with pytest.raises(TypeFillError) as exc:
        instantiate(
            COLOR_PAIR_SKELETON,
            {"HOLE1": VarRef("wb", "Workbook"), "HOLE2": ConstRef("42", "int")},
            ctx,
            index,
        )
    assert exc.value.hole == "HOLE1"
    assert exc.value.expected == "CellStyle" and exc.value.actual == "Workbook"


def test_instantiate_subtype_accepted_via_upcast():
    index = make_toy_index()
    skeleton = _Skeleton(
        text="<$HOLE1>.createSheet();\n",
        holes=[_Hole("HOLE1", "HOLE", "Workbook", "<$HOLE1>")],
    )
    ctx = ProgrammingContext.of(("hw", "HSSFWorkbook"))
    snippet = instantiate(skeleton, {"HOLE1": VarRef("hw", "HSSFWorkbook")}, ctx, index)
    assert snippet.text.strip() == "hw.createSheet();"


def test_instantiate_multi_use_chain_bound_once():
    index = make_toy_index()
    skeleton = _Skeleton(
        text="<$HOLE1>.setFillForegroundColor(c);\n<$HOLE1>.setFillPattern(FillPatternType.DIAMONDS);\n",
        holes=[_Hole("HOLE1", "HOLE", "CellStyle", "<$HOLE1>")],
    )
    ctx = ProgrammingContext.of(("wb", "Workbook"), ("c", "short"))
    fill = MethodCall(VarRef("wb", "Workbook"), "Workbook", "createCellStyle", "CellStyle")
    snippet = instantiate(skeleton, {"HOLE1": fill}, ctx, index)
    assert snippet.text.count("wb.createCellStyle()") == 1
    assert "cellStyle_1" in snippet.text


def test_instantiate_body_hole_defaults_to_comment():
    index = make_toy_index()
    skeleton = _Skeleton(
        text="try {\n  wb.write(out);\n} catch (IOException e) {\n  <$BODY>\n}\n",
        holes=[_Hole("BODY", "BODY", None, "<$BODY>")],
    )
    ctx = ProgrammingContext.of(("wb", "Workbook"), ("out", "OutputStream"))
    snippet = instantiate(skeleton, {}, ctx, index)
    assert "<$BODY>" not in snippet.text
    assert "/* ... */" in snippet.text
