"""Type-directed expression synthesis over the API type graph.

Holes are filled by one of three strategies: pick a context variable of the
target type, call a constructor, or walk a method chain whose last return
type matches.  Candidates are ranked by the integer cost model (context
variables and constants are free, constructors cost 2, other calls 1,
argument costs add up recursively), with corpus frequency breaking ties and
declaration recency ordering same-type context variables (most recent
first).
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .apiindex import APIIndex, APIMethod
from .config import SearchBudget
from .flow import literal_type
from .javaparse import Node, parse_compilation_unit


class SynthError(ValueError):
    pass


class TypeFillError(SynthError):
    def __init__(self, hole: str, expected: str | None, actual: str | None):
        super().__init__(
            f"hole {hole}: expression of type {actual!r} does not fit expected {expected!r}"
        )
        self.hole = hole
        self.expected = expected
        self.actual = actual


# -- expressions ---------------------------------------------------------------


@dataclass(frozen=True)
class Expression:
    def result_type(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class VarRef(Expression):
    name: str
    type_name: str

    def result_type(self) -> str:
        return self.type_name


@dataclass(frozen=True)
class ConstRef(Expression):
    text: str  # literal text or Owner.CONSTANT
    type_name: str

    def result_type(self) -> str:
        return self.type_name


@dataclass(frozen=True)
class CtorCall(Expression):
    type_name: str
    args: tuple[Expression, ...] = ()

    def result_type(self) -> str:
        return self.type_name


@dataclass(frozen=True)
class MethodCall(Expression):
    receiver: Expression
    owner: str
    method: str
    returns: str
    args: tuple[Expression, ...] = ()

    def result_type(self) -> str:
        return self.returns


def canonical_form(e: Expression) -> str:
    """Qualified, whitespace-free form used for dedup and corpus frequency.

    Variable names are abstracted to their type so corpus-extracted fillers
    and context-specific candidates compare equal.
    """
    if isinstance(e, VarRef):
        return f"var:{e.type_name}"
    if isinstance(e, ConstRef):
        return e.text
    if isinstance(e, CtorCall):
        return f"new:{e.type_name}({','.join(canonical_form(a) for a in e.args)})"
    if isinstance(e, MethodCall):
        inner = ",".join(canonical_form(a) for a in e.args)
        return f"call:{e.owner}.{e.method}({canonical_form(e.receiver)};{inner})"
    raise SynthError(f"unknown expression {e!r}")


def render(e: Expression) -> str:
    """Java source text of the expression."""
    if isinstance(e, VarRef):
        return e.name
    if isinstance(e, ConstRef):
        return e.text
    if isinstance(e, CtorCall):
        return f"new {e.type_name}({', '.join(render(a) for a in e.args)})"
    if isinstance(e, MethodCall):
        return f"{render(e.receiver)}.{e.method}({', '.join(render(a) for a in e.args)})"
    raise SynthError(f"unknown expression {e!r}")


# -- programming context ---------------------------------------------------------


@dataclass(frozen=True)
class ContextVar:
    name: str
    type_name: str
    index: int  # declaration order; larger = more recent


@dataclass
class ProgrammingContext:
    variables: list[ContextVar] = field(default_factory=list)

    def __post_init__(self):
        indices = [v.index for v in self.variables]
        if indices != sorted(indices) or len(set(indices)) != len(indices):
            raise SynthError("declaration indices must be strictly increasing")

    @classmethod
    def of(cls, *pairs: tuple[str, str]) -> "ProgrammingContext":
        return cls([ContextVar(n, t, i) for i, (n, t) in enumerate(pairs)])

    def lookup(self, name: str) -> ContextVar | None:
        for v in self.variables:
            if v.name == name:
                return v
        return None

    def of_type(self, target: str, index: APIIndex) -> list[ContextVar]:
        """Assignable variables, most recently declared first."""
        out = [v for v in self.variables if index.assignable(v.type_name, target)]
        return sorted(out, key=lambda v: -v.index)


# -- type graph -------------------------------------------------------------------


@dataclass
class TypeGraph:
    index: APIIndex
    # type -> outgoing method edges usable on a receiver of that type
    methods_from: dict[str, list[APIMethod]]
    upcasts: dict[str, tuple[str, ...]]

    @property
    def nodes(self) -> set[str]:
        return set(self.index.types)

    def edges(self) -> list[tuple[str, str, str]]:
        out = []
        for t, methods in sorted(self.methods_from.items()):
            for m in methods:
                if m.owner == t:  # report each declared edge once
                    out.append((t, m.returns, f"method:{m.name}"))
        for m in self.index.methods:
            if m.constructor:
                out.append(("<new>", m.owner, f"ctor:{m.name}"))
        for sub, sups in sorted(self.upcasts.items()):
            for sup in sups:
                out.append((sub, sup, "upcast"))
        return out

    def reachable_types(self, start: str) -> set[str]:
        seen = {start}
        frontier = [start]
        while frontier:
            cur = frontier.pop()
            for m in self.methods_from.get(cur, ()):
                t = m.returns
                if t not in seen:
                    seen.add(t)
                    frontier.append(t)
            for sup in self.upcasts.get(cur, ()):
                if sup not in seen:
                    seen.add(sup)
                    frontier.append(sup)
        return seen


def build_type_graph(index: APIIndex) -> TypeGraph:
    """One node per type; method/constructor/up-cast edges from the index."""
    methods_from: dict[str, list[APIMethod]] = {t: [] for t in index.types}
    for t in index.types:
        supers = index.supertypes(t)
        for m in index.methods:
            if m.constructor:
                continue
            if m.owner == t or m.owner in supers:
                methods_from[t].append(m)
        methods_from[t].sort(key=lambda m: (m.name, m.params))
    upcasts = {t: tuple(sorted(index.types.get(t, ()))) for t in index.types}
    return TypeGraph(index=index, methods_from=methods_from, upcasts=upcasts)


# -- cost model ---------------------------------------------------------------------


def cost(e: Expression, ctx: ProgrammingContext) -> int:
    """Context variables and constants are free; constructors cost 2, other
    calls 1; argument costs (receiver included) add up recursively."""
    if isinstance(e, (VarRef, ConstRef)):
        return 0
    if isinstance(e, CtorCall):
        return 2 + sum(cost(a, ctx) for a in e.args)
    if isinstance(e, MethodCall):
        return 1 + cost(e.receiver, ctx) + sum(cost(a, ctx) for a in e.args)
    raise SynthError(f"unknown expression {e!r}")


# -- corpus statistics ----------------------------------------------------------------


@dataclass
class HoleFillStats:
    """Corpus-extracted filler expressions per hole, from def-use chasing."""

    fills: dict[str, list[dict]] = field(default_factory=dict)  # hole id -> observations

    def add(self, hole_id: str, canonical: str, display: str, type_name: str) -> None:
        self.fills.setdefault(hole_id, []).append(
            {"canonical": canonical, "display": display, "type": type_name}
        )

    def frequency(self, hole_id: str | None, canonical: str) -> int:
        if hole_id is None:
            observations = [o for obs in self.fills.values() for o in obs]
        else:
            observations = self.fills.get(hole_id, [])
        return sum(1 for o in observations if o["canonical"] == canonical)

    def observations(self, hole_id: str) -> list[dict]:
        return list(self.fills.get(hole_id, ()))

    def to_dict(self) -> dict:
        return {"fills": self.fills}

    @classmethod
    def from_dict(cls, raw: dict) -> "HoleFillStats":
        return cls(fills=dict(raw.get("fills", {})))


def corpus_frequency(e: Expression, corpus_stats: HoleFillStats, hole_id: str | None = None) -> int:
    """How many corpus fillers share this expression's canonical form."""
    return corpus_stats.frequency(hole_id, canonical_form(e))


# -- search ----------------------------------------------------------------------------


@dataclass
class RankedExpression:
    expression: Expression
    cost: int
    corpus_frequency: int
    rank: int = 0

    @property
    def text(self) -> str:
        return render(self.expression)


def synthesize_hole(
    target: str,
    ctx: ProgrammingContext,
    tg: TypeGraph,
    budget: SearchBudget | None = None,
    stats: HoleFillStats | None = None,
    hole_id: str | None = None,
) -> list[RankedExpression]:
    """Enumerate and rank type-correct expressions for `target`.

    Scalar targets get corpus-frequency suggestions and context variables
    only, never synthesized chains.
    """
    budget = budget or SearchBudget()
    index = tg.index
    found: dict[str, Expression] = {}

    def consider(e: Expression):
        key = render(e)
        if key not in found:
            found[key] = e

    for v in ctx.of_type(target, index):
        consider(VarRef(v.name, v.type_name))

    if index.is_scalar(target):
        if stats is not None:
            for obs in stats.observations(hole_id) if hole_id else []:
                if obs["type"] == target and not obs["canonical"].startswith("var:"):
                    consider(ConstRef(obs["display"], obs["type"]))
    else:
        for c in index.constants_of_type(target):
            consider(ConstRef(c.qualified, c.type))
        _search_chains(target, ctx, tg, budget, consider)

    def recency(e: Expression) -> int:
        if isinstance(e, VarRef):
            v = ctx.lookup(e.name)
            if v is not None:
                return -v.index
        return 10**9

    ranked = [
        RankedExpression(
            expression=e,
            cost=cost(e, ctx),
            corpus_frequency=(
                corpus_frequency(e, stats, hole_id) if stats is not None else 0
            ),
        )
        for e in found.values()
    ]
    ranked.sort(key=lambda r: (r.cost, -r.corpus_frequency, recency(r.expression), r.text))
    if budget.max_results:
        ranked = ranked[: budget.max_results]
    for i, r in enumerate(ranked, start=1):
        r.rank = i
    return ranked


def _search_chains(
    target: str,
    ctx: ProgrammingContext,
    tg: TypeGraph,
    budget: SearchBudget,
    consider,
) -> None:
    index = tg.index
    explored = 0

    def arg_fill(param_type: str, depth: int) -> Expression | None:
        """Rank-1 fill for an argument, without further chain recursion depth."""
        vs = ctx.of_type(param_type, index)
        if vs:
            return VarRef(vs[0].name, vs[0].type_name)
        consts = index.constants_of_type(param_type)
        if consts:
            return ConstRef(consts[0].qualified, consts[0].type)
        if depth <= 0 or index.is_scalar(param_type):
            return None
        ctors = index.constructors_of(param_type)
        for ctor in sorted(ctors, key=lambda m: len(m.params)):
            args = []
            ok = True
            for pt in ctor.params:
                fill = arg_fill(pt, depth - 1)
                if fill is None:
                    ok = False
                    break
                args.append(fill)
            if ok:
                return CtorCall(param_type, tuple(args))
        return None

    # chain roots: context variables (cost 0) and constructors (cost 2)
    frontier: list[tuple[Expression, int]] = []
    for v in sorted(ctx.variables, key=lambda v: v.index):
        frontier.append((VarRef(v.name, v.type_name), 0))
    for t in sorted(index.types):
        for ctor in index.constructors_of(t):
            args = []
            ok = True
            for pt in ctor.params:
                fill = arg_fill(pt, 1)
                if fill is None:
                    ok = False
                    break
                args.append(fill)
            if ok:
                frontier.append((CtorCall(t, tuple(args)), 1))

    while frontier:
        expr, calls = frontier.pop(0)
        explored += 1
        if explored > budget.max_search_nodes:
            return
        cur_type = expr.result_type()
        if calls > 0 and index.assignable(cur_type, target):
            consider(expr)
        if calls >= budget.max_chain_calls:
            continue
        for m in tg.methods_from.get(cur_type.split("<")[0], ()):
            args = []
            ok = True
            for pt in m.params:
                fill = arg_fill(pt, 1)
                if fill is None:
                    ok = False
                    break
                args.append(fill)
            if not ok:
                continue
            frontier.append(
                (MethodCall(expr, m.owner, m.name, m.returns, tuple(args)), calls + 1)
            )


# -- instantiation ------------------------------------------------------------------


@dataclass
class CodeSnippet:
    text: str
    tree: Node


def _is_trivial(e: Expression) -> bool:
    return isinstance(e, (VarRef, ConstRef))


def _aux_name(type_name: str, taken: set[str]) -> str:
    base = type_name.split("<")[0].split(".")[-1]
    base = base[0].lower() + base[1:] if base else "v"
    k = 1
    while f"{base}_{k}" in taken:
        k += 1
    return f"{base}_{k}"


def instantiate(skeleton, fills: dict[str, Expression | str], ctx: ProgrammingContext, index: APIIndex) -> CodeSnippet:
    """Substitute hole fills into a skeleton and type-check the result.

    HOLE fills are expressions matched against the hole's expected type (up
    to up-cast); BODY fills are statement text, defaulting to a placeholder
    comment.  A non-trivial expression used by a multi-occurrence hole is
    bound once to an auxiliary local and reused.
    """
    text = skeleton.text
    aux_decls: list[str] = []
    taken = {v.name for v in ctx.variables}
    for hole in skeleton.holes:
        fill = fills.get(hole.id)
        if hole.kind == "BODY":
            body_text = fill if isinstance(fill, str) else "/* ... */"
            text = text.replace(hole.marker, body_text, 1)
            continue
        if fill is None:
            raise TypeFillError(hole.id, hole.expected_type, None)
        if isinstance(fill, str):
            fill = expression_from_source(fill, ctx, index)
        actual = fill.result_type()
        if hole.expected_type and not index.assignable(actual, hole.expected_type):
            raise TypeFillError(hole.id, hole.expected_type, actual)
        occurrences = text.count(hole.marker)
        if occurrences > 1 and not _is_trivial(fill):
            name = _aux_name(actual, taken)
            taken.add(name)
            aux_decls.append(f"{actual} {name} = {render(fill)};")
            replacement = name
        else:
            replacement = render(fill)
        text = text.replace(hole.marker, replacement)
    if aux_decls:
        text = "\n".join(aux_decls) + "\n" + text
    tree = parse_compilation_unit(text)
    left = [n for n in tree.walk() if n.kind in ("Hole", "BodyHole")]
    if left:
        raise SynthError(f"unfilled holes remain: {[n.attrs.get('hole') for n in left]}")
    problems = check_snippet(tree, ctx, index)
    if problems:
        raise SynthError("; ".join(problems))
    return CodeSnippet(text=text, tree=tree)


def expression_from_source(text: str, ctx: ProgrammingContext, index: APIIndex) -> Expression:
    """Parse a user-typed expression and resolve it against context and index."""
    unit = parse_compilation_unit(text.strip().rstrip(";") + ";")
    stmts = [n for n in unit.children]
    if len(stmts) != 1 or stmts[0].kind != "ExprStmt":
        raise SynthError(f"not a single expression: {text!r}")
    return _node_to_expression(stmts[0].children[0], ctx, index)


def _node_to_expression(node: Node, ctx: ProgrammingContext, index: APIIndex) -> Expression:
    if node.kind == "Literal":
        return ConstRef(node.text, literal_type(node.text))
    if node.kind == "Name":
        v = ctx.lookup(node.text)
        if v is None:
            raise SynthError(f"unknown variable {node.text!r}")
        return VarRef(v.name, v.type_name)
    if node.kind == "FieldAccess":
        chain = _qual_chain(node)
        if chain is not None:
            t = index.constant_type(chain)
            if t is None:
                raise SynthError(f"unknown constant {chain!r}")
            return ConstRef(chain, t)
        raise SynthError("instance field access is not an expression form here")
    if node.kind == "ConstructorCall":
        args = tuple(_node_to_expression(a, ctx, index) for a in node.children)
        ctor = next(
            (m for m in index.constructors_of(node.attrs["type"]) if len(m.params) == len(args)),
            None,
        )
        if ctor is None:
            raise SynthError(f"no constructor {node.attrs['type']}/{len(args)}")
        _check_args(ctor, args, index)
        return CtorCall(node.attrs["type"], args)
    if node.kind == "MethodInvocation":
        recv_node = node.children[0]
        args = tuple(_node_to_expression(a, ctx, index) for a in node.children[1:])
        recv = _node_to_expression(recv_node, ctx, index)
        method = index.lookup_method(recv.result_type().split("<")[0], node.attrs["name"])
        if method is None:
            raise SynthError(
                f"no method {node.attrs['name']} on {recv.result_type()}"
            )
        _check_args(method, args, index)
        return MethodCall(recv, method.owner, method.name, method.returns, args)
    if node.kind == "Cast":
        inner = _node_to_expression(node.children[0], ctx, index)
        return inner  # cast is advisory at this level
    raise SynthError(f"unsupported expression form {node.kind}")


def _qual_chain(node: Node) -> str | None:
    parts = []
    cur = node
    while cur.kind == "FieldAccess":
        parts.append(cur.attrs["name"])
        cur = cur.children[0]
    if cur.kind != "Name" or not cur.text or not cur.text[0].isupper():
        return None
    parts.append(cur.text)
    return ".".join(reversed(parts))


def _check_args(method: APIMethod, args: tuple[Expression, ...], index: APIIndex) -> None:
    if len(method.params) != len(args):
        raise SynthError(f"{method.qualified} expects {len(method.params)} arguments")
    for pt, a in zip(method.params, args):
        if not index.assignable(a.result_type(), pt):
            raise SynthError(
                f"{method.qualified}: argument of type {a.result_type()} does not fit {pt}"
            )


# -- snippet type checking ---------------------------------------------------------


def check_snippet(tree: Node, ctx: ProgrammingContext, index: APIIndex) -> list[str]:
    """Type problems in a parsed snippet against the API index (empty = ok)."""
    env: dict[str, str] = {v.name: v.type_name for v in ctx.variables}
    problems: list[str] = []

    def expr_type(node: Node) -> str | None:
        k = node.kind
        if k == "Literal":
            return literal_type(node.text)
        if k == "Name":
            if node.attrs.get("implicit"):
                return None
            t = env.get(node.text)
            if t is None and node.text and node.text[0].isupper() and node.text in index.types:
                return f"class:{node.text}"
            if t is None:
                problems.append(f"unknown name {node.text!r}")
            return t
        if k == "FieldAccess":
            chain = _qual_chain(node)
            if chain is not None:
                t = index.constant_type(chain)
                if t is None:
                    problems.append(f"unknown constant {chain!r}")
                return t
            expr_type(node.children[0])
            problems.append(f"unresolvable field access .{node.attrs['name']}")
            return None
        if k == "MethodInvocation":
            recv = node.children[0]
            args = node.children[1:]
            arg_types = [expr_type(a) for a in args]
            if recv.attrs.get("implicit"):
                problems.append(f"bare call {node.attrs['name']}() cannot be resolved")
                return None
            rt = expr_type(recv)
            if rt is None:
                return None
            method = index.lookup_method(rt.split("<")[0], node.attrs["name"])
            if method is None:
                problems.append(f"no method {node.attrs['name']} on {rt}")
                return None
            if len(method.params) != len(args):
                problems.append(f"{method.qualified} arity mismatch")
                return method.returns
            for pt, at in zip(method.params, arg_types):
                if at is not None and not index.assignable(at, pt):
                    problems.append(
                        f"{method.qualified}: argument type {at} does not fit {pt}"
                    )
            return method.returns
        if k == "ConstructorCall":
            args = node.children
            arg_types = [expr_type(a) for a in args]
            tname = node.attrs["type"]
            ctor = next(
                (m for m in index.constructors_of(tname) if len(m.params) == len(args)), None
            )
            if ctor is None:
                problems.append(f"no constructor {tname}/{len(args)}")
            else:
                for pt, at in zip(ctor.params, arg_types):
                    if at is not None and not index.assignable(at, pt):
                        problems.append(f"new {tname}: argument type {at} does not fit {pt}")
            return tname
        if k == "Cast":
            expr_type(node.children[0])
            return node.attrs["type"]
        if k in ("BinaryOp", "PostfixOp"):
            for c in node.children:
                expr_type(c)
            return "int" if k == "PostfixOp" else "boolean"
        return None

    def walk_stmt(node: Node):
        k = node.kind
        if k == "Block":
            for c in node.children:
                walk_stmt(c)
        elif k == "LocalDecl":
            declared = node.attrs["type"]
            if node.children:
                it = expr_type(node.children[0])
                if it is not None and not index.assignable(it, declared):
                    problems.append(
                        f"cannot initialize {declared} {node.attrs['name']} from {it}"
                    )
            env[node.attrs["name"]] = declared
        elif k == "ExprStmt":
            expr_type(node.children[0])
        elif k == "Assign":
            target, value = node.children
            vt = expr_type(value)
            if target.kind == "Name":
                tt = env.get(target.text)
                if tt is None:
                    env[target.text] = vt or "unknown"
                elif vt is not None and not index.assignable(vt, tt):
                    problems.append(f"cannot assign {vt} to {tt} {target.text}")
        elif k == "If":
            expr_type(node.children[0])
            for c in node.children[1:]:
                walk_stmt(c)
        elif k == "Loop":
            for c in node.children:
                if c.kind == "Block":
                    walk_stmt(c)
        elif k == "TryCatch":
            walk_stmt(node.children[0])
            for clause in node.children[1:]:
                if clause.attrs.get("name"):
                    env[clause.attrs["name"]] = clause.attrs["type"]
                walk_stmt(clause.children[0])
        elif k in ("MethodDecl", "ClassDecl"):
            for c in node.children:
                if c.kind == "Param":
                    env[c.attrs["name"]] = c.attrs["type"]
                elif c.kind == "Block" or c.kind == "MethodDecl":
                    walk_stmt(c)
        # Unsupported/BodyHole and friends carry nothing checkable

    walk_stmt(tree)
    return problems
