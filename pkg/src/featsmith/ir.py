"""Lowering from the Java-subset AST into a flat analysis IR.

The IR exists to erase coding-style differences before flow analysis:

* ``x++``, ``x += 1`` canonicalize to one postfix-op instruction;
* all loop syntaxes desugar to one header/advance form, with for-each
  rewritten to the iterator protocol;
* nested call chains flatten into temporaries in evaluation order;
* instructions inside each straight-line region are re-ordered into a
  canonical data-dependency schedule, so programs that differ only in the
  order of independent statements lower identically.

The textual dump alpha-renames every bound name (declared locals and
temporaries alike) in order of first occurrence, which makes the dump the
unit of byte-equality tests.  Free names (parameters, fields, globals) keep
their spelling.  Side effects impose no ordering beyond data dependencies:
this is an analysis form, not an execution form.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .javaparse import Node


class LoweringError(ValueError):
    pass


@dataclass(frozen=True)
class Operand:
    kind: str  # name | lit | qual
    text: str

    def __str__(self):
        return self.text


def name_op(text: str) -> Operand:
    return Operand("name", text)


def lit_op(text: str) -> Operand:
    return Operand("lit", text)


def qual_op(text: str) -> Operand:
    return Operand("qual", text)


@dataclass
class IRInstr:
    kind: str  # decl|move|new|call|getfield|putfield|binop|cast|pstop|label|goto|ifz|trybegin|tryend|catch
    dst: str | None = None
    recv: Operand | None = None
    args: tuple[Operand, ...] = ()
    method: str | None = None
    type_name: str | None = None
    field_name: str | None = None
    op: str | None = None
    label: str | None = None
    labels: tuple[str, ...] = ()
    origin: Node | None = None

    def reads(self) -> list[str]:
        out = [a.text for a in self.args if a.kind == "name"]
        if self.recv is not None and self.recv.kind == "name":
            out.append(self.recv.text)
        if self.kind == "pstop" and self.dst:
            out.append(self.dst)
        return out

    def writes(self) -> list[str]:
        if self.kind in ("label", "goto", "ifz", "trybegin", "tryend", "putfield"):
            return []
        return [self.dst] if self.dst else []

    def is_control(self) -> bool:
        return self.kind in ("label", "goto", "ifz", "trybegin", "tryend", "catch")


@dataclass
class IRProgram:
    instrs: list[IRInstr]
    symbols: dict[str, str]          # name -> declared/desugared type
    bound: set[str]                  # names defined inside the unit
    params: dict[str, str] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def dump(self) -> str:
        rename: dict[str, str] = {}

        def show(op: Operand | None) -> str:
            if op is None:
                return ""
            if op.kind == "name" and op.text in self.bound:
                if op.text not in rename:
                    rename[op.text] = f"t{len(rename) + 1}"
                return rename[op.text]
            return op.text

        def show_name(name: str | None) -> str:
            if name is None:
                return ""
            return show(name_op(name))

        lines = []
        for ins in self.instrs:
            k = ins.kind
            if k == "label":
                lines.append(f"label {ins.label}")
            elif k == "goto":
                lines.append(f"goto {ins.label}")
            elif k == "ifz":
                lines.append(f"ifz {show(ins.args[0])} goto {ins.label}")
            elif k == "trybegin":
                lines.append("trybegin " + " ".join(ins.labels))
            elif k == "tryend":
                lines.append("tryend")
            elif k == "catch":
                lines.append(f"catch {ins.type_name} {show_name(ins.dst)}")
            elif k == "pstop":
                lines.append(f"pstop {show_name(ins.dst)} {ins.op}")
            elif k == "putfield":
                lines.append(f"putfield {show(ins.recv)}.{ins.field_name} = {show(ins.args[0])}")
            else:
                rhs = ""
                if k == "decl":
                    rhs = show(ins.args[0]) if ins.args else "uninit"
                elif k == "move":
                    rhs = show(ins.args[0])
                elif k == "new":
                    rhs = f"new {ins.type_name}(" + ", ".join(show(a) for a in ins.args) + ")"
                elif k == "call":
                    inner = ", ".join(show(a) for a in ins.args)
                    rhs = (
                        f"call {show(ins.recv)}.{ins.method}({inner})"
                        if ins.recv is not None
                        else f"call {ins.method}({inner})"
                    )
                elif k == "getfield":
                    rhs = f"getfield {show(ins.recv)}.{ins.field_name}"
                elif k == "binop":
                    if len(ins.args) == 1:
                        rhs = f"{ins.op} {show(ins.args[0])}"
                    else:
                        rhs = f"{show(ins.args[0])} {ins.op} {show(ins.args[1])}"
                elif k == "cast":
                    rhs = f"cast ({ins.type_name}) {show(ins.args[0])}"
                else:
                    raise LoweringError(f"cannot render {k}")
                lines.append(f"{show_name(ins.dst)} = {rhs}" if ins.dst else rhs)
        return "\n".join(lines) + ("\n" if lines else "")


@dataclass
class MethodIR:
    name: str
    program: IRProgram
    origin: Node


_ELEM_TYPE_OF_ITER = "Iterator<{}>"


class _Lowerer:
    def __init__(self, params: dict[str, str]):
        self.instrs: list[IRInstr] = []
        self.symbols: dict[str, str] = dict(params)
        self.bound: set[str] = set()
        self.params = dict(params)
        self.warnings: list[str] = []
        self._temp = 0
        self._label = 0

    def fresh(self, type_name: str | None = None) -> str:
        self._temp += 1
        name = f"%{self._temp}"
        self.bound.add(name)
        if type_name:
            self.symbols[name] = type_name
        return name

    def fresh_label(self) -> str:
        self._label += 1
        return f"L{self._label}"

    def emit(self, instr: IRInstr) -> IRInstr:
        self.instrs.append(instr)
        return instr

    # -- statements --------------------------------------------------------
    def stmt(self, node: Node) -> None:
        k = node.kind
        if k == "Block":
            for c in node.children:
                self.stmt(c)
        elif k == "LocalDecl":
            name = node.attrs["name"]
            self.bound.add(name)
            self.symbols[name] = node.attrs["type"]
            if not node.children:
                self.emit(IRInstr("decl", dst=name, type_name=node.attrs["type"], origin=node))
            else:
                init = node.children[0]
                op = self.expr(init, dst=name)
                if op is not None:  # simple operand: keep the declaration itself
                    self.emit(
                        IRInstr(
                            "decl", dst=name, args=(op,), type_name=node.attrs["type"], origin=node
                        )
                    )
        elif k == "Assign":
            target, value = node.children
            self.assign(target, value, node)
        elif k == "ExprStmt":
            inner = node.children[0]
            if inner.kind == "PostfixOp":
                self.pstop(inner)
            else:
                self.expr(inner, dst=None, result_unused=True)
        elif k == "If":
            self.lower_if(node)
        elif k == "Loop":
            self.lower_loop(node)
        elif k == "TryCatch":
            self.lower_try(node)
        elif k == "Unsupported":
            self.warnings.append(f"dropped unsupported construct: {node.attrs.get('reason')}")
        elif k == "BodyHole":
            self.warnings.append("dropped body hole")
        elif k == "MethodDecl":
            self.warnings.append("skipped nested method declaration")
        else:
            raise LoweringError(f"cannot lower statement kind {k}")

    def assign(self, target: Node, value: Node, origin: Node) -> None:
        op_text = origin.attrs.get("op", "=")
        if target.kind == "Name":
            name = target.text
            if op_text == "=":
                op = self.expr(value, dst=name)
                if op is not None:
                    self.emit(IRInstr("move", dst=name, args=(op,), origin=origin))
            elif (
                op_text in ("+=", "-=")
                and value.kind == "Literal"
                and value.text == "1"
            ):
                # cnt += 1 is the same instruction as cnt++
                self.emit(
                    IRInstr("pstop", dst=name, op="++" if op_text == "+=" else "--", origin=origin)
                )
            else:
                rhs = self.operand(value)
                self.emit(
                    IRInstr(
                        "binop", dst=name, op=op_text[0], args=(name_op(name), rhs), origin=origin
                    )
                )
        elif target.kind == "FieldAccess":
            recv = self.operand(target.children[0])
            rhs = self.operand(value)
            self.emit(
                IRInstr(
                    "putfield",
                    recv=recv,
                    field_name=target.attrs["name"],
                    args=(rhs,),
                    origin=origin,
                )
            )
        else:
            raise LoweringError(f"cannot assign to {target.kind}")

    def pstop(self, node: Node) -> None:
        operand = node.children[0]
        if operand.kind != "Name":
            raise LoweringError("postfix op target must be a name")
        self.emit(IRInstr("pstop", dst=operand.text, op=node.attrs["op"], origin=node))

    def lower_if(self, node: Node) -> None:
        cond = self.operand(node.children[0])
        if len(node.children) == 3:
            l_else, l_end = self.fresh_label(), self.fresh_label()
            self.emit(IRInstr("ifz", args=(cond,), label=l_else, origin=node))
            self.stmt(node.children[1])
            self.emit(IRInstr("goto", label=l_end, origin=node))
            self.emit(IRInstr("label", label=l_else, origin=node))
            self.stmt(node.children[2])
            self.emit(IRInstr("label", label=l_end, origin=node))
        else:
            l_end = self.fresh_label()
            self.emit(IRInstr("ifz", args=(cond,), label=l_end, origin=node))
            self.stmt(node.children[1])
            self.emit(IRInstr("label", label=l_end, origin=node))

    def lower_loop(self, node: Node) -> None:
        flavor = node.attrs["flavor"]
        if flavor == "foreach":
            self.lower_foreach(node)
            return
        if flavor == "do":
            body, cond = node.children[1], node.children[0]
            l_head, l_exit = self.fresh_label(), self.fresh_label()
            self.emit(IRInstr("label", label=l_head, origin=node))
            self.stmt(body)
            cond_op = self.operand(cond)
            self.emit(IRInstr("ifz", args=(cond_op,), label=l_exit, origin=node))
            self.emit(IRInstr("goto", label=l_head, origin=node))
            self.emit(IRInstr("label", label=l_exit, origin=node))
            return
        children = list(node.children)
        init = cond = update = None
        if flavor == "for":
            if node.attrs.get("has_init"):
                init = children.pop(0)
            if node.attrs.get("has_cond"):
                cond = children.pop(0)
            if node.attrs.get("has_update"):
                update = children.pop(0)
            body = children[0]
        else:  # while
            cond, body = children
        if init is not None:
            self.stmt(init)
        l_head, l_exit = self.fresh_label(), self.fresh_label()
        self.emit(IRInstr("label", label=l_head, origin=node))
        if cond is not None:
            cond_op = self.operand(cond)
            self.emit(IRInstr("ifz", args=(cond_op,), label=l_exit, origin=node))
        self.stmt(body)
        if update is not None:
            self.stmt(update)
        self.emit(IRInstr("goto", label=l_head, origin=node))
        self.emit(IRInstr("label", label=l_exit, origin=node))

    def lower_foreach(self, node: Node) -> None:
        iterable, body = node.children
        var = node.attrs["var"]
        var_type = node.attrs["var_type"]
        src = self.operand(iterable)
        it = self.fresh(_ELEM_TYPE_OF_ITER.format(var_type))
        self.emit(IRInstr("call", dst=it, recv=src, method="iterator", origin=node))
        l_head, l_exit = self.fresh_label(), self.fresh_label()
        self.emit(IRInstr("label", label=l_head, origin=node))
        cond = self.fresh("boolean")
        self.emit(IRInstr("call", dst=cond, recv=name_op(it), method="hasNext", origin=node))
        self.emit(IRInstr("ifz", args=(name_op(cond),), label=l_exit, origin=node))
        self.bound.add(var)
        self.symbols[var] = var_type
        self.emit(IRInstr("call", dst=var, recv=name_op(it), method="next", origin=node))
        self.stmt(body)
        self.emit(IRInstr("goto", label=l_head, origin=node))
        self.emit(IRInstr("label", label=l_exit, origin=node))

    def lower_try(self, node: Node) -> None:
        body = node.children[0]
        catches = [c for c in node.children[1:] if c.attrs.get("type") is not None]
        finallies = [c for c in node.children[1:] if c.attrs.get("type") is None]
        labels = [self.fresh_label() for _ in catches]
        l_end = self.fresh_label()
        self.emit(IRInstr("trybegin", labels=tuple(labels), origin=node))
        self.stmt(body)
        self.emit(IRInstr("tryend", origin=node))
        self.emit(IRInstr("goto", label=l_end, origin=node))
        for lab, clause in zip(labels, catches):
            self.emit(IRInstr("label", label=lab, origin=clause))
            cname = clause.attrs["name"]
            self.bound.add(cname)
            self.symbols[cname] = clause.attrs["type"]
            self.emit(
                IRInstr("catch", dst=cname, type_name=clause.attrs["type"], origin=clause)
            )
            self.stmt(clause.children[0])
            self.emit(IRInstr("goto", label=l_end, origin=clause))
        self.emit(IRInstr("label", label=l_end, origin=node))
        for clause in finallies:  # approximation: finally body runs at the join
            self.stmt(clause.children[0])

    # -- expressions --------------------------------------------------------
    def operand(self, node: Node) -> Operand:
        out = self.expr(node, dst=None)
        assert out is not None
        return out

    def expr(self, node: Node, dst: str | None, result_unused: bool = False) -> Operand | None:
        """Lower an expression.

        With dst=None returns the operand holding the value (emitting temps
        as needed).  With a dst, the producing instruction writes `dst` and
        None is returned, except for simple operands which are returned for
        the caller to bind (so declarations keep their one-instruction form).
        """
        k = node.kind
        if k == "Name":
            return name_op(node.text)  # caller binds simple operands
        if k == "Literal":
            return lit_op(node.text)
        if k == "Hole":
            raise LoweringError("cannot lower a skeleton hole")
        if k == "FieldAccess":
            chain = self._static_chain(node)
            if chain is not None:
                return qual_op(chain)
            recv = self.operand(node.children[0])
            d = dst or self.fresh()
            self.emit(
                IRInstr("getfield", dst=d, recv=recv, field_name=node.attrs["name"], origin=node)
            )
            return None if dst else name_op(d)
        if k == "MethodInvocation":
            recv_node = node.children[0]
            if recv_node.attrs.get("implicit"):
                recv = None
            else:
                chain = self._static_chain(recv_node)
                recv = qual_op(chain) if chain is not None else self.operand(recv_node)
            args = tuple(self.operand(a) for a in node.children[1:])
            d = None if result_unused and dst is None else (dst or self.fresh())
            self.emit(
                IRInstr("call", dst=d, recv=recv, method=node.attrs["name"], args=args, origin=node)
            )
            return None if dst or d is None else name_op(d)
        if k == "ConstructorCall":
            args = tuple(self.operand(a) for a in node.children)
            d = None if result_unused and dst is None else (dst or self.fresh(node.attrs["type"]))
            if d is not None and d not in self.symbols:
                self.symbols[d] = node.attrs["type"]
            self.emit(IRInstr("new", dst=d, type_name=node.attrs["type"], args=args, origin=node))
            return None if dst or d is None else name_op(d)
        if k == "Cast":
            src = self.operand(node.children[0])
            d = dst or self.fresh(node.attrs["type"])
            self.emit(IRInstr("cast", dst=d, type_name=node.attrs["type"], args=(src,), origin=node))
            return None if dst else name_op(d)
        if k == "BinaryOp":
            args = tuple(self.operand(c) for c in node.children)
            d = dst or self.fresh()
            self.emit(IRInstr("binop", dst=d, op=node.attrs["op"], args=args, origin=node))
            return None if dst else name_op(d)
        if k == "PostfixOp":
            self.pstop(node)
            return name_op(node.children[0].text)
        if k == "Assign":
            self.assign(node.children[0], node.children[1], node)
            target = node.children[0]
            return name_op(target.text) if target.kind == "Name" else lit_op("null")
        raise LoweringError(f"cannot lower expression kind {k}")

    def _static_chain(self, node: Node) -> str | None:
        """Render Foo.BAR chains whose root is no known variable (static access)."""
        parts: list[str] = []
        cur = node
        while cur.kind == "FieldAccess":
            parts.append(cur.attrs["name"])
            cur = cur.children[0]
        if cur.kind != "Name" or cur.attrs.get("implicit"):
            return None
        root = cur.text
        if root in self.symbols or root in self.bound:
            return None
        if not root[:1].isupper():
            return None
        parts.append(root)
        return ".".join(reversed(parts))


# -- canonical scheduling ----------------------------------------------------


def _regions(instrs: list[IRInstr]):
    block: list[IRInstr] = []
    for ins in instrs:
        if ins.is_control():
            if block:
                yield block
                block = []
            yield [ins]
        else:
            block.append(ins)
    if block:
        yield block


def _schedule(program: IRProgram) -> None:
    """Reorder each straight-line region into canonical data-dependency order.

    The tie-break key of an instruction is its structural content with bound
    operand names replaced by the key of their defining instruction, so the
    key never depends on source spelling of locals or temporaries.
    """
    # (instr id, operand name) -> linearly previous defining instruction
    defs: dict[tuple[int, str], IRInstr] = {}
    last: dict[str, IRInstr] = {}
    for ins in program.instrs:
        for nm in ins.reads():
            if nm in last:
                defs[(id(ins), nm)] = last[nm]
        for nm in ins.writes():
            last[nm] = ins

    keys: dict[int, tuple] = {}

    def key_of(ins: IRInstr) -> tuple:
        if id(ins) in keys:
            return keys[id(ins)]
        parts: list = [
            ins.kind,
            ins.method or "",
            ins.type_name or "",
            ins.field_name or "",
            ins.op or "",
        ]
        ops = ([ins.recv] if ins.recv is not None else []) + list(ins.args)
        for op in ops:
            producer = defs.get((id(ins), op.text)) if op.kind == "name" else None
            if producer is not None:
                parts.append(key_of(producer))
            else:
                parts.append((op.kind, op.text if op.kind != "name" or op.text not in program.bound else "?"))
        if ins.kind == "pstop":
            producer = defs.get((id(ins), ins.dst))
            if producer is not None:
                parts.append(key_of(producer))
            else:
                parts.append(("name", ins.dst if ins.dst not in program.bound else "?"))
        keys[id(ins)] = tuple(parts)
        return keys[id(ins)]

    out: list[IRInstr] = []
    for region in _regions(program.instrs):
        if len(region) == 1 and region[0].is_control():
            out.extend(region)
            continue
        # dependency edges within the region
        index = {id(ins): i for i, ins in enumerate(region)}
        deps: dict[int, set[int]] = {i: set() for i in range(len(region))}
        seen_writes: dict[str, int] = {}
        seen_reads: dict[str, list[int]] = {}
        for i, ins in enumerate(region):
            for nm in ins.reads():
                if nm in seen_writes:
                    deps[i].add(seen_writes[nm])
            for nm in ins.writes():
                if nm in seen_writes:
                    deps[i].add(seen_writes[nm])
                for r in seen_reads.get(nm, ()):
                    if r != i:
                        deps[i].add(r)
            for nm in ins.reads():
                seen_reads.setdefault(nm, []).append(i)
            for nm in ins.writes():
                seen_writes[nm] = i
        remaining = set(range(len(region)))
        scheduled: list[int] = []
        while remaining:
            ready = [i for i in remaining if deps[i] <= set(scheduled)]
            ready.sort(key=lambda i: (key_of(region[i]), i))
            pick = ready[0]
            scheduled.append(pick)
            remaining.discard(pick)
        out.extend(region[i] for i in scheduled)
    program.instrs = out


def _renumber(program: IRProgram) -> None:
    """Rename %-temps to fresh t-numbers and labels to final order."""
    taken = set(program.symbols) | program.bound | set(program.params)
    temp_map: dict[str, str] = {}
    counter = 0

    def map_temp(name: str | None) -> str | None:
        nonlocal counter
        if name is None or not name.startswith("%"):
            return name
        if name not in temp_map:
            while True:
                counter += 1
                fresh = f"t{counter}"
                if fresh not in taken:
                    break
            temp_map[name] = fresh
        return temp_map[name]

    label_map: dict[str, str] = {}
    for ins in program.instrs:
        if ins.kind == "label" and ins.label not in label_map:
            label_map[ins.label] = f"L{len(label_map) + 1}"

    def map_operand(op: Operand | None) -> Operand | None:
        if op is not None and op.kind == "name" and op.text.startswith("%"):
            return name_op(map_temp(op.text))
        return op

    for ins in program.instrs:
        ins.dst = map_temp(ins.dst)
        ins.recv = map_operand(ins.recv)
        ins.args = tuple(map_operand(a) for a in ins.args)
        if ins.label is not None:
            ins.label = label_map.get(ins.label, ins.label)
        ins.labels = tuple(label_map.get(l, l) for l in ins.labels)
    for old, new in temp_map.items():
        if old in program.symbols:
            program.symbols[new] = program.symbols.pop(old)
        program.bound.discard(old)
        program.bound.add(new)


def lower_body(body: Node, params: dict[str, str] | None = None) -> IRProgram:
    low = _Lowerer(params or {})
    low.stmt(body)
    program = IRProgram(
        instrs=low.instrs,
        symbols=low.symbols,
        bound=low.bound,
        params=low.params,
        warnings=low.warnings,
    )
    _schedule(program)
    _renumber(program)
    return program


def lower(unit: Node) -> IRProgram:
    """Lower a compilation unit; class units concatenate their method bodies."""
    from .javaparse import methods_of

    if unit.kind in ("Block",):
        return lower_body(unit)
    if unit.kind == "MethodDecl":
        params = {p.attrs["name"]: p.attrs["type"] for p in unit.children if p.kind == "Param"}
        return lower_body(unit.children[-1], params)
    methods = methods_of(unit)
    merged: IRProgram | None = None
    for _, m in methods:
        prog = lower(m)
        if merged is None:
            merged = prog
        else:
            merged.instrs.extend(prog.instrs)
            merged.symbols.update(prog.symbols)
            merged.bound |= prog.bound
            merged.params.update(prog.params)
            merged.warnings.extend(prog.warnings)
    return merged if merged is not None else IRProgram([], {}, set())


def lower_methods(unit: Node) -> list[MethodIR]:
    from .javaparse import methods_of

    out = []
    for name, m in methods_of(unit):
        if m.kind == "MethodDecl":
            params = {p.attrs["name"]: p.attrs["type"] for p in m.children if p.kind == "Param"}
            prog = lower_body(m.children[-1], params)
        else:
            prog = lower_body(m)
        out.append(MethodIR(name=name, program=prog, origin=m))
    return out
