"""Control-flow graphs, SSA conversion, and type-annotated data-flow graphs.

SSA uses the on-the-fly construction (local value numbering per block,
recursive lookups through predecessors, operandless-phi cycle breaking,
trivial-phi removal), so no dominance frontiers are ever computed.  The
data-flow graph is the mining substrate: data nodes carry resolved API type
names (or scalar kinds, or "unknown"), operation nodes carry call/operator
names, and try regions contribute a catch marker node so exception structure
survives into patterns.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .apiindex import APIIndex
from .graphs import LabeledGraph
from .ir import IRInstr, IRProgram, Operand


class FlowError(ValueError):
    pass


@dataclass
class BasicBlock:
    name: str
    instrs: list[IRInstr] = field(default_factory=list)
    succs: list[tuple[str, str]] = field(default_factory=list)  # (target, edge label)
    preds: list[str] = field(default_factory=list)
    handlers: tuple[str, ...] = ()  # in-scope catch blocks


@dataclass
class CFG:
    blocks: dict[str, BasicBlock]
    entry: str
    exit: str
    order: list[str]  # stable layout order

    def successors(self, name: str) -> list[str]:
        return [t for t, _ in self.blocks[name].succs]


def build_cfg(ir: IRProgram) -> CFG:
    """One block per maximal straight-line region; edges labeled by kind."""
    instrs = ir.instrs
    blocks: dict[str, BasicBlock] = {}
    order: list[str] = []
    label_of_index: dict[int, str] = {}
    counter = 0

    def new_block(label: str | None = None) -> BasicBlock:
        nonlocal counter
        name = label if label is not None else f"B{counter}"
        counter += 1
        while name in blocks:
            name = f"B{counter}"
            counter += 1
        b = BasicBlock(name)
        blocks[name] = b
        order.append(name)
        return b

    # carve instructions into blocks
    current = new_block()
    entry_name = current.name
    try_stack: list[tuple[str, ...]] = []
    pending_edges: list[tuple[str, str, str]] = []
    fall_from: str | None = None

    def fallthrough(to: str):
        if fall_from is not None:
            pending_edges.append((fall_from, to, "next"))

    for ins in instrs:
        if ins.kind == "label":
            prev = current
            ended_with_jump = prev.instrs and prev.instrs[-1].kind in ("goto",)
            fall_from = None if ended_with_jump else prev.name
            current = new_block(ins.label)
            fallthrough(current.name)
            fall_from = None
            current.handlers = try_stack[-1] if try_stack else ()
            continue
        if ins.kind == "trybegin":
            # the protected region starts at a fresh block; the generic
            # consecutive-block fallthrough supplies the edge into it
            try_stack.append(ins.labels)
            current = new_block()
            current.handlers = ins.labels
            continue
        if ins.kind == "tryend":
            if try_stack:
                try_stack.pop()
            continue
        current.instrs.append(ins)
        live = set(current.handlers) | (set(try_stack[-1]) if try_stack else set())
        current.handlers = tuple(sorted(live))
        if ins.kind == "goto":
            pending_edges.append((current.name, ins.label, "next"))
        elif ins.kind == "ifz":
            pending_edges.append((current.name, ins.label, "false"))
            prev = current
            current = new_block()
            pending_edges.append((prev.name, current.name, "true"))
            current.handlers = try_stack[-1] if try_stack else ()

    exit_block = new_block("EXIT")
    # fallthrough edges between consecutive blocks without explicit jumps
    for i, name in enumerate(order[:-1]):
        b = blocks[name]
        if b.name == exit_block.name:
            continue
        last = b.instrs[-1] if b.instrs else None
        if last is None or last.kind not in ("goto", "ifz"):
            nxt = order[i + 1]
            pending_edges.append((name, nxt, "next"))
    # exception edges from blocks inside try regions to their handlers
    for b in blocks.values():
        for h in b.handlers:
            if h in blocks and b.name != h:
                pending_edges.append((b.name, h, "ex"))

    seen = set()
    for src, dst, lab in pending_edges:
        if dst not in blocks or (src, dst, lab) in seen:
            continue
        seen.add((src, dst, lab))
        blocks[src].succs.append((dst, lab))
        blocks[dst].preds.append(src)

    cfg = CFG(blocks=blocks, entry=entry_name, exit=exit_block.name, order=order)
    _trim_unreachable(cfg)
    # goto-only bookkeeping instructions are not needed once edges exist
    for b in cfg.blocks.values():
        b.instrs = [i for i in b.instrs if i.kind not in ("goto",)]
    return cfg


def _trim_unreachable(cfg: CFG) -> None:
    reachable = {cfg.entry}
    stack = [cfg.entry]
    while stack:
        for t in cfg.successors(stack.pop()):
            if t not in reachable:
                reachable.add(t)
                stack.append(t)
    reachable.add(cfg.exit)
    for name in list(cfg.blocks):
        if name not in reachable:
            del cfg.blocks[name]
    cfg.order = [n for n in cfg.order if n in cfg.blocks]
    for b in cfg.blocks.values():
        b.succs = [(t, l) for t, l in b.succs if t in cfg.blocks]
        b.preds = [p for p in b.preds if p in cfg.blocks]


def reverse_postorder(cfg: CFG) -> list[str]:
    seen: set[str] = set()
    post: list[str] = []

    def dfs(name: str):
        seen.add(name)
        for t in cfg.successors(name):
            if t not in seen:
                dfs(t)
        post.append(name)

    dfs(cfg.entry)
    for name in cfg.order:  # unreachable-from-entry safety
        if name not in seen:
            dfs(name)
    return list(reversed(post))


# -- SSA ----------------------------------------------------------------------


@dataclass
class Value:
    vid: int
    kind: str  # instr | phi | free | undef
    base: str = ""
    block: str = ""
    instr: IRInstr | None = None
    operands: dict[str, "Value"] = field(default_factory=dict)  # phis: pred -> value
    users: list[object] = field(default_factory=list)
    replaced_by: "Value | None" = None

    def resolve(self) -> "Value":
        v = self
        while v.replaced_by is not None:
            v = v.replaced_by
        return v

    @property
    def name(self) -> str:
        return f"{self.base}#{self.vid}" if self.base else f"v#{self.vid}"


@dataclass
class SSAInstr:
    instr: IRInstr
    block: str
    dst: Value | None
    recv: "Value | Operand | None"
    args: tuple["Value | Operand", ...]

    def value_operands(self) -> list[Value]:
        out = [a.resolve() for a in self.args if isinstance(a, Value)]
        if isinstance(self.recv, Value):
            out.append(self.recv.resolve())
        return out


@dataclass
class SSAProgram:
    cfg: CFG
    instrs: list[SSAInstr]                 # in block layout order
    phis: dict[str, list[Value]]           # block -> phi values
    values: list[Value]
    symbols: dict[str, str]
    params: dict[str, str]
    bound: set[str]

    def live_phis(self) -> list[Value]:
        return [
            p
            for plist in self.phis.values()
            for p in plist
            if p.replaced_by is None and p.kind == "phi"
        ]


class _SSABuilder:
    def __init__(self, cfg: CFG, ir: IRProgram):
        self.cfg = cfg
        self.ir = ir
        self.current_def: dict[str, dict[str, Value]] = defaultdict(dict)
        self.sealed: set[str] = set()
        self.incomplete: dict[str, dict[str, Value]] = defaultdict(dict)
        self.values: list[Value] = []
        self.phis: dict[str, list[Value]] = defaultdict(list)
        self.instrs: list[SSAInstr] = []
        self.filled: set[str] = set()

    def new_value(self, kind: str, base: str = "", block: str = "", instr=None) -> Value:
        v = Value(vid=len(self.values), kind=kind, base=base, block=block, instr=instr)
        self.values.append(v)
        return v

    def write(self, var: str, block: str, value: Value) -> None:
        self.current_def[var][block] = value

    def read(self, var: str, block: str) -> Value:
        if var in self.current_def and block in self.current_def[var]:
            return self.current_def[var][block].resolve()
        return self.read_recursive(var, block)

    def read_recursive(self, var: str, block: str) -> Value:
        preds = self.cfg.blocks[block].preds
        if block not in self.sealed:
            phi = self.new_value("phi", base=var, block=block)
            self.phis[block].append(phi)
            self.incomplete[block][var] = phi
            val = phi
        elif len(preds) == 1:
            val = self.read(var, preds[0])
        elif not preds:
            # entry: an undeclared read is a free variable (param/global)
            val = self.new_value("free", base=var, block=block)
        else:
            phi = self.new_value("phi", base=var, block=block)
            self.phis[block].append(phi)
            self.write(var, block, phi)
            val = self.add_phi_operands(var, phi)
        self.write(var, block, val)
        return val

    def add_phi_operands(self, var: str, phi: Value) -> Value:
        for pred in self.cfg.blocks[phi.block].preds:
            operand = self.read(var, pred)
            phi.operands[pred] = operand
            operand.users.append(phi)
        return self.try_remove_trivial_phi(phi)

    def try_remove_trivial_phi(self, phi: Value) -> Value:
        same: Value | None = None
        for op in phi.operands.values():
            op = op.resolve()
            if op is phi or op is same:
                continue
            if same is not None:
                return phi  # merges two values: not trivial
            same = op
        if same is None:
            same = self.new_value("undef", base=phi.base, block=phi.block)
        users = [u for u in phi.users if u is not phi]
        phi.replaced_by = same
        for var, defs in self.current_def.items():
            for blk, val in defs.items():
                if val is phi:
                    defs[blk] = same
        for u in users:
            if isinstance(u, Value) and u.kind == "phi" and u.replaced_by is None:
                self.try_remove_trivial_phi(u)
        return same

    def seal(self, block: str) -> None:
        if block in self.sealed:
            return
        for var, phi in list(self.incomplete.get(block, {}).items()):
            self.add_phi_operands(var, phi)
        self.incomplete.pop(block, None)
        self.sealed.add(block)

    def run(self) -> SSAProgram:
        order = reverse_postorder(self.cfg)
        # seal as soon as all predecessors are filled
        processed: set[str] = set()

        def try_seal(block: str):
            preds = self.cfg.blocks[block].preds
            if block not in self.sealed and all(p in self.filled for p in preds):
                self.seal(block)

        for name in order:
            try_seal(name)
            block = self.cfg.blocks[name]
            for ins in block.instrs:
                self.lower_instr(ins, name)
            self.filled.add(name)
            for t in self.cfg.successors(name):
                try_seal(t)
        # anything left unsealed (unreachable loops) gets sealed now
        for name in order:
            self.seal(name)
        return SSAProgram(
            cfg=self.cfg,
            instrs=self.instrs,
            phis=dict(self.phis),
            values=self.values,
            symbols=self.ir.symbols,
            params=self.ir.params,
            bound=self.ir.bound,
        )

    def lower_instr(self, ins: IRInstr, block: str) -> None:
        def op_value(op: Operand | None):
            if op is None:
                return None
            if op.kind == "name":
                v = self.read(op.text, block)
                return v
            return op  # literals and qualified constants pass through

        recv = op_value(ins.recv)
        args = tuple(op_value(a) for a in ins.args)
        dst_value = None
        if ins.kind == "pstop":
            old = self.read(ins.dst, block)
            dst_value = self.new_value("instr", base=ins.dst, block=block, instr=ins)
            self.write(ins.dst, block, dst_value)
            args = (old,)
        elif ins.dst is not None and ins.kind not in ("ifz",):
            dst_value = self.new_value("instr", base=ins.dst, block=block, instr=ins)
            self.write(ins.dst, block, dst_value)
        ssa = SSAInstr(instr=ins, block=block, dst=dst_value, recv=recv, args=args)
        for v in ssa.value_operands():
            v.users.append(ssa)
        self.instrs.append(ssa)


def to_ssa(cfg: CFG, ir: IRProgram) -> SSAProgram:
    return _SSABuilder(cfg, ir).run()


# -- SSA validation -----------------------------------------------------------


def dominators(cfg: CFG) -> dict[str, set[str]]:
    names = list(cfg.blocks)
    dom = {n: set(names) for n in names}
    dom[cfg.entry] = {cfg.entry}
    changed = True
    while changed:
        changed = False
        for n in names:
            if n == cfg.entry:
                continue
            preds = cfg.blocks[n].preds
            new = set(names) if not preds else set.intersection(*(dom[p] for p in preds))
            new = {n} | new
            if new != dom[n]:
                dom[n] = new
                changed = True
    return dom


def verify_ssa(ssa: SSAProgram) -> list[str]:
    """Single-assignment and dominance violations (empty when valid)."""
    problems: list[str] = []
    defined: set[int] = set()
    for v in ssa.values:
        if v.replaced_by is None and v.kind == "instr":
            if v.vid in defined:
                problems.append(f"value {v.name} defined twice")
            defined.add(v.vid)
    dom = dominators(ssa.cfg)
    def_block: dict[int, str] = {}
    for ins in ssa.instrs:
        if ins.dst is not None:
            def_block[ins.dst.vid] = ins.block
    for phi in ssa.live_phis():
        def_block[phi.vid] = phi.block
    for v in ssa.values:
        if v.kind == "free":
            def_block[v.vid] = ssa.cfg.entry
    order_index = {id(ins): i for i, ins in enumerate(ssa.instrs)}
    for ins in ssa.instrs:
        for used in ins.value_operands():
            if used.kind == "undef":
                continue
            db = def_block.get(used.vid)
            if db is None:
                problems.append(f"use of unknown value {used.name}")
                continue
            if db == ins.block:
                # same block: definition must come first
                def_pos = next(
                    (
                        order_index[id(d)]
                        for d in ssa.instrs
                        if d.dst is not None and d.dst.vid == used.vid
                    ),
                    -1,
                )
                if used.kind == "instr" and def_pos > order_index[id(ins)]:
                    problems.append(f"value {used.name} used before definition")
            elif db not in dom[ins.block]:
                problems.append(
                    f"def of {used.name} in {db} does not dominate use in {ins.block}"
                )
    for phi in ssa.live_phis():
        preds = set(ssa.cfg.blocks[phi.block].preds)
        if set(phi.operands) - preds:
            problems.append(f"phi {phi.name} has operands for non-predecessors")
        for pred, val in phi.operands.items():
            val = val.resolve()
            if val.kind == "undef":
                continue
            db = def_block.get(val.vid)
            if db is not None and pred in ssa.cfg.blocks and db not in dom[pred]:
                problems.append(
                    f"phi {phi.name} operand {val.name} not available on edge {pred}"
                )
        ops = {v.resolve().vid for v in phi.operands.values() if v.resolve() is not phi}
        if len(ops - {phi.vid}) <= 1:
            problems.append(f"phi {phi.name} is redundant")
    return problems


# -- data-flow graphs ---------------------------------------------------------


@dataclass
class DFGNode:
    role: str  # data | op
    label: str
    value: Value | None = None
    instr: IRInstr | None = None
    const_text: str | None = None
    type_name: str = "unknown"


@dataclass
class DataFlowGraph:
    graph: LabeledGraph
    nodes: list[DFGNode]
    value_node: dict[int, int]

    def op_labels(self) -> list[str]:
        return [n.label for n in self.nodes if n.role == "op"]


_NUMERIC_SUFFIX = {"f": "float", "d": "double", "l": "long"}


def literal_type(text: str) -> str:
    if text.startswith('"'):
        return "String"
    if text.startswith("'"):
        return "char"
    if text in ("true", "false"):
        return "boolean"
    if text == "null":
        return "null"
    low = text.lower()
    if low and low[-1] in _NUMERIC_SUFFIX and not low.startswith("0x"):
        return _NUMERIC_SUFFIX[low[-1]]
    if "." in text or "e" in low.replace("0x", ""):
        return "double" if "." in text else "int"
    return "int"


def _generic_elem(type_name: str | None) -> str | None:
    if type_name and type_name.startswith("Iterator<") and type_name.endswith(">"):
        return type_name[len("Iterator<") : -1]
    return None


def infer_types(ssa: SSAProgram, index: APIIndex) -> dict[int, str]:
    """Fixpoint type resolution for SSA values against the API index."""
    types: dict[int, str] = {}

    def set_type(v: Value | None, t: str | None) -> bool:
        if v is None or t is None or t in ("unknown", ""):
            return False
        v = v.resolve()
        if types.get(v.vid) == t:
            return False
        if v.vid in types:
            return False  # first resolution wins
        types[v.vid] = t
        return True

    declared = dict(ssa.symbols)
    declared.update(ssa.params)
    for v in ssa.values:
        if v.replaced_by is not None:
            continue
        if v.kind in ("free", "instr", "phi") and v.base in declared:
            set_type(v, declared[v.base])

    changed = True
    while changed:
        changed = False
        for ins in ssa.instrs:
            k = ins.instr.kind
            if k in ("call", "new", "getfield", "cast", "binop", "decl", "move", "pstop"):
                changed |= _infer_instr(ins, index, types, set_type)
        for phi in ssa.live_phis():
            ts = {
                types.get(v.resolve().vid)
                for v in phi.operands.values()
                if v.resolve().kind != "undef"
            }
            ts.discard(None)
            if len(ts) == 1:
                changed |= set_type(phi, next(iter(ts)))
    return types


def _operand_type(op, types: dict[int, str], index: APIIndex) -> str | None:
    if isinstance(op, Value):
        return types.get(op.resolve().vid)
    if isinstance(op, Operand):
        if op.kind == "lit":
            return literal_type(op.text)
        if op.kind == "qual":
            return index.constant_type(op.text)
    return None


def _infer_instr(ins: SSAInstr, index: APIIndex, types, set_type) -> bool:
    changed = False
    raw = ins.instr
    if raw.kind == "new":
        changed |= set_type(ins.dst, raw.type_name)
        ctor = next(
            (
                m
                for m in index.constructors_of(raw.type_name or "")
                if len(m.params) == len(ins.args)
            ),
            None,
        )
        if ctor:
            for arg, pt in zip(ins.args, ctor.params):
                if isinstance(arg, Value):
                    changed |= set_type(arg, pt)
    elif raw.kind == "cast":
        changed |= set_type(ins.dst, raw.type_name)
    elif raw.kind in ("decl", "move"):
        if raw.kind == "decl":
            changed |= set_type(ins.dst, raw.type_name)
        if ins.args:
            t = _operand_type(ins.args[0], types, index)
            changed |= set_type(ins.dst, t)
    elif raw.kind == "pstop":
        if ins.args:
            changed |= set_type(ins.dst, _operand_type(ins.args[0], types, index))
    elif raw.kind == "binop":
        if raw.op in ("==", "!=", "<", ">", "<=", ">=", "&&", "||", "!"):
            changed |= set_type(ins.dst, "boolean")
        else:
            ts = [_operand_type(a, types, index) for a in ins.args]
            ts = [t for t in ts if t]
            if ts:
                changed |= set_type(ins.dst, ts[0])
    elif raw.kind == "call":
        recv_t = _operand_type(ins.recv, types, index) if ins.recv is not None else None
        elem = _generic_elem(recv_t)
        if elem is not None:
            if raw.method == "next":
                changed |= set_type(ins.dst, elem)
            elif raw.method == "hasNext":
                changed |= set_type(ins.dst, "boolean")
            return changed
        method = None
        if recv_t:
            method = index.lookup_method(recv_t.split("<")[0], raw.method)
        if method is None:
            named = [m for m in index.methods_named(raw.method) if len(m.params) == len(ins.args)]
            if len({m.owner for m in named}) == 1:
                method = named[0]
                if isinstance(ins.recv, Value):
                    changed |= set_type(ins.recv, method.owner)
        if method is not None:
            changed |= set_type(ins.dst, method.returns)
            for arg, pt in zip(ins.args, method.params):
                if isinstance(arg, Value):
                    changed |= set_type(arg, pt)
    return changed


def build_dfg(ssa: SSAProgram, index: APIIndex) -> DataFlowGraph:
    """Data/operation graph with API-type annotations on the data nodes."""
    types = infer_types(ssa, index)
    nodes: list[DFGNode] = []
    labels: list[str] = []
    edges: list[tuple[int, int, str]] = []
    value_node: dict[int, int] = {}

    def add_node(node: DFGNode) -> int:
        nodes.append(node)
        labels.append(node.label)
        return len(nodes) - 1

    def data_for_value(v: Value) -> int:
        v = v.resolve()
        if v.vid in value_node:
            return value_node[v.vid]
        t = types.get(v.vid, "unknown")
        nid = add_node(DFGNode(role="data", label=t, value=v, type_name=t))
        value_node[v.vid] = nid
        return nid

    def data_for_const(op: Operand, hint: str | None = None) -> int:
        if op.kind == "lit":
            t = literal_type(op.text)
            # a literal flowing into a typed parameter adopts that type
            if hint and index.assignable(t, hint):
                t = hint
        else:
            t = index.constant_type(op.text) or "unknown"
        return add_node(DFGNode(role="data", label=t, const_text=op.text, type_name=t))

    def operand_node(op, hint: str | None = None) -> int | None:
        if isinstance(op, Value):
            if op.resolve().kind == "undef":
                return None
            return data_for_value(op)
        if isinstance(op, Operand):
            return data_for_const(op, hint)
        return None

    def param_hints(ins: SSAInstr) -> list[str | None]:
        raw = ins.instr
        n = len(ins.args)
        if raw.kind == "new":
            ctor = next(
                (m for m in index.constructors_of(raw.type_name or "") if len(m.params) == n),
                None,
            )
            return list(ctor.params) if ctor else [None] * n
        if raw.kind == "call":
            recv_t = _operand_type(ins.recv, types, index) if ins.recv is not None else None
            method = None
            if recv_t:
                method = index.lookup_method(recv_t.split("<")[0], raw.method)
            if method is None:
                named = [m for m in index.methods_named(raw.method) if len(m.params) == n]
                if len({m.owner for m in named}) == 1:
                    method = named[0]
            if method is not None and len(method.params) == n:
                return list(method.params)
        return [None] * n

    op_label = {
        "call": lambda i: i.method,
        "new": lambda i: f"new:{i.type_name}",
        "getfield": lambda i: f"get:{i.field_name}",
        "putfield": lambda i: f"put:{i.field_name}",
        "binop": lambda i: f"op:{i.op}",
        "pstop": lambda i: f"op:{i.op}",
        "cast": lambda i: f"cast:{i.type_name}",
        "catch": lambda i: f"catch:{i.type_name}",
        "decl": lambda i: "assign",
        "move": lambda i: "assign",
    }

    catch_node_of_block: dict[str, int] = {}
    op_node_of: dict[int, int] = {}
    for ins in ssa.instrs:
        raw = ins.instr
        if raw.kind not in op_label:
            continue  # ifz consumes a value without producing data
        if raw.kind == "decl" and not ins.args:
            continue  # bare declaration carries no flow
        nid = add_node(
            DFGNode(role="op", label=op_label[raw.kind](raw), instr=raw)
        )
        op_node_of[id(ins)] = nid
        if raw.kind == "catch":
            catch_node_of_block[ins.block] = nid
        if ins.recv is not None:
            rn = operand_node(ins.recv)
            if rn is not None:
                edges.append((rn, nid, "arg0"))
        hints = param_hints(ins)
        for pos, a in enumerate(ins.args, start=1):
            an = operand_node(a, hints[pos - 1] if pos - 1 < len(hints) else None)
            if an is not None:
                edges.append((an, nid, f"arg{pos}"))
        if ins.dst is not None:
            dn = data_for_value(ins.dst)
            edges.append((nid, dn, "res"))

    # phi nodes merge data values
    for phi in ssa.live_phis():
        nid = add_node(DFGNode(role="op", label="phi"))
        for pred in sorted(phi.operands):
            val = phi.operands[pred].resolve()
            if val.kind == "undef":
                continue
            edges.append((data_for_value(val), nid, "arg"))
        edges.append((nid, data_for_value(phi), "res"))

    # exception-region markers: throwing ops link to their catch node
    for ins in ssa.instrs:
        if ins.instr.kind not in ("call", "new"):
            continue
        block = ssa.cfg.blocks.get(ins.block)
        if block is None:
            continue
        for handler in block.handlers:
            cn = catch_node_of_block.get(handler)
            me = op_node_of.get(id(ins))
            if cn is not None and me is not None:
                edges.append((me, cn, "ex"))

    # The graph type allows one edge per vertex pair: parallel edges (e.g.
    # the same value feeding two argument slots) merge their labels.
    merged: dict[tuple[int, int], list[str]] = {}
    for src, dst, lab in edges:
        if src == dst:
            continue
        if (dst, src) in merged:
            raise FlowError("antiparallel data-flow edges cannot be represented")
        merged.setdefault((src, dst), [])
        if lab not in merged[(src, dst)]:
            merged[(src, dst)].append(lab)
    final = tuple(
        (src, dst, "+".join(sorted(labs))) for (src, dst), labs in merged.items()
    )
    graph = LabeledGraph(tuple(labels), final, directed=True)
    return DataFlowGraph(graph=graph, nodes=nodes, value_node=value_node)
