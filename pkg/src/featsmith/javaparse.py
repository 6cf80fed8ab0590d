"""Tolerant parser for a Java subset.

A compilation unit may be a whole class, a bare method, or a bare statement
block; the parser tries the widest interpretation first and backtracks.
Recognized-but-out-of-subset constructs (lambdas, multi-argument generics,
anonymous classes, arrays, switch, ...) turn into localized Unsupported
nodes instead of failing the file.  Hole markers (``<$HOLE1>``, ``<$BODY>``)
lex as single tokens so skeleton texts re-parse.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

KEYWORDS = {
    "class", "interface", "enum", "extends", "implements", "public", "private",
    "protected", "static", "final", "void", "new", "return", "if", "else",
    "for", "while", "do", "try", "catch", "finally", "throw", "throws",
    "break", "continue", "this", "super", "import", "package", "instanceof",
    "abstract", "synchronized", "native", "transient", "volatile", "default",
    "switch", "case", "true", "false", "null",
}

MODIFIERS = {
    "public", "private", "protected", "static", "final", "abstract",
    "synchronized", "native", "transient", "volatile", "default",
}

PRIMITIVES = {"boolean", "byte", "short", "int", "long", "float", "double", "char"}

_OPS = [
    "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=",
    "%=", "->", "::", "+", "-", "*", "/", "%", "<", ">", "=", "!", "&", "|",
    "^", "~", "?", ":",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Token:
    kind: str  # ident | keyword | number | string | char | op | punct | hole
    text: str
    offset: int
    line: int
    col: int


def tokenize(source: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    line = 1
    col = 1
    n = len(source)

    def advance(k: int):
        nonlocal i, line, col
        for _ in range(k):
            if i < n and source[i] == "\n":
                line += 1
                col = 1
            else:
                col += 1
            i += 1

    while i < n:
        ch = source[i]
        if ch.isspace():
            advance(1)
            continue
        if source.startswith("//", i):
            j = source.find("\n", i)
            advance((j - i) if j != -1 else (n - i))
            continue
        if source.startswith("/*", i):
            j = source.find("*/", i + 2)
            if j == -1:
                raise ParseError("unterminated block comment", line, col)
            advance(j + 2 - i)
            continue
        if ch == "@" and i + 1 < n and (source[i + 1].isalpha() or source[i + 1] == "_"):
            # annotations are trivia: @Name plus an optional balanced argument list
            j = i + 1
            while j < n and (source[j].isalnum() or source[j] in "_."):
                j += 1
            if j < n and source[j] == "(":
                depth = 1
                j += 1
                while j < n and depth:
                    if source[j] == "(":
                        depth += 1
                    elif source[j] == ")":
                        depth -= 1
                    j += 1
            advance(j - i)
            continue
        if source.startswith("<$", i):
            j = source.find(">", i)
            if j == -1:
                raise ParseError("unterminated hole marker", line, col)
            tokens.append(Token("hole", source[i : j + 1], i, line, col))
            advance(j + 1 - i)
            continue
        if ch.isdigit() or (ch == "." and i + 1 < n and source[i + 1].isdigit()):
            m = re.match(r"(?:0[xX][0-9a-fA-F]+|\d+\.\d*(?:[eE][+-]?\d+)?|\.\d+|\d+)[fFdDlL]?", source[i:])
            tokens.append(Token("number", m.group(0), i, line, col))
            advance(len(m.group(0)))
            continue
        if ch.isalpha() or ch == "_" or ch == "$":
            j = i
            while j < n and (source[j].isalnum() or source[j] in "_$"):
                j += 1
            text = source[i:j]
            kind = "keyword" if text in KEYWORDS else "ident"
            tokens.append(Token(kind, text, i, line, col))
            advance(j - i)
            continue
        if ch == '"':
            j = i + 1
            while j < n and source[j] != '"':
                j += 2 if source[j] == "\\" else 1
            if j >= n:
                raise ParseError("unterminated string literal", line, col)
            tokens.append(Token("string", source[i : j + 1], i, line, col))
            advance(j + 1 - i)
            continue
        if ch == "'":
            j = i + 1
            while j < n and source[j] != "'":
                j += 2 if source[j] == "\\" else 1
            if j >= n:
                raise ParseError("unterminated char literal", line, col)
            tokens.append(Token("char", source[i : j + 1], i, line, col))
            advance(j + 1 - i)
            continue
        matched = False
        for op in _OPS:
            if source.startswith(op, i):
                tokens.append(Token("op", op, i, line, col))
                advance(len(op))
                matched = True
                break
        if matched:
            continue
        if ch in "(){}[].,;":
            tokens.append(Token("punct", ch, i, line, col))
            advance(1)
            continue
        raise ParseError(f"unknown character {ch!r}", line, col)
    return tokens


# Node kinds form a closed set; Unsupported/Hole/BodyHole cover everything
# the subset recognizes but does not model.
@dataclass
class Node:
    kind: str
    children: list["Node"] = field(default_factory=list)
    text: str | None = None
    attrs: dict = field(default_factory=dict)
    tok_span: tuple[int, int] = (0, 0)
    byte_span: tuple[int, int] = (0, 0)

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def dump(self, indent: int = 0) -> str:
        pad = "  " * indent
        head = self.kind
        if self.text is not None:
            head += f" {self.text!r}"
        extra = {k: v for k, v in self.attrs.items() if v is not None}
        if extra:
            head += " " + ", ".join(f"{k}={v}" for k, v in sorted(extra.items()))
        lines = [pad + head]
        for c in self.children:
            lines.append(c.dump(indent + 1))
        return "\n".join(lines)


class _Parser:
    def __init__(self, tokens: list[Token], source: str):
        self.toks = tokens
        self.source = source
        self.i = 0

    # -- token helpers ----------------------------------------------------
    def peek(self, offset: int = 0) -> Token | None:
        j = self.i + offset
        return self.toks[j] if j < len(self.toks) else None

    def at(self, text: str, offset: int = 0) -> bool:
        t = self.peek(offset)
        return t is not None and t.text == text

    def at_kind(self, kind: str, offset: int = 0) -> bool:
        t = self.peek(offset)
        return t is not None and t.kind == kind

    def take(self, text: str | None = None) -> Token:
        t = self.peek()
        if t is None:
            last = self.toks[-1] if self.toks else None
            line = last.line if last else 1
            col = (last.col + len(last.text)) if last else 1
            raise ParseError(f"unexpected end of input (expected {text or 'token'})", line, col)
        if text is not None and t.text != text:
            raise ParseError(f"expected {text!r}, found {t.text!r}", t.line, t.col)
        self.i += 1
        return t

    def error(self, message: str) -> ParseError:
        t = self.peek()
        if t is None:
            return ParseError(message, self.toks[-1].line if self.toks else 1, 1)
        return ParseError(f"{message}, found {t.text!r}", t.line, t.col)

    def node(self, kind: str, start: int, **kw) -> Node:
        end = self.i
        byte_start = self.toks[start].offset if start < len(self.toks) else 0
        if end > start:
            last = self.toks[end - 1]
            byte_end = last.offset + len(last.text)
        else:
            byte_end = byte_start
        out = Node(kind, tok_span=(start, end), byte_span=(byte_start, byte_end), **kw)
        return out

    # -- types -------------------------------------------------------------
    def try_type(self) -> str | None:
        """Parse a type name; returns its rendered form or None (no consume)."""
        mark = self.i
        t = self.peek()
        if t is None:
            return None
        if t.text in PRIMITIVES or t.text == "void":
            self.i += 1
            name = t.text
        elif t.kind == "ident":
            self.i += 1
            name = t.text
            while self.at(".") and self.at_kind("ident", 1):
                self.take(".")
                name += "." + self.take().text
        else:
            return None
        if self.at("<"):
            mark2 = self.i
            self.take("<")
            inner = self.try_type()
            if inner is not None and self.at(">"):
                self.take(">")
                name += f"<{inner}>"
            else:
                self.i = mark2
                if inner is not None and self.at(","):
                    # multi-argument generics are out of subset
                    self.i = mark
                    return None
        if self.at("[") and self.at("]", 1):
            self.i = mark
            return None  # arrays are out of subset
        return name

    # -- compilation unit --------------------------------------------------
    def parse_unit(self) -> Node:
        attempts = []
        for which in ("class", "method", "block"):
            self.i = 0
            try:
                if which == "class":
                    node = self.parse_class()
                elif which == "method":
                    node = self.parse_method()
                else:
                    node = self.parse_statements_unit()
                if self.i == len(self.toks):
                    return node
                t = self.peek()
                attempts.append((self.i, ParseError("trailing content", t.line, t.col)))
            except ParseError as exc:
                attempts.append((self.i, exc))
        attempts.sort(key=lambda pair: -pair[0])
        raise attempts[0][1]

    def parse_statements_unit(self) -> Node:
        start = self.i
        stmts = []
        while self.peek() is not None:
            stmts.append(self.parse_statement())
        return self.node("Block", start, children=stmts)

    def _skip_modifiers(self) -> None:
        while self.peek() is not None and self.peek().text in MODIFIERS:
            self.i += 1

    def parse_class(self) -> Node:
        start = self.i
        self._skip_modifiers()
        if not self.at("class"):
            raise self.error("expected class declaration")
        self.take("class")
        name = self.take().text
        supertype = None
        if self.at("extends"):
            self.take("extends")
            supertype = self.try_type()
        if self.at("implements"):
            self.take("implements")
            while True:
                self.try_type()
                if self.at(","):
                    self.take(",")
                else:
                    break
        self.take("{")
        members = []
        while not self.at("}"):
            if self.peek() is None:
                raise self.error("unbalanced braces in class body")
            members.append(self.parse_member(name))
        self.take("}")
        return self.node(
            "ClassDecl", start, children=members, attrs={"name": name, "extends": supertype}
        )

    def parse_member(self, class_name: str) -> Node:
        start = self.i
        self._skip_modifiers()
        if self.at("class") or self.at("interface") or self.at("enum"):
            return self._unsupported_balanced(start, "nested type")
        # constructor: Name (
        if self.at_kind("ident") and self.peek().text == class_name and self.at("(", 1):
            self.take()
            return self._parse_method_rest(start, rtype=class_name, name="<init>", ctor=True)
        mark = self.i
        rtype = self.try_type()
        if rtype is not None and self.at_kind("ident") and self.at("(", 1):
            name = self.take().text
            return self._parse_method_rest(start, rtype=rtype, name=name, ctor=False)
        self.i = mark
        return self.parse_statement()  # field declarations reuse LocalDecl

    def parse_method(self) -> Node:
        start = self.i
        self._skip_modifiers()
        rtype = self.try_type()
        if rtype is None or not (self.at_kind("ident") and self.at("(", 1)):
            raise self.error("expected method declaration")
        name = self.take().text
        return self._parse_method_rest(start, rtype=rtype, name=name, ctor=False)

    def _parse_method_rest(self, start: int, rtype: str, name: str, ctor: bool) -> Node:
        self.take("(")
        params = []
        while not self.at(")"):
            pstart = self.i
            ptype = self.try_type()
            if ptype is None:
                raise self.error("expected parameter type")
            pname = self.take().text
            params.append(
                self.node("Param", pstart, attrs={"name": pname, "type": ptype})
            )
            if self.at(","):
                self.take(",")
        self.take(")")
        if self.at("throws"):
            self.take("throws")
            while True:
                self.try_type()
                if self.at(","):
                    self.take(",")
                else:
                    break
        if self.at(";"):
            self.take(";")
            body = self.node("Block", self.i, children=[])
        else:
            body = self.parse_block()
        return self.node(
            "MethodDecl",
            start,
            children=params + [body],
            attrs={"name": name, "returns": rtype, "constructor": ctor},
        )

    # -- statements ----------------------------------------------------------
    def parse_block(self) -> Node:
        start = self.i
        self.take("{")
        stmts = []
        while not self.at("}"):
            if self.peek() is None:
                raise self.error("unbalanced braces")
            stmts.append(self.parse_statement())
        self.take("}")
        return self.node("Block", start, children=stmts)

    def parse_statement(self) -> Node:
        start = self.i
        t = self.peek()
        if t is None:
            raise self.error("expected statement")
        try:
            return self._parse_statement_inner(start, t)
        except ParseError:
            self._recover_statement(start)
            if self.i == start:
                raise  # no progress possible: unbalanced input, not a bad statement
            return self.node("Unsupported", start, attrs={"reason": "unparsable statement"})

    def _parse_statement_inner(self, start: int, t: Token) -> Node:
        if t.text == "{":
            return self.parse_block()
        if t.text == ";":
            self.take(";")
            return self.node("Block", start, children=[])
        if t.kind == "hole" and t.text.startswith("<$BODY"):
            self.take()
            return self.node("BodyHole", start, attrs={"hole": t.text})
        if t.text == "if":
            return self.parse_if(start)
        if t.text == "while":
            return self.parse_while(start)
        if t.text == "do":
            return self.parse_do_while(start)
        if t.text == "for":
            return self.parse_for(start)
        if t.text == "try":
            return self.parse_try(start)
        if t.text in ("return", "throw"):
            self.take()
            if self.at(";"):
                self.take(";")
                return self.node("Unsupported", start, attrs={"reason": f"bare {t.text}"})
            expr = self.parse_expression()
            self.take(";")
            # the control aspect is dropped; the value's data flow is kept
            return self.node("ExprStmt", start, children=[expr], attrs={"origin": t.text})
        if t.text in ("break", "continue"):
            self.take()
            self.take(";")
            return self.node("Unsupported", start, attrs={"reason": t.text})
        if t.text in ("switch", "synchronized"):
            return self._unsupported_balanced(start, t.text)
        decl = self.try_local_decl()
        if decl is not None:
            return decl
        expr = self.parse_expr_statement()
        self.take(";")
        return expr

    def _recover_statement(self, start: int) -> None:
        """Skip to the end of the broken statement, balancing braces."""
        self.i = start
        depth = 0
        while self.peek() is not None:
            t = self.take()
            if t.text == "{":
                depth += 1
            elif t.text == "}":
                if depth == 0:
                    self.i -= 1
                    return
                depth -= 1
                if depth == 0:
                    return
            elif t.text == ";" and depth == 0:
                return

    def _unsupported_balanced(self, start: int, reason: str) -> Node:
        self._recover_statement(start)
        if self.i == start:
            self.take()
        return self.node("Unsupported", start, attrs={"reason": reason})

    def try_local_decl(self) -> Node | None:
        mark = self.i
        dtype = self.try_type()
        if dtype is None or dtype == "void":
            self.i = mark
            return None
        if not self.at_kind("ident"):
            self.i = mark
            return None
        nxt = self.peek(1)
        if nxt is None or nxt.text not in ("=", ",", ";"):
            self.i = mark
            return None
        declarators = []
        while True:
            dstart = self.i
            name = self.take().text
            init = None
            if self.at("="):
                self.take("=")
                init = self.parse_expression()
            declarators.append(
                self.node(
                    "LocalDecl",
                    dstart,
                    children=[init] if init else [],
                    attrs={"name": name, "type": dtype},
                )
            )
            if self.at(","):
                self.take(",")
                continue
            break
        self.take(";")
        if len(declarators) == 1:
            node = declarators[0]
            node.tok_span = (mark, self.i)
            node.byte_span = (self.toks[mark].offset, node.byte_span[1])
            return node
        return self.node("Block", mark, children=declarators, attrs={"decl_group": True})

    def parse_if(self, start: int) -> Node:
        self.take("if")
        self.take("(")
        cond = self.parse_expression()
        self.take(")")
        then = self.parse_statement()
        children = [cond, then]
        if self.at("else"):
            self.take("else")
            children.append(self.parse_statement())
        return self.node("If", start, children=children)

    def parse_while(self, start: int) -> Node:
        self.take("while")
        self.take("(")
        cond = self.parse_expression()
        self.take(")")
        body = self.parse_statement()
        return self.node("Loop", start, children=[cond, body], attrs={"flavor": "while"})

    def parse_do_while(self, start: int) -> Node:
        self.take("do")
        body = self.parse_statement()
        self.take("while")
        self.take("(")
        cond = self.parse_expression()
        self.take(")")
        self.take(";")
        return self.node("Loop", start, children=[cond, body], attrs={"flavor": "do"})

    def parse_for(self, start: int) -> Node:
        self.take("for")
        self.take("(")
        # for-each: Type name : expr
        mark = self.i
        etype = self.try_type()
        if etype is not None and self.at_kind("ident") and self.at(":", 1):
            name = self.take().text
            self.take(":")
            iterable = self.parse_expression()
            self.take(")")
            body = self.parse_statement()
            return self.node(
                "Loop",
                start,
                children=[iterable, body],
                attrs={"flavor": "foreach", "var": name, "var_type": etype},
            )
        self.i = mark
        init = None
        if not self.at(";"):
            init = self.try_local_decl()
            if init is None:
                init = self.parse_expr_statement()
                self.take(";")
        else:
            self.take(";")
        cond = None if self.at(";") else self.parse_expression()
        self.take(";")
        update = None if self.at(")") else self.parse_expr_statement()
        self.take(")")
        body = self.parse_statement()
        children = [c for c in (init, cond, update, body) if c is not None]
        flags = {
            "flavor": "for",
            "has_init": init is not None,
            "has_cond": cond is not None,
            "has_update": update is not None,
        }
        return self.node("Loop", start, children=children, attrs=flags)

    def parse_try(self, start: int) -> Node:
        self.take("try")
        if self.at("("):
            return self._unsupported_balanced(start, "try-with-resources")
        body = self.parse_block()
        children = [body]
        while self.at("catch"):
            cstart = self.i
            self.take("catch")
            self.take("(")
            ctype = self.try_type()
            if ctype is None:
                raise self.error("expected exception type")
            if self.at("|"):
                while not self.at(")"):
                    self.take()
                ctype = ctype  # multi-catch narrowed to the first type
                cname = "e"
            else:
                cname = self.take().text
            self.take(")")
            cbody = self.parse_block()
            children.append(
                self.node(
                    "CatchClause", cstart, children=[cbody], attrs={"type": ctype, "name": cname}
                )
            )
        if self.at("finally"):
            self.take("finally")
            fstart = self.i
            fbody = self.parse_block()
            children.append(self.node("CatchClause", fstart, children=[fbody], attrs={"type": None, "name": None}))
        return self.node("TryCatch", start, children=children)

    # -- expressions -----------------------------------------------------
    def parse_expr_statement(self) -> Node:
        start = self.i
        expr = self.parse_expression()
        if self.peek() is not None and self.peek().text in ("=", "+=", "-=", "*=", "/=", "%="):
            op = self.take().text
            value = self.parse_expression()
            return self.node("Assign", start, children=[expr, value], attrs={"op": op})
        wrapped = self.node("ExprStmt", start, children=[expr])
        return wrapped

    _BIN_LEVELS = [
        ["||"],
        ["&&"],
        ["==", "!="],
        ["<", ">", "<=", ">="],
        ["+", "-"],
        ["*", "/", "%"],
    ]

    def parse_expression(self, level: int = 0) -> Node:
        if level >= len(self._BIN_LEVELS):
            return self.parse_unary()
        start = self.i
        left = self.parse_expression(level + 1)
        while self.peek() is not None and self.peek().text in self._BIN_LEVELS[level]:
            if self.peek().text == ">" and self.at_kind("ident", 1) and self.at("(", 2):
                pass  # still a comparison; generics were consumed by try_type
            op = self.take().text
            right = self.parse_expression(level + 1)
            left = self.node("BinaryOp", start, children=[left, right], attrs={"op": op})
        return left

    def parse_unary(self) -> Node:
        start = self.i
        t = self.peek()
        if t is not None and t.text in ("!", "-", "+", "~"):
            self.take()
            operand = self.parse_unary()
            if t.text in ("-", "+") and operand.kind == "Literal" and self.i == start + 2:
                operand.text = t.text + operand.text
                operand.tok_span = (start, self.i)
                return operand
            return self.node("BinaryOp", start, children=[operand], attrs={"op": t.text})
        return self.parse_postfix()

    def parse_postfix(self) -> Node:
        start = self.i
        expr = self.parse_primary()
        while True:
            if self.at(".") and self.at_kind("ident", 1):
                self.take(".")
                name = self.take().text
                if self.at("("):
                    args = self.parse_args()
                    expr = self.node(
                        "MethodInvocation", start, children=[expr] + args, attrs={"name": name}
                    )
                else:
                    expr = self.node("FieldAccess", start, children=[expr], attrs={"name": name})
            elif self.at("++") or self.at("--"):
                op = self.take().text
                expr = self.node("PostfixOp", start, children=[expr], attrs={"op": op})
            elif self.at("["):
                raise self.error("array access is out of subset")
            else:
                return expr

    def parse_args(self) -> list[Node]:
        self.take("(")
        args = []
        while not self.at(")"):
            if self.at_kind("ident") and self.at("->", 1):
                raise self.error("lambda expression is out of subset")
            args.append(self.parse_expression())
            if self.at(","):
                self.take(",")
        self.take(")")
        return args

    def parse_primary(self) -> Node:
        start = self.i
        t = self.peek()
        if t is None:
            raise self.error("expected expression")
        if t.kind == "hole":
            self.take()
            return self.node("Hole", start, text=t.text, attrs={"hole": t.text})
        if t.kind in ("number", "string", "char"):
            self.take()
            kind = {"number": "number", "string": "String", "char": "char"}[t.kind]
            return self.node("Literal", start, text=t.text, attrs={"type": kind})
        if t.text in ("true", "false", "null"):
            self.take()
            return self.node("Literal", start, text=t.text, attrs={"type": "boolean" if t.text != "null" else "null"})
        if t.text == "new":
            self.take("new")
            tname = self.try_type()
            if tname is None:
                raise self.error("expected type after new")
            if self.at("["):
                raise self.error("array creation is out of subset")
            args = self.parse_args()
            if self.at("{"):
                raise self.error("anonymous class is out of subset")
            return self.node("ConstructorCall", start, children=args, attrs={"type": tname})
        if t.text == "(":
            # cast: (TypeName) expr   -- heuristic on the token after ')'
            mark = self.i
            self.take("(")
            ctype = self.try_type()
            if ctype is not None and self.at(")"):
                after = self.peek(1)
                if after is not None and (
                    after.kind in ("ident", "number", "string", "char", "hole")
                    or after.text in ("new", "this", "(")
                ):
                    self.take(")")
                    operand = self.parse_unary()
                    return self.node("Cast", start, children=[operand], attrs={"type": ctype})
            self.i = mark
            self.take("(")
            inner = self.parse_expression()
            self.take(")")
            return inner
        if t.text == "this":
            self.take()
            return self.node("Name", start, text="this")
        if t.kind == "ident":
            self.take()
            if self.at("("):
                args = self.parse_args()
                return self.node(
                    "MethodInvocation", start, children=[None_receiver()] + args, attrs={"name": t.text}
                )
            return self.node("Name", start, text=t.text)
        if t.text == "->":
            raise self.error("lambda expression is out of subset")
        raise self.error("expected expression")


def None_receiver() -> Node:
    return Node("Name", text="", attrs={"implicit": True})


def parse_compilation_unit(source: str) -> Node:
    """Widest parse among class / bare method / statement block."""
    tokens = tokenize(source)
    if not tokens:
        return Node("Block", tok_span=(0, 0), byte_span=(0, 0))
    parser = _Parser(tokens, source)
    unit = parser.parse_unit()
    unit.attrs["n_tokens"] = len(tokens)
    return unit


def methods_of(unit: Node) -> list[tuple[str, Node]]:
    """(name, body-with-params) pairs; a bare block is one pseudo-method."""
    out = []
    if unit.kind == "ClassDecl":
        for m in unit.children:
            if m.kind == "MethodDecl":
                out.append((m.attrs["name"], m))
    elif unit.kind == "MethodDecl":
        out.append((unit.attrs["name"], unit))
    else:
        out.append(("<snippet>", unit))
    return out


def statement_stats(unit: Node) -> tuple[int, int]:
    """(total statements, unsupported statements) for the skip policy."""
    total = 0
    unsupported = 0
    for node in unit.walk():
        if node.kind in ("ExprStmt", "LocalDecl", "If", "Loop", "TryCatch", "Assign", "Unsupported", "BodyHole"):
            total += 1
            if node.kind == "Unsupported":
                unsupported += 1
    return total, unsupported
