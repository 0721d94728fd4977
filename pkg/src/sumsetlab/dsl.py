"""Set-expression language used by the command line.

Grammar (lowest to highest precedence, all binary operators left-assoc)::

    expr    := diff ('|' diff)*
    diff    := inter ('\\' inter)*
    inter   := sum ('&' sum)*
    sum     := unary ('+' unary)*
    unary   := '-' unary | atom
    atom    := '{' [item (',' item)*] '}'          item := INT | INT '..' INT
             | 'Z' | 'N'
             | 'res' '(' INT ':' ints ')'           nZ + {r...}
             | 'resN' '(' INT ':' ints ')'          nN + {r...}
             | 'ep' '(' INT ';' lit ';' lit ';' expr ')'
             | 'prop11' '(' INT ')'
             | 'shift' '(' expr ',' INT ')'
             | '(' expr ')'

``-`` is reflection z -> -z; set difference is ``\\``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .core import (EPForm, PeriodicSet, boolean_combine, from_ep_form, negate, sumset,
                   translate)
from .oracle import Window, WindowSet, combine, materialize, window_sumset


class DSLSyntaxError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {message}")
        self.line = line
        self.col = col


# -- AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Lit:
    values: tuple


@dataclass(frozen=True)
class Const:
    name: str  # "Z" or "N"


@dataclass(frozen=True)
class Res:
    n: int
    residues: tuple
    natural: bool = False


@dataclass(frozen=True)
class EP:
    n: int
    A: tuple
    F: tuple
    G: "Node"


@dataclass(frozen=True)
class Prop11:
    limit: int


@dataclass(frozen=True)
class Shift:
    operand: "Node"
    k: int


@dataclass(frozen=True)
class Neg:
    operand: "Node"


@dataclass(frozen=True)
class Bin:
    op: str
    left: "Node"
    right: "Node"


Node = Union[Lit, Const, Res, EP, Prop11, Shift, Neg, Bin]

PRECEDENCE = {"|": 1, "\\": 2, "&": 3, "+": 4}
OP_NAMES = {"|": "union", "&": "intersect", "\\": "difference"}

# -- tokenizer ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<sym>\.\.|[{}(),:;|&\\+\-]))")


@dataclass
class Token:
    kind: str
    text: str
    line: int
    col: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    line_starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def where(p):
        ln = max(i for i, s in enumerate(line_starts) if s <= p)
        return ln + 1, p - line_starts[ln] + 1

    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip() == "":
                break
            p = pos + len(rest) - len(rest.lstrip())
            raise DSLSyntaxError(f"unexpected character {text[p]!r}", *where(p))
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append(Token(kind, m.group(kind), *where(start)))
        pos = m.end()
    tokens.append(Token("end", "", *where(len(text))))
    return tokens


# -- parser -------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        raise DSLSyntaxError(f"{msg} (found {found!r})", tok.line, tok.col)

    def accept(self, text: str) -> bool:
        if self.tok.kind in ("sym", "name") and self.tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str):
        if not self.accept(text):
            self.error(f"expected {text!r}")

    def integer(self) -> int:
        sign = -1 if self.accept("-") else 1
        if self.tok.kind != "int":
            self.error("expected an integer")
        v = int(self.tok.text)
        self.i += 1
        return sign * v

    def parse(self) -> Node:
        node = self.binary(1)
        if self.tok.kind != "end":
            self.error("unexpected token")
        return node

    def binary(self, level: int) -> Node:
        if level > 4:
            return self.unary()
        node = self.binary(level + 1)
        op = next(o for o, p in PRECEDENCE.items() if p == level)
        while self.tok.kind == "sym" and self.tok.text == op:
            self.i += 1
            node = Bin(op, node, self.binary(level + 1))
        return node

    def unary(self) -> Node:
        if self.accept("-"):
            return Neg(self.unary())
        return self.atom()

    def int_list(self, close: str) -> tuple:
        vals = []
        if self.accept(close):
            return ()
        while True:
            a = self.integer()
            if self.accept(".."):
                b = self.integer()
                if b < a:
                    self.error(f"empty range {a}..{b}")
                vals.extend(range(a, b + 1))
            else:
                vals.append(a)
            if self.accept(close):
                return tuple(sorted(set(vals)))
            self.expect(",")

    def literal(self) -> tuple:
        self.expect("{")
        return self.int_list("}")

    def atom(self) -> Node:
        t = self.tok
        if self.accept("{"):
            return Lit(self.int_list("}"))
        if self.accept("("):
            node = self.binary(1)
            self.expect(")")
            return node
        if t.kind == "name":
            self.i += 1
            if t.text in ("Z", "N"):
                return Const(t.text)
            if t.text in ("res", "resN"):
                self.expect("(")
                n = self._modulus(t)
                self.expect(":")
                rs = self.int_list(")")
                if not rs:
                    self.error("res needs at least one residue", t)
                return Res(n, rs, t.text == "resN")
            if t.text == "ep":
                self.expect("(")
                n = self._modulus(t)
                self.expect(";")
                A = self.literal()
                self.expect(";")
                F = self.literal()
                self.expect(";")
                G = self.binary(1)
                self.expect(")")
                return EP(n, A, F, G)
            if t.text == "prop11":
                self.expect("(")
                limit = self.integer()
                self.expect(")")
                return Prop11(limit)
            if t.text == "shift":
                self.expect("(")
                e = self.binary(1)
                self.expect(",")
                k = self.integer()
                self.expect(")")
                return Shift(e, k)
            self.error(f"unknown name {t.text!r}", t)
        self.error("expected a set")

    def _modulus(self, t: Token) -> int:
        n = self.integer()
        if n < 1:
            self.error("modulus must be positive", t)
        return n


def parse(text: str) -> Node:
    return _Parser(text).parse()


def parse_literal(text: str) -> tuple:
    """A bare ``{...}`` integer list."""
    node = parse(text)
    if not isinstance(node, Lit):
        raise DSLSyntaxError("expected a literal set like {0,1}", 1, 1)
    return node.values


# -- printer ---------------------------------------------------------------------------


def _ints(vs) -> str:
    return ",".join(str(v) for v in vs)


def to_text(node: Node) -> str:
    if isinstance(node, Lit):
        return "{" + _ints(node.values) + "}"
    if isinstance(node, Const):
        return node.name
    if isinstance(node, Res):
        return f"{'resN' if node.natural else 'res'}({node.n}:{_ints(node.residues)})"
    if isinstance(node, EP):
        return f"ep({node.n};{{{_ints(node.A)}}};{{{_ints(node.F)}}};{to_text(node.G)})"
    if isinstance(node, Prop11):
        return f"prop11({node.limit})"
    if isinstance(node, Shift):
        return f"shift({to_text(node.operand)},{node.k})"
    if isinstance(node, Neg):
        inner = to_text(node.operand)
        return f"-({inner})" if isinstance(node.operand, Bin) else f"-{inner}"
    if isinstance(node, Bin):
        p = PRECEDENCE[node.op]
        left = to_text(node.left)
        right = to_text(node.right)
        if isinstance(node.left, Bin) and PRECEDENCE[node.left.op] < p:
            left = f"({left})"
        if isinstance(node.right, Bin) and PRECEDENCE[node.right.op] <= p:
            right = f"({right})"
        return f"{left} {node.op} {right}"
    raise TypeError(f"not a set expression node: {node!r}")


# -- evaluation ----------------------------------------------------------------------------

Value = Union[PeriodicSet, WindowSet]


def evaluate(node: Node) -> Value:
    """PeriodicSet when every leaf is periodic; WindowSet as soon as prop11 is involved."""
    if isinstance(node, Lit):
        return PeriodicSet.finite(node.values)
    if isinstance(node, Const):
        return PeriodicSet.integers() if node.name == "Z" else PeriodicSet.naturals()
    if isinstance(node, Res):
        if node.natural:
            return PeriodicSet.progressions_from(node.n, node.residues)
        return PeriodicSet.residues(node.n, node.residues)
    if isinstance(node, EP):
        G = evaluate(node.G)
        if not isinstance(G, PeriodicSet):
            raise ValueError("ep(...): G must be a periodic or finite set")
        return from_ep_form(EPForm(node.n, node.A, node.F, G))
    if isinstance(node, Prop11):
        from .constructions import prop11_generate
        return prop11_generate(node.limit)
    if isinstance(node, Shift):
        v = evaluate(node.operand)
        return v.shift(node.k) if isinstance(v, WindowSet) else translate(v, node.k)
    if isinstance(node, Neg):
        v = evaluate(node.operand)
        return v.negate() if isinstance(v, WindowSet) else negate(v)
    if isinstance(node, Bin):
        a, b = evaluate(node.left), evaluate(node.right)
        if isinstance(a, PeriodicSet) and isinstance(b, PeriodicSet):
            if node.op == "+":
                return sumset(a, b)
            return boolean_combine(OP_NAMES[node.op], a, b)
        # a periodic operand is materialized on the windowed operand's window
        if isinstance(a, PeriodicSet):
            a = materialize(a, b.window)
        if isinstance(b, PeriodicSet):
            b = materialize(b, a.window)
        if node.op == "+":
            return window_sumset(a, b, Window(a.lo + b.lo, a.hi + b.hi))
        return combine(OP_NAMES[node.op], a, b)
    raise TypeError(f"not a set expression node: {node!r}")


def parse_ep(text: str) -> EPForm:
    """``n=2;A={1};F={};G={0,2,6}`` (F and G optional, G any periodic expression)."""
    parts = {}
    depth = 0
    cur = []
    for ch in text + ";":
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        if ch == ";" and depth == 0:
            item = "".join(cur).strip()
            cur = []
            if not item:
                continue
            key, sep, val = item.partition("=")
            key = key.strip()
            if not sep or key not in ("n", "A", "F", "G"):
                raise ValueError(f"bad --ep item {item!r}; expected n=, A=, F=, G=")
            parts[key] = val.strip()
        else:
            cur.append(ch)
    if "n" not in parts or "A" not in parts:
        raise ValueError("--ep needs at least n= and A=")
    G = evaluate(parse(parts["G"])) if parts.get("G") else PeriodicSet.empty()
    if not isinstance(G, PeriodicSet):
        raise ValueError("G must be a periodic or finite set")
    return EPForm(int(parts["n"]), parse_literal(parts["A"]),
                  parse_literal(parts.get("F") or "{}"), G)
