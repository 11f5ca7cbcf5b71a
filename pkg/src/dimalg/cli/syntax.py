"""Expression language: tokenizer, recursive-descent parser and printer.

Precedence, tightest first: postfix dual ``*``, shift ``S^k(...)``, smash
``^``, sum-product ``[+]``, direct sum ``+``, comparisons ``==`` / ``<=``.
The full grammar is in docs/grammar.ebnf.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

__all__ = [
    "ParseError",
    "Token",
    "tokenize",
    "parse",
    "to_source",
    "Num",
    "GroupLit",
    "FunLit",
    "Name",
    "Dual",
    "Shift",
    "BinOp",
    "Call",
]


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int, expected: Tuple[str, ...] = ()):
        self.line, self.col, self.expected = line, col, tuple(expected)
        detail = f"{message} at line {line}, column {col}"
        if expected:
            detail += f" (expected {' or '.join(expected)})"
        super().__init__(detail)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\n]+)
  | (?P<group>Z_\(\s*\d+\s*\)|Z/\d+(?:\^(?:\d+|inf|oo))?|Z(?!\w)|Q(?!\w))
  | (?P<susp>S\^)
  | (?P<number>\d+)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>\[\+\]|==|<=|[-+*^(){},;:=])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, col)
        kind = m.lastgroup
        chunk = m.group()
        if kind == "ws":
            for i, ch in enumerate(chunk):
                if ch == "\n":
                    line += 1
                    line_start = pos + i + 1
        else:
            if kind == "op":
                kind = chunk
            tokens.append(Token(kind, chunk, line, col))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# -- AST -------------------------------------------------------------------------

@dataclass(frozen=True)
class Num:
    text: str  # "3", "-2", "inf", "-inf"


@dataclass(frozen=True)
class GroupLit:
    text: str


@dataclass(frozen=True)
class FunLit:
    kind: str  # "e", "d" or "X"
    q: str
    default: Tuple[str, str, str]
    exceptions: Tuple[Tuple[int, Tuple[str, str, str]], ...]


@dataclass(frozen=True)
class Name:
    ident: str


@dataclass(frozen=True)
class Dual:
    arg: object


@dataclass(frozen=True)
class Shift:
    k: str
    arg: object


@dataclass(frozen=True)
class BinOp:
    op: str
    left: object
    right: object


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple
    kwargs: tuple = ()


_LEVELS = (("==", "<="), ("+",), ("[+]",), ("^",))
_PREC = {op: i for i, ops in enumerate(_LEVELS) for op in ops}
_FUN_PREFIX = {"d": "d", "X": "X"}


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def peek(self, offset=1) -> Token:
        return self.tokens[min(self.i + offset, len(self.tokens) - 1)]

    def fail(self, message: str, *expected: str):
        t = self.tok
        found = "end of input" if t.kind == "eof" else repr(t.text)
        raise ParseError(f"{message}, found {found}", t.line, t.col, expected)

    def advance(self) -> Token:
        t = self.tok
        self.i += 1
        return t

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            self.fail("unexpected token", repr(kind))
        return self.advance()

    def program(self):
        node = self.expr()
        if self.tok.kind != "eof":
            self.fail("trailing input", "an operator", "end of input")
        return node

    def expr(self):
        left = self.binary(1)
        if self.tok.kind in _LEVELS[0]:
            op = self.advance().kind
            left = BinOp(op, left, self.binary(1))
            if self.tok.kind in _LEVELS[0]:
                self.fail("comparisons do not chain")
        return left

    def binary(self, level: int):
        if level == len(_LEVELS):
            return self.postfix()
        left = self.binary(level + 1)
        while self.tok.kind in _LEVELS[level]:
            op = self.advance().kind
            left = BinOp(op, left, self.binary(level + 1))
        return left

    def postfix(self):
        node = self.primary()
        while self.tok.kind == "*":
            self.advance()
            node = Dual(node)
        return node

    def ext(self) -> str:
        sign = ""
        if self.tok.kind == "-":
            self.advance()
            sign = "-"
        t = self.tok
        if t.kind == "number":
            self.advance()
            v = int(t.text)
            return str(-v if sign else v)
        if t.kind == "ident" and t.text == "inf":
            self.advance()
            return sign + "inf"
        self.fail("expected an extended integer", "integer", "'inf'")

    def triple(self):
        self.expect("(")
        a = self.ext()
        self.expect(",")
        b = self.ext()
        self.expect(",")
        c = self.ext()
        self.expect(")")
        return (a, b, c)

    def funlit(self, kind: str):
        self.expect("{")
        if not (self.tok.kind == "group" and self.tok.text == "Q"):
            self.fail("function literal starts with the value at Q", "'Q'")
        self.advance()
        self.expect(":")
        q = self.ext()
        self.expect(",")
        self.expect("*")
        self.expect(":")
        default = self.triple()
        ex = {}
        while self.tok.kind == ",":
            self.advance()
            p = int(self.expect("number").text)
            if p in ex:
                self.fail(f"prime {p} listed twice")
            self.expect(":")
            ex[p] = self.triple()
        self.expect("}")
        return FunLit(kind, q, default, tuple(sorted(ex.items())))

    def primary(self):
        t = self.tok
        if t.kind == "(":
            self.advance()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "susp":
            self.advance()
            k = self.ext()
            self.expect("(")
            arg = self.expr()
            self.expect(")")
            return Shift(k, arg)
        if t.kind == "group":
            self.advance()
            return GroupLit(t.text)
        if t.kind in ("number", "-"):
            return Num(self.ext())
        if t.kind == "{":
            return self.funlit("e")
        if t.kind == "ident":
            nxt = self.peek()
            if t.text in _FUN_PREFIX and nxt.kind == "{":
                self.advance()
                return self.funlit(_FUN_PREFIX[t.text])
            if t.text == "inf":
                return Num(self.ext())
            if nxt.kind == "(":
                return self.call()
            self.advance()
            return Name(t.text)
        self.fail("expected an operand", "literal", "name", "'('")

    def call(self):
        name = self.advance().text
        self.expect("(")
        args, kwargs = [], []
        if self.tok.kind != ")":
            args.append(self.expr())
            while self.tok.kind == ",":
                self.advance()
                args.append(self.expr())
            if self.tok.kind == ";":
                self.advance()
                kwargs.append(self.keyword())
                while self.tok.kind == ",":
                    self.advance()
                    kwargs.append(self.keyword())
        if self.tok.kind != ")":
            self.fail("unclosed argument list", "','", "';'", "')'")
        self.advance()
        return Call(name, tuple(args), tuple(kwargs))

    def keyword(self):
        key = self.expect("ident").text
        self.expect("=")
        return (key, self.expr())


def parse(text: str):
    """Parse an expression; raises :class:`ParseError` with line and column."""
    return _Parser(text).program()


# -- printer ------------------------------------------------------------------------

def _triple(t) -> str:
    return "(" + ",".join(t) + ")"


def to_source(node, parent_prec: int = -1) -> str:
    """Canonical source text; ``parse(to_source(n)) == n``."""
    if isinstance(node, Num):
        return node.text
    if isinstance(node, GroupLit):
        return node.text
    if isinstance(node, Name):
        return node.ident
    if isinstance(node, FunLit):
        prefix = "" if node.kind == "e" else node.kind
        parts = [f"Q:{node.q}", f"*:{_triple(node.default)}"]
        parts += [f"{p}:{_triple(t)}" for p, t in node.exceptions]
        return prefix + "{" + ", ".join(parts) + "}"
    if isinstance(node, Dual):
        inner = to_source(node.arg, len(_LEVELS))
        if isinstance(node.arg, Num) and node.arg.text.startswith("-"):
            inner = f"({inner})"
        return inner + "*"
    if isinstance(node, Shift):
        return f"S^{node.k}({to_source(node.arg)})"
    if isinstance(node, Call):
        args = ", ".join(to_source(a) for a in node.args)
        if node.kwargs:
            args += "; " + ", ".join(f"{k}={to_source(v)}" for k, v in node.kwargs)
        return f"{node.name}({args})"
    if isinstance(node, BinOp):
        prec = _PREC[node.op]
        # left-associative: the right operand needs parentheses at equal precedence
        text = f"{to_source(node.left, prec)} {node.op} {to_source(node.right, prec + 1)}"
        if prec == 0 and parent_prec >= 0 or prec < parent_prec:
            return f"({text})"
        return text
    raise TypeError(f"not an expression node: {node!r}")
