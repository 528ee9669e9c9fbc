"""Parser for the identity file grammar.

The surface language:

* ``#`` starts a line comment;
* ``let NAME = expr;`` binds a name for later use;
* the final statement is either a bare expression, asserting that it equals
  zero, or ``U(p) lhs = rhs`` for a U_p identity;
* expressions are built from integer literals, ``eta(K)`` atoms, bracket
  lists ``[t1,r1,t2,r2,...]``, bound names, parentheses and ``+ - * / ^``,
  with ``^`` taking an integer literal exponent.

Expressions lower to :class:`EtaCombo` values.  Division is only defined by
a constant or by a single eta-product monomial; anything else reports the
offending subexpression with its source position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

from .errors import LoweringError, ParseError
from .etaproducts import EtaCombo, EtaProduct

__all__ = ["LinearIdentity", "UpIdentity", "parse_program", "parse_expression"]

_KEYWORDS = {"let", "eta", "U"}

_PUNCT = "+-*/^()[],;="


class _Token(NamedTuple):
    kind: str  # "int", "name", one of _PUNCT, or "eof"
    text: str
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    toks: list[_Token] = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            i += 1
            col += 1
        elif ch == "#":
            while i < n and text[i] != "\n":
                i += 1
        elif ch.isdigit():
            start = i
            c0 = col
            while i < n and text[i].isdigit():
                i += 1
                col += 1
            toks.append(_Token("int", text[start:i], line, c0))
        elif ch.isalpha() or ch == "_":
            start = i
            c0 = col
            while i < n and (text[i].isalnum() or text[i] == "_"):
                i += 1
                col += 1
            toks.append(_Token("name", text[start:i], line, c0))
        elif ch in _PUNCT:
            toks.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    toks.append(_Token("eof", "", line, col))
    return toks


# -- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class _Node:
    line: int
    col: int


@dataclass(frozen=True)
class IntLit(_Node):
    value: int


@dataclass(frozen=True)
class NameRef(_Node):
    ident: str


@dataclass(frozen=True)
class EtaAtom(_Node):
    multiplier: int


@dataclass(frozen=True)
class BracketProduct(_Node):
    flat: tuple[int, ...]


@dataclass(frozen=True)
class Neg(_Node):
    operand: "EtaExpr"


@dataclass(frozen=True)
class BinOp(_Node):
    op: str  # + - * /
    left: "EtaExpr"
    right: "EtaExpr"


@dataclass(frozen=True)
class Pow(_Node):
    base: "EtaExpr"
    exponent: int


EtaExpr = Union[IntLit, NameRef, EtaAtom, BracketProduct, Neg, BinOp, Pow]


@dataclass(frozen=True)
class LinearIdentity:
    """An assertion that ``combo`` vanishes identically."""
    combo: EtaCombo
    source: str


@dataclass(frozen=True)
class UpIdentity:
    """An assertion that U_p of ``product`` equals ``rhs``."""
    p: int
    product: EtaProduct
    rhs: EtaCombo
    source: str


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    def peek(self) -> _Token:
        return self.toks[self.pos]

    def next(self) -> _Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind: str) -> _Token:
        t = self.peek()
        if t.kind != kind:
            what = t.text or "end of input"
            raise ParseError(f"expected {kind!r}, found {what!r}", t.line, t.col)
        return self.next()

    # expr := ["+"|"-"] term {("+"|"-") term}
    def expr(self) -> EtaExpr:
        t = self.peek()
        if t.kind in "+-":
            self.next()
            node = self.term()
            if t.kind == "-":
                node = Neg(t.line, t.col, node)
        else:
            node = self.term()
        while self.peek().kind in "+-":
            op = self.next()
            rhs = self.term()
            node = BinOp(op.line, op.col, op.kind, node, rhs)
        return node

    # term := factor {("*"|"/") factor}
    def term(self) -> EtaExpr:
        node = self.factor()
        while self.peek().kind in "*/":
            op = self.next()
            rhs = self.factor()
            node = BinOp(op.line, op.col, op.kind, node, rhs)
        return node

    # factor := atom ["^" ["-"] INT]
    def factor(self) -> EtaExpr:
        node = self.atom()
        if self.peek().kind == "^":
            caret = self.next()
            sign = 1
            if self.peek().kind == "-":
                self.next()
                sign = -1
            exp = self.expect("int")
            node = Pow(caret.line, caret.col, node, sign * int(exp.text))
        return node

    def atom(self) -> EtaExpr:
        t = self.peek()
        if t.kind == "int":
            self.next()
            return IntLit(t.line, t.col, int(t.text))
        if t.kind == "(":
            self.next()
            node = self.expr()
            self.expect(")")
            return node
        if t.kind == "[":
            return self.bracket()
        if t.kind == "name":
            self.next()
            if t.text == "eta":
                self.expect("(")
                k = self.expect("int")
                self.expect(")")
                return EtaAtom(t.line, t.col, int(k.text))
            if t.text in _KEYWORDS:
                raise ParseError(f"{t.text!r} cannot be used here", t.line, t.col)
            return NameRef(t.line, t.col, t.text)
        what = t.text or "end of input"
        raise ParseError(f"expected an expression, found {what!r}", t.line, t.col)

    def bracket(self) -> BracketProduct:
        start = self.expect("[")
        entries: list[int] = []
        while True:
            sign = 1
            if self.peek().kind == "-":
                self.next()
                sign = -1
            v = self.expect("int")
            entries.append(sign * int(v.text))
            if self.peek().kind == ",":
                self.next()
                continue
            break
        self.expect("]")
        if len(entries) % 2:
            raise ParseError("bracket list needs an even number of entries",
                             start.line, start.col)
        return BracketProduct(start.line, start.col, tuple(entries))


def _lower(node: EtaExpr, env: dict[str, EtaCombo]) -> EtaCombo:
    if isinstance(node, IntLit):
        return EtaCombo(node.value)
    if isinstance(node, NameRef):
        if node.ident not in env:
            raise LoweringError(f"unknown name {node.ident!r}", node.line, node.col)
        return env[node.ident]
    if isinstance(node, EtaAtom):
        if node.multiplier < 1:
            raise LoweringError("eta multiplier must be a positive integer",
                                node.line, node.col)
        return EtaCombo.from_product(EtaProduct([(node.multiplier, 1)]))
    if isinstance(node, BracketProduct):
        try:
            return EtaCombo.from_product(EtaProduct.from_flat(node.flat))
        except ValueError as exc:
            raise LoweringError(str(exc), node.line, node.col) from exc
    if isinstance(node, Neg):
        return -_lower(node.operand, env)
    if isinstance(node, Pow):
        base = _lower(node.base, env)
        try:
            return base ** node.exponent
        except (ValueError, ZeroDivisionError) as exc:
            raise LoweringError(
                f"cannot raise this expression to the power {node.exponent}: {exc}",
                node.line, node.col) from exc
    if isinstance(node, BinOp):
        left = _lower(node.left, env)
        right = _lower(node.right, env)
        if node.op == "+":
            return left + right
        if node.op == "-":
            return left - right
        if node.op == "*":
            return left * right
        try:
            return left / right
        except (ValueError, ZeroDivisionError) as exc:
            raise LoweringError(f"cannot divide here: {exc}",
                                node.line, node.col) from exc
    raise TypeError(f"unknown node {node!r}")


def _parse_bindings(parser: _Parser) -> dict[str, EtaCombo]:
    env: dict[str, EtaCombo] = {}
    while (parser.peek().kind == "name" and parser.peek().text == "let"):
        parser.next()
        name = parser.expect("name")
        if name.text in _KEYWORDS:
            raise ParseError(f"{name.text!r} is reserved", name.line, name.col)
        parser.expect("=")
        value = parser.expr()
        parser.expect(";")
        env[name.text] = _lower(value, env)
    return env


def parse_program(text: str) -> Union[LinearIdentity, UpIdentity]:
    """Parse an identity file: bindings plus one final identity statement."""
    parser = _Parser(text)
    env = _parse_bindings(parser)
    t = parser.peek()
    if t.kind == "name" and t.text == "U":
        parser.next()
        parser.expect("(")
        p_tok = parser.expect("int")
        parser.expect(")")
        lhs_node = parser.expr()
        parser.expect("=")
        rhs_node = parser.expr()
        parser.expect("eof")
        lhs = _lower(lhs_node, env)
        if lhs.constant != 0 or len(lhs.terms) != 1 or lhs.terms[0][0] != 1:
            raise LoweringError(
                "the U(p) argument must be a plain eta-product with coefficient 1",
                lhs_node.line, lhs_node.col)
        rhs = _lower(rhs_node, env)
        return UpIdentity(p=int(p_tok.text), product=lhs.terms[0][1],
                          rhs=rhs, source=text)
    node = parser.expr()
    parser.expect("eof")
    return LinearIdentity(combo=_lower(node, env), source=text)


def parse_expression(text: str) -> EtaCombo:
    """Parse a single expression (bindings allowed) into an EtaCombo."""
    parser = _Parser(text)
    env = _parse_bindings(parser)
    node = parser.expr()
    parser.expect("eof")
    return _lower(node, env)
