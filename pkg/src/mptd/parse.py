"""Polynomial expressions: integers, variables, ``+ - * ^`` and parentheses.

Multiplication must be written explicitly.  ``^`` binds tightest and takes a
non-negative integer literal; unary minus is allowed.  Parsing is a small
precedence-climbing loop over a token list.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from mptd.polyring import Poly, PolyError, VarOrder

__all__ = ["ParseError", "parse_poly", "parse_vars"]


class ParseError(PolyError):
    def __init__(self, message: str, text: str, pos: int):
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}: {text!r}")


@dataclass(frozen=True)
class _Tok:
    kind: str  # "int", "name", "op", "end"
    value: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^()]))")

_BINARY = {"+": 1, "-": 1, "*": 2}


def _tokenize(text: str) -> list[_Tok]:
    toks, pos = [], 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        kind = m.lastgroup
        toks.append(_Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, order: VarOrder):
        self.text = text
        self.order = order
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def next(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok.pos)

    def expr(self, min_prec: int = 1) -> Poly:
        lhs = self.unary()
        while True:
            t = self.peek()
            prec = _BINARY.get(t.value) if t.kind == "op" else None
            if prec is None or prec < min_prec:
                return lhs
            self.next()
            rhs = self.expr(prec + 1)
            if t.value == "+":
                lhs = lhs + rhs
            elif t.value == "-":
                lhs = lhs - rhs
            else:
                lhs = lhs * rhs

    def unary(self) -> Poly:
        t = self.peek()
        if t.kind == "op" and t.value in "+-":
            self.next()
            # unary minus binds looser than ^ and * (so -x^2 == -(x^2))
            operand = self.expr(2)
            return -operand if t.value == "-" else operand
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek().value == "^" and self.peek().kind == "op":
            self.next()
            t = self.peek()
            if t.kind != "int":
                self.fail("exponent must be a non-negative integer literal")
            self.next()
            base = base ** int(t.value)
            if self.peek().value == "^" and self.peek().kind == "op":
                self.fail("chained exponents need parentheses")
        return base

    def atom(self) -> Poly:
        t = self.next()
        if t.kind == "int":
            return Poly.const(self.order, int(t.value))
        if t.kind == "name":
            if t.value not in self.order.names:
                raise ParseError(f"unknown identifier {t.value!r}", self.text, t.pos)
            return Poly.var(self.order, t.value)
        if t.kind == "op" and t.value == "(":
            inner = self.expr()
            if self.peek().value != ")":
                self.fail("expected ')'")
            self.next()
            return inner
        if t.kind == "end":
            self.fail("unexpected end of input", t)
        self.fail(f"unexpected {t.value!r}", t)


def parse_poly(text: str, order: VarOrder) -> Poly:
    """Parse ``text`` into a polynomial over ``order``."""
    p = _Parser(text, order)
    if p.peek().kind == "end":
        p.fail("empty expression")
    out = p.expr()
    if p.peek().kind != "end":
        p.fail(f"unexpected {p.peek().value!r}")
    return out


def parse_vars(text: str) -> VarOrder:
    """``"x,y,z"`` -> ``VarOrder(("x", "y", "z"))``."""
    names = [s.strip() for s in text.split(",")]
    for n in names:
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", n):
            raise PolyError(f"invalid variable name {n!r} in {text!r}")
    return VarOrder(names)
