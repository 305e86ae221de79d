"""Recursive-descent parser for the textual giant-number notation.

::

    expr  := atom (OP expr)?              # right associative, no precedence
    OP    := '^'+ | '↑'+ | '[' '-'? INT ']'
    atom  := INT | '(' expr ')'
           | 'SM' '[' INT ']' ('^' INT)? '(' expr ')'
           | ('triangle' | 'square' | 'circle') '(' expr ')'
           | 'mega' | 'megiston'
           | 'expand' '(' expr ',' expr ',' INT ',' expr ')'
           | 'hb' '(' INT ',' STRING ')'

``A^B^C`` is ``A^(B^C)`` and ``2^3^^2`` is ``2^(3^^2)``.
"""

from __future__ import annotations

from .expr import SM, Arrow, ArrowExpr, GenArrow, Lit
from . import hereditary

__all__ = ["ExprParseError", "parse_expr"]

_SHAPES = {"triangle": 3, "square": 4, "circle": 5}
_CONSTANTS = {"mega": SM(5, Lit(2)), "megiston": SM(5, Lit(10))}
_KEYWORDS = ("SM", "expand", "hb", *_SHAPES, *_CONSTANTS)


class ExprParseError(ValueError):
    def __init__(self, message: str, offset: int, expected=()):
        self.offset = offset
        self.expected = frozenset(expected)
        exp = f"; expected one of {sorted(self.expected)}" if self.expected else ""
        super().__init__(f"{message} at offset {offset}{exp}")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    # -- lexing helpers ---------------------------------------------------

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.fail(f"expected {ch!r}", {ch})
        self.pos += 1

    def fail(self, msg, expected=()):
        got = self.text[self.pos] if self.pos < len(self.text) else "end of input"
        raise ExprParseError(f"{msg}, got {got!r}", self.pos, expected)

    def integer(self, signed=False) -> int:
        self.skip()
        start = self.pos
        if signed and self.peek() == "-":
            self.pos += 1
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        digits = self.text[start : self.pos]
        if digits in ("", "-"):
            self.pos = start
            self.fail("expected an integer", {"INT"})
        return int(digits)

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start : self.pos]

    # -- grammar ----------------------------------------------------------

    def expr(self) -> ArrowExpr:
        left = self.atom()
        k = self.operator()
        if k is None:
            return left
        return Arrow(left, self.expr(), k)

    def operator(self):
        ch = self.peek()
        if ch in ("^", "↑"):
            k = 0
            while self.pos < len(self.text) and self.text[self.pos] == ch:
                k += 1
                self.pos += 1
            return k
        if ch == "[":
            self.pos += 1
            start = self.pos
            k = self.integer(signed=True)
            if k < -2:
                self.pos = start
                self.fail("arrow level must be >= -2")
            self.expect("]")
            return k
        return None

    def atom(self) -> ArrowExpr:
        ch = self.peek()
        if ch.isdigit():
            return Lit(self.integer())
        if ch == "(":
            self.pos += 1
            e = self.expr()
            self.expect(")")
            return e
        if ch.isalpha():
            start = self.pos
            name = self.word()
            if name in _CONSTANTS:
                return _CONSTANTS[name]
            if name in _SHAPES:
                return SM(_SHAPES[name], self.parenthesized())
            if name == "SM":
                return self.sm()
            if name == "expand":
                return self.expand()
            if name == "hb":
                return self.hb()
            self.pos = start
            self.fail(f"unknown name {name!r}", set(_KEYWORDS))
        self.fail("expected an expression", {"INT", "(", *_KEYWORDS})

    def parenthesized(self) -> ArrowExpr:
        self.expect("(")
        e = self.expr()
        self.expect(")")
        return e

    def sm(self) -> ArrowExpr:
        self.expect("[")
        start = self.pos
        p = self.integer()
        if p < 3:
            self.pos = start
            self.fail("polygon must have at least 3 sides")
        self.expect("]")
        times = 1
        if self.peek() == "^":
            self.pos += 1
            times = self.integer()
        return SM(p, self.parenthesized(), times)

    def expand(self) -> ArrowExpr:
        self.expect("(")
        a = self.expr()
        self.expect(",")
        b = self.expr()
        self.expect(",")
        start = self.pos
        k = self.integer()
        if k < 1:
            self.pos = start
            self.fail("generalized arrow level must be >= 1")
        self.expect(",")
        c = self.expr()
        self.expect(")")
        return GenArrow(a, b, k, c)

    def hb(self) -> ArrowExpr:
        self.expect("(")
        base = self.integer()
        self.expect(",")
        self.expect('"')
        start = self.pos
        end = self.text.find('"', start)
        if end < 0:
            self.pos = len(self.text)
            self.fail("unterminated string", {'"'})
        try:
            rep = hereditary.parse(base, self.text[start:end])
        except hereditary.HereditaryParseError as err:
            raise ExprParseError(err.reason, start + err.position) from None
        except ValueError as err:
            raise ExprParseError(str(err), start) from None
        self.pos = end + 1
        self.expect(")")
        return hereditary.to_expr(rep)


def parse_expr(text: str) -> ArrowExpr:
    p = _Parser(text)
    e = p.expr()
    if p.peek():
        p.fail("unexpected trailing input", {"OP", "end of input"})
    return e
