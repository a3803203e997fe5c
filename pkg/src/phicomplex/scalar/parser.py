"""Recursive-descent parser for scalar expressions.

Grammar::

    expr     := term (("+"|"-") term)*
    term     := factor (("*"|"/") factor)*
    factor   := base ("^" uint)?
    base     := rational | var | func "(" expr ")" | "(" expr ")" | "-" base
    var      := "x" | "y" | "z" | "xi"
    func     := "sin" | "cos" | "exp" | "sinh" | "cosh"
    rational := int ("/" uint)?

Two extensions: the constant ``pi``, and extra parameter names passed
by the caller (``parse("cosh(s)^2", params=("s",))``).
"""
from __future__ import annotations

import re
from fractions import Fraction

from .expr import CHART, FUNCTIONS, Add, Div, Expr, Func, Mul, Neg, Pow, Rat, Sub, Var


class ExprSyntaxError(ValueError):
    def __init__(self, message: str, offset: int, source: str):
        super().__init__(f"{message} at offset {offset}: {source!r}")
        self.offset = offset
        self.source = source


class UnknownIdentifier(ExprSyntaxError):
    pass


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


def _tokenize(source: str):
    tokens = []
    pos = 0
    while True:
        m = _TOKEN.match(source, pos)
        if m is None or m.end() == pos and not m.group(0):
            break
        if m.group(1):
            tokens.append(("int", m.group(1), m.start(1)))
        elif m.group(2):
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3):
            tokens.append(("op", m.group(3), m.start(3)))
        else:
            break
        pos = m.end()
    tokens.append(("end", "", len(source.rstrip())))
    return tokens


class _Parser:
    def __init__(self, source: str, params):
        self.source = source
        self.tokens = _tokenize(source)
        self.i = 0
        self.names = set(CHART) | {"pi"} | set(params)

    def peek(self, k=0):
        return self.tokens[min(self.i + k, len(self.tokens) - 1)]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, message, tok=None):
        tok = tok or self.peek()
        raise ExprSyntaxError(message, tok[2], self.source)

    def expect(self, op):
        tok = self.peek()
        if tok[0] != "op" or tok[1] != op:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            self.fail(f"expected {op!r}, found {what}")
        self.take()

    def parse(self) -> Expr:
        e = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return e

    def expr(self) -> Expr:
        e = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            e = Add(e, rhs) if op == "+" else Sub(e, rhs)
        return e

    def term(self) -> Expr:
        e = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            op = self.take()[1]
            rhs = self.factor()
            e = Mul(e, rhs) if op == "*" else Div(e, rhs)
        return e

    def factor(self) -> Expr:
        b = self.base()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "int":
                self.fail("expected a non-negative integer exponent")
            self.take()
            return Pow(b, int(tok[1]))
        return b

    def base(self) -> Expr:
        tok = self.peek()
        kind, text, _ = tok
        if kind == "int":
            self.take()
            nxt, after = self.peek(), self.peek(1)
            if nxt[0] == "op" and nxt[1] == "/" and after[0] == "int":
                self.take()
                self.take()
                if int(after[1]) == 0:
                    self.fail("zero denominator", after)
                return Rat(Fraction(int(text), int(after[1])))
            return Rat(Fraction(int(text)))
        if kind == "name":
            self.take()
            if text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Func(text, arg)
            if text in self.names:
                return Var(text)
            raise UnknownIdentifier(f"unknown identifier {text!r}", tok[2], self.source)
        if kind == "op" and text == "(":
            self.take()
            e = self.expr()
            self.expect(")")
            return e
        if kind == "op" and text == "-":
            self.take()
            return Neg(self.base())
        if kind == "end":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {text!r}")


def parse(source: str, params=()) -> Expr:
    """Parse ``source`` into an expression tree (no simplification)."""
    return _Parser(source, params).parse()


def parse_with_parameters(source: str) -> Expr:
    """Parse, treating every identifier outside the chart and functions as a parameter."""
    names = re.findall(r"[A-Za-z_][A-Za-z_0-9]*", source)
    params = tuple(n for n in names if n not in FUNCTIONS and n not in CHART and n != "pi")
    return parse(source, params=params)
