"""Expression trees for scalar fields on the chart (x, y, z, xi).

Nodes are immutable.  Arithmetic operators build trees through light
smart constructors (constant folding, additive/multiplicative identities);
deciding whether two trees are equal as functions is the job of
:mod:`phicomplex.scalar.poly`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Union

CHART = ("x", "y", "z", "xi")
FUNCTIONS = ("sin", "cos", "exp", "sinh", "cosh")

Number = Union[int, Fraction]


class PoleError(ArithmeticError):
    """Raised when an expression is evaluated at a pole of a division."""


class Expr:
    __slots__ = ()

    # cache slot for the normal form, filled by poly.to_poly
    def __add__(self, other):
        return add(self, other)

    def __radd__(self, other):
        return add(other, self)

    def __sub__(self, other):
        return sub(self, other)

    def __rsub__(self, other):
        return sub(other, self)

    def __mul__(self, other):
        return mul(self, other)

    def __rmul__(self, other):
        return mul(other, self)

    def __truediv__(self, other):
        return div(self, other)

    def __rtruediv__(self, other):
        return div(other, self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, n):
        return power(self, n)

    def __str__(self):
        return render(self)


@dataclass(frozen=True)
class Rat(Expr):
    value: Fraction
    _poly: object = field(default=None, compare=False, repr=False, hash=False)

    def __repr__(self):
        return f"Rat {self.value}"


@dataclass(frozen=True)
class Var(Expr):
    """A chart variable, a free parameter (s, alpha, ...) or the constant pi."""

    name: str
    _poly: object = field(default=None, compare=False, repr=False, hash=False)

    def __repr__(self):
        return f"Var {self.name}"


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr
    _poly: object = field(default=None, compare=False, repr=False, hash=False)

    def __repr__(self):
        return f"Add({self.left!r}, {self.right!r})"


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr
    _poly: object = field(default=None, compare=False, repr=False, hash=False)

    def __repr__(self):
        return f"Sub({self.left!r}, {self.right!r})"


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr
    _poly: object = field(default=None, compare=False, repr=False, hash=False)

    def __repr__(self):
        return f"Mul({self.left!r}, {self.right!r})"


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr
    _poly: object = field(default=None, compare=False, repr=False, hash=False)

    def __repr__(self):
        return f"Div({self.left!r}, {self.right!r})"


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int
    _poly: object = field(default=None, compare=False, repr=False, hash=False)

    def __repr__(self):
        return f"Pow({self.base!r}, {self.exponent})"


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr
    _poly: object = field(default=None, compare=False, repr=False, hash=False)

    def __repr__(self):
        return f"Neg({self.arg!r})"


@dataclass(frozen=True)
class Func(Expr):
    name: str
    arg: Expr
    _poly: object = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if self.name not in FUNCTIONS:
            raise ValueError(f"unsupported function {self.name!r}")

    def __repr__(self):
        return f"{self.name.capitalize()}({self.arg!r})"


ZERO = Rat(Fraction(0))
ONE = Rat(Fraction(1))


def const(value) -> Rat:
    if isinstance(value, float):
        value = Fraction(value)
    return Rat(Fraction(value))


def as_expr(value) -> Expr:
    if isinstance(value, Expr):
        return value
    if isinstance(value, (int, Fraction, float)):
        return const(value)
    if isinstance(value, str):
        from .parser import parse

        return parse(value)
    raise TypeError(f"cannot interpret {value!r} as a scalar expression")


def var(name: str) -> Var:
    return Var(name)


x, y, z, xi = (Var(n) for n in CHART)
pi = Var("pi")


def _is_const(e: Expr, q) -> bool:
    return isinstance(e, Rat) and e.value == q


def add(a, b) -> Expr:
    a, b = as_expr(a), as_expr(b)
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    if isinstance(a, Rat) and isinstance(b, Rat):
        return Rat(a.value + b.value)
    if isinstance(b, Neg):
        return Sub(a, b.arg)
    return Add(a, b)


def sub(a, b) -> Expr:
    a, b = as_expr(a), as_expr(b)
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return neg(b)
    if isinstance(a, Rat) and isinstance(b, Rat):
        return Rat(a.value - b.value)
    if isinstance(b, Neg):
        return Add(a, b.arg)
    return Sub(a, b)


def neg(a) -> Expr:
    a = as_expr(a)
    if isinstance(a, Rat):
        return Rat(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


def mul(a, b) -> Expr:
    a, b = as_expr(a), as_expr(b)
    if _is_const(a, 0) or _is_const(b, 0):
        return ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if _is_const(a, -1):
        return neg(b)
    if _is_const(b, -1):
        return neg(a)
    if isinstance(a, Rat) and isinstance(b, Rat):
        return Rat(a.value * b.value)
    if isinstance(a, Neg):
        return neg(mul(a.arg, b))
    if isinstance(b, Neg):
        return neg(mul(a, b.arg))
    return Mul(a, b)


def div(a, b) -> Expr:
    a, b = as_expr(a), as_expr(b)
    if isinstance(b, Rat):
        if b.value == 0:
            raise ZeroDivisionError("division by the constant 0")
        return mul(Rat(1 / b.value), a)
    if _is_const(a, 0):
        return ZERO
    return Div(a, b)


def power(a, n: int) -> Expr:
    if not isinstance(n, int) or n < 0:
        raise ValueError("only non-negative integer powers are supported")
    a = as_expr(a)
    if n == 0:
        return ONE
    if n == 1:
        return a
    if isinstance(a, Rat):
        return Rat(a.value**n)
    return Pow(a, n)


def _func(name):
    def build(arg) -> Expr:
        arg = as_expr(arg)
        if _is_const(arg, 0):
            return ONE if name in ("cos", "exp", "cosh") else ZERO
        return Func(name, arg)

    build.__name__ = name
    return build


sin = _func("sin")
cos = _func("cos")
exp = _func("exp")
sinh = _func("sinh")
cosh = _func("cosh")


def diff(e: Expr, v: str) -> Expr:
    """Exact partial derivative of ``e`` with respect to the symbol ``v``."""
    e = as_expr(e)
    if isinstance(e, Rat):
        return ZERO
    if isinstance(e, Var):
        return ONE if e.name == v else ZERO
    if isinstance(e, Add):
        return add(diff(e.left, v), diff(e.right, v))
    if isinstance(e, Sub):
        return sub(diff(e.left, v), diff(e.right, v))
    if isinstance(e, Neg):
        return neg(diff(e.arg, v))
    if isinstance(e, Mul):
        return add(mul(diff(e.left, v), e.right), mul(e.left, diff(e.right, v)))
    if isinstance(e, Div):
        num = sub(mul(diff(e.left, v), e.right), mul(e.left, diff(e.right, v)))
        return div(num, power(e.right, 2))
    if isinstance(e, Pow):
        inner = diff(e.base, v)
        return mul(mul(e.exponent, power(e.base, e.exponent - 1)), inner)
    if isinstance(e, Func):
        inner = diff(e.arg, v)
        outer = {
            "sin": lambda u: cos(u),
            "cos": lambda u: neg(sin(u)),
            "exp": lambda u: exp(u),
            "sinh": lambda u: cosh(u),
            "cosh": lambda u: sinh(u),
        }[e.name](e.arg)
        return mul(outer, inner)
    raise TypeError(f"unknown node {e!r}")


def free_symbols(e: Expr) -> frozenset:
    e = as_expr(e)
    if isinstance(e, Rat):
        return frozenset()
    if isinstance(e, Var):
        return frozenset() if e.name == "pi" else frozenset([e.name])
    if isinstance(e, (Add, Sub, Mul, Div)):
        return free_symbols(e.left) | free_symbols(e.right)
    if isinstance(e, Pow):
        return free_symbols(e.base)
    return free_symbols(e.arg)


def subs(e: Expr, mapping: Mapping[str, object]) -> Expr:
    """Replace symbols by expressions (simultaneously)."""
    e = as_expr(e)
    if isinstance(e, Rat):
        return e
    if isinstance(e, Var):
        return as_expr(mapping[e.name]) if e.name in mapping else e
    if isinstance(e, Add):
        return add(subs(e.left, mapping), subs(e.right, mapping))
    if isinstance(e, Sub):
        return sub(subs(e.left, mapping), subs(e.right, mapping))
    if isinstance(e, Mul):
        return mul(subs(e.left, mapping), subs(e.right, mapping))
    if isinstance(e, Div):
        return div(subs(e.left, mapping), subs(e.right, mapping))
    if isinstance(e, Pow):
        return power(subs(e.base, mapping), e.exponent)
    if isinstance(e, Neg):
        return neg(subs(e.arg, mapping))
    return _func(e.name)(subs(e.arg, mapping))


_MATH = {"sin": math.sin, "cos": math.cos, "exp": math.exp, "sinh": math.sinh, "cosh": math.cosh}


def evaluate(e: Expr, env: Mapping[str, object]):
    """Evaluate ``e`` with symbols bound by ``env``.

    Stays in exact rational arithmetic as long as the bound values are
    rational and no transcendental function or ``pi`` is met.
    """
    if isinstance(e, Rat):
        return e.value
    if isinstance(e, Var):
        if e.name == "pi":
            return math.pi
        try:
            return env[e.name]
        except KeyError:
            raise KeyError(f"no value bound for symbol {e.name!r}") from None
    if isinstance(e, Add):
        return evaluate(e.left, env) + evaluate(e.right, env)
    if isinstance(e, Sub):
        return evaluate(e.left, env) - evaluate(e.right, env)
    if isinstance(e, Mul):
        return evaluate(e.left, env) * evaluate(e.right, env)
    if isinstance(e, Div):
        den = evaluate(e.right, env)
        if den == 0:
            raise PoleError(f"division by zero in {render(e)}")
        return evaluate(e.left, env) / den
    if isinstance(e, Pow):
        return evaluate(e.base, env) ** e.exponent
    if isinstance(e, Neg):
        return -evaluate(e.arg, env)
    return _MATH[e.name](float(evaluate(e.arg, env)))


@dataclass(frozen=True)
class Point4:
    x: Number | float
    y: Number | float
    z: Number | float
    xi: Number | float

    def __post_init__(self):
        for c in (self.x, self.y, self.z, self.xi):
            if isinstance(c, float) and not math.isfinite(c):
                raise ValueError("point coordinates must be finite")

    def env(self) -> dict:
        return {"x": self.x, "y": self.y, "z": self.z, "xi": self.xi}

    def __iter__(self):
        return iter((self.x, self.y, self.z, self.xi))


def eval_at(e, p, params: Mapping[str, object] | None = None):
    """Evaluate at a chart point; ``p`` is a Point4 or any 4-sequence."""
    if not isinstance(p, Point4):
        p = Point4(*p)
    env = p.env()
    if params:
        env.update(params)
    return evaluate(as_expr(e), env)


# rendering

_PREC = {"add": 1, "mul": 2, "pow": 3, "atom": 4}


def _rat_text(q: Fraction) -> str:
    if q.denominator == 1 and q >= 0:
        return str(q.numerator)
    return f"({q.numerator}/{q.denominator})" if q >= 0 else f"(-{_rat_text(-q).strip('()')})"


def _render(e: Expr) -> tuple[str, int]:
    if isinstance(e, Rat):
        return _rat_text(e.value), _PREC["atom"]
    if isinstance(e, Var):
        return e.name, _PREC["atom"]
    if isinstance(e, Func):
        return f"{e.name}({_render(e.arg)[0]})", _PREC["atom"]
    if isinstance(e, Neg):
        return f"(-{_wrap(e.arg, _PREC['atom'])})", _PREC["atom"]
    if isinstance(e, Pow):
        return f"{_wrap(e.base, _PREC['atom'])}^{e.exponent}", _PREC["pow"]
    if isinstance(e, (Mul, Div)):
        op = "*" if isinstance(e, Mul) else "/"
        return f"{_wrap(e.left, _PREC['mul'])}{op}{_wrap(e.right, _PREC['pow'])}", _PREC["mul"]
    op = " + " if isinstance(e, Add) else " - "
    return f"{_wrap(e.left, _PREC['add'])}{op}{_wrap(e.right, _PREC['mul'])}", _PREC["add"]


def _wrap(e: Expr, need: int) -> str:
    text, prec = _render(e)
    return text if prec >= need else f"({text})"


def render(e) -> str:
    """Text in the input grammar; ``parse(render(e))`` rebuilds the same function."""
    return _render(as_expr(e))[0]
