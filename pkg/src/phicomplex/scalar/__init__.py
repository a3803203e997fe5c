"""Exact scalar fields on the chart (x, y, z, xi)."""
from .expr import (
    CHART,
    Expr,
    Point4,
    PoleError,
    Rat,
    Var,
    as_expr,
    const,
    cos,
    cosh,
    diff,
    eval_at,
    evaluate,
    exp,
    free_symbols,
    pi,
    render,
    sin,
    sinh,
    subs,
    x,
    xi,
    y,
    z,
)
from .parser import ExprSyntaxError, UnknownIdentifier, parse
from .poly import Poly, as_poly, normalize, same_function, to_expr, to_poly
from .zero import Verdict, is_zero

__all__ = [name for name in dir() if not name.startswith("_")]
