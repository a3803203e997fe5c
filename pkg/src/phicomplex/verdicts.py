"""Zero verdicts for residual objects of any shape."""
from __future__ import annotations

from .forms import VValuedForm, _Multi
from .scalar.expr import Expr
from .scalar.poly import Poly
from .scalar.zero import NUMERIC_ZERO, TOLERANCE, Verdict, combine, is_zero


def scalars_of(obj) -> list:
    """Flatten a residual (Poly, Expr, form, vv-form, tuple, dict) to scalar entries."""
    if isinstance(obj, (Poly, Expr, int, str)):
        return [obj]
    if isinstance(obj, _Multi):
        return [c for _, c in obj.items()]
    if isinstance(obj, VValuedForm):
        return scalars_of(obj.first) + scalars_of(obj.second)
    if isinstance(obj, dict):
        return [s for k in sorted(obj) for s in scalars_of(obj[k])]
    if isinstance(obj, (tuple, list)):
        return [s for o in obj for s in scalars_of(o)]
    raise TypeError(f"cannot take a verdict of {type(obj).__name__}")


def verdict_of(obj, numeric_only: bool = False) -> Verdict:
    """All scalar entries must vanish.

    Forms store only nonvanishing coefficients, so an empty form is
    SymbolicZero; under ``numeric_only`` that is downgraded to NumericZero.
    """
    entries = scalars_of(obj)
    v = combine(is_zero(e, numeric_only=numeric_only) for e in entries)
    if numeric_only and v.kind == "SymbolicZero":
        return Verdict(NUMERIC_ZERO, tolerance=TOLERANCE)
    return v


def verdict_map(residuals: dict, numeric_only: bool = False) -> dict:
    return {name: verdict_of(r, numeric_only) for name, r in residuals.items()}


def all_zero(residuals, numeric_only: bool = False) -> bool:
    if isinstance(residuals, dict):
        return all(v.zero for v in verdict_map(residuals, numeric_only).values())
    return verdict_of(residuals, numeric_only).zero
