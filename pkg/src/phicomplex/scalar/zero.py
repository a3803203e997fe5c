"""Deciding whether an expression vanishes identically."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Optional

from . import expr as ex
from .poly import Poly, as_poly, to_expr

SEED = 20000706
SAMPLES = 16
BOX = 2.0
TOLERANCE = 1e-9

SYMBOLIC_ZERO = "SymbolicZero"
NUMERIC_ZERO = "NumericZero"
NONZERO = "NonZero"
INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class Verdict:
    kind: str
    tolerance: Optional[float] = None
    witness: Optional[dict] = None
    value: Optional[float] = None

    @property
    def zero(self) -> bool:
        return self.kind in (SYMBOLIC_ZERO, NUMERIC_ZERO)

    def __bool__(self):
        raise TypeError("use Verdict.zero; a verdict is not a boolean")

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.tolerance is not None:
            out["tolerance"] = self.tolerance
        if self.witness is not None:
            out["witness"] = self.witness
        if self.value is not None:
            out["value"] = self.value
        return out

    @classmethod
    def from_json(cls, data: dict) -> "Verdict":
        return cls(data["kind"], data.get("tolerance"), data.get("witness"), data.get("value"))


def sample_points(symbols: Iterable[str], n: int = SAMPLES, seed: int = SEED):
    """Deterministic sample environments; chart variables always present."""
    names = sorted(set(ex.CHART) | set(symbols))
    rng = random.Random(seed)
    return [{s: rng.uniform(-BOX, BOX) for s in names} for _ in range(n)]


def numeric_verdict(expr, symbols=()) -> Verdict:
    expr = ex.as_expr(expr)
    symbols = set(symbols) | ex.free_symbols(expr)
    worst, witness, evaluated = 0.0, None, 0
    for env in sample_points(symbols):
        try:
            value = float(ex.evaluate(expr, env))
        except (ex.PoleError, ZeroDivisionError, OverflowError):
            continue
        evaluated += 1
        if not math.isfinite(value):
            continue
        if abs(value) > abs(worst) or witness is None:
            worst, witness = value, env
    if evaluated == 0:
        return Verdict(INDETERMINATE)
    if abs(worst) <= TOLERANCE:
        return Verdict(NUMERIC_ZERO, tolerance=TOLERANCE)
    return Verdict(NONZERO, witness=witness, value=worst)


def is_zero(e, numeric_only: bool = False) -> Verdict:
    """SymbolicZero if the normal form is the zero node, else a sampled verdict."""
    if numeric_only:
        tree = to_expr(e) if isinstance(e, Poly) else ex.as_expr(e)
        return numeric_verdict(tree)
    p = as_poly(e)
    if not p:
        return Verdict(SYMBOLIC_ZERO)
    return numeric_verdict(to_expr(p))


def combine(verdicts: Iterable[Verdict]) -> Verdict:
    """Verdict for a family of components (all must vanish)."""
    verdicts = list(verdicts)
    for v in verdicts:
        if v.kind == NONZERO:
            return v
    for v in verdicts:
        if v.kind == INDETERMINATE:
            return v
    for v in verdicts:
        if v.kind == NUMERIC_ZERO:
            return v
    return Verdict(SYMBOLIC_ZERO)
