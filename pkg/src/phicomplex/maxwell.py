"""Vacuum Maxwell theory in three equivalent formulations.

Units are Gaussian with c = 1 absorbed into the time coordinate xi = ct.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import forms as fm
from . import structures as st
from .forms import PForm, VValuedForm
from .scalar import expr as ex
from .scalar.parser import parse, parse_with_parameters
from .scalar.poly import ONE, ZERO, Poly, as_poly, to_expr, to_poly
from .verdicts import verdict_of

X, Y, Z, T = "x", "y", "z", "xi"
SPACE = (X, Y, Z)


def _vec(components) -> tuple:
    comps = tuple(as_poly(c) for c in components)
    if len(comps) != 3:
        raise ValueError("expected three components")
    return comps


@dataclass(frozen=True)
class EMField3:
    """Electric and magnetic fields as triples of normal-form scalars."""

    E: tuple
    B: tuple
    name: str = ""

    @classmethod
    def of(cls, E, B, name: str = "") -> "EMField3":
        return cls(_vec(E), _vec(B), name)

    @classmethod
    def zero(cls) -> "EMField3":
        return cls.of((0, 0, 0), (0, 0, 0))

    @classmethod
    def from_json(cls, data: dict) -> "EMField3":
        try:
            E = [parse(s) for s in data["E"]]
            B = [parse(s) for s in data["B"]]
        except KeyError as err:
            raise ValueError(f"field configuration lacks {err.args[0]!r}") from None
        return cls.of(E, B, data.get("name", ""))

    def to_json(self) -> dict:
        out = {
            "E": [ex.render(to_expr(c)) for c in self.E],
            "B": [ex.render(to_expr(c)) for c in self.B],
        }
        if self.name:
            out["name"] = self.name
        return out

    def E_exprs(self):
        return tuple(to_expr(c) for c in self.E)

    def B_exprs(self):
        return tuple(to_expr(c) for c in self.B)


def load_field(path) -> tuple:
    """(field, expectation) from a field-configuration JSON file."""
    data = json.loads(Path(path).read_text())
    return EMField3.from_json(data), data.get("expect")


# vector calculus on R^3


def dot(a, b) -> Poly:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross(a, b) -> tuple:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def curl(a) -> tuple:
    return (
        a[2].diff(Y) - a[1].diff(Z),
        a[0].diff(Z) - a[2].diff(X),
        a[1].diff(X) - a[0].diff(Y),
    )


def div(a) -> Poly:
    return a[0].diff(X) + a[1].diff(Y) + a[2].diff(Z)


def dt(a) -> tuple:
    return tuple(c.diff(T) for c in a)


def _vadd(a, b):
    return tuple(p + q for p, q in zip(a, b))


def _vsub(a, b):
    return tuple(p - q for p, q in zip(a, b))


def _vscale(a, s):
    s = as_poly(s)
    return tuple(p * s for p in a)


def maxwell_residual_3d(f: EMField3) -> dict:
    return {
        "curl_E": _vadd(curl(f.E), dt(f.B)),
        "div_B": div(f.B),
        "curl_B": _vsub(curl(f.B), dt(f.E)),
        "div_E": div(f.E),
    }


# the R^2-valued formulation


def omega(f: EMField3) -> VValuedForm:
    """E (x) eps^1 + B (x) eps^2 with vectors read as 1-forms."""
    return VValuedForm(fm.vector_to_form3(f.E), fm.vector_to_form3(f.B))


def field_of_omega(w: VValuedForm) -> EMField3:
    return EMField3(tuple(w.first[i] for i in (1, 2, 3)), tuple(w.second[i] for i in (1, 2, 3)))


def istar(w: VValuedForm) -> VValuedForm:
    """The canonical complex structure acting on values: (a, b) -> (-b, a)."""
    return VValuedForm(-w.second, w.first)


I_MATRIX = ((0, -1), (1, 0))


def _conjugated_i(psi):
    """psi I psi^{-1} for a 2x2 matrix psi."""
    (a, b), (c, d) = [[Fraction(v) for v in row] for row in psi]
    det = a * d - b * c
    if det == 0:
        raise ValueError("singular frame change")
    inv = ((d / det, -b / det), (-c / det, a / det))

    def mul(m, n):
        return tuple(
            tuple(sum(m[i][k] * n[k][j] for k in range(2)) for j in range(2)) for i in range(2)
        )

    return mul(mul(((a, b), (c, d)), I_MATRIX), inv)


def omega_residual(w: VValuedForm, complex_structure=I_MATRIX) -> dict:
    """*d(omega) - d/dxi J(omega) and delta(omega); J is the R^2 complex structure."""
    if w.n != 3 or w.grade != 1:
        raise fm.GradeError("omega is a 1-form on R^3")
    j = w.transform(complex_structure)
    dynamic = w.map(lambda a: fm.star3(fm.d(a))) - j.map(lambda a: a.partial(T))
    return {"dynamic": dynamic, "codifferential": w.map(fm.codifferential3)}


def omega_residual_in_frame(f: EMField3, psi) -> dict:
    """The same equations after the change of R^2 frame psi."""
    return omega_residual(omega(f).transform(psi), _conjugated_i(psi))


def omega_alternative_forms(w: VValuedForm) -> dict:
    """Two rewritings of the dynamic equation: d(omega) - *d/dxi J(omega), and the J-conjugate."""
    j = istar(w)
    return {
        "d_form": w.map(fm.d) - j.map(lambda a: fm.star3(a.partial(T))),
        "conjugate": istar(w).map(lambda a: fm.star3(fm.d(a))) + w.map(lambda a: a.partial(T)),
    }


def poynting_balance(w: VValuedForm) -> PForm:
    """wedge(omega, d omega - * d/dxi J(omega)); a 3-form on the eps^1^eps^2 axis."""
    j = istar(w)
    rhs = w.map(fm.d) - j.map(lambda a: fm.star3(a.partial(T)))
    return fm.vwedge(w, rhs)


def energy_form(w: VValuedForm) -> PForm:
    """wedge(omega, *J omega) = (E^2 + B^2) dx^dy^dz."""
    return fm.vwedge(w, istar(w).map(fm.star3))


def momentum_form(w: VValuedForm) -> PForm:
    """* wedge(omega, omega) as a 1-form; equals 2 E x B."""
    return fm.star3(fm.vwedge(w, w))


# duality


def as_angle(alpha) -> ex.Expr:
    if isinstance(alpha, ex.Expr):
        return alpha
    if isinstance(alpha, str):
        return parse_with_parameters(alpha)
    if isinstance(alpha, (int, Fraction)):
        return ex.const(alpha)
    if isinstance(alpha, float):
        return ex.const(Fraction(alpha))
    raise TypeError(f"unsupported angle {alpha!r}")


def rotation_pair(alpha):
    a = as_angle(alpha)
    return to_poly(ex.cos(a)), to_poly(ex.sin(a))


def duality_rotate(f: EMField3, alpha) -> EMField3:
    c, s = rotation_pair(alpha)
    E = _vsub(_vscale(f.E, c), _vscale(f.B, s))
    B = _vadd(_vscale(f.E, s), _vscale(f.B, c))
    return EMField3(E, B, f.name)


def general_linear_mix(f: EMField3, a, b, m, n) -> tuple:
    """(aE + mB, bE + nB) and the zero verdict of its Maxwell residuals."""
    a, b, m, n = (as_poly(v) for v in (a, b, m, n))
    new = EMField3(
        _vadd(_vscale(f.E, a), _vscale(f.B, m)), _vadd(_vscale(f.E, b), _vscale(f.B, n)), f.name
    )
    return new, verdict_of(maxwell_residual_3d(new))


def invariants(f: EMField3) -> tuple:
    """(I1, I2) = (B^2 - E^2, 2 E.B)."""
    return dot(f.B, f.B) - dot(f.E, f.E), dot(f.E, f.B).scale(2)


def invariants_rotation(f: EMField3, alpha) -> dict:
    """Predicted rotation of (I1, I2) under the angle-alpha duality, and the direct values."""
    i1, i2 = invariants(f)
    a = as_angle(alpha)
    c2 = to_poly(ex.cos(ex.mul(2, a)))
    s2 = to_poly(ex.sin(ex.mul(2, a)))
    predicted = (i1 * c2 + i2 * s2, -(i1 * s2) + i2 * c2)
    direct = invariants(duality_rotate(f, alpha))
    return {"predicted": predicted, "direct": direct}


_PI = as_poly(ex.pi)


def energy_momentum(f: EMField3) -> tuple:
    """w = (E^2 + B^2)/(8 pi), S = E x B/(4 pi)."""
    w = (dot(f.E, f.E) + dot(f.B, f.B)) / (_PI.scale(8))
    S = _vscale(cross(f.E, f.B), ONE / _PI.scale(4))
    return w, S


# four-dimensional formulation

_F_DICTIONARY = {
    (1, 2): ("B", 2, 1),
    (1, 3): ("B", 1, -1),
    (2, 3): ("B", 0, 1),
    (1, 4): ("E", 0, 1),
    (2, 4): ("E", 1, 1),
    (3, 4): ("E", 2, 1),
}


def build_F(f: EMField3) -> PForm:
    out = {}
    for idx, (which, k, sign) in _F_DICTIONARY.items():
        comp = (f.E if which == "E" else f.B)[k]
        out[idx] = comp if sign > 0 else -comp
    return PForm(4, 2, out)


def field_of_F(F: PForm) -> EMField3:
    E, B = [ZERO] * 3, [ZERO] * 3
    for idx, (which, k, sign) in _F_DICTIONARY.items():
        comp = F[idx] if sign > 0 else -F[idx]
        (E if which == "E" else B)[k] = comp
    return EMField3(tuple(E), tuple(B))


def phi_F(f: EMField3) -> PForm:
    return st.phi(build_F(f))


def phi_F_table(f: EMField3) -> PForm:
    """(PhiF)_12 = E3, _13 = -E2, _23 = E1, _14 = -B1, _24 = -B2, _34 = -B3."""
    E, B = f.E, f.B
    return PForm(
        4, 2, {(1, 2): E[2], (1, 3): -E[1], (2, 3): E[0], (1, 4): -B[0], (2, 4): -B[1], (3, 4): -B[2]}
    )


def maxwell_residual_4d(F: PForm) -> dict:
    return {"dF": fm.d(F), "dPhiF": fm.d(st.phi(F))}


def linear_mix_F(F: PForm, a, b) -> PForm:
    """aF + b PhiF."""
    return F * as_poly(a) + st.phi(F) * as_poly(b)


def equivariant_omega(F: PForm, second: PForm | None = None) -> dict:
    """Omega = F (x) eps^1 + G (x) eps^2 with G = PhiF unless given.

    Reports the equivariance defects Phi(F1) - F2, Phi(F2) + F1 and dOmega.
    """
    G = st.phi(F) if second is None else second
    big = VValuedForm(F, G)
    return {
        "omega": big,
        "equivariance": VValuedForm(st.phi(F) - G, st.phi(G) + F),
        "d_omega": big.map(fm.d),
    }


# the f-map form of the wave equation

F_MAP = {
    1: ((2, 3, 4), -1),
    2: ((1, 3, 4), 1),
    3: ((1, 2, 4), -1),
    4: ((1, 2, 3), -1),
}


def f_map(a: PForm) -> PForm:
    """Linear isomorphism from 1-forms to 3-forms on R^4."""
    if a.n != 4 or a.grade != 1:
        raise fm.GradeError("f acts on 1-forms on R^4")
    out = {}
    for (i,), c in a.items():
        target, sign = F_MAP[i]
        out[target] = c if sign > 0 else -c
    return PForm(4, 3, out)


def wave_f_map(u) -> PForm:
    """d f(dU), a 4-form whose coefficient is the D'Alembertian of U."""
    u = as_poly(u)
    return fm.d(f_map(fm.d(fm.scalar_form(4, u))))
