"""Local symmetries of Phi: Lie derivatives, the conformal system and its flows."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path

from . import forms as fm
from . import structures as st
from .forms import PForm, PVector
from .scalar import expr as ex
from .scalar.parser import parse, parse_with_parameters
from .scalar.poly import ZERO, Poly, as_poly, to_expr, to_poly
from .verdicts import verdict_map, verdict_of

CHART = fm.CHART4
H1 = (-1, -1, -1, 1)


class SingularPoint(ArithmeticError):
    """A flow or its integration hit a vanishing denominator."""


@dataclass(frozen=True)
class VectorField4:
    components: tuple
    name: str = ""

    @classmethod
    def of(cls, comps, name: str = "", params=()) -> "VectorField4":
        comps = tuple(as_poly(parse(c, params) if isinstance(c, str) else c) for c in comps)
        if len(comps) != 4:
            raise ValueError("a vector field on R^4 has four components")
        return cls(comps, name)

    @classmethod
    def from_json(cls, data: dict) -> "VectorField4":
        if "X" not in data:
            raise ValueError("vector-field configuration lacks 'X'")
        return cls.of(data["X"], data.get("name", ""), tuple(data.get("params", ())))

    def __getitem__(self, i: int) -> Poly:
        """1-based component."""
        return self.components[i - 1]

    def as_pvector(self) -> PVector:
        return fm.vector_field(4, self.components)

    def div(self) -> Poly:
        return sum((self.components[i].diff(v) for i, v in enumerate(CHART)), ZERO)

    def jacobian(self):
        """J[a][e] = d X^a / d x^e (0-based)."""
        return [[c.diff(v) for v in CHART] for c in self.components]

    def __add__(self, o):
        return VectorField4(tuple(a + b for a, b in zip(self.components, o.components)))

    def __sub__(self, o):
        return VectorField4(tuple(a - b for a, b in zip(self.components, o.components)))

    def scale(self, c) -> "VectorField4":
        c = as_poly(c)
        return VectorField4(tuple(a * c for a in self.components), self.name)

    def apply(self, f) -> Poly:
        """X(f)."""
        f = as_poly(f)
        return sum((c * f.diff(v) for c, v in zip(self.components, CHART)), ZERO)

    def to_json(self) -> dict:
        out = {"X": [ex.render(to_expr(c)) for c in self.components]}
        if self.name:
            out["name"] = self.name
        return out


def load_vector_field(path) -> VectorField4:
    return VectorField4.from_json(json.loads(Path(path).read_text()))


def bracket(a: VectorField4, b: VectorField4) -> VectorField4:
    return VectorField4(tuple(a.apply(bc) - b.apply(ac) for ac, bc in zip(a.components, b.components)))


# Lie derivatives


def lie_derivative_form(X: VectorField4, a: PForm) -> PForm:
    """L_X a = i(X) da + d i(X) a."""
    v = X.as_pvector()
    first = fm.insert(v, fm.d(a))
    if a.grade == 0:
        return first
    return first + fm.d(fm.insert(v, a))


def lie_derivative_tensor(X: VectorField4, T: dict, up: int, low: int) -> dict:
    """Coordinate Lie derivative of a (up, low) tensor given as a sparse dict.

    Keys are full index tuples (0-based, up indices first).  Returns the
    nonzero entries of L_X T.
    """
    J = X.jacobian()
    out: dict = {}

    def put(key, val):
        if val:
            out[key] = out[key] + val if key in out else val

    for key, t in T.items():
        t = as_poly(t)
        for e, v in enumerate(CHART):
            put(key, X.components[e] * t.diff(v))
    for key, t in T.items():
        t = as_poly(t)
        for slot in range(up + low):
            e = key[slot]
            for a in range(4):
                target = key[:slot] + (a,) + key[slot + 1:]
                if slot < up:
                    # (L T)^{..a..} gets -T^{..e..} d_e X^a
                    put(target, -(t * J[a][e]))
                else:
                    # (L T)_{..a..} gets +T_{..e..} d_a X^e
                    put(target, t * J[e][a])
    return {k: v for k, v in out.items() if v}


def h2_tensor() -> dict:
    """h^2 as a four-index contravariant tensor, antisymmetric in each pair."""
    out = {}
    m = st.h_matrix(2)
    for r, I in enumerate(st.BASIS2):
        for c, K in enumerate(st.BASIS2):
            val = m[r][c]
            if not val:
                continue
            for a, b in (I, I[::-1]):
                for cc, d in (K, K[::-1]):
                    s = (1 if a < b else -1) * (1 if cc < d else -1)
                    out[(a - 1, b - 1, cc - 1, d - 1)] = val.scale(s)
    return out


def phi_tensor() -> dict:
    """Phi as a (2,2) tensor: (Phi b)_{cd} = sum_{a<b} Phi^{ab}_{cd} b_{ab}."""
    out = {}
    for r, I in enumerate(st.BASIS2):
        for c, K in enumerate(st.BASIS2):
            m = st.PHI_MATRIX[r][c]
            if not m:
                continue
            for a, b in (I, I[::-1]):
                for cc, d in (K, K[::-1]):
                    s = (1 if a < b else -1) * (1 if cc < d else -1)
                    out[(a - 1, b - 1, cc - 1, d - 1)] = as_poly(m * s)
    return out


def _bivector_table(T: dict) -> list:
    return [
        [T.get((I[0] - 1, I[1] - 1, K[0] - 1, K[1] - 1), ZERO) for K in st.BASIS2]
        for I in st.BASIS2
    ]


def lie_derivative_h2(X: VectorField4) -> list:
    """6x6 table of L_X h^2 on the ordered 2-form basis."""
    return _bivector_table(lie_derivative_tensor(X, h2_tensor(), 4, 0))


def lie_derivative_phi(X: VectorField4) -> list:
    return _bivector_table(lie_derivative_tensor(X, phi_tensor(), 2, 2))


def conformal_defect(X: VectorField4) -> list:
    """L_X h^2 + div X h^2, entrywise."""
    L = lie_derivative_h2(X)
    h = st.h_matrix(2)
    dv = X.div()
    return [[L[i][j] + h[i][j] * dv for j in range(6)] for i in range(6)]


def conformal_verdict(X: VectorField4, numeric_only=False):
    return verdict_of([e for row in conformal_defect(X) for e in row], numeric_only)


PDE_NAMES = (
    "balance_x_y",
    "balance_x_xi",
    "balance_x_z",
    "balance_y_xi",
    "balance_y_z",
    "balance_z_xi",
    "shear_x_y",
    "boost_x_xi",
    "shear_x_z",
    "boost_y_xi",
    "shear_y_z",
    "boost_z_xi",
)


def symmetry_pde_residuals(X: VectorField4) -> dict:
    """The twelve first-order equations for a local symmetry of Phi."""
    J = X.jacobian()

    def p(a, e):  # d X^a / d x^e, 1-based
        return J[a - 1][e - 1]

    dv = X.div()

    def balance(a, b):
        return (p(a, a) + p(b, b)).scale(2) - dv

    values = (
        balance(1, 2),
        balance(1, 4),
        balance(1, 3),
        balance(2, 4),
        balance(2, 3),
        balance(3, 4),
        p(2, 1) + p(1, 2),
        p(4, 1) - p(1, 4),
        p(3, 1) + p(1, 3),
        p(4, 2) - p(2, 4),
        p(3, 2) + p(2, 3),
        p(4, 3) - p(3, 4),
    )
    return dict(zip(PDE_NAMES, values))


def symmetry_report(X: VectorField4, numeric_only=False) -> dict:
    """Twelve PDE verdicts plus the conformal-condition verdict."""
    out = verdict_map(symmetry_pde_residuals(X), numeric_only)
    out["conformal_condition"] = conformal_verdict(X, numeric_only)
    return out


# the fifteen generators


def _field(comps, name):
    return VectorField4.of(comps, name)


def special_conformal_generator(mu: int) -> VectorField4:
    """X_mu = Q d_mu - 2 h1_{mu mu} x^mu (x^s d_s), with Q = h1(x, x)."""
    xs = [as_poly(ex.Var(v)) for v in CHART]
    Q = sum((xs[i] * xs[i]).scale(H1[i]) for i in range(4))
    comps = []
    for a in range(4):
        c = -(xs[mu - 1] * xs[a]).scale(2 * H1[mu - 1])
        if a == mu - 1:
            c = c + Q
        comps.append(c)
    return VectorField4(tuple(comps), f"special_conformal_{CHART[mu - 1]}")


def conformal_generators() -> list:
    """(family, field) for the fifteen listed solutions."""
    gens = [
        ("translation", _field(("1", "0", "0", "0"), "translation_x")),
        ("translation", _field(("0", "1", "0", "0"), "translation_y")),
        ("translation", _field(("0", "0", "1", "0"), "translation_z")),
        ("translation", _field(("0", "0", "0", "1"), "translation_xi")),
        ("rotation", _field(("y", "-x", "0", "0"), "rotation_xy")),
        ("rotation", _field(("0", "z", "-y", "0"), "rotation_yz")),
        ("rotation", _field(("-z", "0", "x", "0"), "rotation_zx")),
        ("boost", _field(("xi", "0", "0", "x"), "boost_x")),
        ("boost", _field(("0", "xi", "0", "y"), "boost_y")),
        ("boost", _field(("0", "0", "xi", "z"), "boost_z")),
        ("dilatation", _field(("x", "y", "z", "xi"), "dilatation")),
    ]
    gens += [("special_conformal", special_conformal_generator(mu)) for mu in range(1, 5)]
    return gens


NON_SYMMETRIES = (
    ("x^2", "0", "0", "0"),
    ("0", "x", "0", "0"),
    ("z", "0", "0", "0"),
    ("x", "0", "0", "0"),
    ("y", "x", "0", "0"),
    ("xi", "0", "0", "-x"),
    ("sin(x)", "0", "0", "0"),
    ("0", "0", "0", "xi^2"),
    ("exp(y)", "0", "0", "0"),
    ("x*y", "0", "0", "x*xi"),
)


def non_symmetry_fields() -> list:
    return [_field(c, f"non_symmetry_{i}") for i, c in enumerate(NON_SYMMETRIES)]


# flows

FAMILIES = (
    "translation",
    "rotation_xy",
    "rotation_xz",
    "rotation_yz",
    "boost_x",
    "boost_y",
    "boost_z",
    "dilatation",
    "special_conformal",
)


@dataclass(frozen=True)
class FlowMap:
    """Closed-form one-parameter flow; ``targets`` are the primed coordinates."""

    family: str
    targets: tuple
    parameter: str | None = None
    vector: tuple = ()
    denominator: ex.Expr | None = field(default=None, compare=False)

    def at(self, point, exact=True) -> tuple:
        """Image of a point; raises SingularPoint on a vanishing denominator."""
        env = dict(zip(CHART, (Fraction(v) if exact else float(v) for v in point)))
        if self.denominator is not None:
            try:
                den = ex.evaluate(self.denominator, env)
            except ex.PoleError as err:
                raise SingularPoint(str(err)) from None
            if den == 0:
                shown = ", ".join(str(v) for v in point)
                raise SingularPoint(f"denominator vanishes at ({shown})")
        try:
            return tuple(ex.evaluate(t, env) for t in self.targets)
        except ex.PoleError as err:
            raise SingularPoint(str(err)) from None

    def target_polys(self) -> tuple:
        return tuple(to_poly(t) for t in self.targets)

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "parameter": self.parameter,
            "vector": [str(v) for v in self.vector],
            "targets": [ex.render(t) for t in self.targets],
        }


def _scalar(s):
    if s is None:
        return ex.Var("s")
    if isinstance(s, str):
        return ex.Var(s) if s.isidentifier() and s != "pi" else parse_with_parameters(s)
    if isinstance(s, ex.Expr):
        return s
    if isinstance(s, float):
        return ex.const(Fraction(s))
    return ex.const(Fraction(s))


def flow_map(family: str, s=None, vector=None) -> FlowMap:
    """Closed-form flow of a generator family at parameter s.

    Translations and special conformal maps use ``vector`` (a, resp. d)
    scaled by s; s defaults to the symbol ``s``.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown flow family {family!r}")
    sv = _scalar(s)
    param = sv.name if isinstance(sv, ex.Var) else None
    x, y, z, xi = (ex.Var(v) for v in CHART)
    coords = [x, y, z, xi]
    c, sn = ex.cos(sv), ex.sin(sv)
    ch, sh = ex.cosh(sv), ex.sinh(sv)
    vec = tuple(Fraction(v) for v in (vector or (1, 0, 0, 0)))
    den = None

    def rot(u, v):
        return ex.add(ex.mul(u, c), ex.mul(v, sn)), ex.add(ex.neg(ex.mul(u, sn)), ex.mul(v, c))

    def boost(u):
        return ex.add(ex.mul(u, ch), ex.mul(xi, sh)), ex.add(ex.mul(u, sh), ex.mul(xi, ch))

    if family == "translation":
        targets = tuple(ex.add(q, ex.mul(ex.const(a), sv)) for q, a in zip(coords, vec))
    elif family == "rotation_xy":
        nx, ny = rot(x, y)
        targets = (nx, ny, z, xi)
    elif family == "rotation_xz":
        nx, nz = rot(x, z)
        targets = (nx, y, nz, xi)
    elif family == "rotation_yz":
        ny, nz = rot(y, z)
        targets = (x, ny, nz, xi)
    elif family.startswith("boost_"):
        k = "xyz".index(family[-1])
        nu, nxi = boost(coords[k])
        targets = tuple(coords[:k]) + (nu,) + tuple(coords[k + 1:3]) + (nxi,)
    elif family == "dilatation":
        targets = tuple(ex.mul(ex.exp(sv), q) for q in coords)
    else:
        d = [ex.mul(ex.const(a), sv) for a in vec]
        Q = _h1(coords, coords)
        den = ex.add(
            ex.add(ex.ONE, ex.mul(2, _h1(d, coords))), ex.mul(Q, _h1(d, d))
        )
        targets = tuple(ex.div(ex.add(q, ex.mul(dq, Q)), den) for q, dq in zip(coords, d))
    return FlowMap(family, targets, param, vec if family in ("translation", "special_conformal") else (), den)


def _h1(a, b):
    out = ex.ZERO
    for i in range(4):
        out = ex.add(out, ex.mul(H1[i], ex.mul(a[i], b[i])))
    return out


def flow_generator(family: str, vector=None) -> VectorField4:
    """d/ds of the flow at s = 0."""
    fmap = flow_map(family, "s", vector)
    comps = []
    for t in fmap.targets:
        dt = ex.diff(t, "s")
        comps.append(to_poly(ex.subs(dt, {"s": ex.ZERO})))
    return VectorField4(tuple(comps), f"generator_{family}")


def compose_flows(outer: FlowMap, inner: FlowMap) -> tuple:
    """Targets of outer o inner as normal-form scalars."""
    mapping = dict(zip(CHART, inner.target_polys()))
    return tuple(t.subs(mapping) for t in outer.target_polys())


# numerical integration of a generator


def compile_numeric(e: ex.Expr):
    """Float callable (x, y, z, xi) -> value for a scalar expression."""
    src = ex.render(e).replace("^", "**")
    code = compile(src, "<generator>", "eval")
    ns = {
        "sin": math.sin,
        "cos": math.cos,
        "exp": math.exp,
        "sinh": math.sinh,
        "cosh": math.cosh,
        "pi": math.pi,
        "__builtins__": {},
    }

    def fn(x, y, z, xi):
        return eval(code, ns, {"x": x, "y": y, "z": z, "xi": xi})

    return fn


def integrate(X: VectorField4, point, s: float, step: float = 1e-3) -> tuple:
    """Fixed-step RK4 solution of dx/ds = X(x) from ``point`` to parameter s."""
    fns = [compile_numeric(to_expr(c)) for c in X.components]

    n = max(1, int(round(abs(s) / step)))
    h = s / n
    p = tuple(float(v) for v in point)
    where = [0.0]

    def rhs(q):
        try:
            out = tuple(f(*q) for f in fns)
        except (ZeroDivisionError, OverflowError):
            out = (math.inf,)
        if not all(math.isfinite(v) for v in out):
            raise SingularPoint(f"generator blows up along the path near s = {where[0]:.6g}")
        return out

    comp = [0.0] * 4  # Kahan compensation for the accumulated state
    for i in range(n):
        where[0] = i * h
        k1 = rhs(p)
        k2 = rhs(tuple(a + h / 2 * b for a, b in zip(p, k1)))
        k3 = rhs(tuple(a + h / 2 * b for a, b in zip(p, k2)))
        k4 = rhs(tuple(a + h * b for a, b in zip(p, k3)))
        nxt = []
        for j in range(4):
            inc = h / 6 * (k1[j] + 2 * k2[j] + 2 * k3[j] + k4[j]) - comp[j]
            t = p[j] + inc
            comp[j] = (t - p[j]) - inc
            nxt.append(t)
        p = tuple(nxt)
    return p


def flow_consistency_check(family: str, s: float, point, vector=None, step: float = 1e-3) -> float:
    """Max-abs gap between the closed-form flow and the integrated generator."""
    closed = flow_map(family, s, vector).at(point, exact=False)
    numeric = integrate(flow_generator(family, vector), point, s, step)
    return max(abs(float(a) - b) for a, b in zip(closed, numeric))


# pullbacks


def pullback(fmap: FlowMap, a: PForm) -> PForm:
    """phi^* a for a 2-form on R^4 along the closed-form map."""
    if a.n != 4:
        raise fm.DimensionMismatch("pullback acts on R^4 forms")
    targets = fmap.target_polys()
    J = [[t.diff(v) for v in CHART] for t in targets]
    mapping = dict(zip(CHART, targets))
    out: dict = {}
    for idx, c in a.items():
        moved = c.subs(mapping)
        for mus in fm.basis(4, a.grade):
            # determinant of the Jacobian minor rows idx, columns mus
            det = ZERO
            for perm in _permutations(len(idx)):
                sign = _perm_sign(perm)
                term = as_poly(sign)
                for r, col in zip(idx, (mus[k] for k in perm)):
                    term = term * J[r - 1][col - 1]
                det = det + term
            if det:
                out[mus] = out.get(mus, ZERO) + moved * det
    return PForm(4, a.grade, out)


def _permutations(n):
    from itertools import permutations

    return list(permutations(range(n)))


def _perm_sign(perm) -> int:
    sign, _ = fm.sort_sign(perm)
    return sign


def pullback_symmetry_check(fmap: FlowMap, F: PForm, numeric_only: bool = False) -> dict:
    """Maxwell residuals of the pulled-back field; rational maps are sampled only."""
    if fmap.family == "special_conformal":
        numeric_only = True
    moved = pullback(fmap, F)
    return verdict_map({"dF": fm.d(moved), "dPhiF": fm.d(st.phi(moved))}, numeric_only)


# exact coefficient extraction


def decompose(target: VectorField4, basis: list, points=None):
    """Exact coefficients c with target = sum c_k basis_k, or None."""
    points = points or [
        (Fraction(i), Fraction(j), Fraction(k), Fraction(m))
        for i, j, k, m in product((1, 2, -1), (2, -3), (1, 5), (3, -2))
    ]
    rows, rhs = [], []
    for p in points:
        env = dict(zip(CHART, p))
        for comp in range(4):
            rows.append([ex.evaluate(to_expr(b.components[comp]), env) for b in basis])
            rhs.append(ex.evaluate(to_expr(target.components[comp]), env))
    coeffs = _solve_exact(rows, rhs, len(basis))
    if coeffs is None:
        return None
    combo = VectorField4(tuple(ZERO for _ in range(4)))
    for c, b in zip(coeffs, basis):
        combo = combo + b.scale(c)
    residual = target - combo
    if any(residual.components):
        return None
    return coeffs


def _solve_exact(rows, rhs, n):
    m = [list(map(Fraction, r)) + [Fraction(v)] for r, v in zip(rows, rhs)]
    piv_row = 0
    pivots = []
    for col in range(n):
        sel = next((r for r in range(piv_row, len(m)) if m[r][col] != 0), None)
        if sel is None:
            continue
        m[piv_row], m[sel] = m[sel], m[piv_row]
        pv = m[piv_row][col]
        m[piv_row] = [v / pv for v in m[piv_row]]
        for r in range(len(m)):
            if r != piv_row and m[r][col] != 0:
                f = m[r][col]
                m[r] = [a - f * b for a, b in zip(m[r], m[piv_row])]
        pivots.append(col)
        piv_row += 1
    for r in range(piv_row, len(m)):
        if m[r][n] != 0:
            return None
    out = [Fraction(0)] * n
    for r, col in enumerate(pivots):
        out[col] = m[r][n]
    return out
