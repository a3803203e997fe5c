"""Linear structures on R^4 generated by the complex structure Phi.

Everything here is built from two ingredients: the matrix of Phi on
2-forms and the Poincare isomorphism (insertion into the volume elements).
The diagonal isomorphism varphi and the pseudometrics h^p follow from them.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product

from . import forms as fm
from .forms import GradeError, PForm, PVector
from .scalar.poly import ZERO, Poly

N = 4

# ordered 2-form basis dx^dy, dx^dz, dy^dz, dx^dxi, dy^dxi, dz^dxi
BASIS2 = ((1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4))

# rows number the argument, columns the image: Phi(e^row) = sum_col M[row][col] e^col
PHI_MATRIX = (
    (0, 0, 0, 0, 0, -1),
    (0, 0, 0, 0, 1, 0),
    (0, 0, 0, -1, 0, 0),
    (0, 0, 1, 0, 0, 0),
    (0, -1, 0, 0, 0, 0),
    (1, 0, 0, 0, 0, 0),
)

# diagonal of varphi: varphi(dx^mu) = LAMBDA[mu] d/dx^mu
LAMBDA = (-1, -1, -1, 1)
LAMBDA_ALTERNATE = (1, 1, 1, -1)

HP_SIGNATURES = {1: (-1, -1, -1, 1), 2: (1, 1, 1, -1, -1, -1), 3: (-1, 1, 1, 1), 4: (-1,)}


def basis_of_grade(p: int) -> list:
    """Ordered basis tuples: (12, 13, 23, 14, 24, 34) for p = 2, lexicographic otherwise."""
    return list(BASIS2) if p == 2 else fm.basis(N, p)


def _require(a, cls, grade=None):
    if not isinstance(a, cls):
        raise TypeError(f"expected {cls.__name__}, got {type(a).__name__}")
    if a.n != N:
        raise fm.DimensionMismatch("structures act on R^4")
    if grade is not None and a.grade != grade:
        raise GradeError(f"expected grade {grade}, got {a.grade}")


def phi(a: PForm) -> PForm:
    """The complex structure on 2-forms."""
    _require(a, PForm, 2)
    out = {}
    for row, idx in enumerate(BASIS2):
        f = a[idx]
        if not f:
            continue
        for col, target in enumerate(BASIS2):
            m = PHI_MATRIX[row][col]
            if m:
                out[target] = out.get(target, ZERO) + f.scale(m)
    return PForm(N, 2, out)


def poincare_down(t: PVector) -> PForm:
    """P_p(x1^...^xp) = i(xp) o ... o i(x1) omega*."""
    _require(t, PVector)
    if t.grade == 0:
        raise GradeError("the Poincare isomorphism is defined for grades 1..4")
    return fm.insert(t, fm.volume_form(N))


def poincare_up(a: PForm) -> PVector:
    """P^p(a1^...^ap) = i(ap) o ... o i(a1) omega."""
    _require(a, PForm)
    if a.grade == 0:
        raise GradeError("the Poincare isomorphism is defined for grades 1..4")
    return fm.insert(a, fm.volume_vector(N))


def poincare_sign(idx: tuple) -> int:
    """(-1)^{sum_k (i_k - k)}, the sign of P^p on a basis element."""
    return -1 if sum(i - k for k, i in enumerate(idx, start=1)) % 2 else 1


def d_operator(a: PForm) -> PVector:
    """D = -P o Phi, from 2-forms to bivectors."""
    _require(a, PForm, 2)
    return -poincare_up(phi(a))


def varphi_p(p: int, a: PForm, lam=LAMBDA) -> PVector:
    """Wedge power of the diagonal isomorphism varphi on p-forms."""
    _require(a, PForm, p)
    out = {}
    for idx, f in a.items():
        s = 1
        for i in idx:
            s *= lam[i - 1]
        out[idx] = f.scale(s)
    return PVector(N, p, out)


def h_form(p: int, a: PForm, b: PForm) -> Poly:
    """h^p(a, b) = <wedge^p varphi (a), b>."""
    _require(b, PForm, p)
    return fm.pairing(b, varphi_p(p, a))


def h_tilde2(a: PForm, b: PForm) -> Poly:
    """Bilinear form defined by a ^ Phi(b) = -h~(a, b) omega*."""
    _require(a, PForm, 2)
    return -fm.wedge(a, phi(b))[(1, 2, 3, 4)]


def circledast(p: int, a: PForm) -> PForm:
    """Extension of Phi to all degrees: -P o wedge^p varphi, and f -> f omega* on 0-forms."""
    _require(a, PForm, p)
    if p == 0:
        return PForm(N, 4, {(1, 2, 3, 4): a[()]})
    return -poincare_down(varphi_p(p, a))


def _circledast_sign(p: int, idx: tuple):
    image = circledast(p, fm.basis_form(N, *idx))
    ((target, c),) = image.items()
    return int(c.constant().re), target


def circledast_inverse(a: PForm) -> PForm:
    """Inverse of circledast: a (4-p)-form back to a p-form."""
    _require(a, PForm)
    p = N - a.grade
    out = {}
    for idx in fm.basis(N, p):
        sign, target = _circledast_sign(p, idx)
        f = a[target]
        if f:
            out[idx] = f.scale(sign)
    return PForm(N, p, out)


def codifferential(a: PForm) -> PForm:
    """delta = (-1)^p circledast^{-1} d circledast on p-forms."""
    _require(a, PForm)
    p = a.grade
    if p == 0:
        return PForm(N, 0, {})
    res = circledast_inverse(fm.d(circledast(p, a)))
    return res if p % 2 == 0 else -res


def dalembertian(u) -> Poly:
    """-u_xx - u_yy - u_zz + u_xixi."""
    from .scalar.poly import as_poly

    u = as_poly(u)
    return (
        -u.diff("x").diff("x") - u.diff("y").diff("y") - u.diff("z").diff("z")
        + u.diff("xi").diff("xi")
    )


# tables


def _key(idx) -> str:
    return "".join(map(str, idx)) or "0"


def _as_int(p: Poly):
    c = p.constant()
    if not p.is_constant() or c.im:
        raise ValueError("table entry is not a rational constant")
    v = c.re
    return int(v) if v.denominator == 1 else str(v)


def _image_table(fn, p: int) -> dict:
    table = {}
    for idx in basis_of_grade(p):
        image = fn(fm.basis_form(N, *idx))
        table[_key(idx)] = {_key(k): _as_int(c) for k, c in image.items()}
    return table


def h_matrix(p: int) -> list:
    b = basis_of_grade(p)
    return [[h_form(p, fm.basis_form(N, *i), fm.basis_form(N, *j)) for j in b] for i in b]


def h_signature(p: int) -> tuple:
    m = h_matrix(p)
    return tuple(_as_int(m[i][i]) for i in range(len(m)))


def poincare_vector_table(p: int) -> dict:
    table = {}
    for idx in fm.basis(N, p):
        image = poincare_down(fm.basis_vector(N, *idx))
        table[_key(idx)] = {_key(k): _as_int(c) for k, c in image.items()}
    return table


def structure_tables() -> dict:
    """Every operator table, computed from the constructions (not copied)."""
    return {
        "basis2": [_key(b) for b in BASIS2],
        "Phi": _image_table(phi, 2),
        "lambda": list(LAMBDA),
        "D": _image_table(d_operator, 2),
        "P_up": {str(p): _image_table(poincare_up, p) for p in range(1, 5)},
        "P_down": {str(p): poincare_vector_table(p) for p in range(1, 5)},
        "wedge_varphi": {
            str(p): _image_table(lambda a, p=p: varphi_p(p, a), p) for p in range(1, 5)
        },
        "circledast": {
            str(p): _image_table(lambda a, p=p: circledast(p, a), p) for p in range(0, 5)
        },
        "h": {str(p): [[_as_int(e) for e in row] for row in h_matrix(p)] for p in range(1, 5)},
        "h_signature": {str(p): list(h_signature(p)) for p in range(1, 5)},
        "h_tilde2": [
            [_as_int(h_tilde2(fm.basis_form(N, *i), fm.basis_form(N, *j))) for j in BASIS2]
            for i in BASIS2
        ],
    }


def diagonal_solutions(candidates=(-2, -1, Fraction(-1, 2), Fraction(1, 2), 1, 2)) -> list:
    """All diagonal varphi (entries from ``candidates``) with wedge^2 varphi = D."""
    target = {}
    for idx in BASIS2:
        image = d_operator(fm.basis_form(N, *idx))
        target[idx] = image[idx].constant().re
    found = []
    for lam in product(candidates, repeat=N):
        if all(lam[i - 1] * lam[j - 1] == target[(i, j)] for i, j in BASIS2):
            found.append(tuple(lam))
    return found


