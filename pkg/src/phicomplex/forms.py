"""Graded exterior algebra of forms and multivectors on R^3 and R^4.

Components are stored sparsely under strictly increasing 1-based index
tuples; the permutation sign of any other ordering is folded into the
coefficient at construction.  Coefficients are kept in normal form, so a
stored coefficient is never identically zero (within the decidable class).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping

from .scalar import expr as ex
from .scalar.poly import ONE, ZERO, Poly, as_poly, to_expr

CHART3 = ("x", "y", "z")
CHART4 = ("x", "y", "z", "xi")


def chart(n: int) -> tuple:
    if n == 3:
        return CHART3
    if n == 4:
        return CHART4
    raise ValueError(f"unsupported dimension {n}")


def sort_sign(indices: Iterable[int]):
    """(sign, sorted tuple) of an index sequence; sign 0 on a repeated index."""
    seq = list(indices)
    if len(set(seq)) != len(seq):
        return 0, None
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(seq)):
        j = i
        while j > 0 and seq[j - 1] > seq[j]:
            seq[j - 1], seq[j] = seq[j], seq[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(seq)


def complement(n: int, idx: tuple) -> tuple:
    return tuple(i for i in range(1, n + 1) if i not in idx)


class DimensionMismatch(ValueError):
    pass


class GradeError(ValueError):
    pass


class _Multi:
    """Shared machinery of PForm and PVector."""

    __slots__ = ("n", "grade", "_coeffs")
    kind = ""

    def __init__(self, n: int, grade: int, terms: Mapping | None = None):
        chart(n)
        if grade < 0:
            raise GradeError("negative grade")
        self.n = n
        self.grade = grade
        coeffs: dict = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != grade:
                raise GradeError(f"index {idx} has length {len(idx)}, grade is {grade}")
            if any(i < 1 or i > n for i in idx):
                raise ValueError(f"index {idx} out of range 1..{n}")
            sign, key = sort_sign(idx)
            if not sign:
                continue
            p = as_poly(c)
            if sign < 0:
                p = -p
            prev = coeffs.get(key)
            coeffs[key] = p if prev is None else prev + p
        self._coeffs = {k: v for k, v in coeffs.items() if v}

    @classmethod
    def _raw(cls, n, grade, coeffs):
        obj = cls.__new__(cls)
        obj.n, obj.grade = n, grade
        obj._coeffs = {k: v for k, v in coeffs.items() if v}
        return obj

    # access

    def __getitem__(self, idx) -> Poly:
        if isinstance(idx, int):
            idx = (idx,)
        sign, key = sort_sign(idx)
        if not sign:
            return ZERO
        p = self._coeffs.get(key, ZERO)
        return p if sign > 0 else -p

    def coeff(self, idx) -> ex.Expr:
        return to_expr(self[idx])

    def keys(self):
        return sorted(self._coeffs)

    def items(self):
        return [(k, self._coeffs[k]) for k in sorted(self._coeffs)]

    def is_zero(self) -> bool:
        return not self._coeffs

    def __len__(self):
        return len(self._coeffs)

    def __eq__(self, o):
        return (
            type(o) is type(self)
            and self.n == o.n
            and self.grade == o.grade
            and self._coeffs == o._coeffs
        )

    def __hash__(self):
        return hash((type(self).__name__, self.n, self.grade, frozenset(self._coeffs.items())))

    def _check(self, o):
        if type(o) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(o).__name__}")
        if o.n != self.n:
            raise DimensionMismatch(f"dimension {self.n} vs {o.n}")
        if o.grade != self.grade:
            raise GradeError(f"grade {self.grade} vs {o.grade}")

    def __add__(self, o):
        self._check(o)
        out = dict(self._coeffs)
        for k, v in o._coeffs.items():
            out[k] = out[k] + v if k in out else v
        return self._raw(self.n, self.grade, out)

    def __neg__(self):
        return self._raw(self.n, self.grade, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, f):
        f = as_poly(f)
        return self._raw(self.n, self.grade, {k: v * f for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def map(self, fn):
        """Apply ``fn`` (Poly -> Poly) to every coefficient."""
        return self._raw(self.n, self.grade, {k: fn(v) for k, v in self._coeffs.items()})

    def partial(self, v: str):
        """Coefficient-wise partial derivative (e.g. d/dxi on R^3 objects)."""
        return self.map(lambda p: p.diff(v))

    def subs(self, mapping):
        mapping = {k: as_poly(v) for k, v in mapping.items()}
        return self.map(lambda p: p.subs(mapping))

    def to_json(self) -> dict:
        return {
            "type": self.kind,
            "n": self.n,
            "grade": self.grade,
            "components": {
                "".join(map(str, k)) or "0": ex.render(to_expr(v)) for k, v in self.items()
            },
        }

    def __repr__(self):
        sym = "d" if self.kind == "form" else "e"
        if not self._coeffs:
            return f"{type(self).__name__}(n={self.n}, grade={self.grade}, 0)"
        parts = []
        for k, v in self.items():
            name = "^".join(f"{sym}{chart(self.n)[i - 1]}" for i in k) or "1"
            parts.append(f"({ex.render(to_expr(v))})*{name}")
        return f"{type(self).__name__}(n={self.n}, grade={self.grade}, {' + '.join(parts)})"


class PForm(_Multi):
    """Differential p-form; basis ``dx^{i1}^...^dx^{ip}`` with i1 < ... < ip."""

    __slots__ = ()
    kind = "form"


class PVector(_Multi):
    """p-vector field; basis ``d/dx^{i1}^...^d/dx^{ip}``."""

    __slots__ = ()
    kind = "vector"


def scalar_form(n: int, f) -> PForm:
    return PForm(n, 0, {(): f})


def basis_form(n: int, *idx) -> PForm:
    return PForm(n, len(idx), {idx: 1})


def basis_vector(n: int, *idx) -> PVector:
    return PVector(n, len(idx), {idx: 1})


def volume_form(n: int = 4) -> PForm:
    """omega* = dx^1 ^ ... ^ dx^n."""
    return basis_form(n, *range(1, n + 1))


def volume_vector(n: int = 4) -> PVector:
    """omega = e_1 ^ ... ^ e_n."""
    return basis_vector(n, *range(1, n + 1))


def one_form(n: int, components: Iterable) -> PForm:
    return PForm(n, 1, {(i + 1,): c for i, c in enumerate(components)})


def vector_field(n: int, components: Iterable) -> PVector:
    return PVector(n, 1, {(i + 1,): c for i, c in enumerate(components)})


def zero_like(a: _Multi, grade: int | None = None):
    return type(a)._raw(a.n, a.grade if grade is None else grade, {})


def wedge(a: _Multi, b: _Multi):
    """Exterior product of two forms (or two multivectors)."""
    if type(a) is not type(b):
        raise TypeError("wedge needs two forms or two multivectors")
    if a.n != b.n:
        raise DimensionMismatch(f"dimension {a.n} vs {b.n}")
    grade = a.grade + b.grade
    if grade > a.n:
        return type(a)._raw(a.n, grade, {})
    out: dict = {}
    for i, f in a._coeffs.items():
        for j, g in b._coeffs.items():
            sign, key = sort_sign(i + j)
            if not sign:
                continue
            term = f * g
            if sign < 0:
                term = -term
            out[key] = out[key] + term if key in out else term
    return type(a)._raw(a.n, grade, out)


def exterior_derivative(a: PForm) -> PForm:
    if not isinstance(a, PForm):
        raise TypeError("d acts on forms")
    coords = chart(a.n)
    out: dict = {}
    for idx, f in a._coeffs.items():
        for i, v in enumerate(coords, start=1):
            if i in idx:
                continue
            df = f.diff(v)
            if not df:
                continue
            sign, key = sort_sign((i,) + idx)
            term = df if sign > 0 else -df
            out[key] = out[key] + term if key in out else term
    return PForm._raw(a.n, a.grade + 1, out)


d = exterior_derivative


def pairing(a: _Multi, t: _Multi) -> Poly:
    """<a, t> for a form and a multivector of equal grade (either order)."""
    if isinstance(a, PVector) and isinstance(t, PForm):
        a, t = t, a
    if not (isinstance(a, PForm) and isinstance(t, PVector)):
        raise TypeError("pairing needs a form and a multivector")
    if a.n != t.n:
        raise DimensionMismatch(f"dimension {a.n} vs {t.n}")
    if a.grade != t.grade:
        raise GradeError(f"grade {a.grade} vs {t.grade}")
    out = ZERO
    for k, f in a._coeffs.items():
        g = t._coeffs.get(k)
        if g is not None:
            out = out + f * g
    return out


def insert(t: _Multi, a: _Multi):
    """Extended insertion i(t)a of a q-multivector into a p-form (or dually).

    (i(t)a)_{j1..j(p-q)} = sum over k1<..<kq of t^{k1..kq} a_{k1..kq j1..j(p-q)};
    for decomposable t = x1^..^xq this is i(xq) o ... o i(x1).
    A zero object of grade 0 is returned when q > p.
    """
    if type(t) is type(a):
        raise TypeError("insertion pairs a multivector with a form")
    if t.n != a.n:
        raise DimensionMismatch(f"dimension {t.n} vs {a.n}")
    q, p = t.grade, a.grade
    if q > p:
        return type(a)._raw(a.n, 0, {})
    out: dict = {}
    for k, tk in t._coeffs.items():
        for idx, f in a._coeffs.items():
            if not set(k) <= set(idx):
                continue
            rest = tuple(i for i in idx if i not in k)
            sign, _ = sort_sign(k + rest)
            term = tk * f
            if sign < 0:
                term = -term
            out[rest] = out[rest] + term if rest in out else term
    return type(a)._raw(a.n, p - q, out)


def insert_vector(v: PVector, a: PForm) -> PForm:
    if v.grade != 1:
        raise GradeError("insert_vector needs a vector field")
    return insert(v, a)


def insert_multi(t: PVector, a: PForm) -> PForm:
    return insert(t, a)


# R^2-valued forms


@dataclass(frozen=True)
class VValuedForm:
    """first (x) eps^1 + second (x) eps^2."""

    first: _Multi
    second: _Multi

    def __post_init__(self):
        if type(self.first) is not type(self.second):
            raise TypeError("components must be of the same kind")
        if self.first.n != self.second.n or self.first.grade != self.second.grade:
            raise GradeError("components must share grade and dimension")

    @property
    def n(self):
        return self.first.n

    @property
    def grade(self):
        return self.first.grade

    def map(self, fn) -> "VValuedForm":
        return VValuedForm(fn(self.first), fn(self.second))

    def __add__(self, o):
        return VValuedForm(self.first + o.first, self.second + o.second)

    def __sub__(self, o):
        return VValuedForm(self.first - o.first, self.second - o.second)

    def __neg__(self):
        return VValuedForm(-self.first, -self.second)

    def is_zero(self) -> bool:
        return self.first.is_zero() and self.second.is_zero()

    def transform(self, matrix) -> "VValuedForm":
        """Change of R^2 frame: the component on eps^a becomes sum_b M[a][b] * comp_b."""
        (a, b), (c, e) = matrix
        return VValuedForm(self.first * a + self.second * b, self.first * c + self.second * e)


def vwedge(a: VValuedForm, b: VValuedForm):
    """wedge(a, b) for the bilinear map R^2 x R^2 -> Lambda^2(R^2).

    Returns the scalar form carried by eps^1 ^ eps^2: a1^b2 - a2^b1.
    """
    if a.n != b.n:
        raise DimensionMismatch(f"dimension {a.n} vs {b.n}")
    return wedge(a.first, b.second) - wedge(a.second, b.first)


# Euclidean R^3 identification of vectors and 1-forms


def vector_to_form3(components) -> PForm:
    return one_form(3, components)


def form_to_vector3(a: PForm) -> tuple:
    if a.n != 3 or a.grade != 1:
        raise GradeError("need a 1-form on R^3")
    return tuple(to_expr(a[i]) for i in (1, 2, 3))


def star3(a: PForm) -> PForm:
    """Euclidean Hodge star on R^3 with orientation dx^dy^dz."""
    if a.n != 3:
        raise DimensionMismatch("star3 acts on R^3 forms")
    out = {}
    for idx, f in a._coeffs.items():
        comp = complement(3, idx)
        sign, _ = sort_sign(idx + comp)
        out[comp] = f if sign > 0 else -f
    return PForm._raw(3, 3 - a.grade, out)


def codifferential3(a: PForm) -> PForm:
    """Euclidean coderivative on R^3, delta = (-1)^p *^{-1} d * (with ** = 1)."""
    if a.grade == 0:
        return PForm._raw(3, 0, {})
    res = star3(exterior_derivative(star3(a)))
    return res if a.grade % 2 == 0 else -res


def basis(n: int, p: int) -> list:
    """Strictly increasing index tuples of length p, in lexicographic order."""
    return list(combinations(range(1, n + 1), p))


__all__ = [
    "CHART3",
    "CHART4",
    "DimensionMismatch",
    "GradeError",
    "ONE",
    "PForm",
    "PVector",
    "VValuedForm",
    "basis",
    "basis_form",
    "basis_vector",
    "chart",
    "codifferential3",
    "complement",
    "d",
    "exterior_derivative",
    "form_to_vector3",
    "insert",
    "insert_multi",
    "insert_vector",
    "one_form",
    "pairing",
    "scalar_form",
    "sort_sign",
    "star3",
    "vector_field",
    "vector_to_form3",
    "volume_form",
    "volume_vector",
    "vwedge",
    "wedge",
    "zero_like",
]
