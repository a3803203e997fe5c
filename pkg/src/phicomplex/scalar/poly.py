"""Canonical normal form for scalar expressions.

A :class:`Poly` is a finite sum of terms ``c * m * exp(E)`` where ``c`` is a
Gaussian rational, ``m`` a monomial in symbols (chart variables,
parameters, ``pi``) and opaque reciprocals, and ``E`` is itself a Poly.
Trigonometric and hyperbolic functions are rewritten through ``exp``::

    sin u = (exp(iu) - exp(-iu)) / 2i        cosh u = (exp(u) + exp(-u)) / 2

so sin^2 + cos^2 = 1, cosh^2 - sinh^2 = 1 and the angle-addition laws all
reduce to exponent arithmetic.  Exponentials of distinct exponents are
linearly independent over the monomials, which makes the representation
canonical on the class of expressions the engine produces.  ``exp(i*q*pi)``
is reduced for rational ``q`` by extracting powers of ``i``.

Division by a single term is exact (negative powers); division by a sum
becomes an opaque :class:`Inv` atom, outside the decidable class.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Mapping

from . import expr as ex


class QI:
    """Gaussian rational ``re + i*im``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __add__(self, o):
        return QI(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return QI(self.re - o.re, self.im - o.im)

    def __mul__(self, o):
        return QI(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def __neg__(self):
        return QI(-self.re, -self.im)

    def conj(self):
        return QI(self.re, -self.im)

    def inverse(self):
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QI(self.re / n, -self.im / n)

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        return isinstance(o, QI) and self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def key(self):
        return (self.re, self.im)

    def __repr__(self):
        return f"QI({self.re}, {self.im})"


_I_POWERS = (QI(1), QI(0, 1), QI(-1), QI(0, -1))
_ONE_QI = QI(1)


class Inv:
    """Opaque reciprocal ``1/D`` of a multi-term Poly ``D`` (leading coefficient 1)."""

    __slots__ = ("poly", "_hash")

    def __init__(self, poly: "Poly"):
        self.poly = poly
        self._hash = hash(("inv", poly))

    def __eq__(self, o):
        return isinstance(o, Inv) and self.poly == o.poly

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Inv({self.poly!r})"


def _atom_key(a):
    return (0, a) if isinstance(a, str) else (1, a.poly.sort_key)


def _mono_mul(m1, m2):
    if not m1:
        return m2
    if not m2:
        return m1
    powers = dict(m1)
    for a, p in m2:
        q = powers.get(a, 0) + p
        if q:
            powers[a] = q
        else:
            del powers[a]
    return tuple(sorted(powers.items(), key=lambda ap: _atom_key(ap[0])))


class Poly:
    __slots__ = ("terms", "_hash", "_sort_key", "_conj", "_expr")

    def __init__(self, terms=None):
        self.terms = {k: c for k, c in (terms or {}).items() if c}
        self._hash = None
        self._sort_key = None
        self._conj = None
        self._expr = None

    # constructors

    @staticmethod
    def const(c) -> "Poly":
        c = c if isinstance(c, QI) else QI(c)
        return Poly({((), None): c})

    @staticmethod
    def symbol(name: str) -> "Poly":
        return Poly({(((name, 1),), None): _ONE_QI})

    # identity

    def __eq__(self, o):
        return isinstance(o, Poly) and self.terms == o.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    @property
    def sort_key(self):
        if self._sort_key is None:
            self._sort_key = tuple(
                sorted((_term_key(k), c.key()) for k, c in self.terms.items())
            )
        return self._sort_key

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(k == ((), None) for k in self.terms)

    def constant(self) -> QI:
        return self.terms.get(((), None), QI())

    def __repr__(self):
        return f"Poly({ex.render(to_expr(self)) if self.is_real() else self.terms!r})"

    # arithmetic

    def __add__(self, o):
        o = as_poly(o)
        out = dict(self.terms)
        for k, c in o.terms.items():
            s = out.get(k)
            out[k] = c if s is None else s + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -c for k, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-as_poly(o))

    def __rsub__(self, o):
        return as_poly(o) - self

    def scale(self, c) -> "Poly":
        c = c if isinstance(c, QI) else QI(c)
        if not c:
            return ZERO
        return Poly({k: v * c for k, v in self.terms.items()})

    def __mul__(self, o):
        o = as_poly(o)
        if not self.terms or not o.terms:
            return ZERO
        out: dict = {}
        for (m1, e1), c1 in self.terms.items():
            for (m2, e2), c2 in o.terms.items():
                m = _mono_mul(m1, m2)
                k, e = _exp_sum(e1, e2)
                c = c1 * c2
                if k:
                    c = c * _I_POWERS[k]
                key = (m, e)
                s = out.get(key)
                out[key] = c if s is None else s + c
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return inv(self) ** (-n)
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __truediv__(self, o):
        return self * inv(as_poly(o))

    def __rtruediv__(self, o):
        return as_poly(o) * inv(self)

    # structure

    def conj(self) -> "Poly":
        if self._conj is None:
            out = ZERO
            for (m, e), c in self.terms.items():
                t = Poly.const(c.conj())
                for a, p in m:
                    base = Poly.symbol(a) if isinstance(a, str) else inv(a.poly.conj())
                    if isinstance(a, str):
                        t = t * Poly({(((a, p),), None): _ONE_QI})
                    else:
                        t = t * base**p
                if e is not None:
                    t = t * exp_of(e.conj())
                out = out + t
            self._conj = out
        return self._conj

    def is_real(self) -> bool:
        return self.conj() == self

    def real_part(self) -> "Poly":
        return (self + self.conj()).scale(Fraction(1, 2))

    def imag_part(self) -> "Poly":
        return (self - self.conj()).scale(QI(0, Fraction(-1, 2)))

    def free_symbols(self) -> frozenset:
        out = set()
        for (m, e), _ in self.terms.items():
            for a, _p in m:
                if isinstance(a, str):
                    if a != "pi":
                        out.add(a)
                else:
                    out |= a.poly.free_symbols()
            if e is not None:
                out |= e.free_symbols()
        return frozenset(out)

    def diff(self, v: str) -> "Poly":
        out = ZERO
        for (m, e), c in self.terms.items():
            base = Poly({(m, e): c})
            for j, (a, p) in enumerate(m):
                if isinstance(a, str):
                    if a != v:
                        continue
                    lowered = m[:j] + (((a, p - 1),) if p != 1 else ()) + m[j + 1:]
                    out = out + Poly({(lowered, e): c * QI(p)})
                else:
                    d_inner = a.poly.diff(v)
                    if not d_inner:
                        continue
                    atom = Poly({(((a, 1),), None): _ONE_QI})
                    # d(1/D) = -D' / D^2 = -D' * Inv(D)^2, times p * Inv(D)^(p-1)
                    rest = m[:j] + (((a, p - 1),) if p != 1 else ()) + m[j + 1:]
                    out = out + Poly({(rest, e): c * QI(-p)}) * d_inner * atom * atom
            if e is not None:
                de = e.diff(v)
                if de:
                    out = out + base * de
        return out

    def subs(self, mapping: Mapping[str, "Poly"]) -> "Poly":
        if not mapping:
            return self
        out = ZERO
        for (m, e), c in self.terms.items():
            t = Poly.const(c)
            for a, p in m:
                if isinstance(a, str):
                    base = mapping.get(a)
                    t = t * (base**p if base is not None else Poly({(((a, p),), None): _ONE_QI}))
                else:
                    t = t * inv(a.poly.subs(mapping)) ** p
            if e is not None:
                t = t * exp_of(e.subs(mapping))
            out = out + t
        return out


def _term_key(k):
    m, e = k
    return (tuple((_atom_key(a), p) for a, p in m), () if e is None else e.sort_key)


_PI_KEY = ((("pi", 1),), None)


def _reduce_pi(e: Poly | None):
    """Split exp(e) as i^k * exp(e') with the i*q*pi part of e' in [-1/4, 1/4]."""
    if e is None:
        return 0, None
    c = e.terms.get(_PI_KEY)
    if c is None or not c.im:
        return 0, e
    k = round(2 * c.im)
    if k == 0:
        return 0, e
    rest = dict(e.terms)
    rest[_PI_KEY] = QI(c.re, c.im - Fraction(k, 2))
    reduced = Poly(rest)
    return k % 4, (reduced if reduced else None)


def _exp_sum(e1, e2):
    if e1 is None and e2 is None:
        return 0, None
    if e1 is None:
        return 0, e2
    if e2 is None:
        return 0, e1
    s = e1 + e2
    return _reduce_pi(s if s else None)


def exp_of(p: Poly) -> Poly:
    if not p:
        return ONE
    k, e = _reduce_pi(p)
    return Poly({((), e): _I_POWERS[k]})


def inv(p: Poly) -> Poly:
    if not p:
        raise ZeroDivisionError("division by a zero expression")
    if len(p.terms) == 1:
        ((m, e), c), = p.terms.items()
        mono = tuple((a, -q) for a, q in m if isinstance(a, str))
        k, e_neg = _reduce_pi(-e if e is not None else None)
        c_inv = c.inverse()
        if k:
            c_inv = c_inv * _I_POWERS[k]
        out = Poly({(mono, e_neg): c_inv})
        # 1/Inv(D)^q is D^q, multiplied out
        for a, q in m:
            if not isinstance(a, str):
                out = out * a.poly**q
        return out
    lead_key = min(p.terms, key=_term_key)
    lead = p.terms[lead_key]
    normed = p.scale(lead.inverse())
    return Poly({(((Inv(normed), 1),), None): lead.inverse()})


ZERO = Poly()
ONE = Poly.const(1)
_I = Poly.const(QI(0, 1))


def as_poly(value) -> Poly:
    if isinstance(value, Poly):
        return value
    if isinstance(value, QI):
        return Poly.const(value)
    if isinstance(value, (int, Fraction)):
        return Poly.const(QI(value))
    if isinstance(value, float):
        return Poly.const(QI(Fraction(value)))
    return to_poly(ex.as_expr(value))


def _cache(e, p):
    object.__setattr__(e, "_poly", p)
    return p


def to_poly(e) -> Poly:
    """Normal form of an expression tree (memoised on the node)."""
    e = ex.as_expr(e)
    cached = e._poly
    if cached is not None:
        return cached
    if isinstance(e, ex.Rat):
        return _cache(e, Poly.const(QI(e.value)))
    if isinstance(e, ex.Var):
        return _cache(e, Poly.symbol(e.name))
    if isinstance(e, ex.Add):
        return _cache(e, to_poly(e.left) + to_poly(e.right))
    if isinstance(e, ex.Sub):
        return _cache(e, to_poly(e.left) - to_poly(e.right))
    if isinstance(e, ex.Mul):
        return _cache(e, to_poly(e.left) * to_poly(e.right))
    if isinstance(e, ex.Div):
        return _cache(e, to_poly(e.left) * inv(to_poly(e.right)))
    if isinstance(e, ex.Pow):
        return _cache(e, to_poly(e.base) ** e.exponent)
    if isinstance(e, ex.Neg):
        return _cache(e, -to_poly(e.arg))
    u = to_poly(e.arg)
    if e.name == "exp":
        return _cache(e, exp_of(u))
    if e.name in ("sin", "cos"):
        iu = u * _I
        plus, minus = exp_of(iu), exp_of(-iu)
        if e.name == "cos":
            return _cache(e, (plus + minus).scale(Fraction(1, 2)))
        return _cache(e, (plus - minus).scale(QI(0, Fraction(-1, 2))))
    plus, minus = exp_of(u), exp_of(-u)
    half = Fraction(1, 2)
    return _cache(e, (plus + minus).scale(half) if e.name == "cosh" else (plus - minus).scale(half))


# back to trees


def _mono_factors(m):
    num, den = [], []
    for a, p in m:
        if isinstance(a, str):
            (num if p > 0 else den).append(ex.power(ex.Var(a), abs(p)))
        else:
            # one division per power keeps each reciprocal a single Inv atom
            den.extend([to_expr(a.poly)] * p)
    return num, den


def _product(factors):
    out = ex.ONE
    for f in factors:
        out = ex.mul(out, f)
    return out


def to_expr(p: Poly) -> ex.Expr:
    """Canonical real expression tree for a real Poly."""
    if p._expr is not None:
        return p._expr
    if not p.terms:
        p._expr = ex.ZERO
        return p._expr
    pieces = []  # (sort key, rational coefficient, expression without coefficient)
    seen = set()
    for key in sorted(p.terms, key=_term_key):
        if key in seen:
            continue
        m, e = key
        c = p.terms[key]
        num, den = _mono_factors(m)
        if e is None or e.is_real():
            if c.im:
                raise ValueError("expression is not real-valued")
            seen.add(key)
            if e is not None:
                num.append(ex.exp(to_expr(e)))
            pieces.append((_term_key(key), c.re, num, den))
            continue
        re_part, im_part = e.real_part(), e.imag_part()
        k_conj, e_conj = _reduce_pi(e.conj())
        partner = (m, e_conj)
        if partner not in p.terms:
            raise ValueError("expression is not real-valued")
        c_partner = p.terms[partner] * _I_POWERS[(4 - k_conj) % 4]
        if c_partner != c.conj():
            raise ValueError("expression is not real-valued")
        seen.update((key, partner))
        if (-im_part).sort_key < im_part.sort_key:
            im_part, c = -im_part, c.conj()
        if re_part:
            num.append(ex.exp(to_expr(re_part)))
        arg = to_expr(im_part)
        tkey = _term_key(key)
        if c.re:
            pieces.append((tkey + (0,), 2 * c.re, num + [ex.cos(arg)], den))
        if c.im:
            pieces.append((tkey + (1,), -2 * c.im, num + [ex.sin(arg)], den))
    pieces.sort(key=lambda t: t[0])
    out = None
    for _, coef, num, den in pieces:
        body = _product(num)
        for d in den:
            body = ex.Div(body, d)
        if out is None:
            out = ex.mul(ex.Rat(coef), body)
        elif coef < 0:
            out = ex.Sub(out, ex.mul(ex.Rat(-coef), body))
        else:
            out = ex.Add(out, ex.mul(ex.Rat(coef), body))
    p._expr = out
    _cache(out, p)
    return out


def normalize(e) -> ex.Expr:
    """Canonical tree; identically-zero inputs in the decidable class map to ``Rat 0``."""
    return to_expr(to_poly(e))


def same_function(a, b) -> bool:
    return to_poly(a) == to_poly(b)
