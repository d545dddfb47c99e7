"""Exact arithmetic in number fields K = Q[x]/(f).

Rationals are ``gmpy2.mpq`` values.  A :class:`FieldElement` stores its
coordinates in the power basis ``1, x, ..., x^(d-1)``.  Polynomials over K
are plain lists of field elements in ascending order of degree, with no
trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

import mpmath
import sympy
from gmpy2 import mpq

from .errors import FieldError, NonSplitSpectrum

DEFAULT_DEGREE_BOUND = 16


def rational(value) -> mpq:
    """Coerce ints, Fractions, mpq and strings like ``"-3/4"`` to mpq."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if type(value) is type(mpq(0)):
        return value
    if isinstance(value, int):
        return mpq(value)
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    if isinstance(value, str):
        try:
            return mpq(value.strip())
        except ValueError as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    if isinstance(value, sympy.Rational):
        return mpq(int(value.p), int(value.q))
    raise TypeError(f"cannot interpret {value!r} as a rational")


def rational_str(value: mpq) -> str:
    return str(value)


def _to_sympy(value: mpq) -> sympy.Rational:
    return sympy.Rational(int(value.numerator), int(value.denominator))


_ZERO = mpq(0)
_ONE = mpq(1)


class NumberField:
    """The field Q[x]/(f) for a monic irreducible f over Q.

    ``minpoly`` lists the coefficients of f in ascending order, constant term
    first.  ``embedding`` optionally selects a complex embedding through a
    rectangle ``((re_lo, im_lo), (re_hi, im_hi))`` with rational corners that
    must isolate exactly one root of f.
    """

    def __init__(self, minpoly, embedding=None, *, check: bool = True,
                 degree_bound: int = DEFAULT_DEGREE_BOUND):
        coeffs = [rational(c) for c in minpoly]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise FieldError("minimal polynomial must have degree >= 1")
        if coeffs[-1] != 1:
            raise FieldError("minimal polynomial must be monic")
        self.minpoly = tuple(coeffs)
        self.degree = len(coeffs) - 1
        if check and self.degree > 1:
            if self.degree > degree_bound:
                raise FieldError(
                    f"degree {self.degree} exceeds the irreducibility check bound {degree_bound}")
            if not _sympy_poly_q(self.minpoly).is_irreducible:
                raise FieldError(f"{self.minpoly_str()} is reducible over Q")
        self.embedding = None
        if embedding is not None:
            (a, b), (c, d) = embedding
            box = ((rational(a), rational(b)), (rational(c), rational(d)))
            if check:
                count = _count_roots_in_box(self.minpoly, box)
                if count != 1:
                    raise FieldError(f"embedding box contains {count} roots, expected 1")
            self.embedding = box
        self._reduce = self._reduction_table()
        self._key = self.minpoly
        self.zero = FieldElement._make(self, (_ZERO,) * self.degree)
        self.one = FieldElement._make(self, (_ONE,) + (_ZERO,) * (self.degree - 1))
        if self.degree == 1:
            self.gen = self.from_rational(-self.minpoly[0])
        else:
            self.gen = FieldElement._make(
                self, (_ZERO, _ONE) + (_ZERO,) * (self.degree - 2))

    def _reduction_table(self):
        # rows[k - d] = coordinates of x^k for d <= k <= 2d - 2
        d = self.degree
        f = self.minpoly
        table = []
        cur = [-c for c in f[:d]]
        for _ in range(d, 2 * d - 1):
            table.append(tuple(cur))
            top = cur[-1]
            nxt = [_ZERO] + cur[:-1]
            if top:
                nxt = [nxt[i] - top * f[i] for i in range(d)]
            cur = nxt
        return table

    # -- construction -------------------------------------------------
    def from_rational(self, value) -> FieldElement:
        r = rational(value)
        return FieldElement._make(self, (r,) + (_ZERO,) * (self.degree - 1))

    def __call__(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.field == self:
                return value
            raise FieldError("element belongs to a different field")
        if isinstance(value, (list, tuple)):
            if len(value) == 1:
                return self.from_rational(value[0])
            if len(value) != self.degree:
                raise FieldError(f"expected {self.degree} coordinates, got {len(value)}")
            return FieldElement._make(self, tuple(rational(v) for v in value))
        return self.from_rational(value)

    # -- identity -----------------------------------------------------
    def __eq__(self, other):
        return isinstance(other, NumberField) and self._key == other._key

    def __hash__(self):
        return hash(("NumberField", self._key))

    def is_rational_field(self) -> bool:
        return self.degree == 1

    def minpoly_str(self) -> str:
        terms = []
        for i, c in enumerate(self.minpoly):
            if c:
                terms.append(f"{c}*x^{i}" if i else f"{c}")
        return " + ".join(reversed(terms))

    def __repr__(self):
        return f"NumberField({self.minpoly_str()})"

    def to_json(self) -> dict:
        out = {"minpoly": [rational_str(c) for c in self.minpoly]}
        if self.embedding is not None:
            (a, b), (c, d) = self.embedding
            out["embedding"] = [[rational_str(a), rational_str(b)],
                                [rational_str(c), rational_str(d)]]
        return out

    @classmethod
    def from_json(cls, data: dict) -> NumberField:
        return cls(data["minpoly"], data.get("embedding"))

    # -- complex embedding ----------------------------------------------
    def approx_generator(self, dps: int = 30) -> complex:
        """Approximate image of x under the selected complex embedding.

        Without an embedding box the root with the largest real part (then the
        largest imaginary part) is used.
        """
        roots = _numeric_roots(self.minpoly, dps)
        if self.embedding is not None:
            (a, b), (c, d) = self.embedding
            inside = [r for r in roots if float(a) <= r.real <= float(c)
                      and float(b) <= r.imag <= float(d)]
            if inside:
                return inside[0]
        return max(roots, key=lambda r: (round(r.real, 12), round(r.imag, 12)))

    def approx(self, elem: FieldElement) -> complex:
        x0 = self.approx_generator()
        val = 0j
        for c in reversed(elem.c):
            val = val * x0 + float(c)
        return val


def _sympy_poly_q(coeffs, var=None):
    t = var or sympy.Symbol("t")
    return sympy.Poly([_to_sympy(c) for c in reversed(coeffs)], t, domain=sympy.QQ)


def _count_roots_in_box(coeffs, box) -> int:
    (a, b), (c, d) = box
    lo = _to_sympy(a) + sympy.I * _to_sympy(b)
    hi = _to_sympy(c) + sympy.I * _to_sympy(d)
    return int(_sympy_poly_q(coeffs).count_roots(lo, hi))


def _numeric_roots(coeffs, dps=30):
    with mpmath.workdps(dps):
        rs = mpmath.polyroots([mpmath.mpf(int(c.numerator)) / int(c.denominator)
                               for c in reversed(coeffs)], maxsteps=200, extraprec=4 * dps)
    if not isinstance(rs, (list, tuple)):
        rs = [rs]
    return [complex(r) for r in rs]


class FieldElement:
    """Immutable element of a :class:`NumberField`."""

    __slots__ = ("field", "c")

    def __init__(self, field: NumberField, coords):
        if len(coords) != field.degree:
            raise FieldError("coordinate length must equal the field degree")
        self.field = field
        self.c = tuple(rational(v) for v in coords)

    @staticmethod
    def _make(field, coords):
        obj = object.__new__(FieldElement)
        obj.field = field
        obj.c = coords
        return obj

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is self.field or other.field == self.field:
                return other.c
            raise FieldError("mixed-field arithmetic")
        try:
            r = rational(other)
        except TypeError:
            return None
        return (r,) + (_ZERO,) * (self.field.degree - 1)

    def __add__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return FieldElement._make(self.field, tuple(a + b for a, b in zip(self.c, oc)))

    __radd__ = __add__

    def __sub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return FieldElement._make(self.field, tuple(a - b for a, b in zip(self.c, oc)))

    def __rsub__(self, other):
        oc = self._coerce(other)
        if oc is None:
            return NotImplemented
        return FieldElement._make(self.field, tuple(b - a for a, b in zip(self.c, oc)))

    def __neg__(self):
        return FieldElement._make(self.field, tuple(-a for a in self.c))

    def __mul__(self, other):
        if isinstance(other, FieldElement):
            if not (other.field is self.field or other.field == self.field):
                raise FieldError("mixed-field arithmetic")
            return FieldElement._make(self.field, _mul_coords(self.field, self.c, other.c))
        try:
            r = rational(other)
        except TypeError:
            return NotImplemented
        return FieldElement._make(self.field, tuple(a * r for a in self.c))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a number field")
        if self.field.degree == 1:
            return FieldElement._make(self.field, (1 / self.c[0],))
        return FieldElement._make(self.field, _inverse_coords(self.field, self.c))

    def __truediv__(self, other):
        if isinstance(other, FieldElement):
            return self * other.inverse()
        r = rational(other)
        if r == 0:
            raise ZeroDivisionError("division by zero")
        return FieldElement._make(self.field, tuple(a / r for a in self.c))

    def __rtruediv__(self, other):
        return self.field(other) * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = self.field.one
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.c)

    def __bool__(self):
        return any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def to_rational(self) -> mpq:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.c == other.c and self.field == other.field
        try:
            r = rational(other)
        except TypeError:
            return NotImplemented
        return self.c[0] == r and not any(self.c[1:])

    def __hash__(self):
        if self.is_rational():
            return hash(self.c[0])
        return hash(self.c)

    def sort_key(self):
        return tuple(self.c)

    def __repr__(self):
        return f"FieldElement({self})"

    def __str__(self):
        if self.field.degree == 1:
            return str(self.c[0])
        parts = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                parts.append(str(a))
            elif a == 1:
                parts.append(mono)
            elif a == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{a}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    def to_json(self) -> list:
        return [rational_str(a) for a in self.c]


def _mul_coords(field, a, b):
    d = field.degree
    if d == 1:
        return (a[0] * b[0],)
    prod = [_ZERO] * (2 * d - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                if bj:
                    prod[i + j] += ai * bj
    res = prod[:d]
    for k in range(d, 2 * d - 1):
        ck = prod[k]
        if ck:
            row = field._reduce[k - d]
            for i in range(d):
                if row[i]:
                    res[i] += ck * row[i]
    return tuple(res)


def _inverse_coords(field, a):
    # solve (multiplication-by-a matrix) * z = e_0
    d = field.degree
    cols = []
    basis = [(_ZERO,) * j + (_ONE,) + (_ZERO,) * (d - j - 1) for j in range(d)]
    for e in basis:
        cols.append(_mul_coords(field, a, e))
    aug = [[cols[j][i] for j in range(d)] + [_ONE if i == 0 else _ZERO] for i in range(d)]
    sol = solve_rational(aug, d)
    return tuple(sol)


def solve_rational(aug, n):
    """Solve a square nonsingular system given as an augmented mpq matrix."""
    m = [row[:] for row in aug]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular system")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [v * inv for v in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [v - f * w for v, w in zip(m[r], m[col])]
    return [m[i][n] for i in range(n)]


QQ = NumberField((0, 1))


def gaussian_field() -> NumberField:
    """Q(i) with the embedding i -> +i."""
    return NumberField((1, 0, 1), embedding=((-1, mpq(1, 2)), (1, 2)))


# ---------------------------------------------------------------------------
# polynomials over K (ascending coefficient lists)


def poly_trim(p):
    p = list(p)
    while p and p[-1].is_zero():
        p.pop()
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    out = []
    for i in range(n):
        if i < len(p) and i < len(q):
            out.append(p[i] + q[i])
        elif i < len(p):
            out.append(p[i])
        else:
            out.append(q[i])
    return poly_trim(out)


def poly_sub(p, q):
    return poly_add(p, [-c for c in q])


def poly_mul(p, q):
    if not p or not q:
        return []
    field = p[0].field
    out = [field.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a.is_zero():
            continue
        for j, b in enumerate(q):
            if not b.is_zero():
                out[i + j] = out[i + j] + a * b
    return poly_trim(out)


def poly_divmod(p, q):
    q = poly_trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    p = poly_trim(p)
    if len(p) < len(q):
        return [], p
    field = q[-1].field
    lead_inv = q[-1].inverse()
    rem = list(p)
    quot = [field.zero] * (len(p) - len(q) + 1)
    for k in range(len(p) - len(q), -1, -1):
        coef = rem[k + len(q) - 1] * lead_inv
        quot[k] = coef
        if not coef.is_zero():
            for j, b in enumerate(q):
                rem[k + j] = rem[k + j] - coef * b
    return poly_trim(quot), poly_trim(rem[:len(q) - 1])


def poly_monic(p):
    p = poly_trim(p)
    if not p:
        return p
    inv = p[-1].inverse()
    return [c * inv for c in p]


def poly_gcd(p, q):
    a, b = poly_trim(p), poly_trim(q)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    return poly_monic(a)


def poly_deriv(p):
    return poly_trim([c * i for i, c in enumerate(p)][1:])


def poly_squarefree(p):
    """Squarefree part (monic) of a nonzero polynomial over a field of characteristic 0."""
    p = poly_monic(p)
    g = poly_gcd(p, poly_deriv(p))
    q, r = poly_divmod(p, g)
    assert not r
    return poly_monic(q)


def poly_eval(p, value):
    if not p:
        return value * 0
    acc = p[-1]
    for c in reversed(p[:-1]):
        acc = acc * value + c
    return acc


def poly_shift(p, a):
    """Return p(t + a)."""
    field = p[0].field if p else None
    out = []
    for c in reversed(p):
        # out = out * (t + a) + c
        new = [field.zero] * (len(out) + 1)
        for i, v in enumerate(out):
            new[i + 1] = new[i + 1] + v
            new[i] = new[i] + v * a
        new[0] = new[0] + c
        out = new
    return poly_trim(out)


def poly_from_rationals(field, coeffs):
    return poly_trim([field.from_rational(c) for c in coeffs])


def poly_str(p) -> str:
    if not p:
        return "0"
    return " + ".join(f"({c})*t^{i}" for i, c in reversed(list(enumerate(p))) if not c.is_zero())


# ---------------------------------------------------------------------------
# roots in K


def roots_in_field(poly, field: NumberField):
    """All roots of ``poly`` lying in ``field``, repeated by multiplicity.

    ``poly`` is a coefficient list (ascending) of field elements or rationals.
    Roots are returned sorted by coordinates.  The computation uses the norm
    down to Q after a shift t -> t - c*x that makes the norm squarefree, then
    factors over Q; a Q-factor of degree [K:Q] whose gcd with the shifted
    polynomial is linear yields one root.
    """
    p = poly_trim([field(c) for c in poly])
    if not p:
        raise ValueError("the zero polynomial has every element as a root")
    if len(p) == 1:
        return []
    distinct = _distinct_roots(field, tuple(tuple(c.c) for c in poly_squarefree(p)))
    out = []
    for root in distinct:
        lin = [-root, field.one]
        cur = p
        while True:
            quot, rem = poly_divmod(cur, lin)
            if rem:
                break
            out.append(root)
            cur = quot
    out.sort(key=lambda e: e.c)
    return out


@lru_cache(maxsize=4096)
def _distinct_roots(field, coords):
    p = [FieldElement._make(field, c) for c in coords]
    d = field.degree
    if d == 1:
        f = _sympy_poly_q([c.c[0] for c in p])
        roots = []
        for fac, _ in f.factor_list()[1]:
            if fac.degree() == 1:
                a, b = fac.all_coeffs()
                roots.append(field.from_rational(rational(-b / a)))
        return tuple(roots)
    t, y = sympy.symbols("t y")
    fy = sympy.Poly.from_dict({(i, 0): _to_sympy(c) for i, c in enumerate(field.minpoly) if c},
                              y, t, domain=sympy.QQ)
    for shift in _shift_sequence():
        cx = field.gen * shift
        shifted = poly_shift(p, -cx)  # p(t - c x)
        terms = {}
        for k, coef in enumerate(shifted):
            for i, a in enumerate(coef.c):
                if a:
                    terms[(i, k)] = _to_sympy(a)
        g = sympy.Poly.from_dict(terms, y, t, domain=sympy.QQ)
        norm = fy.resultant(g)
        norm = sympy.Poly(norm.as_expr(), t, domain=sympy.QQ)
        if sympy.degree(sympy.gcd(norm, norm.diff(t)), t) > 0:
            continue
        roots = []
        for fac, _ in norm.factor_list()[1]:
            if fac.degree() != d:
                continue
            h = [field.from_rational(rational(c)) for c in reversed(fac.all_coeffs())]
            gg = poly_gcd(shifted, h)
            if len(gg) == 2:
                beta = -gg[0] / gg[1]
                roots.append(beta - cx)
        return tuple(roots)
    raise NonSplitSpectrum("could not find a squarefree norm shift")


def _shift_sequence():
    yield 0
    for k in range(1, 64):
        yield k
        yield -k


def is_square(value: FieldElement):
    """Return a square root of ``value`` in its field, or None."""
    if value.is_zero():
        return value
    rs = roots_in_field([-value, value.field.zero, value.field.one], value.field)
    return rs[-1] if rs else None
