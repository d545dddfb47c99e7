"""Field embeddings and simple extensions K(alpha) built by a primitive element."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
import sympy
from gmpy2 import mpq

from .errors import FieldError
from .field import (
    FieldElement,
    NumberField,
    _count_roots_in_box,
    _numeric_roots,
    _sympy_poly_q,
    poly_divmod,
    poly_monic,
    poly_mul,
    poly_trim,
    rational,
    roots_in_field,
)
from .matrix import Matrix


@dataclass(frozen=True)
class FieldMap:
    """Field homomorphism src -> dst determined by the image of src.gen."""

    src: NumberField
    dst: NumberField
    gen_image: FieldElement

    def __call__(self, value):
        if isinstance(value, Matrix):
            return value.map(self, self.dst)
        if not isinstance(value, FieldElement):
            return self.dst(value)
        if self.src.degree == 1:
            return self.dst.from_rational(value.c[0])
        acc = self.dst.zero
        for c in reversed(value.c):
            acc = acc * self.gen_image + c
        return acc

    def compose(self, other: FieldMap) -> FieldMap:
        """self after other."""
        return FieldMap(other.src, self.dst, self(other.gen_image))


def identity_map(field: NumberField) -> FieldMap:
    return FieldMap(field, field, field.gen)


def field_automorphisms(field: NumberField):
    """All automorphisms of K, as maps sending x to a root of f in K."""
    f = [field.from_rational(c) for c in field.minpoly]
    return [FieldMap(field, field, r) for r in dict.fromkeys(roots_in_field(f, field))]


def _qvec(elems, d):
    out = []
    for e in elems:
        out.extend(e.c)
    return out


def extend_field(field: NumberField, poly, choose=None):
    """Adjoin a root alpha of ``poly`` (monic, irreducible over ``field``).

    Returns ``(L, embed, alpha)``: the extension as a simple field Q(y) with
    y = x + c*alpha, the embedding field -> L and alpha in L.  ``choose``
    picks the complex value of alpha among the numeric roots (default: largest
    real part), which fixes the embedding box recorded on L.
    """
    p = poly_monic(poly_trim([field(c) for c in poly]))
    m = len(p) - 1
    if m < 1:
        raise FieldError("cannot adjoin a root of a constant")
    if m == 1:
        alpha = -p[0]
        return field, identity_map(field), alpha
    d = field.degree
    qq = NumberField((0, 1))
    one = field.one

    def mul(a, b):
        _, r = poly_divmod(poly_mul(a, b), p)
        return r + [field.zero] * (m - len(r))

    for shift in range(0, 40):
        y = [field.gen, one * shift] + [field.zero] * (m - 2)
        powers = [[one] + [field.zero] * (m - 1)]
        for _ in range(d * m):
            powers.append(mul(powers[-1], y))
        cols = [_qvec(pw, d) for pw in powers[:d * m]]
        basis = Matrix.from_columns(qq, [[qq.from_rational(v) for v in col] for col in cols])
        if basis.rank() < d * m:
            continue
        last = [qq.from_rational(v) for v in _qvec(powers[d * m], d)]
        sol = basis.solve(last)
        g = [-s.c[0] for s in sol] + [mpq(1)]
        if not _sympy_poly_q(g).is_irreducible:
            raise FieldError("polynomial is reducible over the base field")
        x_vec = [qq.from_rational(v) for v in _qvec([field.gen] + [field.zero] * (m - 1), d)]
        a_vec = [qq.from_rational(v) for v in _qvec([field.zero, one] + [field.zero] * (m - 2), d)]
        x_coords = [s.c[0] for s in basis.solve(x_vec)]
        a_coords = [s.c[0] for s in basis.solve(a_vec)]
        box = _embedding_box(field, p, g, shift, choose)
        big = NumberField(g, embedding=box)
        embed = FieldMap(field, big, big(x_coords))
        return big, embed, big(a_coords)
    raise FieldError("no primitive element found")


def _embedding_box(field, p, g, shift, choose):
    x0 = field.approx_generator(dps=40)
    coeffs = []
    for c in p:
        val = 0j
        for a in reversed(c.c):
            val = val * x0 + float(a)
        coeffs.append(val)
    with mpmath.workdps(40):
        alphas = mpmath.polyroots(list(reversed(coeffs)), maxsteps=200, extraprec=200)
    alphas = [complex(a) for a in (alphas if isinstance(alphas, (list, tuple)) else [alphas])]
    if choose is None:
        alpha0 = max(alphas, key=lambda a: (round(a.real, 12), round(a.imag, 12)))
    else:
        alpha0 = choose(alphas)
    y0 = x0 + shift * alpha0
    roots = _numeric_roots(g, 40)
    others = sorted(roots, key=lambda r: abs(r - y0))
    sep = abs(others[1] - y0) if len(others) > 1 else 1.0
    half = sep / 4
    for denom_exp in range(4, 200, 4):
        den = 2 ** denom_exp
        if 1.0 / den < half / 8:
            break
    lo_re = mpq(int(mpmath.floor((y0.real - half) * den)), den)
    lo_im = mpq(int(mpmath.floor((y0.imag - half) * den)), den)
    hi_re = mpq(int(mpmath.ceil((y0.real + half) * den)), den)
    hi_im = mpq(int(mpmath.ceil((y0.imag + half) * den)), den)
    box = ((lo_re, lo_im), (hi_re, hi_im))
    if _count_roots_in_box(g, box) != 1:
        raise FieldError("failed to isolate the chosen embedding")
    return box


def positive_real(alphas):
    return max(alphas, key=lambda a: (round(a.real, 12), round(a.imag, 12)))


def adjoin_sqrt(field: NumberField, value):
    """Return (L, embed, r) with r^2 = value in L; L = field when value is a square.

    The root is the one with positive real part (then positive imaginary part)
    under the embedding of L.
    """
    value = field(value)
    rs = roots_in_field([-value, field.zero, field.one], field)
    if rs:
        x0 = field.approx_generator() if field.degree > 1 else 0
        best = max(rs, key=lambda r: (round(_approx(r, x0).real, 12), round(_approx(r, x0).imag, 12)))
        return field, identity_map(field), best
    return extend_field(field, [-value, field.zero, field.one], choose=positive_real)


def adjoin_root(field: NumberField, value, k: int):
    """Return (L, embed, r) with r^k = value, adjoining roots of prime order in steps."""
    value = field(value)
    if k == 1:
        return field, identity_map(field), value
    poly = [-value] + [field.zero] * (k - 1) + [field.one]
    rs = roots_in_field(poly, field)
    if rs:
        return field, identity_map(field), rs[-1]
    pr = next(q for q in range(2, k + 1) if k % q == 0)
    if pr == k:
        big, emb, r = extend_field(field, [-value] + [field.zero] * (k - 1) + [field.one],
                                   choose=positive_real)
        return big, emb, r
    big, emb, r = adjoin_root(field, value, pr)
    big2, emb2, r2 = adjoin_root(big, r, k // pr)
    return big2, emb2.compose(emb), r2


def _approx(elem, x0):
    val = 0j
    for a in reversed(elem.c):
        val = val * x0 + float(a)
    return val


def common_field(fields):
    """Check that all fields coincide and return it."""
    fields = list(fields)
    first = fields[0]
    for f in fields[1:]:
        if f != first:
            raise FieldError("objects live over different number fields")
    return first


__all__ = ["FieldMap", "adjoin_root", "adjoin_sqrt", "common_field", "extend_field",
           "field_automorphisms", "identity_map", "rational"]
