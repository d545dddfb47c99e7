import json

import pytest
import sympy
from gmpy2 import mpq
from hypothesis import given, settings, strategies as st

from wdrep.errors import FieldError
from wdrep.extension import adjoin_root, adjoin_sqrt, field_automorphisms
from wdrep.field import QQ, NumberField, gaussian_field, is_square, rational, roots_in_field

small = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def sqrt2_field():
    return NumberField((-2, 0, 1), embedding=((1, 0), (2, 1)))


def test_rational_parsing():
    assert rational("3/6") == mpq(1, 2)
    assert rational(4) == mpq(4)


def test_reducible_minpoly_rejected():
    with pytest.raises(FieldError):
        NumberField((-1, 0, 1))


def test_roots_of_x2_minus_2_over_q_is_empty():
    assert roots_in_field([-2, 0, 1], QQ) == []


def test_roots_of_x2_minus_2_over_sqrt2_field():
    k = sqrt2_field()
    roots = roots_in_field([-2, 0, 1], k)
    x = k.gen
    assert sorted(r.c for r in roots) == sorted([x.c, (-x).c])
    for r in roots:
        assert r * r == k.from_rational(2)


def test_gaussian_roots_with_multiplicity():
    k = gaussian_field()
    i = k.gen
    t = sympy.Symbol("t")
    expanded = sympy.Poly(sympy.expand((t - sympy.I) ** 2 * (t + 1)), t).all_coeffs()[::-1]
    p = [k([sympy.re(c), sympy.im(c)]) for c in expanded]
    roots = roots_in_field(p, k)
    assert len(roots) == 3
    assert roots.count(i) == 2 and roots.count(-k.one) == 1


@given(small, small)
def test_field_axioms_in_gaussian_field(a, b):
    k = gaussian_field()
    x = k([a, b])
    y = k([b, a])
    assert x + y == y + x
    assert x * y == y * x
    if not x.is_zero():
        assert x * x.inverse() == k.one


@given(small, small, small)
@settings(max_examples=50)
def test_distributivity_sqrt2(a, b, c):
    k = sqrt2_field()
    x, y, z = k([a, b]), k([b, c]), k([c, a])
    assert x * (y + z) == x * y + x * z


def test_json_round_trip():
    k = gaussian_field()
    data = json.loads(json.dumps(k.to_json()))
    assert NumberField.from_json(data) == k
    e = k(["1/3", "-2"])
    assert k(json.loads(json.dumps(e.to_json()))) == e


def test_is_square():
    k = gaussian_field()
    assert is_square(k.from_rational(-1))
    assert not is_square(k.from_rational(2))
    assert is_square(k([0, 2]))  # (1 + i)^2 = 2i


def test_adjoin_sqrt_positive_real_part():
    big, emb, r = adjoin_sqrt(QQ, 2)
    assert r * r == big.from_rational(2)
    assert big.approx(r).real > 0
    same, _, r4 = adjoin_sqrt(QQ, 4)
    assert same == QQ and r4 == QQ.from_rational(2)


def test_adjoin_sqrt_over_gaussian():
    k = gaussian_field()
    big, emb, r = adjoin_sqrt(k, k.from_rational(2))
    assert big.degree == 4
    assert r * r == big.from_rational(2)
    assert emb(k.gen) * emb(k.gen) == -big.one


def test_adjoin_fourth_root():
    big, _, r = adjoin_root(QQ, 3, 4)
    assert r * r * r * r == big.from_rational(3)
    assert big.approx(r).real > 0


def test_gaussian_automorphisms():
    k = gaussian_field()
    auts = field_automorphisms(k)
    assert len(auts) == 2
    images = sorted(a.gen_image.c for a in auts)
    assert images == sorted([k.gen.c, (-k.gen).c])
