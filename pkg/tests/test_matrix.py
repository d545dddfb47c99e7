import random

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from oracles import to_sympy
from wdrep.errors import NotNilpotent, NotUnipotent, SingularMatrix
from wdrep.field import QQ
from wdrep.matrix import (Matrix, exp_nilpotent, is_semisimple, jordan_chevalley, log_unipotent,
                          minimal_polynomial)

entries = st.integers(min_value=-3, max_value=3)


def square(n):
    return st.lists(st.lists(entries, min_size=n, max_size=n), min_size=n, max_size=n)


def M(rows):
    return Matrix(QQ, rows)


def test_jordan_chevalley_identity():
    s, u = jordan_chevalley(Matrix.identity(QQ, 3))
    assert s.is_identity() and u.is_identity()


def test_jordan_chevalley_2x2_block():
    s, u = jordan_chevalley(M([[2, 1], [0, 2]]))
    assert s == M([[2, 0], [0, 2]])
    assert u == M([[1, "1/2"], [0, 1]])
    assert s @ u == M([[2, 1], [0, 2]])


def test_jordan_chevalley_semisimple_input():
    m = Matrix.diag(QQ, [1, 2])
    s, u = jordan_chevalley(m)
    assert s == m and u.is_identity()


def test_jordan_chevalley_singular():
    with pytest.raises(SingularMatrix):
        jordan_chevalley(M([[0, 1], [0, 0]]))


@given(st.integers(min_value=1, max_value=5).flatmap(square))
@settings(max_examples=60, deadline=None)
def test_jordan_chevalley_property(rows):
    m = M(rows)
    if not m.is_invertible():
        return
    s, u = jordan_chevalley(m)
    n = m.nrows
    assert s @ u == m and u @ s == m and s @ u == u @ s
    assert is_semisimple(s)
    assert ((u - Matrix.identity(QQ, n)) ** n).is_zero()
    # independent check: sympy's Jordan form has the same eigenvalue multiset
    assert to_sympy(s).charpoly() == to_sympy(m).charpoly()


def test_log_unipotent_examples():
    assert log_unipotent(Matrix.identity(QQ, 2)).is_zero()
    assert log_unipotent(M([[1, 1], [0, 1]])) == M([[0, 1], [0, 0]])
    u = M([[1, 1, "1/2"], [0, 1, 1], [0, 0, 1]])
    n = M([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    assert log_unipotent(u) == n
    assert exp_nilpotent(n) == u


def test_exp_zero():
    assert exp_nilpotent(Matrix.zero(QQ, 3)).is_identity()


def test_exp_log_errors():
    with pytest.raises(NotNilpotent):
        exp_nilpotent(Matrix.identity(QQ, 2))
    with pytest.raises(NotUnipotent):
        log_unipotent(Matrix.diag(QQ, [1, 2]))


@given(st.lists(entries, min_size=3, max_size=3))
def test_exp_log_inverse(vals):
    n = M([[0, vals[0], vals[1]], [0, 0, vals[2]], [0, 0, 0]])
    assert log_unipotent(exp_nilpotent(n)) == n


@given(st.integers(min_value=1, max_value=4).flatmap(square))
@settings(max_examples=60, deadline=None)
def test_linear_algebra_matches_sympy(rows):
    m = M(rows)
    sm = sympy.Matrix(rows)
    assert m.rank() == sm.rank()
    assert m.det() == QQ.from_rational(str(sm.det()))
    cp = [c.to_rational() for c in m.charpoly()]
    lam = sympy.Symbol("lam")
    ref = sympy.Poly(sm.charpoly(lam).as_expr(), lam).all_coeffs()[::-1]
    assert [sympy.Rational(int(c.numerator), int(c.denominator)) for c in cp] == ref
    for v in m.kernel():
        assert all(x.is_zero() for x in m.apply(v))
    assert len(m.kernel()) == m.nrows - m.rank()
    if m.is_invertible():
        assert (m @ m.inverse()).is_identity()


def test_minimal_polynomial():
    m = Matrix.diag(QQ, [2, 2, 3])
    mp = [c.to_rational() for c in minimal_polynomial(m)]
    assert mp == [6, -5, 1]


def test_solve_and_inconsistent():
    m = M([[1, 2], [2, 4]])
    assert m.solve([QQ.from_rational(1), QQ.from_rational(3)]) is None
    sol = m.solve([QQ.from_rational(1), QQ.from_rational(2)])
    assert m.apply(sol) == [QQ.from_rational(1), QQ.from_rational(2)]


def test_json_round_trip():
    rng = random.Random(1)
    m = M([[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]).scale(QQ.from_rational("1/7"))
    assert Matrix.from_json(QQ, m.to_json()) == m
