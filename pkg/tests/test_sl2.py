import random
from fractions import Fraction

import pytest

from wdrep.field import QQ
from wdrep.groups import GroupSpec, lie_contains, split_orthogonal_form
from wdrep.matrix import Matrix
from wdrep.sampling import random_pair
from wdrep.sl2 import (SL2Triple, graded_triple, imai_decompose, jacobson_morozov,
                       triples_conjugate_in)
from wdrep.wd import WDPair


def E(n, i, j):
    return Matrix.unit(QQ, n, i, j)


def test_zero_nilpotent():
    t = jacobson_morozov(Matrix.zero(QQ, 3))
    assert t.E.is_zero() and t.H.is_zero() and t.F.is_zero()


def test_defining_triple_of_sl2():
    t = jacobson_morozov(E(2, 0, 1), GroupSpec.SL(2))
    assert t.H == Matrix.diag(QQ, [1, -1]) and t.F == E(2, 1, 0)


def test_regular_nilpotent_gl3():
    t = jacobson_morozov(E(3, 0, 1) + E(3, 1, 2))
    assert t.H == Matrix.diag(QQ, [2, 0, -2])
    assert t.F == (E(3, 1, 0) + E(3, 2, 1)).scale(QQ.from_rational(2))
    assert t.check()


@pytest.mark.parametrize("group", [GroupSpec.Sp(4), GroupSpec.SO(5, split_orthogonal_form(5)),
                                   GroupSpec.SL(3)], ids=str)
def test_triples_stay_in_the_lie_algebra(group):
    rng = random.Random(3)
    for _ in range(8):
        p = random_pair(group, rng, q=4 if group.variant == "SL" else 2)
        t = jacobson_morozov(p.N, group)
        assert t.check()
        assert all(lie_contains(group, m) for m in (t.E, t.H, t.F))


def test_graded_triple_respects_frobenius():
    rng = random.Random(5)
    for group in (GroupSpec.GL(3), GroupSpec.Sp(4)):
        for _ in range(10):
            p = random_pair(group, rng, q=2)
            t = graded_triple(p)
            assert t.check() and t.E == p.N
            q = QQ.from_rational(2)
            s, si = p.s, p.s.inverse()
            assert s @ t.H @ si == t.H
            assert s @ t.F @ si == t.F.scale(q.inverse())


def test_frobenius_decomposition_zero_monodromy():
    s = Matrix.diag(QQ, [1, 3, 5])
    d = imai_decompose(WDPair(GroupSpec.GL(3), s, Matrix.zero(QQ, 3), 2))
    assert d.s_prime == d.embed(s.inverse())
    assert d.triple.E.is_zero()


def test_frobenius_decomposition_tate_pair():
    p = WDPair(GroupSpec.GL(2), Matrix.diag(QQ, [1, 2]), E(2, 1, 0), 2)
    d = imai_decompose(p)
    assert d.triple.H == d.embed(Matrix.diag(QQ, [-1, 1]))
    assert d.sqrt_q * d.sqrt_q == d.field.from_rational(2)
    for m in (d.triple.E, d.triple.H, d.triple.F):
        assert d.s_prime @ m == m @ d.s_prime
    assert d.reconstruct_s() == d.embed(p.s)
    # s' = t^H s^-1 = diag(t^-1, t / 2) is the scalar t^-1
    assert d.s_prime == Matrix.identity(d.field, 2).scale(d.sqrt_q.inverse())


def test_frobenius_decomposition_sp4_principal():
    # with s = sqrt(q)^H for the triple of a regular nilpotent, s' = I
    group = GroupSpec.Sp(4)
    nil = Matrix(QQ, [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 1, 0, 0]])
    assert lie_contains(group, nil) and not (nil @ nil @ nil).is_zero()
    t = jacobson_morozov(nil, group)
    weights = [int(t.H[i, i].to_rational()) for i in range(4)]
    assert t.H == Matrix.diag(QQ, weights) and sorted(weights) == [-3, -1, 1, 3]
    s = Matrix.diag(QQ, [Fraction(2) ** w for w in weights])
    p = WDPair(group, s, nil, 4)
    d = imai_decompose(p)
    assert d.s_prime.is_identity()
    assert d.reconstruct_s() == d.embed(s)


def test_triples_conjugate_antidiagonal():
    gl2 = GroupSpec.GL(2)
    one = Matrix.identity(QQ, 2)
    t1 = jacobson_morozov(E(2, 0, 1))
    t2 = jacobson_morozov(E(2, 1, 0))
    v = triples_conjugate_in(gl2, one, t1, t2)
    assert v.equivalent
    x = v.witness
    assert x[0, 0].is_zero() and x[1, 1].is_zero()
    xi = x.inverse()
    assert x @ t1.E @ xi == t2.E and x @ t1.H @ xi == t2.H and x @ t1.F @ xi == t2.F


def test_triples_conjugate_identity():
    t = jacobson_morozov(E(3, 0, 1))
    v = triples_conjugate_in(GroupSpec.GL(3), Matrix.identity(QQ, 3), t, t)
    assert v.equivalent


def test_triples_partition_refutation():
    gl3 = GroupSpec.GL(3)
    t1 = jacobson_morozov(E(3, 0, 1))
    t2 = jacobson_morozov(E(3, 0, 1) + E(3, 1, 2))
    v = triples_conjugate_in(gl3, Matrix.identity(QQ, 3), t1, t2)
    assert v.inequivalent
    assert sorted(v.certificate["H_spectrum_1"]) == [-1, 0, 1]
    assert sorted(v.certificate["H_spectrum_2"]) == [-2, 0, 2]


def test_triple_json_round_trip():
    t = jacobson_morozov(E(3, 0, 1) + E(3, 1, 2))
    assert SL2Triple.from_json(t.to_json(), QQ) == t
