import random
from fractions import Fraction

import pytest

from oracles import brute_force_conjugate, to_sympy
from wdrep.conjugacy import (EquivalenceClass, chain_invariant, class_defined_over,
                             element_conjugate, g_equivalent, gl_equivalent, verify_witness)
from wdrep.errors import NotURFS
from wdrep.extension import field_automorphisms
from wdrep.field import QQ, gaussian_field
from wdrep.groups import GroupSpec, random_element, split_orthogonal_form
from wdrep.matrix import Matrix
from wdrep.sampling import random_pair
from wdrep.wd import WDPair, apply_conjugation

GL2 = GroupSpec.GL(2)


def E(n, i, j, k=QQ):
    return Matrix.unit(k, n, i, j)


def tate(n=None):
    return WDPair(GL2, Matrix.diag(QQ, [1, 2]), E(2, 1, 0) if n is None else n, 2)


def only_chain(p):
    inv = chain_invariant(p)
    assert len(inv.chains) == 1
    return inv.chains[0]


def test_chain_invariant_examples():
    c = only_chain(tate())
    assert [e.to_rational() for e in c.eigenvalues] == [1, 2]
    assert c.mult == {(0, 1): 1}
    c = only_chain(tate(Matrix.zero(QQ, 2)))
    assert c.mult == {(0, 0): 1, (1, 1): 1}
    inv = chain_invariant(WDPair(GL2, Matrix.diag(QQ, [1, 3]), Matrix.zero(QQ, 2), 2))
    assert sorted(len(c.eigenvalues) for c in inv.chains) == [1, 1]
    assert all(c.mult == {(0, 0): 1} for c in inv.chains)


def test_gl_equivalent_examples():
    p = tate()
    v = gl_equivalent(p, tate(Matrix.zero(QQ, 2)))
    assert v.inequivalent
    q = tate(E(2, 1, 0).scale(QQ.from_rational(5)))
    v = gl_equivalent(p, q)
    assert v.equivalent and verify_witness(p, q, v.witness)
    # the centralizer of the pair is the scalars, so every witness is a multiple of diag(1, 5)
    w = v.witness
    assert w[0, 1].is_zero() and w[1, 0].is_zero() and w[1, 1] == w[0, 0] * QQ.from_rational(5)


def test_gl_equivalent_rejects_non_semisimple():
    bad = WDPair(GL2, Matrix(QQ, [[2, 1], [0, 2]]), Matrix.zero(QQ, 2), 2)
    with pytest.raises(NotURFS):
        gl_equivalent(bad, bad)


def test_gl_equivalent_agrees_with_brute_force():
    rng = random.Random(21)
    for _ in range(15):
        p1 = random_pair(GroupSpec.GL(3), rng, q=2)
        p2 = random_pair(GroupSpec.GL(3), rng, q=2)
        v = gl_equivalent(p1, p2)
        found, _ = brute_force_conjugate(*map(to_sympy, (p1.s, p1.N, p2.s, p2.N)), rng)
        assert v.equivalent == found


def test_g_equivalent_sp4_conjugates():
    rng = random.Random(4)
    group = GroupSpec.Sp(4)
    for _ in range(5):
        p = random_pair(group, rng, q=2)
        g = random_element(group, QQ, rng)
        q = apply_conjugation(p, g)
        v = g_equivalent(p, q)
        assert v.equivalent and verify_witness(p, q, v.witness)


def _sp4_regular_and_subregular():
    # s = 2^H for the regular triple, q = 4; both nilpotents lie in the q-eigenspace of Ad(s)
    group = GroupSpec.Sp(4)
    s = Matrix.diag(QQ, [Fraction(2) ** w for w in (-3, -1, 3, 1)])
    regular = Matrix(QQ, [[0, 0, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 1, 0, 0]])
    subregular = Matrix(QQ, [[0, 0, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 0, 0]])
    return WDPair(group, s, regular, 4), WDPair(group, s, subregular, 4)


def test_g_equivalent_regular_vs_subregular():
    p1, p2 = _sp4_regular_and_subregular()
    v = g_equivalent(p1, p2)
    assert v.inequivalent and v.certificate["separating_rep"] == "std"


def test_so4_swapped_blocks_and_determinant_obstruction():
    group = GroupSpec.SO(4, split_orthogonal_form(4))
    zero = Matrix.zero(QQ, 4)
    p1 = WDPair(group, Matrix.diag(QQ, [2, 3, "1/2", "1/3"]), zero, 2)
    swapped = WDPair(group, Matrix.diag(QQ, [3, 2, "1/3", "1/2"]), zero, 2)
    v = g_equivalent(p1, swapped)
    assert v.equivalent and verify_witness(p1, swapped, v.witness)
    # O(4)-conjugate by inverting one block, but that needs determinant -1
    flipped = WDPair(group, Matrix.diag(QQ, [2, "1/3", "1/2", 3]), zero, 2)
    assert gl_equivalent(p1, flipped).equivalent
    v = g_equivalent(p1, flipped)
    assert v.inequivalent and "determinant" in v.certificate["reason"]


def test_element_conjugate_examples():
    p1, p2 = _sp4_regular_and_subregular()
    assert element_conjugate(p1, p1) == (True, None)
    ok, rep = element_conjugate(p1, p2)
    assert not ok and rep.name == "std"


def test_class_defined_over_examples():
    k = gaussian_field()
    i = k.gen
    two = k.from_rational(2)
    conj = [a for a in field_automorphisms(k) if a.gen_image != k.gen]
    rational = WDPair(GL2, Matrix.diag(k, [1, 2]), E(2, 1, 0, k), 2)
    assert class_defined_over(rational, conj) is True
    p = WDPair(GL2, Matrix.diag(k, [i, i * two]), E(2, 1, 0, k), 2)
    assert class_defined_over(p, conj) is False
    s = Matrix.diag(k, [i, i * two, -i, -i * two])
    p = WDPair(GroupSpec.GL(4), s, E(4, 1, 0, k) + E(4, 3, 2, k), 2)
    assert class_defined_over(p, conj) is True


def test_equivalence_class_collects_witnesses():
    rng = random.Random(8)
    p = random_pair(GroupSpec.GL(3), rng, q=2)
    cls = EquivalenceClass(p)
    for _ in range(3):
        q = apply_conjugation(p, random_element(GroupSpec.GL(3), QQ, rng))
        assert cls.add(q).equivalent
    assert all(verify_witness(p, q, x) for q, x in cls.members)
