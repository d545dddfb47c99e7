import json
import random
from fractions import Fraction
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from wdrep.conjugacy import chain_invariant
from wdrep.errors import InvalidModule
from wdrep.field import QQ
from wdrep.isocrystal import (LogModule, PhiNModule, check_fiber_comparison, compatibility_residual,
                              first_failing_power, gauge_to_constant, gauge_transform,
                              random_gauge, random_phiN, series_inverse, series_mul,
                              special_fiber, validate_log_module, wd_from_phiN)
from wdrep.matrix import Matrix
from wdrep.wd import validate_pair

ORDER = 6


def E(n, i, j):
    return Matrix.unit(QQ, n, i, j)


def scalars(vals):
    return [Matrix(QQ, [[v]]) for v in vals]


def tate_module(order=ORDER):
    # N0 P = p P N0 with N0 = E21 forces P = diag(2b, b)
    return LogModule.constant(2, order, E(2, 1, 0), Matrix.diag(QQ, [1, "1/2"]))


def test_series_inverse():
    a = scalars([1, 1, 0, 0])
    inv = series_inverse(a, 4)
    assert [x[0, 0].to_rational() for x in inv] == [1, -1, 1, -1]
    prod = series_mul(a, inv, 4)
    assert prod[0].is_identity() and all(x.is_zero() for x in prod[1:])


def test_validate_examples():
    assert validate_log_module(tate_module()).ok
    bad = LogModule.constant(2, ORDER, Matrix.diag(QQ, [1, 0]), Matrix.identity(QQ, 2))
    assert "A(0) nilpotent" in validate_log_module(bad).failures()
    rng = random.Random(1)
    x = Matrix(QQ, [[rng.randint(-3, 3) for _ in range(2)] for _ in range(2)])
    gauged = gauge_transform(tate_module(), [Matrix.identity(QQ, 2), x])
    assert validate_log_module(gauged).ok


def test_special_fiber_examples():
    m = tate_module()
    d = special_fiber(m)
    assert d.phi0 == m.Phi[0] and d.N == -E(2, 1, 0) and d.check()
    one = LogModule.constant(3, ORDER, Matrix.zero(QQ, 1), Matrix(QQ, [[5]]))
    d = special_fiber(one)
    assert d.phi0 == Matrix(QQ, [[5]]) and d.N.is_zero()


def test_gauge_to_constant_of_constant_is_identity():
    g, const = gauge_to_constant(tate_module())
    assert g[0].is_identity() and all(x.is_zero() for x in g[1:])
    assert const == tate_module()


def test_gauge_to_constant_rank_one():
    # A = u with p = 2: u G' / G = -u gives G = exp(-u), whose u^1 coefficient solves 1 G1 = -1
    exp_u = scalars([Fraction(1, factorial(k)) for k in range(ORDER)])
    m = gauge_transform(LogModule.constant(2, ORDER, Matrix.zero(QQ, 1), Matrix(QQ, [[3]])), exp_u)
    assert m.A[1] == Matrix(QQ, [[1]]) and all(x.is_zero() for x in m.A[2:])
    g, const = gauge_to_constant(m)
    assert g[1] == Matrix(QQ, [[-1]])
    assert [x[0, 0].to_rational() for x in g] == [Fraction((-1) ** k, factorial(k)) for k in range(ORDER)]
    assert const.A[0].is_zero() and const.Phi[0] == Matrix(QQ, [[3]])


def test_corrupted_frobenius_reports_power_one():
    rng = random.Random(2)
    m = gauge_transform(tate_module(), random_gauge(2, ORDER, rng))
    phi = list(m.Phi)
    phi[1] = phi[1] + E(2, 0, 0)
    bad = LogModule(m.p, m.order, m.A, tuple(phi))
    rep = validate_log_module(bad)
    detail = dict((name, d) for name, _, d in rep.checks)["Frobenius compatibility mod u^T"]
    assert not rep.ok and detail == "first failure at u^1"
    assert first_failing_power(bad) == 1
    assert not check_fiber_comparison(bad).ok
    with pytest.raises(InvalidModule):
        special_fiber(bad)


def test_fiber_comparison_passes():
    assert check_fiber_comparison(tate_module()).ok
    rng = random.Random(3)
    m = gauge_transform(tate_module(), random_gauge(2, ORDER, rng))
    assert check_fiber_comparison(m).ok


def test_wd_from_phiN_examples():
    p = wd_from_phiN(PhiNModule(2, Matrix.diag(QQ, [1, "1/2"]), Matrix.zero(QQ, 2)))
    assert p.s == Matrix.diag(QQ, [1, 2]) and p.N.is_zero() and p.q == 2
    d = PhiNModule(2, Matrix.diag(QQ, [1, "1/2"]), E(2, 1, 0))
    assert d.check()
    p = wd_from_phiN(d)
    assert validate_pair(p).ok and p.s == Matrix.diag(QQ, [1, 2]) and p.N == E(2, 1, 0)
    assert chain_invariant(p).chains[0].mult == {(0, 1): 1}
    p4 = wd_from_phiN(d, s_deg=2)
    assert p4.q == 4 and p4.s == Matrix.diag(QQ, [1, 4]) and validate_pair(p4).ok
    with pytest.raises(InvalidModule):
        wd_from_phiN(PhiNModule(2, Matrix.identity(QQ, 2), E(2, 1, 0)))


def test_json_round_trip():
    rng = random.Random(4)
    m = gauge_transform(tate_module(), random_gauge(2, ORDER, rng))
    assert LogModule.from_json(json.loads(json.dumps(m.to_json()))) == m
    d = special_fiber(m)
    assert PhiNModule.from_json(json.loads(json.dumps(d.to_json()))) == d


@given(st.integers(min_value=0, max_value=10 ** 6))
@settings(max_examples=25, deadline=None)
def test_gauge_covariance(seed):
    rng = random.Random(seed)
    n = rng.choice([1, 2, 3])
    d = random_phiN(n, rng.choice([2, 3]), rng)
    m = LogModule.constant(d.p, 5, -d.N, d.phi0)
    assert all(r.is_zero() for r in compatibility_residual(m))
    gauged = gauge_transform(m, random_gauge(n, 5, rng))
    assert validate_log_module(gauged).ok
    g, const = gauge_to_constant(gauged)
    assert const.A[0] == gauged.A[0]
    assert check_fiber_comparison(gauged).ok
