"""Log connections u d/du + A(u) with nilpotent residue and a Frobenius Phi(u)
over u -> u^p, truncated at u^T; their fibers at u = 0 as (phi, N)-modules; and
the pair attached to a (phi, N)-module.

A series matrix is a list of T coefficient matrices [M_0, ..., M_{T-1}].
Compatibility of Frobenius and connection in a basis reads

    u Phi'(u) + A(u) Phi(u) = p Phi(u) A(u^p)   (mod u^T),

and a gauge change e -> e G(u) acts by A -> G^-1 A G + G^-1 u G',
Phi -> G^-1 Phi G(u^p).
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import InvalidModule
from .field import QQ, NumberField
from .groups import GroupSpec
from .matrix import Matrix, flatten, unflatten
from .wd import Report, WDPair

DEFAULT_ORDER = 8


# ---------------------------------------------------------------------------
# truncated series of matrices


def series_mul(a, b, order):
    field = a[0].field
    n = a[0].nrows
    out = [Matrix.zero(field, n) for _ in range(order)]
    for i, ai in enumerate(a[:order]):
        if ai.is_zero():
            continue
        for j, bj in enumerate(b[:order - i]):
            if not bj.is_zero():
                out[i + j] = out[i + j] + ai @ bj
    return out


def series_inverse(a, order):
    """Inverse of a series with invertible constant term."""
    a0inv = a[0].inverse()
    field = a0inv.field
    n = a0inv.nrows
    out = [a0inv]
    for k in range(1, order):
        acc = Matrix.zero(field, n)
        for j in range(1, k + 1):
            if j < len(a) and not a[j].is_zero():
                acc = acc + a[j] @ out[k - j]
        out.append(-(a0inv @ acc))
    return out


def series_euler(a):
    """u d/du: coefficient k gets multiplied by k."""
    return [m.scale(k) for k, m in enumerate(a)]


def series_frobenius(a, p, order):
    """A(u^p) truncated."""
    field = a[0].field
    n = a[0].nrows
    out = [Matrix.zero(field, n) for _ in range(order)]
    for k, m in enumerate(a):
        if k * p < order:
            out[k * p] = m
    return out


def _pad(a, order):
    field = a[0].field
    n = a[0].nrows
    return list(a[:order]) + [Matrix.zero(field, n) for _ in range(order - len(a))]


def _add(a, b):
    return [x + y for x, y in zip(a, b)]


def _sub(a, b):
    return [x - y for x, y in zip(a, b)]


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True)
class PhiNModule:
    """phi0 invertible, N nilpotent, N phi0 = p phi0 N."""

    p: int
    phi0: Matrix
    N: Matrix

    @property
    def dim(self):
        return self.phi0.nrows

    def check(self) -> bool:
        return (self.phi0.is_invertible() and self.N.is_nilpotent()
                and self.N @ self.phi0 == (self.phi0 @ self.N).scale(self.p))

    def to_json(self):
        out = {"p": self.p, "phi0": self.phi0.to_json(), "N": self.N.to_json()}
        if not self.phi0.field.is_rational_field():
            out["field"] = self.phi0.field.to_json()
        return out

    @staticmethod
    def from_json(data, field: NumberField | None = None):
        if field is None:
            field = NumberField.from_json(data["field"]) if "field" in data else QQ
        return PhiNModule(int(data["p"]), Matrix.from_json(field, data["phi0"]),
                          Matrix.from_json(field, data["N"]))


@dataclass(frozen=True)
class LogModule:
    p: int
    order: int
    A: tuple
    Phi: tuple

    def __post_init__(self):
        if self.order < 1:
            raise InvalidModule("truncation order must be positive")
        object.__setattr__(self, "A", tuple(_pad(list(self.A), self.order)))
        object.__setattr__(self, "Phi", tuple(_pad(list(self.Phi), self.order)))

    @property
    def dim(self):
        return self.A[0].nrows

    @property
    def field(self):
        return self.A[0].field

    @staticmethod
    def constant(p, order, a0: Matrix, phi0: Matrix) -> LogModule:
        return LogModule(p, order, (a0,), (phi0,))

    def to_json(self):
        n = self.dim

        def pack(series):
            return [[[series[k][i, j].to_json() for k in range(self.order)] for j in range(n)]
                    for i in range(n)]

        out = {"p": self.p, "order": self.order, "A": pack(self.A), "Phi": pack(self.Phi)}
        if not self.field.is_rational_field():
            out["field"] = self.field.to_json()
        return out

    @staticmethod
    def from_json(data, field: NumberField | None = None) -> LogModule:
        if field is None:
            field = NumberField.from_json(data["field"]) if "field" in data else QQ
        order = int(data["order"])

        def unpack(arr):
            n = len(arr)
            coeff = lambda v: field(v) if isinstance(v, list) else field.from_rational(v)
            out = []
            for k in range(order):
                rows = [[coeff(arr[i][j][k]) if k < len(arr[i][j]) else field.zero
                         for j in range(n)] for i in range(n)]
                out.append(Matrix(field, rows))
            return out

        return LogModule(int(data["p"]), order, tuple(unpack(data["A"])), tuple(unpack(data["Phi"])))


def compatibility_residual(m: LogModule):
    """u Phi' + A Phi - p Phi A(u^p), coefficient list."""
    t = m.order
    lhs = _add(series_euler(list(m.Phi)), series_mul(list(m.A), list(m.Phi), t))
    rhs = series_mul(list(m.Phi), series_frobenius(list(m.A), m.p, t), t)
    return _sub(lhs, [r.scale(m.p) for r in rhs])


def validate_log_module(m: LogModule) -> Report:
    rep = Report()
    n = m.dim
    shapes = all(x.shape == (n, n) for x in m.A + m.Phi)
    if not rep.add("shapes", shapes and len(m.A) == m.order == len(m.Phi)):
        return rep
    rep.add("p >= 2", m.p >= 2, str(m.p))
    rep.add("Phi(0) invertible", m.Phi[0].is_invertible())
    rep.add("A(0) nilpotent", m.A[0].is_nilpotent())
    if not m.Phi[0].is_invertible():
        return rep
    res = compatibility_residual(m)
    bad = next((k for k, r in enumerate(res) if not r.is_zero()), None)
    rep.add("Frobenius compatibility mod u^T", bad is None,
            "" if bad is None else f"first failure at u^{bad}")
    return rep


def first_failing_power(m: LogModule):
    res = compatibility_residual(m)
    return next((k for k, r in enumerate(res) if not r.is_zero()), None)


def _require_valid(m: LogModule):
    rep = validate_log_module(m)
    if not rep.ok:
        raise InvalidModule("; ".join(rep.failures()) + (
            f" (u^{first_failing_power(m)})" if "Frobenius compatibility mod u^T" in rep.failures() else ""))


def special_fiber(m: LogModule) -> PhiNModule:
    """M/uM with phi = Phi(0) and N acting as minus the residue."""
    _require_valid(m)
    return PhiNModule(m.p, m.Phi[0], -m.A[0])


def gauge_transform(m: LogModule, g) -> LogModule:
    """Change of basis by G(u) (coefficient list with G(0) invertible)."""
    t = m.order
    g = _pad(list(g), t)
    gi = series_inverse(g, t)
    a = _add(series_mul(gi, series_mul(list(m.A), g, t), t), series_mul(gi, series_euler(g), t))
    phi = series_mul(gi, series_mul(list(m.Phi), series_frobenius(g, m.p, t), t), t)
    return LogModule(m.p, t, tuple(a), tuple(phi))


def _solve_sylvester(a0: Matrix, k: int, rhs: Matrix) -> Matrix:
    """X with k X + A0 X - X A0 = rhs."""
    field = a0.field
    n = a0.nrows
    ident = Matrix.identity(field, n)
    op = ident.kron(ident).scale(k) + a0.kron(ident) - ident.kron(a0.T)
    x = op.solve(flatten(rhs))
    if x is None:
        raise InvalidModule("gauge recursion is not solvable")
    return unflatten(field, x, n)


def gauge_to_constant(m: LogModule):
    """(G, constant module) with G(0) = I and G^-1 A G + G^-1 u G' = A(0) mod u^T."""
    _require_valid(m)
    t = m.order
    field = m.field
    n = m.dim
    a0 = m.A[0]
    g = [Matrix.identity(field, n)]
    for k in range(1, t):
        rhs = Matrix.zero(field, n)
        for j in range(1, k + 1):
            if not m.A[j].is_zero():
                rhs = rhs + m.A[j] @ g[k - j]
        g.append(_solve_sylvester(a0, k, -rhs))
    const = gauge_transform(m, g)
    if any(not x.is_zero() for x in const.A[1:]):
        raise InvalidModule("gauge did not remove the higher connection terms")
    if any(not x.is_zero() for x in const.Phi[1:]):
        raise InvalidModule("transported Frobenius is not constant")
    return g, const


def check_fiber_comparison(m: LogModule) -> Report:
    """Compare the (phi, N)-module of the constant form with the special fiber."""
    rep = Report()
    base = validate_log_module(m)
    if not base.ok:
        detail = "; ".join(base.failures())
        bad = first_failing_power(m) if m.Phi[0].is_invertible() else None
        if bad is not None:
            detail += f" (first failure at u^{bad})"
        rep.add("module valid", False, detail)
        return rep
    g, const = gauge_to_constant(m)
    d_const = PhiNModule(m.p, const.Phi[0], -const.A[0])
    d_fiber = special_fiber(m)
    rep.add("G(0) = I", g[0].is_identity())
    rep.add("phi agrees", d_const.phi0 == g[0].inverse() @ d_fiber.phi0 @ g[0])
    rep.add("N agrees", d_const.N == g[0].inverse() @ d_fiber.N @ g[0])
    rep.add("N phi = p phi N", d_const.check())
    return rep


def wd_from_phiN(d: PhiNModule, s_deg: int = 1) -> WDPair:
    """(GL(n), phi0^-s_deg, N, p^s_deg): arithmetic Frobenius goes to phi^-s."""
    if s_deg < 1:
        raise InvalidModule("s_deg must be positive")
    if not d.check():
        raise InvalidModule("N phi0 = p phi0 N fails or N is not nilpotent")
    s = d.phi0.inverse() ** s_deg
    return WDPair(GroupSpec.GL(d.dim), s, d.N, d.p ** s_deg)


# ---------------------------------------------------------------------------
# random data for tests and demos


def random_phiN(n: int, p: int, rng: random.Random, field: NumberField = QQ) -> PhiNModule:
    """phi0 conjugate to a diagonal matrix with entries in p-power chains, N generic."""
    from .groups import random_element
    from .matrix import combine, linear_kernel

    base = rng.choice([1, 2, 3, -1])
    vals = [field.from_rational(base) / field.from_rational(p) ** rng.randint(0, 2) for _ in range(n)]
    phi0 = Matrix.diag(field, vals)
    units = [Matrix.unit(field, n, i, j) for i in range(n) for j in range(n)]
    space = linear_kernel(field, units, lambda x: x @ phi0 - (phi0 @ x).scale(p))
    nmat = combine(field, space, [field.from_rational(rng.randint(-2, 2)) for _ in space]) \
        if space else Matrix.zero(field, n)
    g = random_element(GroupSpec.GL(n), field, rng)
    gi = g.inverse()
    return PhiNModule(p, g @ phi0 @ gi, g @ nmat @ gi)


def random_gauge(n: int, order: int, rng: random.Random, field: NumberField = QQ):
    ident = Matrix.identity(field, n)
    return [ident] + [Matrix(field, [[rng.randint(-1, 1) for _ in range(n)] for _ in range(n)])
                      for _ in range(1, order)]


__all__ = [
    "DEFAULT_ORDER",
    "LogModule",
    "PhiNModule",
    "check_fiber_comparison",
    "compatibility_residual",
    "gauge_to_constant",
    "gauge_transform",
    "random_gauge",
    "random_phiN",
    "special_fiber",
    "validate_log_module",
    "wd_from_phiN",
]
