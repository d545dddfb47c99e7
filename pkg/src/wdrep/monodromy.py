"""Pairs from tame data (sigma, gamma) with sigma gamma sigma^-1 = gamma^q, and
the comparison of classes across local fields with the same residue size."""

from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .errors import NotUnipotent, WDError
from .field import QQ, NumberField, rational, rational_str
from .groups import GroupSpec, contains
from .matrix import Matrix, coerce_matrix, exp_nilpotent, log_unipotent
from .verdict import Verdict
from .wd import Report, WDPair


@dataclass(frozen=True)
class TamePresentation:
    """sigma: Frobenius lift; gamma: normalized generator of tame inertia."""

    group: GroupSpec
    sigma: Matrix
    gamma: Matrix
    q: mpq

    def __post_init__(self):
        object.__setattr__(self, "q", rational(self.q))
        if self.gamma.field != self.sigma.field:
            object.__setattr__(self, "gamma", coerce_matrix(self.gamma, self.sigma.field))

    @property
    def field(self) -> NumberField:
        return self.sigma.field

    def to_json(self):
        out = {"group": self.group.to_json(), "sigma": self.sigma.to_json(),
               "gamma": self.gamma.to_json(), "q": rational_str(self.q)}
        if not self.field.is_rational_field():
            out["field"] = self.field.to_json()
        return out

    @staticmethod
    def from_json(data, field: NumberField | None = None) -> TamePresentation:
        if field is None:
            field = NumberField.from_json(data["field"]) if "field" in data else QQ
        return TamePresentation(GroupSpec.from_json(data["group"], field),
                                Matrix.from_json(field, data["sigma"]),
                                Matrix.from_json(field, data["gamma"]), rational(data["q"]))


def _is_unipotent(m: Matrix) -> bool:
    x = m - Matrix.identity(m.field, m.nrows)
    return (x ** m.nrows).is_zero()


def validate_presentation(t: TamePresentation) -> Report:
    rep = Report()
    q_ok = rep.add("q integer >= 2", t.q.denominator == 1 and t.q >= 2, str(t.q))
    n = t.group.n
    if not rep.add("shape", t.sigma.shape == (n, n) and t.gamma.shape == (n, n)):
        return rep
    rep.add("sigma in G", contains(t.group, t.sigma))
    rep.add("gamma in G", contains(t.group, t.gamma))
    rep.add("gamma unipotent", _is_unipotent(t.gamma))
    if q_ok and t.sigma.is_invertible():
        lhs = t.sigma @ t.gamma @ t.sigma.inverse()
        rep.add("sigma gamma sigma^-1 = gamma^q", lhs == t.gamma ** int(t.q))
    else:
        rep.add("sigma gamma sigma^-1 = gamma^q", False, "not checkable")
    return rep


def extract_wd(t: TamePresentation) -> WDPair:
    """(sigma, log gamma, q).  Frobenius-semisimple iff sigma is semisimple."""
    if not _is_unipotent(t.gamma):
        raise NotUnipotent("gamma is not unipotent")
    return WDPair(t.group, t.sigma, log_unipotent(t.gamma), t.q)


def presentation_from_pair(p: WDPair) -> TamePresentation:
    """Inverse of extract_wd: (s, exp N, q)."""
    if p.q.denominator != 1:
        raise WDError("tame presentations need an integer q")
    return TamePresentation(p.group, p.s, exp_nilpotent(p.N), p.q)


def restrict_totally_ramified(p: WDPair, e: int, renormalize: bool = False) -> WDPair:
    """Restriction to a totally ramified extension of degree e: gamma -> gamma^e,
    so N -> e N; renormalize divides the inertia coordinate by e again."""
    if e < 1:
        raise ValueError("degree must be positive")
    if renormalize or e == 1:
        return WDPair(p.group, p.s, p.N, p.q)
    return WDPair(p.group, p.s, p.N.scale(p.field.from_rational(e)), p.q)


def identify_across_fields(p_mixed: WDPair, p_equal: WDPair, degree: int = 3) -> Verdict:
    """Pairs from a p-adic field and from k((u)) with the same residue size live in
    the same set of classes, so this is a plain class comparison."""
    from .conjugacy import g_equivalent

    if p_mixed.q != p_equal.q:
        raise WDError("residue sizes differ")
    if p_mixed.group != p_equal.group:
        raise WDError("groups differ")
    return g_equivalent(p_mixed, p_equal, degree)


__all__ = [
    "TamePresentation",
    "extract_wd",
    "identify_across_fields",
    "presentation_from_pair",
    "restrict_totally_ramified",
    "validate_presentation",
]
