"""Pairs (s, N) in G x Lie(G) with s N s^-1 = q N, and the operations that
move them around: semisimplification, pushforward along a representation,
rescaling N and conjugation."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from gmpy2 import mpq

from .errors import DimensionMismatch, NotInGroup, ZeroScale
from .field import QQ, NumberField, rational, rational_str
from .groups import GroupSpec, Rep, contains, lie_contains
from .matrix import Matrix, coerce_matrix, is_semisimple, jordan_chevalley


@dataclass(frozen=True)
class WDPair:
    """s: image of an arithmetic Frobenius lift; N: monodromy; q: residue size."""

    group: GroupSpec
    s: Matrix
    N: Matrix
    q: mpq

    def __post_init__(self):
        object.__setattr__(self, "q", rational(self.q))
        if self.s.shape != self.N.shape:
            raise DimensionMismatch("s and N must have the same shape")
        if self.N.field != self.s.field:
            object.__setattr__(self, "N", coerce_matrix(self.N, self.s.field))

    @property
    def field(self) -> NumberField:
        return self.s.field

    @property
    def n(self) -> int:
        return self.s.nrows

    def to_json(self, with_field=True):
        out = {"group": self.group.to_json(), "s": self.s.to_json(), "N": self.N.to_json(),
               "q": rational_str(self.q)}
        if with_field and not self.field.is_rational_field():
            out["field"] = self.field.to_json()
        return out

    @staticmethod
    def from_json(data, field: NumberField | None = None) -> WDPair:
        if field is None:
            field = NumberField.from_json(data["field"]) if "field" in data else QQ
        group = GroupSpec.from_json(data["group"], field)
        return WDPair(group, Matrix.from_json(field, data["s"]), Matrix.from_json(field, data["N"]),
                      rational(data["q"]))

    def map_field(self, fmap) -> WDPair:
        """Apply a field homomorphism entrywise (group forms are assumed rational)."""
        return WDPair(self.group, fmap(self.s), fmap(self.N), self.q)


@dataclass
class Report:
    """Named pass/fail checks; ``ok`` iff every check passed."""

    checks: list = dc_field(default_factory=list)

    def add(self, name, passed, detail=""):
        self.checks.append((name, bool(passed), detail))
        return passed

    @property
    def ok(self) -> bool:
        return all(p for _, p, _ in self.checks)

    def failures(self):
        return [name for name, p, _ in self.checks if not p]

    def to_json(self):
        return {"ok": self.ok,
                "checks": [{"name": n, "ok": p, "detail": d} for n, p, d in self.checks]}

    def __str__(self):
        lines = [f"{'ok' if p else 'FAIL'}  {n}" + (f": {d}" if d else "") for n, p, d in self.checks]
        return "\n".join(lines)


def validate_pair(p: WDPair) -> Report:
    rep = Report()
    n = p.group.n
    shape_ok = rep.add("shape", p.s.shape == (n, n), f"group size {n}, matrices {p.s.shape}")
    rep.add("q > 1", p.q > 1, str(p.q))
    if not shape_ok:
        return rep
    rep.add("s in G", contains(p.group, p.s))
    rep.add("N in Lie(G)", lie_contains(p.group, p.N))
    invertible = p.s.is_invertible()
    if invertible:
        lhs = p.s @ p.N
        rhs = p.N.scale(p.field.from_rational(p.q)) @ p.s
        rep.add("twist relation s N s^-1 = q N", lhs == rhs)
    else:
        rep.add("twist relation s N s^-1 = q N", False, "s is singular")
    rep.add("N nilpotent", p.N.is_nilpotent())
    return rep


def is_urfs(p: WDPair) -> bool:
    """Frobenius-semisimple: the unipotent Jordan-Chevalley part of s is trivial."""
    if not validate_pair(p).ok:
        return False
    return is_semisimple(p.s)


def semisimplify(p: WDPair) -> WDPair:
    s_ss, _ = jordan_chevalley(p.s)
    return WDPair(p.group, s_ss, p.N, p.q)


def pushforward(p: WDPair, r: Rep) -> WDPair:
    if r.source.n != p.group.n:
        raise DimensionMismatch("representation source does not match the pair's group")
    return WDPair(GroupSpec.GL(r.dim), r.group_action(p.s), r.lie_action(p.N), p.q)


def rescale_nilpotent(p: WDPair, a) -> WDPair:
    a = p.field(a) if not hasattr(a, "field") else a
    if a.is_zero():
        raise ZeroScale("rescaling factor must be nonzero")
    return WDPair(p.group, p.s, p.N.scale(a), p.q)


def apply_conjugation(p: WDPair, g: Matrix, check=True) -> WDPair:
    """(g s g^-1, g N g^-1, q)."""
    g = coerce_matrix(g, p.field)
    if check and not contains(p.group, g):
        raise NotInGroup("conjugating element is not in the group")
    gi = g.inverse()
    return WDPair(p.group, g @ p.s @ gi, g @ p.N @ gi, p.q)


__all__ = [
    "Report",
    "WDPair",
    "apply_conjugation",
    "is_urfs",
    "pushforward",
    "rescale_nilpotent",
    "semisimplify",
    "validate_pair",
]
