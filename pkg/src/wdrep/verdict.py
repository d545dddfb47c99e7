"""Three-valued answers of the equivalence deciders."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .matrix import Matrix

EQUIVALENT = "Equivalent"
INEQUIVALENT = "Inequivalent"
UNKNOWN = "Unknown"


@dataclass
class Verdict:
    kind: str
    witness: Matrix | None = None
    certificate: dict = dc_field(default_factory=dict)
    notes: list = dc_field(default_factory=list)

    @property
    def equivalent(self) -> bool:
        return self.kind == EQUIVALENT

    @property
    def inequivalent(self) -> bool:
        return self.kind == INEQUIVALENT

    @property
    def unknown(self) -> bool:
        return self.kind == UNKNOWN

    def to_json(self):
        out = {"verdict": self.kind}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            if not self.witness.field.is_rational_field():
                out["witness_field"] = self.witness.field.to_json()
        if self.certificate:
            out["certificate"] = self.certificate
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def __str__(self):
        return self.kind


def equivalent(witness, **cert):
    return Verdict(EQUIVALENT, witness, dict(cert))


def inequivalent(**cert):
    return Verdict(INEQUIVALENT, None, dict(cert))


def unknown(reason, **cert):
    return Verdict(UNKNOWN, None, dict(cert, reason=reason))


__all__ = ["EQUIVALENT", "INEQUIVALENT", "UNKNOWN", "Verdict", "equivalent", "inequivalent", "unknown"]
