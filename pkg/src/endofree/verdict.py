from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum


class Status(str, Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Three-valued outcome of a check.

    ``witness`` is a JSON-ready object; ``checked`` counts the cases
    examined.  A Fails verdict always carries a witness, an Unknown verdict
    records the exhausted budget in its witness.
    """

    status: Status
    witness: object = None
    checked: int = 0
    info: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.status is Status.FAILS and self.witness is None:
            raise ValueError("a failing verdict needs a witness")
        if self.status is Status.UNKNOWN and self.witness is None:
            raise ValueError("an unknown verdict records its budget")

    @classmethod
    def holds(cls, witness=None, checked=0, **info):
        return cls(Status.HOLDS, witness, checked, info)

    @classmethod
    def fails(cls, witness, checked=0, **info):
        return cls(Status.FAILS, witness, checked, info)

    @classmethod
    def unknown(cls, budget, checked=0, **info):
        return cls(Status.UNKNOWN, {"budget": budget}, checked, info)

    @property
    def ok(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def failed(self) -> bool:
        return self.status is Status.FAILS


def combine(verdicts) -> Status:
    """Fails dominates Unknown, which dominates Holds."""
    statuses = {v.status for v in verdicts}
    if Status.FAILS in statuses:
        return Status.FAILS
    if Status.UNKNOWN in statuses:
        return Status.UNKNOWN
    return Status.HOLDS
