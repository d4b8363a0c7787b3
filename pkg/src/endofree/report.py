"""Deterministic run reports (schema ``endofree-report/1``)."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .verdict import Status, Verdict, combine

SCHEMA = "endofree-report/1"
EXIT_CODES = {Status.HOLDS: 0, Status.FAILS: 1, Status.UNKNOWN: 2}


@dataclass
class Check:
    name: str
    verdict: Verdict

    def to_json(self) -> dict:
        v = self.verdict
        witness = _jsonable(v.witness)
        if v.info.get("scope") == "sample":
            # sample verdicts carry their seed and size
            witness = {"scope": "sample", "seed": v.info.get("seed", 0), "samples": v.checked,
                       "detail": witness}
        return {"name": self.name, "status": v.status.value, "witness": witness,
                "count": v.checked}


@dataclass
class SuiteReport:
    suite: str
    variety: str
    rank: int
    params: dict
    seed: int = 0
    checks: list = field(default_factory=list)
    solutions: list = field(default_factory=list)
    wall_ms: int = 0

    def add(self, name: str, verdict: Verdict) -> Verdict:
        self.checks.append(Check(name, verdict))
        return verdict

    @property
    def status(self) -> Status:
        return combine(c.verdict for c in self.checks)

    @property
    def exit_code(self) -> int:
        return EXIT_CODES[self.status]

    def check(self, name: str) -> Verdict:
        for c in self.checks:
            if c.name == name:
                return c.verdict
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "schema": SCHEMA,
            "suite": self.suite,
            "variety": self.variety,
            "rank": self.rank,
            "params": _jsonable(self.params),
            "seed": self.seed,
            "checks": [c.to_json() for c in self.checks],
            "solutions": list(self.solutions),
            "wall_ms": self.wall_ms,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    def text(self) -> str:
        lines = [f"suite {self.suite} on {self.variety} rank {self.rank} seed {self.seed}"]
        if self.params:
            lines.append("params " + json.dumps(_jsonable(self.params), sort_keys=True))
        for c in self.checks:
            v = c.verdict
            line = f"  {v.status.value.upper():8} {c.name} ({v.checked})"
            if v.witness is not None and v.status is not Status.HOLDS:
                line += " witness " + json.dumps(_jsonable(v.witness), ensure_ascii=False)
            lines.append(line)
        if self.solutions:
            lines.append("solutions " + ", ".join(self.solutions))
        lines.append(f"overall {self.status.value} in {self.wall_ms} ms")
        return "\n".join(lines)


def _jsonable(x):
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, float):
        return x
    if isinstance(x, Status):
        return x.value
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "format"):
        return x.format()
    return str(x)


def validate_report(doc: dict) -> None:
    """Raise ValueError unless doc follows the report schema exactly."""
    top = {"schema", "suite", "variety", "rank", "params", "seed", "checks", "solutions", "wall_ms"}
    if set(doc) != top:
        raise ValueError(f"report keys {sorted(doc)} differ from the schema")
    if doc["schema"] != SCHEMA:
        raise ValueError("wrong schema tag")
    for c in doc["checks"]:
        if set(c) != {"name", "status", "witness", "count"}:
            raise ValueError(f"check keys {sorted(c)} differ from the schema")
        if c["status"] not in ("holds", "fails", "unknown"):
            raise ValueError(f"bad status {c['status']!r}")
