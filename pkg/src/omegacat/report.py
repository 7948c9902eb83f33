from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Verdict of a checker.

    ``holds`` is the verdict; ``failures`` lists counterexamples as plain
    dicts (already JSON-friendly). ``inconclusive`` marks runs cut short by a
    budget, which never count as passes.
    """

    name: str
    holds: bool
    failures: list[dict[str, Any]] = field(default_factory=list)
    details: dict[str, Any] = field(default_factory=dict)
    inconclusive: bool = False

    def __bool__(self) -> bool:
        return self.holds and not self.inconclusive

    def to_json(self) -> dict[str, Any]:
        return {
            "check": self.name,
            "holds": self.holds,
            "inconclusive": self.inconclusive,
            "failures": self.failures,
            "details": self.details,
        }

    @classmethod
    def collect(cls, name: str, failures: list[dict[str, Any]], **details: Any) -> "CheckReport":
        return cls(name, not failures, failures, dict(details))

    @classmethod
    def combine(cls, name: str, parts: list["CheckReport"]) -> "CheckReport":
        failures = []
        for r in parts:
            for f in r.failures:
                failures.append({"part": r.name, **f})
        rep = cls(name, all(r.holds for r in parts), failures)
        rep.inconclusive = any(r.inconclusive for r in parts)
        rep.details = {"parts": {r.name: r.holds for r in parts}}
        return rep
