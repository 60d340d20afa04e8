"""Pass/fail records shared by the verification routines and the CLI."""
from __future__ import annotations

from dataclasses import dataclass, field


@dataclass
class CheckReport:
    name: str
    status: str = "pass"  # pass | fail | skipped
    witnesses: list[tuple[str, str, str]] = field(default_factory=list)
    note: str = ""

    def fail(self, context: str, expected, actual) -> None:
        self.status = "fail"
        self.witnesses.append((context, str(expected), str(actual)))

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "status": self.status,
            "witnesses": [{"context": c, "expected": e, "actual": a} for c, e, a in self.witnesses],
            **({"note": self.note} if self.note else {}),
        }

    def lines(self) -> list[str]:
        head = f"{self.name}: {self.status}" + (f" ({self.note})" if self.note else "")
        return [head] + [f"  {c}: expected {e}, got {a}" for c, e, a in self.witnesses]
