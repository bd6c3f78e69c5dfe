"""Check records shared by the verifiers."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from .presentation import TruncationParams, WindowError

MAX_COUNTEREXAMPLES = 5


@dataclass
class Counterexample:
    inputs: Tuple[str, ...]
    expected: str
    got: str

    def as_dict(self) -> dict:
        return {"inputs": list(self.inputs), "expected": self.expected, "got": self.got}


@dataclass
class CheckResult:
    name: str
    status: str = "pass"
    checked: int = 0
    skipped: int = 0
    counterexamples: List[Counterexample] = field(default_factory=list)
    failures: int = 0
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.status != "fail"

    def record(self, outcome: Optional[Tuple[Tuple[str, ...], str, str]]):
        """Register one evaluated tuple. outcome None means it held."""
        self.checked += 1
        if outcome is None:
            return
        self.failures += 1
        self.status = "fail"
        if len(self.counterexamples) < MAX_COUNTEREXAMPLES:
            inputs, expected, got = outcome
            self.counterexamples.append(Counterexample(tuple(inputs), expected, got))

    def attempt(self, fn, *args):
        try:
            outcome = fn(*args)
        except WindowError:
            self.skipped += 1
            return
        self.record(outcome)

    def fail(self, inputs, expected, got):
        self.record((tuple(inputs), expected, got))

    def as_dict(self) -> dict:
        d = {
            "name": self.name,
            "status": self.status,
            "checked": self.checked,
            "skipped": self.skipped,
            "counterexamples": [c.as_dict() for c in self.counterexamples],
        }
        if self.note:
            d["note"] = self.note
        return d


@dataclass
class AxiomReport:
    window: Optional[TruncationParams]
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def new(self, name: str) -> CheckResult:
        c = CheckResult(name)
        self.checks.append(c)
        return c

    def extend(self, other: "AxiomReport", prefix: str = ""):
        for c in other.checks:
            if prefix:
                c.name = prefix + c.name
            self.checks.append(c)

    def failed(self) -> List[str]:
        return [c.name for c in self.checks if not c.ok]

    def as_dict(self) -> dict:
        return {
            "window": self.window.as_dict() if self.window else None,
            "ok": self.ok,
            "checks": [c.as_dict() for c in self.checks],
        }

    def summary(self) -> str:
        lines = []
        for c in self.checks:
            extra = f" ({c.skipped} skipped)" if c.skipped else ""
            lines.append(f"{c.status.upper():5} {c.name}: {c.checked} checked{extra}")
            for ce in c.counterexamples:
                lines.append(f"      inputs {', '.join(ce.inputs)}: expected {ce.expected}, got {ce.got}")
        return "\n".join(lines)
