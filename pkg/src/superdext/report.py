"""Verification reports: named checks with witnesses, plus unverified assumptions."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None
    detail: str = ""


@dataclass
class Report:
    checks: list[Check] = field(default_factory=list)
    assumptions: list[str] = field(default_factory=list)

    def add(self, name: str, passed: bool, witness: Any = None, detail: str = "") -> Check:
        c = Check(name, bool(passed), witness, detail)
        self.checks.append(c)
        return c

    def extend(self, other: "Report", prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.detail))
        self.assumptions.extend(other.assumptions)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def render(self) -> str:
        lines = []
        for c in self.checks:
            line = f"[{'PASS' if c.passed else 'FAIL'}] {c.name}"
            if c.detail:
                line += f": {c.detail}"
            if c.witness is not None:
                line += f" (witness: {format_witness(c.witness)})"
            lines.append(line)
        for a in self.assumptions:
            lines.append(f"[ASSUMED] {a}")
        return "\n".join(lines) + ("\n" if lines else "")


def format_witness(w: Any) -> str:
    if isinstance(w, Fraction):
        return str(w)
    if isinstance(w, (tuple, list)):
        return "(" + ", ".join(format_witness(x) for x in w) + ")"
    return str(w)
