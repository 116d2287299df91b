"""Check reports: a named list of pass/fail lines, each failure with a witness."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Check:
    name: str
    passed: bool
    witness: Any = None
    detail: str = ""

    def to_dict(self) -> dict:
        return {"name": self.name, "verdict": "pass" if self.passed else "fail",
                "witness": self.witness, "detail": self.detail}

    @classmethod
    def from_dict(cls, d: dict) -> Check:
        return cls(d["name"], d["verdict"] == "pass", d.get("witness"), d.get("detail", ""))


@dataclass
class Report:
    title: str
    checks: list[Check] = field(default_factory=list)
    provenance: dict = field(default_factory=dict)
    timing: float | None = None

    def add(self, name: str, passed: bool, witness: Any = None, detail: str = "") -> Check:
        if not passed and witness is None:
            raise ValueError(f"failing check {name!r} must carry a witness")
        c = Check(name, bool(passed), witness, detail)
        self.checks.append(c)
        return c

    def extend(self, other: Report, prefix: str = "") -> None:
        for c in other.checks:
            self.checks.append(Check(prefix + c.name, c.passed, c.witness, c.detail))

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def verdict(self) -> str:
        n_ok = sum(c.passed for c in self.checks)
        if n_ok == len(self.checks):
            return "pass"
        return "fail" if n_ok == 0 else "partial"

    def __bool__(self):
        return self.passed

    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "title": self.title,
            "verdict": self.verdict,
            "checks": [c.to_dict() for c in self.checks],
            "provenance": self.provenance,
            "timing": self.timing,
        }

    @classmethod
    def from_dict(cls, d: dict) -> Report:
        return cls(d["title"], [Check.from_dict(c) for c in d["checks"]],
                   d.get("provenance", {}), d.get("timing"))

    def render_table(self) -> str:
        width = max([len(c.name) for c in self.checks] + [4])
        lines = [f"{self.title}: {self.verdict.upper()}"]
        for c in self.checks:
            mark = "PASS" if c.passed else "FAIL"
            line = f"  {mark}  {c.name:<{width}}"
            if c.detail:
                line += f"  {c.detail}"
            if not c.passed:
                line += f"  witness={c.witness}"
            lines.append(line.rstrip())
        if self.timing is not None:
            lines.append(f"  ({self.timing:.3f} s)")
        return "\n".join(lines)

    def __str__(self):
        return self.render_table()
