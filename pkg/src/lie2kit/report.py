"""Verification reports shared by every ``verify_*`` routine."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any


@dataclass
class Check:
    check_id: str
    passed: bool
    label: str = ""
    counterexample: Any = None

    def to_dict(self):
        out = {"check": self.check_id, "passed": self.passed}
        if self.label:
            out["label"] = self.label
        if not self.passed:
            out["counterexample"] = jsonable(self.counterexample)
        return out


@dataclass
class Report:
    """Outcome of a verification: an ordered list of checks plus derived data.

    A failed check always carries a counterexample (the first one found in
    the fixed search order), so two runs on the same input give identical
    reports.
    """

    subject: str
    checks: list[Check] = field(default_factory=list)
    derived: dict[str, Any] = field(default_factory=dict)

    def add(self, check_id, passed, label="", counterexample=None):
        if not passed and counterexample is None:
            counterexample = label or check_id
        self.checks.append(Check(check_id, bool(passed), label, counterexample))
        return bool(passed)

    def extend(self, other: Report, prefix=""):
        for c in other.checks:
            self.checks.append(Check(prefix + c.check_id, c.passed, c.label, c.counterexample))
        return other.ok

    @property
    def ok(self):
        return all(c.passed for c in self.checks)

    def __bool__(self):
        return self.ok

    def failed(self):
        return [c for c in self.checks if not c.passed]

    def failed_ids(self):
        return [c.check_id for c in self.checks if not c.passed]

    def first_failure(self):
        for c in self.checks:
            if not c.passed:
                return c
        return None

    def get(self, check_id):
        for c in self.checks:
            if c.check_id == check_id:
                return c
        raise KeyError(check_id)

    def to_dict(self):
        return {
            "subject": self.subject,
            "passed": self.ok,
            "checks": [c.to_dict() for c in self.checks],
            "derived": jsonable(self.derived),
        }

    def to_text(self):
        lines = [f"{'PASS' if self.ok else 'FAIL'} {self.subject}"]
        for c in self.checks:
            tag = "ok  " if c.passed else "FAIL"
            line = f"  [{tag}] {c.check_id}"
            if c.label:
                line += f" -- {c.label}"
            if not c.passed:
                line += f"; counterexample: {render(c.counterexample)}"
            lines.append(line)
        for key, value in self.derived.items():
            lines.append(f"  {key}: {render(value)}")
        return "\n".join(lines)


def jsonable(value):
    """Convert nested report data to JSON-ready values (rationals as strings)."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return value.to_dict()
    return str(value)


def render(value):
    v = jsonable(value)
    if isinstance(v, str):
        return v
    import json

    return json.dumps(v, ensure_ascii=False)
