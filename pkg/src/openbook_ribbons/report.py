from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple


@dataclass(frozen=True)
class Issue:
    code: str
    message: str
    where: Tuple[Tuple[str, Any], ...] = ()

    def to_dict(self) -> Dict[str, Any]:
        return {"code": self.code, "message": self.message,
                "where": {k: str(v) for k, v in self.where}}


@dataclass(frozen=True)
class ValidationReport:
    """Ordered list of issues; empty means valid."""

    subject: str
    issues: Tuple[Issue, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.issues

    def __bool__(self):
        return self.ok

    def codes(self) -> List[str]:
        return [i.code for i in self.issues]

    def code_set(self):
        return set(self.codes())

    def to_dict(self):
        return {"subject": self.subject, "valid": self.ok,
                "issues": [i.to_dict() for i in self.issues]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class ReportBuilder:
    def __init__(self, subject):
        self.subject = subject
        self._issues: List[Issue] = []

    def add(self, code, message, **where):
        self._issues.append(Issue(code, message, tuple(sorted(where.items()))))

    def build(self) -> ValidationReport:
        return ValidationReport(self.subject, tuple(self._issues))
