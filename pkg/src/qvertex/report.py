"""Verification reports and a small comparison helper."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field


@dataclass
class Report:
    name: str
    params: dict = field(default_factory=dict)
    window: dict = field(default_factory=dict)
    passed: bool = True
    counterexample: dict | None = None
    compared: int = 0
    seconds: float = 0.0
    notes: list = field(default_factory=list)

    def fail(self, **where):
        if self.passed:
            self.passed = False
            self.counterexample = {k: _plain(v) for k, v in where.items()}
        return self

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "check": self.name,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "window": {k: _plain(v) for k, v in self.window.items()},
            "status": "pass" if self.passed else "fail",
            "compared": self.compared,
            "counterexample": self.counterexample,
        }
        if self.notes:
            d["notes"] = list(self.notes)
        if timing:
            d["seconds"] = round(self.seconds, 4)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True)

    def __bool__(self):
        return self.passed

    def merge(self, other: "Report") -> "Report":
        """Fold a sub-report into this one."""
        self.compared += other.compared
        if not other.passed and self.passed:
            self.passed = False
            self.counterexample = dict(other.counterexample or {}, sub_check=other.name)
        return self


def _plain(v):
    if isinstance(v, (str, int, float, bool)) or v is None:
        return v
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    if hasattr(v, "to_text"):
        return v.to_text()
    return str(v)


class timed:
    """Context manager filling ``report.seconds``."""

    def __init__(self, report: Report):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.seconds = time.perf_counter() - self.t0
        return False
