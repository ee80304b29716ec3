"""Pass/fail records shared by every verification routine."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    name: str
    params: dict[str, Any] = field(default_factory=dict)
    passed: bool = True
    max_deviation: float | None = None
    violations: list[str] = field(default_factory=list)
    data: dict[str, Any] = field(default_factory=dict)

    def fail(self, message: str) -> None:
        self.passed = False
        self.violations.append(message)

    def finish(self) -> "CheckReport":
        self.passed = not self.violations
        return self

    def to_dict(self) -> dict[str, Any]:
        out = {
            "name": self.name,
            "params": _jsonable(self.params),
            "passed": self.passed,
            "max_deviation": None if self.max_deviation is None else float(f"{self.max_deviation:.17g}"),
            "violations": list(self.violations),
        }
        if self.data:
            out["data"] = _jsonable(self.data)
        return out


def _jsonable(value):
    from fractions import Fraction

    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return float(f"{value:.17g}")
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value
