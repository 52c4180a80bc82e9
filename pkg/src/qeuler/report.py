from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class Report:
    """Outcome of one identity or cross-oracle check."""

    name: str
    passed: bool
    lhs: Any = None
    rhs: Any = None
    discrepancy: Any = None
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed


def non_decreasing(values) -> bool:
    values = list(values)
    return all(a <= b for a, b in zip(values, values[1:]))
