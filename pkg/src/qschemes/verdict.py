from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    EXCLUDED = "EXCLUDED"
    OBSERVED = "OBSERVED"


@dataclass(frozen=True)
class Verdict:
    """Outcome of one exact check, with the integers needed to reproduce it."""

    status: Status
    check: str
    clause: str = ""
    witness: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS

    def as_dict(self) -> dict[str, Any]:
        return {
            "status": self.status.value,
            "check": self.check,
            "clause": self.clause,
            "witness": jsonable(self.witness),
        }


def jsonable(obj: Any) -> Any:
    """Big ints become decimal strings; containers are converted recursively."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if hasattr(obj, "numerator") and hasattr(obj, "denominator"):
        return f"{obj.numerator}/{obj.denominator}" if obj.denominator != 1 else str(obj.numerator)
    return obj
