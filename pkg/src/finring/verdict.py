from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

PASS, FAIL, NA = "pass", "fail", "not-applicable"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a property check; ``witness`` reproduces a failure."""

    status: str
    detail: str = ""
    witness: Any = field(default=None, compare=False)

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def __bool__(self) -> bool:
        return self.status != FAIL


def passed(detail: str = "") -> Verdict:
    return Verdict(PASS, detail)


def failed(detail: str, witness: Any = None) -> Verdict:
    return Verdict(FAIL, detail, witness)


def not_applicable(detail: str = "") -> Verdict:
    return Verdict(NA, detail)
