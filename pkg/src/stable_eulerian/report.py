"""Verification report entries shared by the suites and the CLI."""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional

PASS, FAIL, WITNESS, NONE_FOUND, INFO = "pass", "fail", "witness", "none-found", "info"

ASSERTED = "asserted"
INFORMATIONAL = "informational"


@dataclass
class Check:
    check: str
    parameters: Dict[str, Any]
    status: str
    severity: str = ASSERTED
    detail: Optional[str] = None
    witness: Optional[Dict[str, Any]] = None

    @property
    def failed(self) -> bool:
        return self.severity == ASSERTED and self.status == FAIL

    def to_dict(self) -> Dict[str, Any]:
        return {k: v for k, v in asdict(self).items() if v is not None}

    def line(self) -> str:
        params = ", ".join(f"{k}={v}" for k, v in self.parameters.items())
        tag = "" if self.severity == ASSERTED else " [informational]"
        extra = f" ({self.detail})" if self.detail else ""
        return f"{self.status.upper():10s} {self.check}({params}){tag}{extra}"


def passed(entries: List[Check]) -> bool:
    return not any(e.failed for e in entries)


def check(name: str, ok: bool, severity: str = ASSERTED, detail: str | None = None,
          **parameters) -> Check:
    return Check(name, parameters, PASS if ok else FAIL, severity, detail)


@dataclass
class Summary:
    entries: List[Check] = field(default_factory=list)

    def add(self, entry: Check) -> Check:
        self.entries.append(entry)
        return entry

    def extend(self, entries) -> None:
        self.entries.extend(entries)

    @property
    def ok(self) -> bool:
        return passed(self.entries)
