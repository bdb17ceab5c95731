from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .model import IRI, Triple


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    graph: Optional[IRI] = None
    triple: Optional[Triple] = None

    def __str__(self):
        where = f" in {self.graph}" if self.graph is not None else ""
        return f"{self.code}{where}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def __add__(self, other: "ValidationReport") -> "ValidationReport":
        return ValidationReport(self.violations + other.violations)

    def codes(self) -> list[str]:
        return [v.code for v in self.violations]
