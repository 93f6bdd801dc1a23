"""Exceptions and check reports shared across the package."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


@dataclass
class CheckReport:
    """Outcome of a single verification step.

    `details` and `witness` must stay JSON-serializable so reports can be
    emitted verbatim by the CLI.
    """

    name: str
    passed: bool
    details: dict = field(default_factory=dict)
    witness: Any = None

    def as_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "details": self.details}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


class OrbitCodesError(Exception):
    """Base class for all package-level failures."""


class PreconditionError(OrbitCodesError):
    """Raised when inputs fall outside the supported parameter range.

    Carries a machine-readable `kind` so callers (and the CLI exit path)
    can distinguish usage problems from failed mathematical checks.
    """

    def __init__(self, kind: str, message: str, details: dict | None = None):
        super().__init__(message)
        self.kind = kind
        self.details = details or {}


class CheckFailure(OrbitCodesError):
    """Raised when a verification step fails on otherwise valid inputs."""

    def __init__(self, report: CheckReport):
        super().__init__(f"check '{report.name}' failed: {report.details}")
        self.report = report
