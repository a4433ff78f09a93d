"""Uniform outcome records for verification-style checks.

Every check reports through VerificationReport so the CLI can stream
results as newline-delimited JSON and fixtures can diff them.  Timing is
carried but excluded from golden comparisons.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass

from .errors import CapacityError, InputError

PASS = "pass"
VIOLATION = "violation"
INAPPLICABLE = "inapplicable"
CAPACITY_ERROR = "capacity-error"
INPUT_ERROR = "input-error"

STATUSES = (PASS, VIOLATION, INAPPLICABLE, CAPACITY_ERROR, INPUT_ERROR)


@dataclass(frozen=True)
class VerificationReport:
    """One check outcome.

    Violations always carry a witness; every non-pass status carries a
    machine-readable reason.
    """

    name: str
    status: str
    witness: object = None
    reason: str | None = None
    seconds: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise InputError(f"unknown status {self.status!r}")
        if self.status == VIOLATION and self.witness is None:
            raise InputError("violation reports must carry a witness")
        if self.status != PASS and not self.reason:
            raise InputError(f"{self.status} reports must carry a reason")

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def to_json(self, with_timing: bool = True) -> dict:
        out: dict = {"name": self.name, "status": self.status}
        if self.witness is not None:
            out["witness"] = self.witness
        if self.reason is not None:
            out["reason"] = self.reason
        if with_timing:
            out["seconds"] = self.seconds
        return out

    def json_line(self, with_timing: bool = True) -> str:
        return json.dumps(
            self.to_json(with_timing), sort_keys=True, separators=(",", ":")
        )

    @classmethod
    def from_json(cls, data) -> "VerificationReport":
        return cls(
            name=data["name"],
            status=data["status"],
            witness=data.get("witness"),
            reason=data.get("reason"),
            seconds=data.get("seconds", 0.0),
        )


def report_check(name: str, fn) -> VerificationReport:
    """Run fn() -> (status, witness, reason), timing it; raised input or
    capacity errors become the matching report statuses."""
    t0 = time.perf_counter()
    try:
        status, witness, reason = fn()
    except InputError as exc:
        return VerificationReport(
            name, INPUT_ERROR, None, str(exc) or "invalid input",
            time.perf_counter() - t0,
        )
    except CapacityError as exc:
        return VerificationReport(
            name, CAPACITY_ERROR, None, str(exc) or "capacity exceeded",
            time.perf_counter() - t0,
        )
    return VerificationReport(name, status, witness, reason, time.perf_counter() - t0)
