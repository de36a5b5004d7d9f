"""Verification reports: one entry per checked clause, failures collected, never raised."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .hypernum import format_scalar


@dataclass
class ClauseResult:
    clause: str
    max_residual: object
    passed: bool
    failures: list = field(default_factory=list)
    note: str = ""

    def to_dict(self) -> dict:
        out = {
            "clause": self.clause,
            "max_residual": format_scalar(self.max_residual),
            "pass": self.passed,
        }
        if self.failures:
            out["failures"] = [list(f) if isinstance(f, tuple) else f for f in self.failures[:20]]
        if self.note:
            out["note"] = self.note
        return out


@dataclass
class VerificationReport:
    title: str
    clauses: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.clauses)

    def clause(self, name: str) -> ClauseResult:
        for c in self.clauses:
            if c.clause == name:
                return c
        raise KeyError(name)

    def add(self, result: ClauseResult) -> ClauseResult:
        self.clauses.append(result)
        return result

    def to_dict(self) -> dict:
        return {
            "report": self.title,
            "pass": self.passed,
            "clauses": [c.to_dict() for c in self.clauses],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


class ResidualTracker:
    """Collects pairs ``(lhs, rhs)`` under a label and grades them.

    With ``tol=None`` every pair must agree exactly.  Otherwise the residual is
    normwise relative: ``max |lhs - rhs| / max(|lhs|, |rhs|)`` over the clause,
    and the clause passes when it does not exceed ``tol``.  ``floor`` bounds the
    denominator from below for quantities with a natural unit scale (kernel
    entries, probabilities), where an all-zero clause would otherwise divide
    rounding noise by rounding noise.
    """

    def __init__(self, clause: str, tol=None, floor=0):
        self.clause = clause
        self.tol = tol
        self.max_abs = 0
        self.scale = floor
        self.failures = []
        self._pending = []

    def compare(self, lhs, rhs, where=()):
        diff = abs(lhs - rhs)
        if diff > self.max_abs:
            self.max_abs = diff
        self.scale = max(self.scale, abs(lhs), abs(rhs))
        if self.tol is None:
            if diff != 0:
                self.failures.append(where)
        else:
            self._pending.append((diff, where))

    def flag(self, where=()):
        """Record a failure that is not expressed as a numeric difference."""
        self.failures.append(where)

    def result(self, note: str = "") -> ClauseResult:
        if self.tol is None:
            return ClauseResult(self.clause, self.max_abs, not self.failures, self.failures, note)
        scale = self.scale if self.scale else 1
        limit = self.tol * scale
        failures = self.failures + [w for d, w in self._pending if d > limit]
        residual = self.max_abs / scale
        return ClauseResult(self.clause, residual, not failures, failures, note)
