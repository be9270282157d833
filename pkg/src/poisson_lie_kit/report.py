"""Verification reports: per-check entries and their human / machine renderings."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .exact import format_fraction

MACHINE_KEYS = ("check", "eq", "mode", "residual", "tol", "pass")


@dataclass(frozen=True)
class CheckResult:
    check: str
    eq: str
    mode: str  # "exact" or "float"
    residual: str
    tol: str
    passed: bool
    skipped: bool = False

    @classmethod
    def exact(cls, check: str, eq: str, max_abs: Fraction, passed: bool | None = None) -> "CheckResult":
        """Exact check; passes iff ``max_abs`` is zero unless ``passed`` says otherwise."""
        residual = "0" if max_abs == 0 else f"max|.|={format_fraction(max_abs)}"
        return cls(check, eq, "exact", residual, "0", max_abs == 0 if passed is None else passed)

    @classmethod
    def floating(cls, check: str, eq: str, value: float, tol: float, *, at_least: bool = False) -> "CheckResult":
        """Float check: ``value <= tol``, or ``value >= tol`` for negative controls."""
        passed = value >= tol if at_least else value <= tol
        bound = f">={tol:.1e}" if at_least else f"{tol:.1e}"
        return cls(check, eq, "float", f"{value:.3e}", bound, bool(passed))

    @classmethod
    def skip(cls, check: str, eq: str, mode: str, reason: str) -> "CheckResult":
        return cls(check, eq, mode, f"skipped: {reason}", "-", True, skipped=True)

    @classmethod
    def failed(cls, check: str, eq: str, mode: str, reason: str) -> "CheckResult":
        return cls(check, eq, mode, reason, "-", False)

    def as_dict(self) -> dict:
        return dict(zip(MACHINE_KEYS, (self.check, self.eq, self.mode, self.residual, self.tol, self.passed)))


@dataclass
class VerificationReport:
    suite: str
    seed: int
    input_digest: str
    entries: list[CheckResult] = field(default_factory=list)

    def add(self, entry: CheckResult):
        if any(e.check == entry.check for e in self.entries):
            raise ValueError(f"check {entry.check!r} reported twice")
        self.entries.append(entry)

    @property
    def overall(self) -> bool:
        return all(e.passed for e in self.entries)

    def failures(self) -> list[CheckResult]:
        return [e for e in self.entries if not e.passed]


def _status(e: CheckResult) -> str:
    if e.skipped:
        return "skip"
    return "PASS" if e.passed else "FAIL"


def emit_report(report: VerificationReport, fmt: str = "human") -> str:
    if fmt == "machine":
        doc = {
            "suite": report.suite,
            "seed": report.seed,
            "input_digest": report.input_digest,
            "overall": report.overall,
            "checks": [e.as_dict() for e in report.entries],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    if fmt != "human":
        raise ValueError(f"unknown report format {fmt!r}")
    header = ("check", "eq", "mode", "residual", "tol", "status")
    rows = [(e.check, e.eq, e.mode, e.residual, e.tol, _status(e)) for e in report.entries]
    widths = [max(len(str(r[c])) for r in [header, *rows]) for c in range(len(header))]
    line = lambda r: "  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip()  # noqa: E731
    out = [
        f"suite: {report.suite}   seed: {report.seed}   input: {report.input_digest[:16]}",
        line(header),
        line(["-" * w for w in widths]),
    ]
    out += [line(r) for r in rows]
    if rows:
        out.append(f"overall: {'PASS' if report.overall else 'FAIL'}")
    return "\n".join(out) + "\n"
