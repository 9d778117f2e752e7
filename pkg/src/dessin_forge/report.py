"""Verification reports: claimed values next to computed values, with verdicts."""

from __future__ import annotations

import json
import time
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Any

MATCH = "match"
MISMATCH = "mismatch"
PAPER_SILENT = "paper-silent"
PAPER_DISCREPANCY = "paper-discrepancy"

VERDICTS = (MATCH, MISMATCH, PAPER_SILENT, PAPER_DISCREPANCY)


def _plain(value: Any) -> Any:
    if isinstance(value, Fraction):
        return int(value) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    if isinstance(value, list):
        return [_plain(v) for v in value]
    if hasattr(value, "item"):
        return value.item()
    return value


@dataclass(frozen=True)
class ReportEntry:
    subject: str
    claim: str
    paper_value: Any
    computed_value: Any
    verdict: str

    def to_record(self) -> dict:
        return {
            "subject": self.subject,
            "claim": self.claim,
            "paper_value": _plain(self.paper_value),
            "computed_value": _plain(self.computed_value),
            "verdict": self.verdict,
        }


@dataclass
class VerificationReport:
    """Append-only list of verdicts about one subject (or a sweep of subjects)."""

    subject: str
    entries: list[ReportEntry] = field(default_factory=list)
    elapsed: float = 0.0
    _started: float = field(default_factory=time.perf_counter, repr=False, compare=False)

    def add(self, claim: str, expected: Any, computed: Any, *, subject: str | None = None,
            verdict: str | None = None) -> ReportEntry:
        if verdict is None:
            if expected is None:
                verdict = PAPER_SILENT
            else:
                verdict = MATCH if _plain(expected) == _plain(computed) else MISMATCH
        entry = ReportEntry(subject or self.subject, claim, expected, computed, verdict)
        self.entries.append(entry)
        return entry

    def check(self, claim: str, ok: bool, computed: Any = None, *, subject: str | None = None) -> ReportEntry:
        """Record a boolean assertion (expected True)."""
        return self.add(claim, True, bool(ok) if computed is None else computed,
                        subject=subject, verdict=MATCH if ok else MISMATCH)

    def extend(self, other: "VerificationReport") -> None:
        self.entries.extend(other.entries)

    def finish(self) -> "VerificationReport":
        self.elapsed = time.perf_counter() - self._started
        return self

    @property
    def mismatches(self) -> list[ReportEntry]:
        return [e for e in self.entries if e.verdict == MISMATCH]

    @property
    def discrepancies(self) -> list[ReportEntry]:
        return [e for e in self.entries if e.verdict == PAPER_DISCREPANCY]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def find(self, claim: str, subject: str | None = None) -> ReportEntry:
        for e in self.entries:
            if e.claim == claim and (subject is None or e.subject == subject):
                return e
        raise KeyError(claim)

    def to_records(self) -> list[dict]:
        return [e.to_record() for e in self.entries]

    def to_json_lines(self) -> str:
        return "".join(json.dumps(r, sort_keys=True) + "\n" for r in self.to_records())

    def render_text(self, *, timing: bool = True) -> str:
        rows = [("subject", "claim", "paper", "computed", "verdict")]
        for e in self.entries:
            rows.append((e.subject, e.claim, _fmt(e.paper_value), _fmt(e.computed_value), e.verdict))
        widths = [max(len(r[i]) for r in rows) for i in range(5)]
        lines = [f"== {self.subject} =="]
        for n, r in enumerate(rows):
            lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
            if n == 0:
                lines.append("  ".join("-" * w for w in widths))
        counts = {v: sum(e.verdict == v for e in self.entries) for v in VERDICTS}
        lines.append(", ".join(f"{k}: {v}" for k, v in counts.items()))
        if timing:
            lines.append(f"# elapsed {self.elapsed:.2f}s (non-deterministic)")
        return "\n".join(lines) + "\n"


def _fmt(value: Any) -> str:
    if value is None:
        return "-"
    value = _plain(value)
    if isinstance(value, list):
        return "(" + ",".join(_fmt(v) for v in value) + ")"
    return str(value)
