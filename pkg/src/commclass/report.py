"""Verification reports and their text encodings."""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Iterable, Literal

Verdict = Literal["holds", "counterexample", "resource-limited"]

EXIT_CODES = {"holds": 0, "counterexample": 2, "resource-limited": 3}


@dataclass
class VerificationReport:
    name: str
    range: str
    verdict: Verdict
    witness: dict[str, Any] | None = None
    totals: dict[str, Any] = field(default_factory=dict)
    elapsed_ms: int = 0

    def __post_init__(self):
        if self.verdict not in EXIT_CODES:
            raise ValueError(f"{self.name}: unknown verdict {self.verdict!r}")
        if self.verdict == "counterexample" and self.witness is None:
            raise ValueError(f"{self.name}: a counterexample needs a witness")

    @property
    def holds(self) -> bool:
        return self.verdict == "holds"

    def record(self, timing: bool = True) -> str:
        """One JSON object per line, fixed key order."""
        fields: dict[str, Any] = {
            "name": self.name, "range": self.range, "verdict": self.verdict,
            "witness": self.witness, "totals": self.totals,
        }
        if timing:
            fields["elapsed_ms"] = self.elapsed_ms
        return json.dumps(fields, sort_keys=False, separators=(",", ":"))

    def text(self, timing: bool = True) -> str:
        line = f"{self.name} [{self.range}]: {self.verdict}"
        if self.totals:
            line += " " + " ".join(f"{k}={_short(v)}" for k, v in self.totals.items())
        if self.witness is not None:
            line += " witness=" + json.dumps(self.witness, separators=(",", ":"))
        if timing:
            line += f" ({self.elapsed_ms} ms)"
        return line


def _short(v: Any) -> str:
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(map(str, v)) + "]"
    return str(v)


def combined_exit_code(reports: Iterable[VerificationReport]) -> int:
    codes = {EXIT_CODES[r.verdict] for r in reports}
    if 2 in codes:
        return 2
    if 3 in codes:
        return 3
    return 0


@contextmanager
def stopwatch():
    """Yields a callable returning milliseconds elapsed since entry."""
    start = time.perf_counter()
    yield lambda: int(round((time.perf_counter() - start) * 1000))
