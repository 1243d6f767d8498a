"""Report records and their JSON / CSV / text serializations."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Iterable

from .numerics import EvalResult

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"


@dataclass(frozen=True)
class IdentityReport:
    identity_id: str
    lhs: EvalResult
    rhs: EvalResult
    abs_diff: float
    tolerance: float
    status: str
    notes: tuple[str, ...] = ()

    @classmethod
    def compare(cls, identity_id: str, lhs: EvalResult, rhs: EvalResult, tolerance: float,
                notes: Iterable[str] = ()) -> "IdentityReport":
        diff = abs(lhs.value - rhs.value)
        status = PASS if diff <= tolerance else FAIL
        return cls(identity_id, lhs, rhs, diff, tolerance, status, tuple(notes))

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def row(self) -> dict:
        return {
            "id": self.identity_id,
            "lhs": self.lhs.value,
            "rhs": self.rhs.value,
            "abs_diff": self.abs_diff,
            "tol": self.tolerance,
            "status": self.status,
        }


@dataclass(frozen=True)
class GenfunReport:
    """Aggregate over a parameter grid; skipped points never count as failures."""

    identity_id: str
    worst_pair: tuple[float, float] | None
    max_abs_diff: float
    tolerance: float
    status: str
    points: tuple[IdentityReport, ...] = ()
    skipped: tuple[tuple[float, float, str], ...] = ()

    @classmethod
    def aggregate(cls, identity_id: str, tolerance: float,
                  evaluated: Iterable[tuple[float, float, IdentityReport]],
                  skipped: Iterable[tuple[float, float, str]] = ()) -> "GenfunReport":
        worst = None
        max_diff = 0.0
        reports = []
        for a, x, rep in evaluated:
            reports.append(rep)
            if worst is None or rep.abs_diff > max_diff:
                worst, max_diff = (a, x), rep.abs_diff
        status = PASS if all(r.passed for r in reports) else FAIL
        return cls(identity_id, worst, max_diff, tolerance, status,
                   tuple(sorted(reports, key=lambda r: r.identity_id)), tuple(skipped))

    @property
    def passed(self) -> bool:
        return self.status == PASS


@dataclass
class SuiteReport:
    suite: str
    results: list[IdentityReport]
    config: dict = field(default_factory=dict)
    wall_ms: int = 0
    skipped: list[tuple[str, str]] = field(default_factory=list)

    def __post_init__(self):
        self.results = sorted(self.results, key=lambda r: r.identity_id)
        self.skipped = sorted(self.skipped)

    @property
    def pass_count(self) -> int:
        return sum(r.passed for r in self.results)

    @property
    def fail_count(self) -> int:
        return len(self.results) - self.pass_count

    @property
    def passed(self) -> bool:
        return self.fail_count == 0

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "config": self.config,
            "results": [r.row() for r in self.results],
            "skipped": [{"id": i, "reason": why} for i, why in self.skipped],
            "wall_ms": int(self.wall_ms),
        }


def _json_float(x: float):
    # JSON has no inf/nan literals.
    return x if math.isfinite(x) else repr(x)


def to_json(report: SuiteReport) -> str:
    d = report.to_dict()
    for row in d["results"]:
        for key in ("lhs", "rhs", "abs_diff", "tol"):
            row[key] = _json_float(row[key])
    return json.dumps(d, indent=2, sort_keys=False) + "\n"


CSV_COLUMNS = ("id", "lhs", "rhs", "abs_diff", "tol", "status")


def to_csv(report: SuiteReport) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in report.results:
        writer.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in r.row().items()})
    return buf.getvalue()


def to_text(report: SuiteReport) -> str:
    lines = [f"suite {report.suite}: {report.pass_count} passed, {report.fail_count} failed "
             f"({report.wall_ms} ms)"]
    width = max((len(r.identity_id) for r in report.results), default=2)
    for r in report.results:
        lines.append(f"  {r.status.upper():4}  {r.identity_id:<{width}}  lhs={r.lhs.value:.17g}  "
                     f"rhs={r.rhs.value:.17g}  |diff|={r.abs_diff:.3e}  tol={r.tolerance:.1e}")
    for ident, why in report.skipped:
        lines.append(f"  SKIP  {ident:<{width}}  {why}")
    return "\n".join(lines) + "\n"


def render(report: SuiteReport, fmt: str) -> str:
    if fmt == "json":
        return to_json(report)
    if fmt == "csv":
        return to_csv(report)
    if fmt == "text":
        return to_text(report)
    raise ValueError(f"unknown report format {fmt!r}")


def load_json(text: str) -> SuiteReport:
    """Rebuild a report from its JSON form, re-deriving each status from abs_diff and tol."""
    d = json.loads(text)
    results = []
    for row in d["results"]:
        diff, tol = float(row["abs_diff"]), float(row["tol"])
        results.append(IdentityReport(
            row["id"],
            EvalResult(float(row["lhs"]), 0.0, 0, "loaded"),
            EvalResult(float(row["rhs"]), 0.0, 0, "loaded"),
            diff, tol, PASS if diff <= tol else FAIL,
        ))
    skipped = [(s["id"], s["reason"]) for s in d.get("skipped", [])]
    return SuiteReport(d["suite"], results, d.get("config", {}), int(d.get("wall_ms", 0)), skipped)
