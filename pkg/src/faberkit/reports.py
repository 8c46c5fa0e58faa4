"""Report rows and their JSON-lines / CSV encodings."""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, TextIO

from .exact import format_rational

__all__ = ["VerificationReport", "compare", "info", "FIELDS", "write_jsonl", "write_csv", "to_json"]

FIELDS = ("check", "g", "n", "t", "a", "status", "lhs", "rhs", "value", "millis")

PASS = "pass"
FAIL = "fail"
INFO = "info"


@dataclass
class VerificationReport:
    """One check (or one evaluation) at one parameter set.

    ``status`` is ``"pass"``/``"fail"`` for checks and ``"info"`` for plain
    evaluations and benchmarks. Failing rows always carry ``lhs`` and ``rhs``.
    """

    check: str
    g: Optional[int]
    n: Optional[int]
    t: Optional[int]
    a: Optional[tuple[int, ...]]
    status: str
    lhs: Optional[Fraction] = None
    rhs: Optional[Fraction] = None
    value: Optional[Fraction] = None
    millis: int = 0

    @property
    def passed(self) -> bool:
        return self.status != FAIL

    def to_row(self) -> dict:
        return {
            "check": self.check,
            "g": self.g,
            "n": self.n,
            "t": self.t,
            "a": list(self.a) if self.a is not None else None,
            "status": self.status,
            "lhs": _fmt(self.lhs),
            "rhs": _fmt(self.rhs),
            "value": _fmt(self.value),
            "millis": int(self.millis),
        }


def _fmt(x) -> Optional[str]:
    return None if x is None else format_rational(x)


def compare(
    check: str,
    g: Optional[int],
    n: Optional[int],
    t: Optional[int],
    a: Optional[Sequence[int]],
    lhs,
    rhs,
    value=None,
) -> VerificationReport:
    lhs = Fraction(lhs)
    rhs = Fraction(rhs)
    return VerificationReport(
        check=check,
        g=g,
        n=n,
        t=t,
        a=tuple(a) if a is not None else None,
        status=PASS if lhs == rhs else FAIL,
        lhs=lhs,
        rhs=rhs,
        value=lhs if value is None else Fraction(value),
    )


def info(check: str, g, n, t, a, value, millis: int = 0) -> VerificationReport:
    return VerificationReport(
        check=check,
        g=g,
        n=n,
        t=t,
        a=tuple(a) if a is not None else None,
        status=INFO,
        value=None if value is None else Fraction(value),
        millis=millis,
    )


def to_json(report: VerificationReport) -> str:
    return json.dumps(report.to_row(), separators=(", ", ": "))


def write_jsonl(reports: Iterable[VerificationReport], out: TextIO) -> None:
    for r in reports:
        out.write(to_json(r) + "\n")


def _csv_row(report: VerificationReport) -> dict:
    row = report.to_row()
    row["a"] = "-".join(str(x) for x in report.a) if report.a is not None else ""
    return {k: ("" if v is None else v) for k, v in row.items()}


def write_csv(reports: Iterable[VerificationReport], out: TextIO, header: bool = True) -> None:
    writer = csv.DictWriter(out, fieldnames=FIELDS, lineterminator="\n")
    if header:
        writer.writeheader()
    for r in reports:
        writer.writerow(_csv_row(r))


def render(reports: Iterable[VerificationReport], fmt: str = "jsonl") -> str:
    buf = io.StringIO()
    if fmt == "csv":
        write_csv(reports, buf)
    else:
        write_jsonl(reports, buf)
    return buf.getvalue()
