from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from faberkit.reports import FIELDS, compare, info, render, to_json, write_csv


def test_jsonl_schema():
    row = json.loads(to_json(compare("main-identity", 2, 2, None, (1, 2), 0, 0)))
    assert list(row) == list(FIELDS)
    assert row == {
        "check": "main-identity", "g": 2, "n": 2, "t": None, "a": [1, 2], "status": "pass",
        "lhs": "0/1", "rhs": "0/1", "value": "0/1", "millis": 0,
    }


def test_failing_row_carries_both_sides():
    report = compare("conjecture", 2, 2, 1, (1, 2), Fraction(-3, 4), 5)
    row = json.loads(to_json(report))
    assert row["status"] == "fail" and not report.passed
    assert (row["lhs"], row["rhs"]) == ("-3/4", "5/1")


def test_info_rows_pass():
    report = info("P", 2, 1, None, (2,), -20)
    assert report.passed and report.status == "info"
    assert json.loads(to_json(report))["lhs"] is None


def test_csv_flattening():
    buf = io.StringIO()
    write_csv([compare("recursion", 3, 3, 0, (2, 2, 2), 1, 1), info("C", 2, None, None, None, Fraction(1, 5760))], buf)
    rows = list(csv.DictReader(io.StringIO(buf.getvalue())))
    assert rows[0]["a"] == "2-2-2" and rows[0]["t"] == "0"
    assert rows[1]["a"] == "" and rows[1]["value"] == "1/5760"


def test_render_is_deterministic():
    reports = [compare("x", 2, 1, None, (3,), 1, 1)]
    assert render(reports) == render(reports)
    assert render(reports, "csv").splitlines()[0] == ",".join(FIELDS)
