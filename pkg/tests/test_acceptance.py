"""Acceptance criteria, one test (and one printed PASS/FAIL line) each.

The whole campaign runs once per session; criterion 9 additionally reruns it
in a fresh interpreter and compares the JSON-lines bytes.
"""
from __future__ import annotations

import subprocess
import sys
import time
from fractions import Fraction

import pytest

from faberkit.acceptance import CRITERIA
from faberkit.exact import faber_constant
from faberkit.identities import faber_integral
from faberkit.reports import render


@pytest.fixture(scope="module")
def campaign():
    results = {}
    for crit in CRITERIA:
        start = time.perf_counter()
        rows = crit.run(24301, 1)
        results[crit.number] = (crit, rows, time.perf_counter() - start)
    return results


def _report(capsys, number: int, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\ncriterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}")


def _failures(rows):
    return [r for r in rows if not r.passed]


@pytest.mark.parametrize("number", [1, 2, 3, 4, 5, 6, 7])
def test_criterion(number, campaign, capsys):
    crit, rows, seconds = campaign[number]
    bad = _failures(rows)
    ok = bool(rows) and not bad
    extra = ""
    if number == 1:
        # single-worker target of five minutes
        ok = ok and seconds < 300
        extra = f", {seconds:.1f}s single worker"
    _report(capsys, number, ok, f"{crit.title}: {len(rows)} rows, {len(bad)} failing{extra}")
    assert rows
    assert not bad, bad[:3]
    if number == 1:
        assert seconds < 300


def test_criterion_8(campaign, capsys):
    crit, rows, _ = campaign[8]
    literal = faber_constant(2) == Fraction(1, 5760) and faber_integral(2, (1,)) == Fraction(1, 2880)
    ok = literal and rows and not _failures(rows)
    _report(capsys, 8, ok, f"{crit.title}: integral(g=2, d=(1)) = {faber_integral(2, (1,))}, {len(rows)} rows")
    assert literal
    assert rows and not _failures(rows)


def test_criterion_9(campaign, capsys):
    crit, rows, _ = campaign[9]
    points = sum(1 for r in rows if r.check == "optimizer")
    first = "".join(render(campaign[c.number][1]) for c in CRITERIA)
    rerun = subprocess.run(
        [sys.executable, "-m", "faberkit", "verify", "--suite", "acceptance"],
        capture_output=True, text=True, check=False,
    )
    identical = rerun.stdout == first
    ok = points == 100 and not _failures(rows) and identical and rerun.returncode == 0
    _report(capsys, 9, ok, f"{crit.title}: {points} points; rerun byte-identical: {identical}")
    assert points == 100
    assert not _failures(rows)
    assert rerun.returncode == 0, rerun.stderr
    assert identical


def test_criterion_10_exploratory(campaign, capsys):
    # reported, not gating: a failure here would be a mathematical finding
    crit, rows, _ = campaign[10]
    bad = _failures(rows)
    _report(capsys, 10, not bad, f"{crit.title}: {len(rows)} rows, {len(bad)} failing (not gating)")
    assert rows
