"""Command-line front end.

    faberkit verify --check main-identity --g 2..4 --n 2..5
    faberkit verify --suite acceptance
    faberkit eval P --g 2 --a 1,2
    faberkit scan Pnt --g 2..3 --n 3 --t 1
    faberkit bench --g 3 --n 5

Reports go to stdout (JSON lines or CSV), diagnostics to stderr. Exit code
is 0 when every check passes, 1 when one fails and 2 on a usage error.
"""
from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence, TextIO

from . import identities as ident
from .correlators import example1_system, example2_system
from .exact import faber_constant, parse_rational
from .reports import VerificationReport, info, write_csv, write_jsonl
from .verify import ALL_CHECKS, DEFAULT_SEED, run_checks, simplex_points

__all__ = ["RunConfig", "UsageError", "QUANTITIES", "parse_range", "parse_vector", "build_parser", "run", "main"]

G_LIMITS = (2, 12)
N_LIMITS = (1, 8)
WORKERS_ENV = "FABERKIT_WORKERS"


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    g_range: range = range(2, 4)
    n_range: range = range(2, 5)
    t: Optional[int] = None
    a: Optional[tuple[int, ...]] = None
    checks: tuple[str, ...] = ()
    seed: int = DEFAULT_SEED
    workers: int = 1
    output_format: str = "jsonl"
    optimizer: str = "census"
    quantity: Optional[str] = None
    suite: Optional[str] = None
    x: Optional[Fraction] = None
    d: Optional[tuple[int, ...]] = None
    count: Optional[int] = None
    t_max: Optional[int] = None
    timing: bool = False
    extra: dict = field(default_factory=dict)

    def validate(self) -> None:
        for name, r, (lo, hi) in (("g", self.g_range, G_LIMITS), ("n", self.n_range, N_LIMITS)):
            if not r:
                raise UsageError(f"empty {name} range")
            if r[0] < lo or r[-1] > hi:
                raise UsageError(f"{name} range {r[0]}..{r[-1]} outside {lo}..{hi}")
        if self.workers < 1:
            raise UsageError("--workers must be positive")
        if not 0 <= self.seed < 2**64:
            raise UsageError("--seed must be a 64-bit unsigned integer")
        if self.optimizer not in ident.OPTIMIZERS:
            raise UsageError(f"unknown optimizer {self.optimizer!r}")
        if self.output_format not in ("jsonl", "csv"):
            raise UsageError(f"unknown format {self.output_format!r}")
        for c in self.checks:
            if c not in ALL_CHECKS and c != "P-vanishing":
                raise UsageError(f"unknown check {c!r}; known: {', '.join(sorted(ALL_CHECKS))}")
        if self.a is not None:
            if any(x < 0 for x in self.a):
                raise UsageError("a-vector entries must be non-negative")
            if self.extra.get("n_given") and list(self.n_range) != [len(self.a)]:
                raise UsageError(f"a-vector has {len(self.a)} entries, inconsistent with --n {self.n_range[0]}..{self.n_range[-1]}")


def parse_range(text: str) -> range:
    """``"3"`` or ``"2..5"`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
        else:
            lo_i = hi_i = int(text)
    except ValueError:
        raise UsageError(f"malformed range {text!r}; expected N or LO..HI") from None
    if lo_i > hi_i:
        raise UsageError(f"malformed range {text!r}: low end above high end")
    return range(lo_i, hi_i + 1)


def parse_vector(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip() != "")
    except ValueError:
        raise UsageError(f"malformed integer vector {text!r}") from None


# --------------------------------------------------------------------------
# quantities for eval / scan

def _need_t(t: Optional[int], n: int) -> list[int]:
    return list(range(n + 1)) if t is None else [t]


def _q_simple(fn: Callable) -> Callable:
    def rows(p: ident.SimplexPoint, cfg: RunConfig):
        return [(None, fn(p, cfg))]

    return rows


def _q_split(fn: Callable) -> Callable:
    def rows(p: ident.SimplexPoint, cfg: RunConfig):
        return [(t, fn(p, t, cfg)) for t in _need_t(cfg.t, p.n)]

    return rows


def _x_of(cfg: RunConfig) -> Fraction:
    if cfg.x is None:
        raise UsageError("this quantity needs --x")
    return cfg.x


_E1 = example1_system()
_E2 = example2_system()

QUANTITIES: dict[str, Callable] = {
    "P": _q_simple(lambda p, c: ident.eval_P(p, c.optimizer)),
    "R": _q_simple(lambda p, c: ident.eval_R(p, c.optimizer)),
    "P-tilde": _q_simple(lambda p, c: ident.eval_P_tilde(p, c.optimizer)),
    "E1": _q_simple(lambda p, c: ident.eval_E(p, _E1, c.optimizer)),
    "E2": _q_simple(lambda p, c: ident.eval_E(p, _E2, c.optimizer)),
    "A": _q_simple(lambda p, c: ident.eval_A(p, "low")),
    "A-high": _q_simple(lambda p, c: ident.eval_A(p, "high")),
    "Pnt": _q_split(lambda p, t, c: ident.eval_P_nt(p, t, c.optimizer)),
    "rhs": _q_split(lambda p, t, c: ident.conjecture_rhs(p, t)),
    "S": _q_simple(lambda p, c: ident.eval_S(p, _x_of(c), c.optimizer)),
    "S-tilde": _q_simple(lambda p, c: ident.tilde_S_closed(p, _x_of(c), c.optimizer)),
}
# quantities that take g (and d) but no a-vector
_SCALAR_QUANTITIES = ("C", "integral")


def _eval_rows(cfg: RunConfig, points) -> list[VerificationReport]:
    fn = QUANTITIES[cfg.quantity]
    rows = []
    for p in points:
        start = time.perf_counter()
        values = fn(p, cfg)
        ms = int((time.perf_counter() - start) * 1000) if cfg.timing else 0
        rows.extend(info(cfg.quantity, p.g, p.n, t, p.a, v, ms) for t, v in values)
    return rows


def _scalar_rows(cfg: RunConfig) -> list[VerificationReport]:
    rows = []
    for g in cfg.g_range:
        if cfg.quantity == "C":
            rows.append(info("C", g, None, None, None, faber_constant(g)))
        else:
            if cfg.d is None:
                raise UsageError("integral needs --d")
            rows.append(info("integral", g, len(cfg.d), None, cfg.d, ident.faber_integral(g, cfg.d)))
    return rows


# --------------------------------------------------------------------------
# commands

def _cmd_verify(cfg: RunConfig, err: TextIO) -> tuple[list[VerificationReport], bool]:
    if cfg.suite is not None:
        from .acceptance import run_acceptance

        if cfg.suite != "acceptance":
            raise UsageError(f"unknown suite {cfg.suite!r}")
        rows: list[VerificationReport] = []
        ok = True
        for crit, crit_rows in run_acceptance(cfg.seed, cfg.workers):
            passed = all(r.passed for r in crit_rows)
            tag = "PASS" if passed else "FAIL"
            note = "" if crit.gating else " (not gating)"
            print(f"criterion {crit.number}: {tag} {crit.title} [{len(crit_rows)} rows]{note}", file=err)
            ok &= passed or not crit.gating
            rows.extend(crit_rows)
        return rows, ok
    if not cfg.checks:
        raise UsageError("verify needs --check or --suite")
    rows = run_checks(
        cfg.checks, cfg.g_range, cfg.n_range, cfg.seed, cfg.optimizer, cfg.workers, cfg.count,
        cfg.t_max if cfg.t is None else cfg.t, cfg.timing,
    )
    if cfg.t is not None:
        rows = [r for r in rows if r.t is None or r.t == cfg.t]
    return rows, all(r.passed for r in rows)


def _cmd_eval(cfg: RunConfig) -> list[VerificationReport]:
    if cfg.quantity in _SCALAR_QUANTITIES:
        return _scalar_rows(cfg)
    if cfg.a is None:
        raise UsageError("eval needs --a")
    if len(cfg.g_range) != 1:
        raise UsageError("eval takes a single --g")
    return _eval_rows(cfg, [ident.SimplexPoint(cfg.g_range[0], cfg.a)])


def _cmd_scan(cfg: RunConfig) -> list[VerificationReport]:
    if cfg.quantity in _SCALAR_QUANTITIES:
        return _scalar_rows(cfg)
    points = [p for g in cfg.g_range for n in cfg.n_range for p in simplex_points(g, n)]
    return _eval_rows(cfg, points)


def _cmd_bench(cfg: RunConfig) -> list[VerificationReport]:
    rows = []
    for g in cfg.g_range:
        for n in cfg.n_range:
            ident.clear_caches()
            total_start = time.perf_counter()
            count = 0
            for p in simplex_points(g, n):
                start = time.perf_counter()
                value = ident.eval_P(p, cfg.optimizer)
                ident.eval_P_split(p, cfg.optimizer)
                ms = int((time.perf_counter() - start) * 1000)
                rows.append(info("bench-point", g, n, None, p.a, value, ms))
                count += 1
            total = int((time.perf_counter() - total_start) * 1000)
            rows.append(info("bench-total", g, n, None, None, count, total))
    return rows


def run(cfg: RunConfig, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    """Execute ``cfg``, write report rows to ``out`` and return the exit code."""
    try:
        cfg.validate()
        if cfg.command == "verify":
            rows, ok = _cmd_verify(cfg, err)
        else:
            if cfg.command in ("eval", "scan") and cfg.quantity not in QUANTITIES and cfg.quantity not in _SCALAR_QUANTITIES:
                known = ", ".join(list(QUANTITIES) + list(_SCALAR_QUANTITIES))
                raise UsageError(f"unknown quantity {cfg.quantity!r}; known: {known}")
            handler = {"eval": _cmd_eval, "scan": _cmd_scan, "bench": _cmd_bench}[cfg.command]
            rows, ok = handler(cfg), True
    except ValueError as exc:
        print(f"error: {exc}", file=err)
        return 2
    if cfg.output_format == "csv":
        write_csv(rows, out)
    else:
        write_jsonl(rows, out)
    return 0 if ok else 1


# --------------------------------------------------------------------------
# argument parsing

def _default_workers() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="faberkit", description="Exact checks of Faber-type set-partition identities.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--g", default="2..3", help="genus or range LO..HI (default 2..3)")
    common.add_argument("--n", default=None, help="number of points or range LO..HI (default 2..4)")
    common.add_argument("--t", type=int, default=None, help="restrict to one t")
    common.add_argument("--format", dest="output_format", choices=("jsonl", "csv"), default="jsonl")
    common.add_argument("--optimizer", choices=ident.OPTIMIZERS, default="census")
    common.add_argument("--workers", type=int, default=None, help=f"worker processes (default ${WORKERS_ENV} or 1)")
    common.add_argument("--timing", action="store_true", help="fill the millis field (breaks byte-identical output)")

    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run named checks or the acceptance suite")
    v.add_argument("--check", action="append", default=[], help="check name; repeatable")
    v.add_argument("--suite", choices=("acceptance",), default=None)
    v.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"seed for random-point checks (default {DEFAULT_SEED})")
    v.add_argument("--count", type=int, default=None, help="points per (g, n) for random checks")
    v.add_argument("--t-max", type=int, default=None, help="largest t for per-t checks")
    v.add_argument("--list", action="store_true", help="list check names and exit")

    for name, help_text in (("eval", "evaluate one quantity at one point"), ("scan", "evaluate over all simplex points")):
        e = sub.add_parser(name, parents=[common], help=help_text)
        e.add_argument("quantity", help="P, R, P-tilde, E1, E2, A, A-high, Pnt, rhs, S, S-tilde, C or integral")
        e.add_argument("--a", default=None, help="comma-separated a-vector")
        e.add_argument("--x", default=None, help="rational point for S and S-tilde")
        e.add_argument("--d", default=None, help="comma-separated exponents for integral")

    sub.add_parser("bench", parents=[common], help="time P and P_{n,t} per simplex point")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    g_range = parse_range(ns.g)
    a = parse_vector(ns.a) if getattr(ns, "a", None) else None
    if ns.n is not None:
        n_range = parse_range(ns.n)
    elif a is not None:
        n_range = range(len(a), len(a) + 1)
    else:
        n_range = range(2, 5)
    x = None
    if getattr(ns, "x", None) is not None:
        try:
            x = parse_rational(ns.x)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"malformed rational {ns.x!r}") from None
    return RunConfig(
        command=ns.command,
        g_range=g_range,
        n_range=n_range,
        t=ns.t,
        a=a,
        checks=tuple(getattr(ns, "check", ())),
        seed=getattr(ns, "seed", DEFAULT_SEED),
        workers=ns.workers if ns.workers is not None else _default_workers(),
        output_format=ns.output_format,
        optimizer=ns.optimizer,
        quantity=getattr(ns, "quantity", None),
        suite=getattr(ns, "suite", None),
        x=x,
        d=parse_vector(ns.d) if getattr(ns, "d", None) else None,
        count=getattr(ns, "count", None),
        t_max=getattr(ns, "t_max", None),
        timing=ns.timing,
        extra={"n_given": ns.n is not None},
    )


def main(argv: Optional[Sequence[str]] = None, out: TextIO = sys.stdout, err: TextIO = sys.stderr) -> int:
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(ns, "list", False):
        for name in sorted(ALL_CHECKS):
            print(name, file=out)
        return 0
    try:
        cfg = config_from_args(ns)
    except UsageError as exc:
        print(f"error: {exc}", file=err)
        return 2
    return run(cfg, out, err)


if __name__ == "__main__":
    sys.exit(main())
