"""Verification campaigns built from named checks.

Checks come in these kinds:

* simplex checks run at every integer point ``sum(a) = 2g-3+n`` and are
  driven by :func:`verify_simplex`;
* random checks test polynomial identities at seeded random ``a`` (not on
  the simplex);
* exhaustive checks sweep a fixed finite range and emit one aggregated row
  per block of the sweep.

Output order never depends on the worker count.
"""
from __future__ import annotations

import itertools
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Optional, Sequence

from .combinatorics import compositions
from .correlators import (
    CorrelatorKey,
    example1_system,
    example2_closed_form,
    example2_system,
    make_delta_system,
)
from .exact import binomial, double_factorial_odd, factorial, faber_constant
from .identities import (
    SimplexPoint,
    check_recursion,
    check_reduction,
    conjecture_rhs,
    eval_A,
    eval_E,
    eval_P,
    eval_P_split,
    eval_R,
    faber_integral,
    parity_flip_sums,
    tilde_S_closed,
    eval_S,
)
from .reports import FAIL, PASS, VerificationReport, compare

__all__ = [
    "DEFAULT_SEED",
    "SIMPLEX_CHECKS",
    "RANDOM_CHECKS",
    "EXHAUSTIVE_CHECKS",
    "ALL_CHECKS",
    "S_POINTS",
    "verify_simplex",
    "random_suite",
    "exhaustive_suite",
    "run_checks",
    "derivative_targets",
    "string_equation_rows",
    "parity_flip_rows",
]

DEFAULT_SEED = 24301

# evaluation points for the generating-polynomial check
S_POINTS = (Fraction(-2), Fraction(-1), Fraction(0), Fraction(1), Fraction(2), Fraction(3))


# --------------------------------------------------------------------------
# simplex checks

def _main_identity(p: SimplexPoint, opt: str, t_max):
    return [compare("main-identity", p.g, p.n, None, p.a, eval_P(p, opt), 0)]


def _r_identity(p: SimplexPoint, opt: str, t_max):
    return [compare("r-identity", p.g, p.n, None, p.a, eval_R(p, opt), 0)]


_SYSTEMS: dict = {}


def _system(name: str):
    # one memoized system per process
    if name not in _SYSTEMS:
        _SYSTEMS[name] = example1_system() if name == "example-1" else example2_system()
    return _SYSTEMS[name]


def _e_faber(p: SimplexPoint, opt: str, t_max):
    return [compare("e-faber", p.g, p.n, None, p.a, eval_E(p, _system("example-1"), opt), 0)]


def _e_extended(p: SimplexPoint, opt: str, t_max):
    return [compare("e-extended", p.g, p.n, None, p.a, eval_E(p, _system("example-2"), opt), 0)]


def _t_range(p: SimplexPoint, t_max):
    top = p.n if t_max is None else min(p.n, t_max)
    return range(top + 1)


def _conjecture(p: SimplexPoint, opt: str, t_max):
    split = eval_P_split(p, opt)
    return [compare("conjecture", p.g, p.n, t, p.a, split[t], conjecture_rhs(p, t)) for t in _t_range(p, t_max)]


def _n1_split(p: SimplexPoint, opt: str, t_max):
    split = eval_P_split(p, opt)
    a1 = eval_A(p)
    g = p.g
    return [
        compare("n1-split", g, 1, 0, p.a, split[0], (2 * g - 2) * a1),
        compare("n1-split", g, 1, 1, p.a, split[1], (2 * g - 1) * a1),
    ]


def _recursion(p: SimplexPoint, opt: str, t_max):
    return [check_recursion(p, t, opt) for t in _t_range(p, t_max)]


def _generating_polynomial(p: SimplexPoint, opt: str, t_max):
    last = None
    for x in S_POINTS:
        lhs, rhs = eval_S(p, x, opt), tilde_S_closed(p, x, opt)
        last = (lhs, rhs)
        if lhs != rhs:
            break
    return [compare("generating-polynomial", p.g, p.n, None, p.a, *last)]


def _a_variants(p: SimplexPoint, opt: str, t_max):
    return [compare("a-variants", p.g, p.n, None, p.a, eval_A(p, "low"), eval_A(p, "high"))]


def _reduction_corollary(p: SimplexPoint, opt: str, t_max):
    lhs = eval_P(SimplexPoint(p.g, p.a + (1,)), opt)
    rhs = (2 * p.n - 2) * eval_P(p, opt)
    return [compare("reduction-corollary", p.g, p.n, None, p.a, lhs, rhs)]


@dataclass(frozen=True)
class SimplexCheck:
    fn: Callable
    min_n: int = 1
    max_n: Optional[int] = None
    description: str = ""


SIMPLEX_CHECKS: dict[str, SimplexCheck] = {
    "a-variants": SimplexCheck(_a_variants, 1, None, "A_n over |o| = 2g-4+n equals A_n over |o| = 2g-2+n"),
    "conjecture": SimplexCheck(_conjecture, 1, None, "P_{n,t} equals the conjectured multiple of A_n"),
    "e-extended": SimplexCheck(_e_extended, 2, None, "E vanishes with extended double-factorial correlators"),
    "e-faber": SimplexCheck(_e_faber, 2, None, "E vanishes with Faber correlators, zero on negative indices"),
    "generating-polynomial": SimplexCheck(_generating_polynomial, 1, None, "sum_t P_{n,t} x^t matches the closed form"),
    "main-identity": SimplexCheck(_main_identity, 2, None, "P vanishes"),
    "n1-split": SimplexCheck(_n1_split, 1, 1, "P_{1,0} = (2g-2) A_1 and P_{1,1} = (2g-1) A_1"),
    "r-identity": SimplexCheck(_r_identity, 2, None, "R vanishes"),
    "recursion": SimplexCheck(_recursion, 1, None, "three-term recursion in t"),
    "reduction-corollary": SimplexCheck(_reduction_corollary, 1, None, "P(a, 1) = (2n-2) P(a)"),
}
# alternative name for main-identity
_ALIASES = {"P-vanishing": "main-identity"}


def simplex_points(g: int, n: int) -> Iterator[SimplexPoint]:
    for a in compositions(2 * g - 3 + n, n):
        yield SimplexPoint(g, a)


def _point_reports(args) -> list[VerificationReport]:
    point, checks, optimizer, t_max, timing = args
    out = []
    for name in checks:
        start = time.perf_counter()
        rows = SIMPLEX_CHECKS[name].fn(point, optimizer, t_max)
        if timing:
            ms = int((time.perf_counter() - start) * 1000)
            for r in rows:
                r.millis = ms
        out.extend(rows)
    return out


def _normalize_checks(checks: Iterable[str]) -> list[str]:
    names = []
    for c in checks:
        c = _ALIASES.get(c, c)
        if c not in ALL_CHECKS:
            raise ValueError(f"unknown check {c!r}; known checks: {', '.join(sorted(ALL_CHECKS))}")
        names.append(c)
    return sorted(set(names))


def verify_simplex(
    g: int,
    n: int,
    checks: Iterable[str],
    optimizer: str = "census",
    workers: int = 1,
    t_max: Optional[int] = None,
    timing: bool = False,
) -> list[VerificationReport]:
    """Run simplex checks at every integer point of ``sum(a) = 2g-3+n``.

    Rows come in lexicographic point order, then check-name order. Checks
    whose ``n`` range excludes ``n`` contribute no rows.
    """
    if g < 2 or n < 1:
        raise ValueError(f"need g >= 2 and n >= 1, got g={g}, n={n}")
    names = _normalize_checks(checks)
    for c in names:
        if c not in SIMPLEX_CHECKS:
            raise ValueError(f"{c!r} is not a simplex check")
    names = [
        c for c in names
        if SIMPLEX_CHECKS[c].min_n <= n and (SIMPLEX_CHECKS[c].max_n is None or n <= SIMPLEX_CHECKS[c].max_n)
    ]
    if not names:
        return []
    jobs = [(p, tuple(names), optimizer, t_max, timing) for p in simplex_points(g, n)]
    return _map_ordered(_point_reports, jobs, workers)


def _map_ordered(fn, jobs: list, workers: int) -> list:
    if workers <= 1 or len(jobs) < 2:
        results = [fn(j) for j in jobs]
    else:
        chunk = max(1, len(jobs) // (4 * workers))
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(fn, jobs, chunksize=chunk))
    return [r for rows in results for r in rows]


# --------------------------------------------------------------------------
# random checks (polynomial identities away from the simplex)

def _rng(seed: int, check: str, g: int, n: int) -> random.Random:
    return random.Random(f"{seed}:{check}:{g}:{n}")


def _random_a(rng: random.Random, n: int, top: int = 10) -> tuple[int, ...]:
    return tuple(rng.randint(0, top) for _ in range(n))


def _hyperplane(g, n, count, rng, opt):
    rows = []
    for _ in range(count):
        a = list(_random_a(rng, n))
        a[rng.randrange(n)] = 0
        rows.append(compare("hyperplane", g, n, None, a, eval_P(SimplexPoint(g, a), opt), 0))
    return rows


def _splitting(g, n, count, rng, opt):
    rows = []
    for _ in range(count):
        p = SimplexPoint(g, _random_a(rng, n))
        rows.append(compare("splitting", g, n, None, p.a, sum(eval_P_split(p, opt)), eval_P(p, opt)))
    return rows


def _reduction(g, n, count, rng, opt):
    return [check_reduction(g, n, _random_a(rng, n), opt) for _ in range(count)]


def _e_systems(g, n, count, rng, opt):
    rows = []
    for _ in range(count):
        p = SimplexPoint(g, _random_a(rng, n))
        rows.append(
            compare("e-systems", g, n, None, p.a, eval_E(p, _system("example-1"), opt), eval_E(p, _system("example-2"), opt))
        )
    return rows


def _pe_proportionality(g, n, count, rng, opt):
    rows = []
    for _ in range(count):
        p = SimplexPoint(g, _random_a(rng, n))
        e = g - 2 + n
        rhs = (-1) ** e * 4**e * eval_E(p, _system("example-2"), opt)
        rows.append(compare("pe-proportionality", g, n, None, p.a, eval_P(p, opt), rhs))
    return rows


def derivative_targets(g: int, max_k: int = 3, lo: int = -3, hi: Optional[int] = None) -> list[CorrelatorKey]:
    """Sorted keys with no zero, at least one negative index, ``k <= max_k``,
    entries in ``lo..hi`` (default ``g+2``) and ``sum = g-2+k``."""
    hi = g + 2 if hi is None else hi
    values = [v for v in range(lo, hi + 1) if v != 0]
    out = []
    for k in range(1, max_k + 1):
        for idx in itertools.combinations_with_replacement(values, k):
            if idx[0] < 0 and sum(idx) == g - 2 + k:
                out.append(CorrelatorKey(g, idx))
    return out


def _derivative(g, n, count, rng, opt):
    base = example1_system()
    points = [SimplexPoint(g, _random_a(rng, n)) for _ in range(count)]
    base_values = [eval_E(p, base, opt) for p in points]
    rows = []
    for key in derivative_targets(g):
        perturbed = make_delta_system(base, key, Fraction(1))
        name = "derivative@" + ",".join(str(d) for d in key.indices)
        for p, bv in zip(points, base_values):
            rows.append(compare(name, g, n, None, p.a, eval_E(p, perturbed, opt), bv))
    return rows


def _optimizer_rows(g, n, a, rows):
    p = SimplexPoint(g, a)
    rows.append(compare("optimizer", g, n, None, a, eval_P(p, "census"), eval_P(p, "direct")))
    rows.append(compare("optimizer-R", g, n, None, a, eval_R(p, "census"), eval_R(p, "direct")))
    census, direct = eval_P_split(p, "census"), eval_P_split(p, "direct")
    for t in range(n + 1):
        rows.append(compare("optimizer-split", g, n, t, a, census[t], direct[t]))


def _optimizer(g, n, count, rng, opt):
    rows: list[VerificationReport] = []
    for _ in range(count):
        _optimizer_rows(g, n, _random_a(rng, n, 6), rows)
    return rows


@dataclass(frozen=True)
class RandomCheck:
    fn: Callable
    default_count: int
    min_n: int = 1


RANDOM_CHECKS: dict[str, RandomCheck] = {
    "derivative": RandomCheck(_derivative, 20, 2),
    "e-systems": RandomCheck(_e_systems, 25, 2),
    "hyperplane": RandomCheck(_hyperplane, 50, 1),
    "optimizer": RandomCheck(_optimizer, 5, 1),
    "pe-proportionality": RandomCheck(_pe_proportionality, 25, 2),
    "reduction": RandomCheck(_reduction, 50, 1),
    "splitting": RandomCheck(_splitting, 50, 1),
}


def random_suite(
    check: str, g: int, n: int, count: Optional[int] = None, seed: int = DEFAULT_SEED, optimizer: str = "census"
) -> list[VerificationReport]:
    entry = RANDOM_CHECKS[check]
    if n < entry.min_n:
        return []
    count = entry.default_count if count is None else count
    return entry.fn(g, n, count, _rng(seed, check, g, n), optimizer)


def optimizer_campaign(count: int, g_values: Sequence[int], n_values: Sequence[int], seed: int = DEFAULT_SEED):
    """``count`` points with ``(g, n)`` drawn from the given ranges."""
    rng = random.Random(f"{seed}:optimizer-campaign")
    rows: list[VerificationReport] = []
    for _ in range(count):
        g = rng.choice(list(g_values))
        n = rng.choice(list(n_values))
        _optimizer_rows(g, n, _random_a(rng, n, 6), rows)
    return rows


# --------------------------------------------------------------------------
# exhaustive checks

def _aggregate(check, g, n, a, failures, total_lhs, total_rhs, count) -> VerificationReport:
    # pass rows carry the summed sides; fail rows the first failing instance
    if failures:
        lhs, rhs = failures[0]
        status = FAIL
    else:
        lhs, rhs = total_lhs, total_rhs
        status = PASS
    return VerificationReport(
        check=check, g=g, n=n, t=None, a=tuple(a) if a is not None else None,
        status=status, lhs=Fraction(lhs), rhs=Fraction(rhs), value=Fraction(count),
    )


def string_equation_rows(g: int, k: int, bound: int = 8) -> VerificationReport:
    """Closed-form correlators ``(2g-3+k)!/prod (2d_i-1)!!`` against the string
    equation at every ``(d_1..d_k, 0)`` with ``|d_i| <= bound``.

    ``n`` in the row holds ``k``; ``value`` counts the tuples checked.
    """
    inv_df = {d: 1 / double_factorial_odd(2 * d - 1) for d in range(-bound - 1, bound + 1)}
    top = factorial(2 * g - 2 + k)
    low = factorial(2 * g - 3 + k)
    total = g - 1 + k
    failures = []
    count = 0
    s_l = Fraction(0)
    s_r = Fraction(0)
    for d in itertools.product(range(-bound, bound + 1), repeat=k):
        if sum(d) != total:
            continue
        count += 1
        prod_all = Fraction(1)
        for x in d:
            prod_all *= inv_df[x]
        lhs = top * prod_all * inv_df[0]
        rhs = Fraction(0)
        for j, x in enumerate(d):
            rhs += low * prod_all / inv_df[x] * inv_df[x - 1]
        s_l += lhs
        s_r += rhs
        if lhs != rhs and len(failures) < 1:
            failures.append((lhs, rhs))
    return _aggregate("string-equation", g, k, None, failures, s_l, s_r, count)


def string_equation_direct(g: int, d: Sequence[int]) -> VerificationReport:
    """One instance of the string-equation compliance check."""
    d = tuple(d)
    if sum(d) != g - 1 + len(d):
        raise ValueError(f"(d, 0) violates the dimension constraint: sum{d} != g-1+k = {g - 1 + len(d)}")
    lhs = example2_closed_form(g, d + (0,))
    rhs = sum(
        (example2_closed_form(g, d[:j] + (d[j] - 1,) + d[j + 1:]) for j in range(len(d))), Fraction(0)
    )
    return compare("string-equation", g, len(d), None, None, lhs, rhs)


def parity_flip_rows(n: int, max_a: int = 4, max_t: int = 2) -> list[VerificationReport]:
    """Parity-flip lemma for every ``a`` in ``0..max_a``, ``t`` in ``0..max_t``,
    every parity vector and every ``B`` in ``0..2|a|+|t|``; one row per ``a``."""
    rows = []
    for a in itertools.product(range(max_a + 1), repeat=n):
        failures = []
        count = 0
        s_l = s_r = 0
        A = sum(a)
        for t in itertools.product(range(max_t + 1), repeat=n):
            T = sum(t)
            for par in itertools.product((0, 1), repeat=n):
                left = parity_flip_sums(a, t, par)
                flipped = tuple((p + ti) % 2 for p, ti in zip(par, t))
                right = parity_flip_sums(a, t, flipped)
                for B in range(0, 2 * A + T + 1):
                    lv = left[B] if B < len(left) else 0
                    j = 2 * A - B + T
                    rv = right[j] if 0 <= j < len(right) else 0
                    count += 1
                    s_l += lv
                    s_r += rv
                    if lv != rv and not failures:
                        failures.append((lv, rv))
        rows.append(_aggregate("parity-flip", None, n, a, failures, s_l, s_r, count))
    return rows


def _bernoulli_tanigawa(m: int) -> Fraction:
    # Akiyama-Tanigawa gives B_1 = +1/2; only even indices are used here
    A = [Fraction(0)] * (m + 1)
    for i in range(m + 1):
        A[i] = Fraction(1, i + 1)
        for j in range(i, 0, -1):
            A[j - 1] = j * (A[j - 1] - A[j])
    return A[0]


def normalization_row(g: int) -> VerificationReport:
    """One-point integral from :func:`faber_integral` against the same number
    built from a Bernoulli number computed by a different algorithm."""
    lhs = faber_integral(g, (g - 1,))
    b = abs(_bernoulli_tanigawa(2 * g))
    rhs = b / (2 ** (2 * g - 1) * math.factorial(2 * g)) * math.factorial(2 * g - 2) / double_factorial_odd(2 * g - 3)
    return compare("normalization", g, 1, None, (g - 1,), lhs, rhs)


EXHAUSTIVE_CHECKS = ("normalization", "parity-flip", "string-equation")

ALL_CHECKS = set(SIMPLEX_CHECKS) | set(RANDOM_CHECKS) | set(EXHAUSTIVE_CHECKS)


def exhaustive_suite(check: str, g_values: Sequence[int], n_values: Sequence[int]) -> list[VerificationReport]:
    """``parity-flip`` uses ``n`` in ``1..3``; ``string-equation`` uses ``k = n``
    in ``1..5``; ``normalization`` uses ``g`` only."""
    if check == "parity-flip":
        return [r for n in n_values if 1 <= n <= 3 for r in parity_flip_rows(n)]
    if check == "string-equation":
        return [string_equation_rows(g, k) for g in g_values for k in n_values if 1 <= k <= 5]
    if check == "normalization":
        return [normalization_row(g) for g in g_values]
    raise ValueError(f"unknown exhaustive check {check!r}")


def run_checks(
    checks: Iterable[str],
    g_values: Sequence[int],
    n_values: Sequence[int],
    seed: int = DEFAULT_SEED,
    optimizer: str = "census",
    workers: int = 1,
    count: Optional[int] = None,
    t_max: Optional[int] = None,
    timing: bool = False,
) -> list[VerificationReport]:
    """Run any mix of checks over the ``g`` and ``n`` ranges.

    Simplex checks come first (grouped per ``(g, n)``), then random checks,
    then exhaustive ones, each in name order.
    """
    names = _normalize_checks(checks)
    rows: list[VerificationReport] = []
    simplex = [c for c in names if c in SIMPLEX_CHECKS]
    if simplex:
        for g in g_values:
            for n in n_values:
                rows.extend(verify_simplex(g, n, simplex, optimizer, workers, t_max, timing))
    for c in names:
        if c in RANDOM_CHECKS:
            for g in g_values:
                for n in n_values:
                    start = time.perf_counter()
                    chunk = random_suite(c, g, n, count, seed, optimizer)
                    if timing:
                        ms = int((time.perf_counter() - start) * 1000)
                        for r in chunk:
                            r.millis = ms
                    rows.extend(chunk)
    for c in names:
        if c in EXHAUSTIVE_CHECKS:
            rows.extend(exhaustive_suite(c, g_values, n_values))
    return rows
