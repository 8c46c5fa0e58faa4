"""Slow, literal reference implementations used as test oracles.

Nothing here imports the package's evaluators: sums run over ordered set
partitions (surjective labelings) with the ``1/k!`` prefactor, degree
vectors come from ``itertools.product`` over generous boxes, and double
factorial ratios are true quotients.
"""
from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial, prod


def comb0(n: int, k: int) -> int:
    return comb(n, k) if 0 <= k <= n else 0


@lru_cache(maxsize=None)
def odd_df(m: int) -> Fraction:
    """``m!!`` for odd ``m``, extended downward by ``m!! = (m+2)!!/(m+2)``."""
    if m in (-1, 1):
        return Fraction(1)
    if m > 1:
        return m * odd_df(m - 2)
    return odd_df(m + 2) / (m + 2)


def ordered_partitions(n: int, k: int):
    """Ordered ``k``-tuples of nonempty disjoint blocks covering ``range(n)``."""
    for labels in itertools.product(range(k), repeat=n):
        if len(set(labels)) == k:
            yield tuple(tuple(i for i in range(n) if labels[i] == j) for j in range(k))


def bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def stirling2(n: int, k: int) -> int:
    return sum((-1) ** j * comb(k, j) * (k - j) ** n for j in range(k + 1)) // factorial(k)


def _blocks(a, part):
    return [(sum(a[i] for i in b), len(b)) for b in part]


def brute_P(g: int, a) -> Fraction:
    n = len(a)
    total = g - 2 + n
    out = Fraction(0)
    for k in range(1, n + 1):
        inner = Fraction(0)
        for part in ordered_partitions(n, k):
            bl = _blocks(a, part)
            for d in itertools.product(range(total + 1), repeat=k):
                if sum(d) != total:
                    continue
                inner += prod(
                    (comb0(2 * x + 1, 2 * dj) * odd_df(2 * dj - 1) / odd_df(2 * dj + 1 - 2 * s) for (x, s), dj in zip(bl, d)),
                    start=Fraction(1),
                )
        out += Fraction((-1) ** k * factorial(2 * g - 3 + k), factorial(k)) * inner
    return out


def brute_R(g: int, a) -> Fraction:
    n = len(a)
    out = Fraction(0)
    for k in range(1, n + 1):
        inner = Fraction(0)
        for part in ordered_partitions(n, k):
            bl = _blocks(a, part)
            for f in itertools.product(range(g), repeat=k):
                if sum(f) != g - 1:
                    continue
                inner += prod(
                    (
                        comb0(2 * x + 1, 2 * fj + 1) * odd_df(2 * (x - fj) - 1) / odd_df(2 * (x - fj) + 1 - 2 * s)
                        for (x, s), fj in zip(bl, f)
                    ),
                    start=Fraction(1),
                )
        out += Fraction((-1) ** k * factorial(2 * g - 3 + k), factorial(k)) * inner
    return out


def brute_split(g: int, a) -> list[Fraction]:
    """``P_{n,t}`` literally: choose the set of lowered blocks explicitly."""
    n = len(a)
    total = g - 2 + n
    out = [Fraction(0)] * (n + 1)
    for k in range(1, n + 1):
        for part in ordered_partitions(n, k):
            bl = _blocks(a, part)
            for lowered in itertools.product((False, True), repeat=k):
                t = n - sum(lowered)
                if t < 0:
                    continue
                acc = Fraction(0)
                for d in itertools.product(range(total + 1), repeat=k):
                    if sum(d) != total:
                        continue
                    acc += prod(
                        (
                            comb0(2 * x, 2 * dj - low) * odd_df(2 * dj - 1) / odd_df(2 * dj + 1 - 2 * s)
                            for (x, s), dj, low in zip(bl, d, lowered)
                        ),
                        start=Fraction(1),
                    )
                out[t] += Fraction((-1) ** k * factorial(2 * g - 3 + k), factorial(k)) * acc
    return out


def brute_A(g: int, a, high: bool = False) -> Fraction:
    n = len(a)
    total = 2 * g - 2 + n if high else 2 * g - 4 + n
    s = 0
    for o in itertools.product(*(range(1, 2 * x + 1, 2) for x in a)):
        if sum(o) == total:
            s += prod(comb0(2 * x, oj) for x, oj in zip(a, o))
    return Fraction((-1) ** n * factorial(2 * g - 4 + n) * s)


def q_literal(m: int, a) -> Fraction:
    if m < 0:
        return Fraction(0)
    a = Fraction(a)
    p = Fraction(1)
    for k in range(1, 2 * m + 1):
        p *= a + 1 - Fraction(k, 2)
    return Fraction((-1) ** m, 2**m * factorial(m)) * p


def brute_E(g: int, a, correlator) -> Fraction:
    """``correlator(g, indices)`` supplies values; degrees scan a padded box."""
    n = len(a)
    out = Fraction(0)
    for k in range(1, n + 1):
        inner = Fraction(0)
        for part in ordered_partitions(n, k):
            bl = _blocks(a, part)
            boxes = [range(-s - 1, x + 3) for x, s in bl]
            for d in itertools.product(*boxes):
                if sum(d) != g - 2 + k:
                    continue
                w = prod((q_literal(dj + s - 1, x) for (x, s), dj in zip(bl, d)), start=Fraction(1))
                if w:
                    inner += correlator(g, d) * w
        out += Fraction((-1) ** k, factorial(k)) * inner
    return out


def example2_literal(g: int, d) -> Fraction:
    return Fraction(factorial(2 * g - 3 + len(d))) / prod((odd_df(2 * x - 1) for x in d), start=Fraction(1))


@lru_cache(maxsize=None)
def example1_literal(g: int, d: tuple) -> Fraction:
    """String-equation closure written out recursively (tuples kept sorted)."""
    d = tuple(sorted(d))
    if 0 not in d:
        return Fraction(0) if any(x < 0 for x in d) else example2_literal(g, d)
    rest = list(d)
    rest.remove(0)
    return sum(
        (example1_literal(g, tuple(rest[:j] + [rest[j] - 1] + rest[j + 1:])) for j in range(len(rest))),
        Fraction(0),
    )


def bernoulli_explicit(m: int) -> Fraction:
    """``B_m = sum_k sum_j (-1)^j C(k,j) j^m / (k+1)``, which has ``B_1 = -1/2``."""
    s = Fraction(0)
    for k in range(m + 1):
        for j in range(k + 1):
            s += Fraction((-1) ** j * comb(k, j) * j**m, k + 1)
    return s
