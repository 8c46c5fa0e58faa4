"""Exact scalar functions: factorials, odd double factorials, binomials,
Q-polynomials, Bernoulli numbers and the Faber constant.

Every value is an ``int`` or a :class:`fractions.Fraction`; nothing here
touches floating point.
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

__all__ = [
    "ExactRational",
    "HalfInteger",
    "factorial",
    "double_factorial_odd",
    "binomial",
    "falling_factorial",
    "q_poly",
    "odd_ratio",
    "bernoulli",
    "faber_constant",
    "format_rational",
    "parse_rational",
]

ExactRational = Fraction


@dataclass(frozen=True, order=True)
class HalfInteger:
    """A number of the form ``twice_value / 2``."""

    twice_value: int

    @classmethod
    def from_value(cls, value: Union[int, Fraction, "HalfInteger"]) -> "HalfInteger":
        if isinstance(value, HalfInteger):
            return value
        doubled = Fraction(value) * 2
        if doubled.denominator != 1:
            raise ValueError(f"{value} is not a half-integer")
        return cls(int(doubled))

    @property
    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def __add__(self, other):
        if isinstance(other, HalfInteger):
            return HalfInteger(self.twice_value + other.twice_value)
        if isinstance(other, int):
            return HalfInteger(self.twice_value + 2 * other)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, HalfInteger):
            return HalfInteger(self.twice_value - other.twice_value)
        if isinstance(other, int):
            return HalfInteger(self.twice_value - 2 * other)
        return NotImplemented

    def __neg__(self) -> "HalfInteger":
        return HalfInteger(-self.twice_value)

    def __str__(self) -> str:
        if self.is_integer:
            return str(self.twice_value // 2)
        return f"{self.twice_value}/2"


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError(f"factorial of negative number {n}")
    return math.factorial(n)


@lru_cache(maxsize=None)
def double_factorial_odd(m: int) -> Fraction:
    """Odd double factorial ``m!!``, extended to negative odd ``m``.

    For ``m <= -1`` the value comes from running ``m!! = (m+2)!!/(m+2)``
    downwards from ``1!! = 1``, so ``(-1)!! = 1``, ``(-3)!! = -1``,
    ``(-5)!! = 1/3``.
    """
    if m % 2 == 0:
        raise ValueError(f"double_factorial_odd needs an odd argument, got {m}")
    if m >= 1:
        out = 1
        for j in range(m, 0, -2):
            out *= j
        return Fraction(out)
    out = Fraction(1)
    j = 1
    while j > m:
        # (j-2)!! = j!! / j
        out /= j
        j -= 2
    return out


def binomial(N: int, k: int) -> int:
    if N < 0:
        raise ValueError(f"binomial with negative upper index {N}")
    if k < 0 or k > N:
        return 0
    return math.comb(N, k)


def falling_factorial(f: int, t: int) -> int:
    """``f (f-1) ... (f+1-t)``; the empty product for ``t == 0``."""
    if t < 0:
        raise ValueError(f"falling_factorial needs t >= 0, got {t}")
    out = 1
    for j in range(t):
        out *= f - j
    return out


def _as_fraction(a) -> Fraction:
    if isinstance(a, HalfInteger):
        return a.as_fraction()
    return Fraction(a)


def q_poly(m: int, a) -> Fraction:
    """``Q_m(a) = (-1)^m / (2^m m!) * prod_{k=1}^{2m} (a + 1 - k/2)``.

    ``Q_m`` is identically zero for ``m < 0``. ``a`` may be an int, a
    Fraction or a :class:`HalfInteger`.
    """
    if m < 0:
        return Fraction(0)
    if isinstance(a, int):
        return _q_poly_int(m, a)
    x = _as_fraction(a)
    prod = Fraction(1)
    for k in range(1, 2 * m + 1):
        prod *= x + 1 - Fraction(k, 2)
    return prod * (-1) ** m / (2**m * math.factorial(m))


@lru_cache(maxsize=65536)
def _q_poly_int(m: int, a: int) -> Fraction:
    # prod_{k=1}^{2m} (2a + 2 - k) / 2
    num = 1
    for k in range(1, 2 * m + 1):
        num *= 2 * a + 2 - k
    return Fraction((-1) ** m * num, 2 ** (3 * m) * math.factorial(m))


def odd_ratio(d: int, s: int) -> int:
    """``(2d-1)!! / (2d+1-2s)!!`` as the product of the ``s-1`` odd numbers
    ``2d-1, 2d-3, ..., 2d+3-2s``."""
    if s < 1:
        raise ValueError(f"odd_ratio needs s >= 1, got {s}")
    out = 1
    for j in range(1, s):
        out *= 2 * d + 1 - 2 * j
    return out


_bernoulli_lock = threading.Lock()
_bernoulli_memo: list[Fraction] = [Fraction(1)]


def bernoulli(m: int) -> Fraction:
    """Bernoulli number ``B_m`` with ``B_1 = -1/2``.

    Uses ``sum_{j=0}^{m} C(m+1, j) B_j = 0`` and keeps every value computed
    so far.
    """
    if m < 0:
        raise ValueError(f"bernoulli needs m >= 0, got {m}")
    with _bernoulli_lock:
        memo = _bernoulli_memo
        while len(memo) <= m:
            n = len(memo)
            s = sum((math.comb(n + 1, j) * memo[j] for j in range(n)), Fraction(0))
            memo.append(-s / (n + 1))
        return memo[m]


def faber_constant(g: int) -> Fraction:
    """``C_g = |B_{2g}| / (2^{2g-1} (2g)!)``."""
    if g < 2:
        raise ValueError(f"faber_constant needs g >= 2, got {g}")
    return abs(bernoulli(2 * g)) / (2 ** (2 * g - 1) * math.factorial(2 * g))


def format_rational(x) -> str:
    """Serialize as ``"num/den"`` (denominator always written)."""
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())
