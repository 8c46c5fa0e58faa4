"""Evaluators for the set-partition sums and the checks built on them.

Every sum over ordered set partitions with a ``1/k!`` prefactor is computed
as a sum over unordered partitions: each summand depends on its blocks only
through their :class:`~faberkit.combinatorics.BlockProfile`, so the two agree
exactly.

Two evaluation routes exist for the integer sums (``P``, ``R``, ``P_{n,t}``):

``"census"``
    group partitions by profile multiset, build one degree series per block
    and read a single coefficient of their product (memoized per multiset);
``"direct"``
    loop over partitions, degree compositions and (for ``P_{n,t}``) subsets.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Optional, Sequence

from .combinatorics import (
    BlockProfile,
    block_profiles,
    bounded_compositions,
    coefficient_of_product,
    compositions,
    profile_census,
    set_partitions,
    truncated_product,
)
from .correlators import CorrelatorKey, CorrelatorSystem
from .exact import (
    binomial,
    double_factorial_odd,
    faber_constant,
    falling_factorial,
    odd_ratio,
    q_poly,
)
from .reports import VerificationReport, compare

__all__ = [
    "SimplexPoint",
    "DegreeWindow",
    "OPTIMIZERS",
    "e_window",
    "p_window",
    "eval_E",
    "eval_P",
    "eval_R",
    "eval_P_tilde",
    "eval_A",
    "eval_P_nt",
    "eval_P_split",
    "conjecture_coefficient",
    "conjecture_rhs",
    "eval_S",
    "tilde_S_closed",
    "check_recursion",
    "check_reduction",
    "check_parity_flip",
    "parity_flip_sums",
    "faber_integral",
    "clear_caches",
]

OPTIMIZERS = ("census", "direct")


@dataclass(frozen=True)
class SimplexPoint:
    g: int
    a: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if self.g < 2:
            raise ValueError(f"g must be >= 2, got {self.g}")
        if not self.a:
            raise ValueError("a must have at least one entry")
        if any(x < 0 for x in self.a):
            raise ValueError(f"a must be non-negative, got {self.a}")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def on_simplex(self) -> bool:
        return sum(self.a) == 2 * self.g - 3 + self.n


def _point(point_or_g, a=None) -> SimplexPoint:
    if isinstance(point_or_g, SimplexPoint):
        return point_or_g
    return SimplexPoint(point_or_g, tuple(a))


def _require_simplex(point: SimplexPoint, what: str) -> None:
    if not point.on_simplex:
        raise ValueError(
            f"{what} is only meaningful on the simplex sum(a) = 2g-3+n; "
            f"got g={point.g}, a={point.a}"
        )


def _check_optimizer(optimizer: str) -> None:
    if optimizer not in OPTIMIZERS:
        raise ValueError(f"unknown optimizer {optimizer!r}; expected one of {OPTIMIZERS}")


class DegreeWindow(NamedTuple):
    """Inclusive range of a block's degree outside which its factor vanishes."""

    lo: int
    hi: int


def e_window(profile: BlockProfile) -> DegreeWindow:
    # Q_{d+s-1}(a) vanishes for d+s-1 < 0 and, at integer a >= 0, for d+s-1 > a
    return DegreeWindow(1 - profile.size, profile.a_sum - profile.size + 1)


def p_window(profile: BlockProfile) -> DegreeWindow:
    # binom(2a+1, 2d) vanishes for d > a
    return DegreeWindow(0, profile.a_sum)


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


# --------------------------------------------------------------------------
# block factors

def _p_term(d: int, prof: BlockProfile) -> int:
    return binomial(2 * prof.a_sum + 1, 2 * d) * odd_ratio(d, prof.size)


def _r_term(f: int, prof: BlockProfile) -> int:
    return binomial(2 * prof.a_sum + 1, 2 * f + 1) * odd_ratio(prof.a_sum - f, prof.size)


def _split_term(d: int, prof: BlockProfile, lowered: bool) -> int:
    return binomial(2 * prof.a_sum, 2 * d - (1 if lowered else 0)) * odd_ratio(d, prof.size)


@lru_cache(maxsize=None)
def _p_series(prof: BlockProfile, total: int) -> tuple[int, ...]:
    hi = min(p_window(prof).hi, total)
    return tuple(_p_term(d, prof) for d in range(hi + 1))


@lru_cache(maxsize=None)
def _r_series(prof: BlockProfile, total: int) -> tuple[int, ...]:
    hi = min(prof.a_sum, total)
    return tuple(_r_term(f, prof) for f in range(hi + 1))


@lru_cache(maxsize=None)
def _split_series(prof: BlockProfile, total: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    hi = min(prof.a_sum, total)
    even = tuple(_split_term(d, prof, False) for d in range(hi + 1))
    odd = tuple(_split_term(d, prof, True) for d in range(hi + 1))
    return even, odd


@lru_cache(maxsize=1 << 18)
def _p_multiset(profiles: tuple[BlockProfile, ...], total: int) -> int:
    return coefficient_of_product([_p_series(p, total) for p in profiles], total)


@lru_cache(maxsize=1 << 18)
def _r_multiset(profiles: tuple[BlockProfile, ...], total: int) -> int:
    return coefficient_of_product([_r_series(p, total) for p in profiles], total)


@lru_cache(maxsize=1 << 18)
def _split_multiset(profiles: tuple[BlockProfile, ...], total: int) -> tuple[int, ...]:
    """Entry ``m``: the sum over degree compositions and over ``m``-subsets
    ``A`` of blocks of the product with lowered binomials on ``A``."""
    # layers[m] is the running series with m lowered blocks so far
    layers: list[list[int]] = [[1] + [0] * total]
    for prof in profiles:
        even, odd = _split_series(prof, total)
        nxt: list[list[int]] = []
        for m in range(len(layers) + 1):
            acc = [0] * (total + 1)
            if m < len(layers):
                for i, v in enumerate(truncated_product([layers[m], even], total)):
                    acc[i] += v
            if m >= 1:
                for i, v in enumerate(truncated_product([layers[m - 1], odd], total)):
                    acc[i] += v
            nxt.append(acc)
        layers = nxt
    return tuple(layer[total] for layer in layers)


def _block_sum_census(point: SimplexPoint, k: int, multiset_fn, total: int):
    out = 0
    for profiles, mult in profile_census(point.a, k).items():
        out += mult * multiset_fn(profiles, total)
    return out


# --------------------------------------------------------------------------
# P, R, P-tilde

def eval_P(point, optimizer: str = "census") -> Fraction:
    """Main identity sum: zero at every integer point of the simplex.

    ``sum_k (-1)^k (2g-3+k)! sum_{partitions} sum_{d >= 0, |d| = g-2+n}
    prod_j binom(2a_[I_j]+1, 2d_j) (2d_j-1)!!/(2d_j+1-2|I_j|)!!``
    """
    point = _point(point)
    _check_optimizer(optimizer)
    g, n = point.g, point.n
    total = g - 2 + n
    out = 0
    for k in range(1, n + 1):
        pref = _sign(k) * math.factorial(2 * g - 3 + k)
        if optimizer == "census":
            inner = _block_sum_census(point, k, _p_multiset, total)
        else:
            inner = 0
            for partition in set_partitions(n, k):
                profs = [BlockProfile(sum(point.a[i] for i in b), len(b)) for b in partition]
                for d in compositions(total, k):
                    term = 1
                    for dj, prof in zip(d, profs):
                        term *= _p_term(dj, prof)
                        if not term:
                            break
                    inner += term
        out += pref * inner
    return Fraction(out)


def eval_R(point, optimizer: str = "census") -> Fraction:
    """The rewriting of the main sum indexed by ``f_1 + ... + f_k = g - 1``;
    agrees with :func:`eval_P` on the simplex only."""
    point = _point(point)
    _check_optimizer(optimizer)
    g, n = point.g, point.n
    total = g - 1
    out = 0
    for k in range(1, n + 1):
        pref = _sign(k) * math.factorial(2 * g - 3 + k)
        if optimizer == "census":
            inner = _block_sum_census(point, k, _r_multiset, total)
        else:
            inner = 0
            for partition in set_partitions(n, k):
                profs = [BlockProfile(sum(point.a[i] for i in b), len(b)) for b in partition]
                for f in compositions(total, k):
                    term = 1
                    for fj, prof in zip(f, profs):
                        term *= _r_term(fj, prof)
                        if not term:
                            break
                    inner += term
        out += pref * inner
    return Fraction(out)


def eval_P_tilde(point, optimizer: str = "census") -> Fraction:
    """``P(a) / prod a_i``; needs every ``a_i`` nonzero."""
    point = _point(point)
    if any(x == 0 for x in point.a):
        raise ValueError(f"P-tilde needs all a_i != 0, got {point.a}")
    return eval_P(point, optimizer) / math.prod(point.a)


# --------------------------------------------------------------------------
# P_{n,t}, A_n and the conjectured closed form

def _split_direct(point: SimplexPoint) -> list[int]:
    g, n = point.g, point.n
    total = g - 2 + n
    out = [0] * (n + 1)  # indexed by t
    for k in range(1, n + 1):
        pref = _sign(k) * math.factorial(2 * g - 3 + k)
        for partition in set_partitions(n, k):
            profs = [BlockProfile(sum(point.a[i] for i in b), len(b)) for b in partition]
            for d in compositions(total, k):
                for size in range(k + 1):
                    t = n - size
                    acc = 0
                    for lowered in itertools.combinations(range(k), size):
                        term = 1
                        for j, (dj, prof) in enumerate(zip(d, profs)):
                            term *= _split_term(dj, prof, j in lowered)
                            if not term:
                                break
                        acc += term
                    out[t] += pref * acc
    return out


@lru_cache(maxsize=1 << 16)
def _split_cached(g: int, a: tuple[int, ...], optimizer: str) -> tuple[int, ...]:
    point = SimplexPoint(g, a)
    n = point.n
    if optimizer == "direct":
        return tuple(_split_direct(point))
    total = g - 2 + n
    out = [0] * (n + 1)
    for k in range(1, n + 1):
        pref = _sign(k) * math.factorial(2 * g - 3 + k)
        for profiles, mult in profile_census(point.a, k).items():
            by_size = _split_multiset(profiles, total)
            for size, v in enumerate(by_size):
                if v:
                    out[n - size] += pref * mult * v
    return tuple(out)


def eval_P_split(point, optimizer: str = "census") -> tuple[Fraction, ...]:
    """All of ``P_{n,0}, ..., P_{n,n}`` at once."""
    point = _point(point)
    _check_optimizer(optimizer)
    return tuple(Fraction(v) for v in _split_cached(point.g, point.a, optimizer))


def eval_P_nt(point, t: int, optimizer: str = "census") -> Fraction:
    """``P_{n,t}``: the part of the main sum where exactly ``n - t`` blocks
    carry the lowered binomial ``binom(2a_[I], 2d - 1)``."""
    point = _point(point)
    if not 0 <= t <= point.n:
        raise ValueError(f"t must lie in 0..{point.n}, got {t}")
    return eval_P_split(point, optimizer)[t]


def _odd_sum(a: Sequence[int], total: int) -> int:
    """``sum over positive odd o with |o| = total of prod binom(2a_j, o_j)``."""
    series = [[binomial(2 * x, o) if o % 2 else 0 for o in range(2 * x + 1)] for x in a]
    return coefficient_of_product(series, total)


def eval_A(point, variant: str = "low") -> Fraction:
    """``A_n = (-1)^n (2g-4+n)! sum_{odd o} prod binom(2a_j, o_j)``.

    ``variant="low"`` sums over ``|o| = 2g-4+n``, ``"high"`` over
    ``|o| = 2g-2+n``; the two agree on the simplex.
    """
    point = _point(point)
    g, n = point.g, point.n
    if variant == "low":
        total = 2 * g - 4 + n
    elif variant == "high":
        total = 2 * g - 2 + n
    else:
        raise ValueError(f"variant must be 'low' or 'high', got {variant!r}")
    return Fraction(_sign(n) * math.factorial(2 * g - 4 + n) * _odd_sum(point.a, total))


def conjecture_coefficient(g: int, n: int, t: int) -> int:
    """``(-1)^t [(C(n-1,t) - C(n-1,t-1))(2g-3+n+t) + 2(t-1) C(n-1,t-1)]``."""
    c_t = binomial(n - 1, t)
    c_tm = binomial(n - 1, t - 1)
    return _sign(t) * ((c_t - c_tm) * (2 * g - 3 + n + t) + 2 * (t - 1) * c_tm)


def conjecture_rhs(point, t: int) -> Fraction:
    point = _point(point)
    _require_simplex(point, "conjecture_rhs")
    if not 0 <= t <= point.n:
        raise ValueError(f"t must lie in 0..{point.n}, got {t}")
    return conjecture_coefficient(point.g, point.n, t) * eval_A(point, "low")


def eval_S(point, x, optimizer: str = "census") -> Fraction:
    """``S(x) = sum_t P_{n,t} x^t``."""
    point = _point(point)
    _require_simplex(point, "eval_S")
    x = Fraction(x)
    out = Fraction(0)
    for coef in reversed(eval_P_split(point, optimizer)):
        out = out * x + coef
    return out


def tilde_S_closed(point, x, optimizer: str = "census") -> Fraction:
    """``(1-x)^{n-1} ((2g-1)(x+1) + n - 2) P_{n,0} / (2g-3+n)``."""
    point = _point(point)
    _require_simplex(point, "tilde_S_closed")
    g, n = point.g, point.n
    x = Fraction(x)
    p0 = eval_P_split(point, optimizer)[0]
    return (1 - x) ** (n - 1) * ((2 * g - 1) * (x + 1) + (n - 2)) * p0 / (2 * g - 3 + n)


# --------------------------------------------------------------------------
# E with a correlator system

def eval_E(point, system: CorrelatorSystem, optimizer: str = "census") -> Fraction:
    """``sum_k (-1)^k/k! sum_{ordered partitions} sum_{d in Z^k}
    <tau_d>_g prod_j Q_{d_j+|I_j|-1}(a_[I_j])`` with ``|d| = g-2+k``.

    ``a`` need not lie on the simplex. Each ``d_j`` runs over its block's
    :func:`e_window`.
    """
    point = _point(point)
    _check_optimizer(optimizer)
    g, n = point.g, point.n
    if n < 2:
        raise ValueError("eval_E needs n >= 2")
    out = Fraction(0)
    for k in range(1, n + 1):
        if optimizer == "census":
            groups = profile_census(point.a, k).items()
        else:
            groups = [(block_profiles(point.a, p), 1) for p in set_partitions(n, k)]
        inner = Fraction(0)
        for profiles, mult in groups:
            windows = [e_window(p) for p in profiles]
            sub = Fraction(0)
            for d in bounded_compositions(g - 2 + k, [w.lo for w in windows], [w.hi for w in windows]):
                qprod = Fraction(1)
                for dj, prof in zip(d, profiles):
                    qprod *= q_poly(dj + prof.size - 1, prof.a_sum)
                    if not qprod:
                        break
                if qprod:
                    sub += system.value(CorrelatorKey(g, tuple(sorted(d)))) * qprod
            inner += mult * sub
        out += _sign(k) * inner
    return out


# --------------------------------------------------------------------------
# checks

def check_recursion(point, t: int, optimizer: str = "census") -> VerificationReport:
    """``(t+1) P_{n,t+1} + (n-t-1) P_{n,t} = (-1)^t (2g-1)/(2g-3+n) C(n,t) P_{n,0}``
    with ``P_{n,n+1} = 0``."""
    point = _point(point)
    _require_simplex(point, "check_recursion")
    g, n = point.g, point.n
    if not 0 <= t <= n:
        raise ValueError(f"t must lie in 0..{n}, got {t}")
    split = eval_P_split(point, optimizer)
    nxt = split[t + 1] if t + 1 <= n else Fraction(0)
    lhs = (t + 1) * nxt + (n - t - 1) * split[t]
    rhs = Fraction(_sign(t) * (2 * g - 1) * binomial(n, t), 2 * g - 3 + n) * split[0]
    return compare("recursion", g, n, t, point.a, lhs, rhs)


def check_reduction(g: int, n: int, a: Sequence[int], optimizer: str = "census") -> VerificationReport:
    """``P(a,1) - P(a,0) = P(a) (4 sum(a) - 8g + 10 - 2n)`` at any ``a``."""
    a = tuple(a)
    if len(a) != n:
        raise ValueError(f"a has {len(a)} entries, expected n={n}")
    lhs = eval_P(SimplexPoint(g, a + (1,)), optimizer) - eval_P(SimplexPoint(g, a + (0,)), optimizer)
    rhs = eval_P(SimplexPoint(g, a), optimizer) * (4 * sum(a) - 8 * g + 10 - 2 * n)
    return compare("reduction", g, n, None, a, lhs, rhs)


def _weighted_parity_sum(a, t, parities, total) -> int:
    ranges = [range(p % 2, 2 * x + 1, 2) for x, p in zip(a, parities)]
    out = 0
    for f in itertools.product(*ranges):
        if sum(f) != total:
            continue
        term = 1
        for fi, x, ti in zip(f, a, t):
            term *= binomial(2 * x, fi) * falling_factorial(fi, ti)
        out += term
    return out


def check_parity_flip(
    a: Sequence[int], B: int, t: Sequence[int], parities: Sequence[int]
) -> VerificationReport:
    """Compare the two sides of the parity-flip lemma by brute force.

    Left: ``f_i = p_i (mod 2)``, ``|f| = B``. Right: ``f_i = p_i + t_i (mod 2)``,
    ``|f| = 2|a| - B + |t|``. Both weight ``prod binom(2a_i, f_i) (f_i)_{t_i}``.
    """
    a, t, parities = tuple(a), tuple(t), tuple(parities)
    if not len(a) == len(t) == len(parities) >= 1:
        raise ValueError("a, t and parities must have the same positive length")
    lhs = _weighted_parity_sum(a, t, parities, B)
    flipped = tuple((p + ti) % 2 for p, ti in zip(parities, t))
    rhs = _weighted_parity_sum(a, t, flipped, 2 * sum(a) - B + sum(t))
    return compare("parity-flip", None, len(a), None, a, lhs, rhs)


def parity_flip_sums(a: Sequence[int], t: Sequence[int], parities: Sequence[int]) -> list[int]:
    """Left-hand sides of the parity-flip lemma for every ``B`` at once.

    Entry ``B`` of the result is the weighted sum over ``|f| = B``; computed
    as a product of parity-filtered series.
    """
    series = []
    for x, ti, p in zip(a, t, parities):
        series.append(
            [binomial(2 * x, f) * falling_factorial(f, ti) if f % 2 == p % 2 else 0 for f in range(2 * x + 1)]
        )
    top = sum(2 * x for x in a)
    return truncated_product(series, top)


# --------------------------------------------------------------------------

def faber_integral(g: int, d: Sequence[int]) -> Fraction:
    """``int lambda_g lambda_{g-1} prod psi_i^{d_i} = C_g (2g-3+n)! / prod (2d_i-1)!!``."""
    d = tuple(d)
    if g < 2:
        raise ValueError(f"g must be >= 2, got {g}")
    if not d or any(x < 1 for x in d):
        raise ValueError(f"exponents must be positive, got {d}")
    if sum(d) != g - 2 + len(d):
        raise ValueError(f"dimension constraint violated: sum{d} != g-2+n = {g - 2 + len(d)}")
    out = faber_constant(g) * math.factorial(2 * g - 3 + len(d))
    for x in d:
        out /= double_factorial_odd(2 * x - 1)
    return out


def clear_caches() -> None:
    """Drop memoized block series and split vectors (used before benchmarks)."""
    for fn in (_p_series, _r_series, _split_series, _p_multiset, _r_multiset, _split_multiset, _split_cached):
        fn.cache_clear()
