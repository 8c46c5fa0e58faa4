"""Set partitions, compositions and block profiles.

Set partitions act on positions ``0..n-1``. Blocks are listed by their
smallest element, which is the order produced by restricted growth strings.
"""
from __future__ import annotations

from collections import Counter
from functools import lru_cache
from typing import Iterator, NamedTuple, Sequence

__all__ = [
    "BlockProfile",
    "SetPartition",
    "set_partitions",
    "compositions",
    "bounded_compositions",
    "block_profiles",
    "profile_census",
    "truncated_product",
    "coefficient_of_product",
]

SetPartition = tuple[tuple[int, ...], ...]


class BlockProfile(NamedTuple):
    """What an identity term sees of a block ``I``: ``(a_[I], |I|)``."""

    a_sum: int
    size: int


def set_partitions(n: int, k: int) -> Iterator[SetPartition]:
    """Yield every partition of ``range(n)`` into exactly ``k`` blocks.

    Order is lexicographic in the restricted growth string, so repeated calls
    give identical sequences. ``k`` outside ``1..n`` yields nothing.
    """
    if n < 1 or k < 1 or k > n:
        return
    rgs = [0] * n

    def rec(i: int, used: int) -> Iterator[SetPartition]:
        if i == n:
            if used == k:
                blocks: list[list[int]] = [[] for _ in range(k)]
                for pos, b in enumerate(rgs):
                    blocks[b].append(pos)
                yield tuple(tuple(b) for b in blocks)
            return
        # enough positions left to open the missing blocks
        if k - used > n - i:
            return
        top = min(used, k - 1)
        for b in range(top + 1):
            rgs[i] = b
            yield from rec(i + 1, max(used, b + 1))

    rgs[0] = 0
    yield from rec(1, 1)


def compositions(total: int, k: int) -> Iterator[tuple[int, ...]]:
    """Ordered ``k``-tuples of non-negative integers summing to ``total``,
    in lexicographic order."""
    if k < 1 or total < 0:
        return
    if k == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, k - 1):
            yield (first,) + rest


def bounded_compositions(
    total: int, lows: Sequence[int], highs: Sequence[int]
) -> Iterator[tuple[int, ...]]:
    """Tuples ``d`` with ``lows[i] <= d[i] <= highs[i]`` and ``sum(d) == total``."""
    k = len(lows)
    # suffix sums of bounds prune dead branches
    suf_lo = [0] * (k + 1)
    suf_hi = [0] * (k + 1)
    for i in range(k - 1, -1, -1):
        suf_lo[i] = suf_lo[i + 1] + lows[i]
        suf_hi[i] = suf_hi[i + 1] + highs[i]
    if not suf_lo[0] <= total <= suf_hi[0]:
        return
    cur = [0] * k

    def rec(i: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if i == k:
            if remaining == 0:
                yield tuple(cur)
            return
        lo = max(lows[i], remaining - suf_hi[i + 1])
        hi = min(highs[i], remaining - suf_lo[i + 1])
        for v in range(lo, hi + 1):
            cur[i] = v
            yield from rec(i + 1, remaining - v)

    yield from rec(0, total)


def block_profiles(a: Sequence[int], partition: SetPartition) -> tuple[BlockProfile, ...]:
    """Profiles of the blocks, sorted so the tuple is a canonical multiset."""
    return tuple(sorted(BlockProfile(sum(a[i] for i in block), len(block)) for block in partition))


@lru_cache(maxsize=None)
def _partition_masks(n: int, k: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Each k-block partition of range(n) as ((mask, size), ...) per block."""
    return tuple(
        tuple((sum(1 << i for i in block), len(block)) for block in partition)
        for partition in set_partitions(n, k)
    )


def _subset_sums(a: Sequence[int]) -> list[int]:
    sums = [0] * (1 << len(a))
    for mask in range(1, len(sums)):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + a[low.bit_length() - 1]
    return sums


def profile_census(a: Sequence[int], k: int) -> Counter:
    """Map each profile multiset arising from a ``k``-block partition of
    ``range(len(a))`` to the number of partitions inducing it."""
    sums = _subset_sums(a)
    raw: Counter = Counter()
    for partition in _partition_masks(len(a), k):
        raw[tuple(sorted([(sums[m], s) for m, s in partition]))] += 1
    census: Counter = Counter()
    for key, mult in raw.items():
        census[tuple(BlockProfile(x, s) for x, s in key)] = mult
    return census


def truncated_product(series: Sequence[Sequence[int]], total: int) -> list[int]:
    """Coefficients ``0..total`` of the product of the given power series."""
    acc = [0] * (total + 1)
    acc[0] = 1
    for s in series:
        top = min(len(s) - 1, total)
        out = [0] * (total + 1)
        for i, ai in enumerate(acc):
            if not ai:
                continue
            for j in range(min(top, total - i) + 1):
                sj = s[j]
                if sj:
                    out[i + j] += ai * sj
        acc = out
    return acc


def coefficient_of_product(series: Sequence[Sequence[int]], total: int) -> int:
    """``[z^total]`` of the product of the series."""
    if total < 0:
        return 0
    return truncated_product(series, total)[total]
