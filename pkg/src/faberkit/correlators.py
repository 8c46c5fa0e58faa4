"""Formal correlator systems closed under the string equation.

A system is fixed by its values on index tuples with no zero entry. Tuples
containing a zero are expanded by the string equation

    <tau_{d_1} ... tau_{d_k} tau_0>_g = sum_j <... tau_{d_j - 1} ...>_g

over every ``j``, including those that push an index below zero; the
initial values decide what such tuples are worth.
"""
from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from .exact import double_factorial_odd

__all__ = [
    "CorrelatorKey",
    "CorrelatorSystem",
    "correlator_key",
    "correlator_value",
    "example1_initial",
    "example2_initial",
    "example1_system",
    "example2_system",
    "example2_closed_form",
    "make_delta_system",
]


class CorrelatorKey(NamedTuple):
    g: int
    indices: tuple[int, ...]


def correlator_key(g: int, indices: Iterable[int]) -> CorrelatorKey:
    """Build a key, checking ``sum(d) == g - 2 + k``; indices are sorted."""
    idx = tuple(sorted(int(d) for d in indices))
    if g < 2:
        raise ValueError(f"correlators are defined for g >= 2, got g={g}")
    if not idx:
        raise ValueError("a correlator needs at least one insertion")
    if sum(idx) != g - 2 + len(idx):
        raise ValueError(
            f"dimension constraint violated: sum{idx} = {sum(idx)} != g-2+k = {g - 2 + len(idx)}"
        )
    return CorrelatorKey(g, idx)


InitialValue = Callable[[CorrelatorKey], Fraction]


class CorrelatorSystem:
    """Correlators generated from ``initial_value`` by the string equation.

    ``initial_value`` is only ever called on keys without a zero index.
    Values are cached; the cache is guarded by a lock so a system can be
    shared between threads.
    """

    def __init__(self, initial_value: InitialValue, name: str = "custom", memoize: bool = True):
        self.initial_value = initial_value
        self.name = name
        self.memoize = memoize
        self._memo: dict[CorrelatorKey, Fraction] = {}
        self._lock = threading.Lock()

    def __repr__(self) -> str:
        return f"CorrelatorSystem({self.name!r})"

    def value(self, key: CorrelatorKey) -> Fraction:
        if self.memoize:
            with self._lock:
                hit = self._memo.get(key)
            if hit is not None:
                return hit
        idx = key.indices
        if 0 not in idx:
            out = Fraction(self.initial_value(key))
        else:
            if len(idx) == 1:
                # unreachable for g >= 2; kept for direct construction of keys
                raise ValueError("<tau_0> alone is not defined for g >= 2")
            rest = list(idx)
            rest.remove(0)
            out = Fraction(0)
            for j in range(len(rest)):
                lowered = rest.copy()
                lowered[j] -= 1
                out += self.value(CorrelatorKey(key.g, tuple(sorted(lowered))))
        if self.memoize:
            with self._lock:
                self._memo[key] = out
        return out

    def __call__(self, g: int, indices: Iterable[int]) -> Fraction:
        return self.value(correlator_key(g, indices))

    def clear_cache(self) -> None:
        with self._lock:
            self._memo.clear()


def correlator_value(system: CorrelatorSystem, key: CorrelatorKey) -> Fraction:
    if sum(key.indices) != key.g - 2 + len(key.indices):
        raise ValueError(f"dimension constraint violated for {key}")
    return system.value(key)


def _faber_star(g: int, idx: tuple[int, ...]) -> Fraction:
    out = Fraction(math.factorial(2 * g - 3 + len(idx)))
    for d in idx:
        out /= double_factorial_odd(2 * d - 1)
    return out


def example1_initial(key: CorrelatorKey) -> Fraction:
    """Faber-star value on positive tuples, zero once any index is negative."""
    if 0 in key.indices:
        raise ValueError(f"initial values are defined on nonzero indices only: {key}")
    if any(d < 0 for d in key.indices):
        return Fraction(0)
    return _faber_star(key.g, key.indices)


def example2_initial(key: CorrelatorKey) -> Fraction:
    """``(2g-3+k)! / prod (2d_i-1)!!`` with the extended double factorial."""
    if 0 in key.indices:
        raise ValueError(f"initial values are defined on nonzero indices only: {key}")
    return _faber_star(key.g, key.indices)


def example2_closed_form(g: int, indices: Iterable[int]) -> Fraction:
    """The same formula applied to any tuple, zeros included."""
    return _faber_star(g, tuple(indices))


def example1_system(memoize: bool = True) -> CorrelatorSystem:
    return CorrelatorSystem(example1_initial, "example-1", memoize)


def example2_system(memoize: bool = True) -> CorrelatorSystem:
    return CorrelatorSystem(example2_initial, "example-2", memoize)


def make_delta_system(
    base: CorrelatorSystem, target: CorrelatorKey, amount: Fraction = Fraction(1)
) -> CorrelatorSystem:
    """Copy of ``base`` whose initial value at ``target`` is raised by ``amount``.

    ``target`` must have no zero index and at least one negative index.
    """
    if 0 in target.indices:
        raise ValueError(f"target {target} has a zero index")
    if all(d > 0 for d in target.indices):
        raise ValueError(f"target {target} has no negative index")
    target = correlator_key(target.g, target.indices)
    amount = Fraction(amount)
    base_initial = base.initial_value

    def initial(key: CorrelatorKey) -> Fraction:
        v = base_initial(key)
        return v + amount if key == target else v

    return CorrelatorSystem(initial, f"{base.name}+delta{target.indices}", base.memoize)
