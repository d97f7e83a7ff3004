"""Definitions and brute-force oracles.

Everything here is deliberately linear-time and obvious; the fast paths in
:mod:`newmansums.transfer` are tested against these functions.
"""

from __future__ import annotations

from dataclasses import dataclass


class DomainError(ValueError):
    """Raised when an argument lies outside the domain of an operation."""


def _check_radix(q: int) -> None:
    if q < 2:
        raise DomainError(f"radix must be >= 2, got {q}")


@dataclass(frozen=True)
class SumSpec:
    """The triple (q, m, l) naming the sum over n = l (mod m) with base-q digits."""

    q: int
    m: int
    l: int = 0

    def __post_init__(self) -> None:
        _check_radix(self.q)
        if self.m < 1:
            raise DomainError(f"modulus must be >= 1, got {self.m}")
        if not 0 <= self.l < self.m:
            raise DomainError(f"residue must satisfy 0 <= l < m, got l={self.l}, m={self.m}")


@dataclass(frozen=True)
class Interval:
    """Half-open range [lo, hi) of non-negative integers."""

    lo: int
    hi: int

    def __post_init__(self) -> None:
        if self.lo < 0 or self.lo > self.hi:
            raise DomainError(f"need 0 <= lo <= hi, got [{self.lo}, {self.hi})")

    def __len__(self) -> int:
        return self.hi - self.lo


@dataclass(frozen=True)
class GelfondCounts:
    """Members of the class 0 mod m below x, split by binary digit-sum parity."""

    g0: int
    g1: int

    @property
    def total(self) -> int:
        return self.g0 + self.g1

    @property
    def difference(self) -> int:
        return self.g0 - self.g1


def digit_sum(n: int, q: int) -> int:
    _check_radix(q)
    if n < 0:
        raise DomainError(f"digit_sum needs n >= 0, got {n}")
    s = 0
    while n:
        n, a = divmod(n, q)
        s += a
    return s


def sign(n: int, q: int) -> int:
    """(-1) raised to the base-q digit sum of n."""
    return -1 if digit_sum(n, q) & 1 else 1


def newman_sum_naive(spec: SumSpec, x: int) -> int:
    """Sum of sign(n, q) over 0 <= n < x with n = l (mod m), by enumeration."""
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    return sum(sign(n, spec.q) for n in range(spec.l, x, spec.m))


def newman_sum_interval_naive(spec: SumSpec, iv: Interval) -> int:
    first = iv.lo + (spec.l - iv.lo) % spec.m
    return sum(sign(n, spec.q) for n in range(first, iv.hi, spec.m))


def residue_count(m: int, x: int) -> int:
    """Number of n in [0, x) divisible by m.

    Equals floor((x - 1) / m) + 1 for x >= 1. The textbook shortcut
    floor(x / m) + 1 overcounts by one whenever m divides a positive x.
    """
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    if x <= 0:
        return 0
    return (x - 1) // m + 1


def gelfond_counts(m: int, x: int) -> GelfondCounts:
    """Binary digit-sum parity counts of the multiples of m below x (enumeration)."""
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    g = [0, 0]
    for n in range(0, max(x, 0), m):
        g[n.bit_count() & 1] += 1
    return GelfondCounts(g[0], g[1])
