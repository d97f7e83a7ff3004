"""Fast exact evaluation of Newman sums by digit dynamic programming.

The block weights W_i[t] = sum of (-1)^sigma_q(n) over 0 <= n < q^i with
n = t (mod m) obey

    W_{i+1}[t] = sum_{a < q} (-1)^a W_i[(t - a q^i) mod m],

so a full residue vector at x costs O(len_q(x) * q * m) big-integer additions.
The evaluator walks the digits of x from the least significant end and keeps
only the current level, which keeps memory at O(m) integers for x = 2^2000
and moduli in the thousands.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from newmansums.core import DomainError, GelfondCounts, SumSpec, _check_radix, residue_count

# Levels * modulus above which weight tables are streamed instead of cached.
CACHE_ENTRY_LIMIT = 1 << 18


class NotCoprimeError(DomainError):
    """The transfer matrix needs gcd(q, m) = 1; use even_modulus_reduce instead."""


@dataclass(frozen=True)
class WeightTables:
    q: int
    m: int
    levels: tuple[tuple[int, ...], ...]

    @property
    def depth(self) -> int:
        return len(self.levels) - 1


@dataclass(frozen=True)
class TransferMatrix:
    """B with V(q x) = B V(x), V(x) the vector of sums over all residues mod m."""

    q: int
    m: int
    entries: tuple[tuple[int, ...], ...]

    def apply(self, v: Sequence[int]) -> tuple[int, ...]:
        return tuple(sum(b * x for b, x in zip(row, v)) for row in self.entries)

    def rows(self) -> list[list[int]]:
        return [list(r) for r in self.entries]


def _rotate(w: Sequence[int], k: int) -> list[int]:
    """r[t] = w[(t - k) mod m]."""
    m = len(w)
    k %= m
    if k == 0:
        return list(w)
    return list(w[m - k:]) + list(w[:m - k])


def _next_level(w: Sequence[int], q: int, shift: int) -> list[int]:
    # shift = q^i mod m for the level being extended
    acc = list(w)
    for a in range(1, q):
        r = _rotate(w, a * shift)
        if a & 1:
            acc = [x - y for x, y in zip(acc, r)]
        else:
            acc = [x + y for x, y in zip(acc, r)]
    return acc


def _base_level(m: int) -> list[int]:
    w = [0] * m
    w[0] = 1
    return w


class _TableCache:
    """Per-(q, m) weight levels, extended lazily.

    Levels are deterministic, so a racing extension can only ever publish an
    identical tuple; the lock just avoids duplicated work.
    """

    def __init__(self) -> None:
        self._levels: dict[tuple[int, int], tuple[tuple[int, ...], ...]] = {}
        self._lock = threading.Lock()

    def get(self, q: int, m: int, depth: int) -> tuple[tuple[int, ...], ...]:
        key = (q, m)
        have = self._levels.get(key)
        if have is not None and len(have) > depth:
            return have[: depth + 1]
        with self._lock:
            have = self._levels.get(key, (tuple(_base_level(m)),))
            levels = list(have)
            shift = pow(q, len(levels) - 1, m)
            while len(levels) <= depth:
                levels.append(tuple(_next_level(levels[-1], q, shift)))
                shift = shift * q % m
            out = tuple(levels)
            if len(out) * m <= CACHE_ENTRY_LIMIT:
                self._levels[key] = out
            return out[: depth + 1]

    def clear(self) -> None:
        with self._lock:
            self._levels.clear()


_cache = _TableCache()


def clear_cache() -> None:
    _cache.clear()


def build_weight_tables(q: int, m: int, L: int) -> WeightTables:
    _check_radix(q)
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    if L < 0:
        raise DomainError(f"level count must be >= 0, got {L}")
    return WeightTables(q, m, _cache.get(q, m, L))


def digits(x: int, q: int) -> list[int]:
    """Base-q digits of x, least significant first; [] for x = 0."""
    if x < 0:
        raise DomainError(f"x must be >= 0, got {x}")
    if q & (q - 1) == 0:
        b = q.bit_length() - 1
        mask = q - 1
        return [(x >> (b * i)) & mask for i in range((x.bit_length() + b - 1) // b)]
    out = []
    while x:
        x, d = divmod(x, q)
        out.append(d)
    return out


def vector_sums(q: int, m: int, x: int) -> tuple[int, ...]:
    """(S_{m,0,q}(x), ..., S_{m,m-1,q}(x)) in one digit pass."""
    _check_radix(q)
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    ds = digits(x, q)
    if not ds:
        return (0,) * m
    cached = len(ds) * m <= CACHE_ENTRY_LIMIT
    levels = _cache.get(q, m, len(ds) - 1) if cached else None

    w = _base_level(m)
    f = [0] * m  # sums over n < (x mod q^i)
    shift = 1 % m
    for i, d in enumerate(ds):
        if levels is not None:
            w = levels[i]
        acc = _rotate(f, d * shift)
        if d & 1:
            acc = [-v for v in acc]
        for a in range(d):
            r = _rotate(w, a * shift)
            if a & 1:
                acc = [x_ - y for x_, y in zip(acc, r)]
            else:
                acc = [x_ + y for x_, y in zip(acc, r)]
        f = acc
        if levels is None and i + 1 < len(ds):
            w = _next_level(w, q, shift)
        shift = shift * q % m
    return tuple(f)


def newman_sum_fast(spec: SumSpec, x: int) -> int:
    return vector_sums(spec.q, spec.m, x)[spec.l]


def newman_sum_interval_fast(spec: SumSpec, lo: int, hi: int) -> int:
    if not 0 <= lo <= hi:
        raise DomainError(f"need 0 <= lo <= hi, got [{lo}, {hi})")
    return newman_sum_fast(spec, hi) - newman_sum_fast(spec, lo)


def gelfond_counts_fast(m: int, x: int) -> GelfondCounts:
    total = residue_count(m, x)
    diff = newman_sum_fast(SumSpec(2, m, 0), x)
    return GelfondCounts((total + diff) // 2, (total - diff) // 2)


def transfer_matrix(q: int, m: int) -> TransferMatrix:
    _check_radix(q)
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    if gcd(q, m) != 1:
        raise NotCoprimeError(
            f"transfer matrix needs gcd(q, m) = 1, got q={q}, m={m}; "
            "reduce even moduli with even_modulus_reduce"
        )
    inv = pow(q, -1, m) if m > 1 else 0
    rows = [[0] * m for _ in range(m)]
    for l in range(m):
        for a in range(q):
            c = (l - a) * inv % m
            rows[l][c] += -1 if a & 1 else 1
    return TransferMatrix(q, m, tuple(tuple(r) for r in rows))


def even_modulus_reduce(m: int, l: int) -> tuple[int, int, int]:
    """(m', l', s) with S_{m,l}(2x) = s * S_{m',l'}(x) in base 2."""
    if m < 2 or m % 2:
        raise DomainError(f"even_modulus_reduce needs an even modulus, got {m}")
    if not 0 <= l < m:
        raise DomainError(f"residue must satisfy 0 <= l < m, got l={l}, m={m}")
    if l % 2 == 0:
        return m // 2, l // 2, 1
    return m // 2, (l - 1) // 2, -1
