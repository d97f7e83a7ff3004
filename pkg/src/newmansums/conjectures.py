"""Scan drivers: the a_p sequence, positivity, growth exponents, ratios and
Gelfond remainders.

Dense scans (every n up to N) run block by block with numpy. Each block starts
from a prefix value computed by the fast digit DP, so blocks are independent
and give the same integers whatever the block size or worker count. Sparse
scans (2^p, geometric checkpoints) call the fast evaluator directly.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, Optional

import numpy as np

from newmansums.core import DomainError, SumSpec
from newmansums.transfer import gelfond_counts_fast, newman_sum_fast

# a_p values for p <= 29 as published
PUBLISHED_A = {3: 3, 5: 5, 7: -7, 11: 11, 13: 13, 17: 697, 19: 19, 23: -23, 29: 29}
PUBLISHED_LIMIT = 29
# primes p <= 1000 with S_{p,0}(n) eventually positive (Drmota and Skalba)
DRMOTA_SKALBA = frozenset({3, 5, 17, 43, 257, 683})

BLOCK = 1 << 20


@dataclass(frozen=True)
class PrimeScanRecord:
    p: int
    a_p: int
    divisible_by_p: bool
    is_plus_minus_p: bool
    quotient: Optional[int]
    drmota_skalba: bool


@dataclass(frozen=True)
class ExponentEstimate:
    spec: SumSpec
    n_min: int
    n_max: int
    lambda_hat: Optional[float]
    argmax_n: Optional[int]
    record_value: Optional[int]
    trace: tuple[tuple[int, int, Optional[float]], ...] = field(default=(), compare=False)

    @property
    def empty(self) -> bool:
        return self.lambda_hat is None


@dataclass(frozen=True)
class PositivityReport:
    spec: SumSpec
    n_range: tuple[int, int]
    min_value: int
    argmin: int
    all_positive: bool


@dataclass(frozen=True)
class RatioScanRecord:
    m: int
    k: int
    n: int
    s_m: int
    s_3k: int
    ratio: Fraction

    @property
    def ratio_float(self) -> float:
        return float(self.ratio)


@dataclass(frozen=True)
class GelfondRemainder:
    x: int
    g0: int
    g1: int
    rem0: Fraction
    rem1: Fraction
    exponent: Optional[float]


# -- prime sequence --------------------------------------------------------------

def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def a_sequence(n: int) -> int:
    """S_{n,0}(2^n) in base 2."""
    if n < 1:
        raise DomainError(f"a_sequence needs n >= 1, got {n}")
    return newman_sum_fast(SumSpec(2, n, 0), 1 << n)


def prime_record(p: int) -> PrimeScanRecord:
    a = a_sequence(p)
    div = a % p == 0
    return PrimeScanRecord(
        p=p,
        a_p=a,
        divisible_by_p=div,
        is_plus_minus_p=abs(a) == p,
        quotient=a // p if div else None,
        drmota_skalba=p in DRMOTA_SKALBA,
    )


def scan_primes(p_max: int, workers: int = 1) -> list[PrimeScanRecord]:
    """One record per odd prime p <= p_max, in increasing p."""
    primes = [p for p in range(3, p_max + 1, 2) if is_prime(p)]
    if workers > 1 and len(primes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            return list(ex.map(prime_record, primes))
    return [prime_record(p) for p in primes]


def published_mismatches(records: list[PrimeScanRecord]) -> list[PrimeScanRecord]:
    return [r for r in records if r.p in PUBLISHED_A and PUBLISHED_A[r.p] != r.a_p]


def divisibility_findings(records: list[PrimeScanRecord]) -> list[PrimeScanRecord]:
    """Primes beyond the published range where p does not divide a_p."""
    return [r for r in records if r.p > PUBLISHED_LIMIT and not r.divisible_by_p]


# -- dense prefix scans ----------------------------------------------------------

def digit_sum_parity(n: np.ndarray, q: int) -> np.ndarray:
    """Parity of the base-q digit sum, elementwise."""
    n = np.asarray(n, dtype=np.int64)
    if q == 2:
        return (np.bitwise_count(n) & 1).astype(np.int64)
    if q % 2:
        # q = 1 (mod 2), so the digit sum has the parity of n
        return n & 1
    s = np.zeros_like(n)
    rest = n.copy()
    while rest.any():
        s += rest % q
        rest //= q
    return s & 1


def prefix_blocks(spec: SumSpec, n_max: int, block: int = BLOCK) -> Iterator[tuple[int, np.ndarray]]:
    """Yield (start, vals) with vals[i] = S(spec, start + i), covering n = 0..n_max."""
    if n_max < 0:
        return
    start = 0
    while start <= n_max:
        stop = min(start + block, n_max + 1)
        base = newman_sum_fast(spec, start)
        # S(start + i) = base + sum of member signs in [start, start + i)
        ks = np.arange(start, stop - 1, dtype=np.int64)
        contrib = np.where(ks % spec.m == spec.l, 1 - 2 * digit_sum_parity(ks, spec.q), 0)
        vals = np.empty(stop - start, dtype=np.int64)
        vals[0] = base
        np.cumsum(contrib, out=vals[1:])
        vals[1:] += base
        yield start, vals
        start = stop


def prefix_sums(spec: SumSpec, n_max: int) -> np.ndarray:
    """S(spec, n) for n = 0..n_max as one int64 array."""
    parts = [v for _, v in prefix_blocks(spec, n_max)]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def positivity_scan(spec: SumSpec, n_max: int) -> PositivityReport:
    if n_max < 2:
        raise DomainError(f"positivity_scan needs n_max >= 2, got {n_max}")
    best, where = None, None
    for start, vals in prefix_blocks(spec, n_max):
        lo = max(1 - start, 0)
        if lo >= len(vals):
            continue
        seg = vals[lo:]
        i = int(np.argmin(seg))
        if best is None or int(seg[i]) < best:
            best, where = int(seg[i]), start + lo + i
    return PositivityReport(spec, (1, n_max), best, where, best > 0)


def geometric_checkpoints(n_max: int, count: int, ratio: int = 2) -> list[int]:
    """Up to ``count`` points n_max / ratio^j, increasing, ending at n_max."""
    if count < 1:
        raise DomainError(f"checkpoint count must be >= 1, got {count}")
    if n_max <= 0:
        return [0]
    pts = {n_max // ratio**j for j in range(count)}
    pts.discard(0)
    return sorted(pts)


def _record(vals: np.ndarray, first_n: int) -> tuple[float, int, int]:
    """(max ratio, n, |S|) over a contiguous run starting at first_n; ratio -inf if none."""
    mag = np.abs(vals)
    ok = mag >= 2
    if not ok.any():
        return -math.inf, -1, 0
    ns = np.arange(first_n, first_n + len(vals), dtype=np.float64)
    ratio = np.full(len(vals), -np.inf)
    ratio[ok] = np.log(mag[ok].astype(np.float64)) / np.log(ns[ok])
    i = int(np.argmax(ratio))
    return float(ratio[i]), first_n + i, int(mag[i])


def exponent_estimate(spec: SumSpec, n_max: int, n_min: int = 64) -> ExponentEstimate:
    """Record-maxima exponent: max of ln|S(n)| / ln n over n_min <= n <= n_max, |S(n)| >= 2.

    ``trace`` holds (n, S(n), running maximum) at doubling checkpoints from n_min.
    """
    if n_min < 2:
        raise DomainError(f"n_min must be >= 2, got {n_min}")
    if n_max <= n_min:
        raise DomainError(f"need n_max > n_min, got n_max={n_max}, n_min={n_min}")
    marks = []
    c = n_min
    while c < n_max:
        marks.append(c)
        c *= 2
    marks.append(n_max)

    best = (-math.inf, -1, 0)
    trace = []
    mi = 0
    for start, vals in prefix_blocks(spec, n_max):
        lo = max(n_min - start, 0)
        end = start + len(vals)
        while mi < len(marks) and marks[mi] < end:
            n = marks[mi]
            part = _record(vals[lo:n - start + 1], start + lo)
            run = max(best[0], part[0])
            trace.append((n, int(vals[n - start]), run if run > -math.inf else None))
            mi += 1
        if lo < len(vals):
            best = max(best, _record(vals[lo:], start + lo), key=lambda r: r[0])

    if best[0] == -math.inf:
        return ExponentEstimate(spec, n_min, n_max, None, None, None, tuple(trace))
    _, n, mag = best
    # final ratio in scalar arithmetic so the reported value does not depend on vector kernels
    lam = math.log(mag) / math.log(n)
    return ExponentEstimate(spec, n_min, n_max, lam, n, mag, tuple(trace))


# -- sparse checkpoint scans -----------------------------------------------------

def ratio_scan(m: int, k: int, n_max: int, checkpoints: int) -> list[RatioScanRecord]:
    """|S_{m,0}(n)| / |S_{3k,0}(n)| at doubling checkpoints, where the denominator is nonzero."""
    if gcd(m, 3) != 1:
        raise DomainError(f"ratio_scan needs gcd(m, 3) = 1, got m={m}")
    if k < 1:
        raise DomainError(f"comparison index k must be >= 1, got {k}")
    num, den = SumSpec(2, m, 0), SumSpec(2, 3 * k, 0)
    out = []
    for n in geometric_checkpoints(n_max, checkpoints):
        s_den = newman_sum_fast(den, n)
        if s_den == 0:
            continue
        s_num = newman_sum_fast(num, n)
        out.append(RatioScanRecord(m, k, n, s_num, s_den, Fraction(abs(s_num), abs(s_den))))
    return out


def gelfond_remainder(m: int, n_max: int, checkpoints: int) -> list[GelfondRemainder]:
    """G^(i)_{m,0}(x) - x/(2m) for i = 0, 1 at doubling checkpoints up to n_max.

    ``exponent`` is ln(max |remainder|) / ln x, left empty for x < 2 or a zero
    remainder.
    """
    if m < 1:
        raise DomainError(f"modulus must be >= 1, got {m}")
    out = []
    for x in geometric_checkpoints(n_max, checkpoints):
        g = gelfond_counts_fast(m, x)
        main = Fraction(x, 2 * m)
        r0, r1 = g.g0 - main, g.g1 - main
        big = max(abs(r0), abs(r1))
        expo = math.log(big) / math.log(x) if x >= 2 and big > 0 else None
        out.append(GelfondRemainder(x, g.g0, g.g1, r0, r1, expo))
    return out
