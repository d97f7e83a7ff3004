"""Seeded sampling with a fixed 64-bit linear congruential generator.

state <- (6364136223846793005 * state + 1442695040888963407) mod 2^64
(Knuth's MMIX constants). The output is the high 32 bits of the new state.
``below(n)`` reduces by modulo, combining several outputs when n > 2^32;
the small modulo bias is accepted in exchange for bit-exact reproducibility
on every platform.
"""

from __future__ import annotations

MULTIPLIER = 6364136223846793005
INCREMENT = 1442695040888963407
MASK = (1 << 64) - 1


class Lcg:
    def __init__(self, seed: int) -> None:
        self.state = seed & MASK
        # decorrelate small consecutive seeds
        for _ in range(4):
            self.next32()

    def next32(self) -> int:
        self.state = (MULTIPLIER * self.state + INCREMENT) & MASK
        return self.state >> 32

    def below(self, n: int) -> int:
        if n < 1:
            raise ValueError(f"below() needs n >= 1, got {n}")
        acc, span = 0, 1
        while span < n:
            acc = (acc << 32) | self.next32()
            span <<= 32
        return acc % n

    def distinct_pair(self, n: int) -> tuple[int, int]:
        """Two distinct indices in [0, n), returned in increasing order."""
        i = self.below(n)
        j = self.below(n - 1)
        if j >= i:
            j += 1
        return (i, j) if i < j else (j, i)
