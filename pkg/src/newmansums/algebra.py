"""Exact integer polynomials and rational linear algebra.

No floating point anywhere in this module. Rationals are ``fractions.Fraction``;
raw polynomials are plain lists of ints, lowest degree first, with no trailing
zeros (``[]`` is the zero polynomial).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence


# -- raw polynomial arithmetic -------------------------------------------------

def trim(p: Sequence) -> list:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def padd(a: Sequence[int], b: Sequence[int]) -> list[int]:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def pneg(a: Sequence[int]) -> list[int]:
    return [-c for c in a]


def psub(a: Sequence[int], b: Sequence[int]) -> list[int]:
    return padd(a, pneg(b))


def pmul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out)


def pdivmod(a: Sequence, b: Sequence) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over the rationals."""
    b = trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(c) for c in trim(a)]
    lead = Fraction(b[-1])
    q = [Fraction(0)] * max(len(r) - len(b) + 1, 0)
    while len(r) >= len(b) and r:
        k = len(r) - len(b)
        c = r[-1] / lead
        q[k] = c
        for i, bc in enumerate(b):
            r[i + k] -= c * bc
        r = trim(r)
    return trim(q), r


def pdiv_exact(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """a / b over Z[x]; raises ArithmeticError when the division is not exact."""
    q, r = pdivmod(a, b)
    if r or any(c.denominator != 1 for c in q):
        raise ArithmeticError("inexact polynomial division")
    return [int(c) for c in q]


def peval(p: Sequence[int], x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def primitive(coeffs: Iterable) -> list[int]:
    """Scale rational or integer coefficients to a primitive integer vector
    with positive leading coefficient."""
    cs = trim(Fraction(c) for c in coeffs)
    if not cs:
        return []
    den = reduce(lcm, (c.denominator for c in cs), 1)
    ints = [int(c * den) for c in cs]
    g = reduce(gcd, ints, 0)
    if ints[-1] < 0:
        g = -g
    return [c // g for c in ints]


@dataclass(frozen=True)
class IntPolynomial:
    """Primitive integer polynomial with positive leading coefficient."""

    coefficients: tuple[int, ...]

    def __post_init__(self) -> None:
        canon = tuple(primitive(self.coefficients))
        object.__setattr__(self, "coefficients", canon)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, x):
        return peval(self.coefficients, x)

    def __str__(self) -> str:
        if not self.coefficients:
            return "0"
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "x" if k == 1 else f"x^{k}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if not terms:
                terms.append(body if c > 0 else f"-{body}")
            else:
                terms.append(("+ " if c > 0 else "- ") + body)
        return " ".join(terms)


def poly_divides(p: IntPolynomial, r: IntPolynomial) -> bool:
    """True iff p divides r over the rationals."""
    if p.is_zero():
        raise ZeroDivisionError("zero polynomial cannot divide")
    _, rem = pdivmod(r.coefficients, p.coefficients)
    return not rem


# -- rational linear algebra ---------------------------------------------------

class EchelonBasis:
    """Incrementally maintained row-echelon basis over Q.

    ``add`` reduces a new row against the basis and keeps it when it is
    independent. Rows may carry a tag vector that undergoes the same row
    operations, which lets callers recover the combination that killed a row.
    """

    def __init__(self, width: int, tagged: bool = False) -> None:
        self.width = width
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []
        self.tags: list[list[Fraction]] | None = [] if tagged else None

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, row: Sequence, tag: Sequence | None = None):
        v = [Fraction(c) for c in row]
        t = [Fraction(c) for c in tag] if tag is not None else None
        for b, p, bt in zip(self.rows, self.pivots, self.tags or [None] * len(self.rows)):
            c = v[p]
            if c:
                for j in range(p, self.width):
                    if b[j]:
                        v[j] -= c * b[j]
                if t is not None and bt is not None:
                    for j in range(len(t)):
                        if bt[j]:
                            t[j] -= c * bt[j]
        return v, t

    def add(self, row: Sequence, tag: Sequence | None = None) -> bool:
        v, t = self.reduce(row, tag)
        for p, c in enumerate(v):
            if c:
                break
        else:
            return False
        inv = 1 / v[p]
        v = [c * inv for c in v]
        if t is not None:
            t = [c * inv for c in t]
        # keep the basis fully reduced so pivot columns are unit vectors
        for i, b in enumerate(self.rows):
            c = b[p]
            if c:
                self.rows[i] = [x - c * y for x, y in zip(b, v)]
                if self.tags is not None and t is not None:
                    self.tags[i] = [x - c * y for x, y in zip(self.tags[i], t)]
        self.rows.append(v)
        self.pivots.append(p)
        if self.tags is not None:
            self.tags.append(t if t is not None else [])
        return True


def nullspace(rows: Iterable[Sequence], width: int) -> list[list[Fraction]]:
    """Basis of {c : row . c = 0 for every row}, one vector per free column."""
    eb = EchelonBasis(width)
    for r in rows:
        eb.add(r)
        if eb.rank == width:
            return []
    pivot_of = dict(zip(eb.pivots, eb.rows))
    basis = []
    for free in range(width):
        if free in pivot_of:
            continue
        v = [Fraction(0)] * width
        v[free] = Fraction(1)
        for p, row in pivot_of.items():
            v[p] = -row[free]
        basis.append(v)
    return basis


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> list[list[int]]:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(r, c)) for c in bt] for r in a]


def matpow(a: Sequence[Sequence[int]], k: int) -> list[list[int]]:
    n = len(a)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    base = [list(r) for r in a]
    while k:
        if k & 1:
            out = matmul(out, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return out


def vecmat(v: Sequence, a: Sequence[Sequence[int]]) -> list:
    """Row vector times matrix."""
    n = len(a[0]) if a else 0
    out = [0] * n
    for x, row in zip(v, a):
        if x:
            for j, y in enumerate(row):
                if y:
                    out[j] += x * y
    return out


def char_poly_bareiss(a: Sequence[Sequence[int]]) -> list[int]:
    """det(xI - A) by fraction-free Bareiss elimination over Z[x]."""
    n = len(a)
    if n == 0:
        return [1]
    mat = [[[-a[i][j]] if i != j else [-a[i][j], 1] for j in range(n)] for i in range(n)]
    mat = [[trim(e) for e in row] for row in mat]
    prev = [1]
    sgn = 1
    for k in range(n - 1):
        if not mat[k][k]:
            swap = next((i for i in range(k + 1, n) if mat[i][k]), None)
            if swap is None:
                return []
            mat[k], mat[swap] = mat[swap], mat[k]
            sgn = -sgn
        piv = mat[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = psub(pmul(mat[i][j], piv), pmul(mat[i][k], mat[k][j]))
                mat[i][j] = pdiv_exact(num, prev)
            mat[i][k] = []
        prev = piv
    det = mat[n - 1][n - 1]
    return det if sgn > 0 else pneg(det)
