"""Verify, discover and compare linear interval recurrences of Newman sums.

A relation is a polynomial c_0 + c_1 x + ... + c_r x^r together with a
scale ``step`` and a divisibility constraint ``d``; it asserts

    sum_j c_j * S([step^j u, step^j v)) = 0

for every pair u < v of multiples of d. Since 0 is a multiple of every d and
S([u, v)) = S(v) - S(u), the constraint has to apply to both endpoints.

Two discovery routes exist. Sampling builds the exact integer sequences
s_k = S([step^k u, step^k v)) for random start intervals and solves the
stacked Hankel system over Q; it works for any (q, m) and sees relations
that hold only on a sub-family (such as the multiples of 32 in base 4).
The Krylov route iterates e_l^T under powers of the transfer matrix and
yields relations valid for all intervals.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from newmansums.algebra import (
    EchelonBasis,
    IntPolynomial,
    char_poly_bareiss,
    matpow,
    nullspace,
    poly_divides,
    vecmat,
)
from newmansums.core import DomainError, SumSpec
from newmansums.rng import Lcg
from newmansums.transfer import TransferMatrix, newman_sum_fast, transfer_matrix

__all__ = [
    "BUILTIN_RELATIONS",
    "RecurrenceReport",
    "RelationSpec",
    "char_poly",
    "discover_recurrence",
    "minimal_annihilator",
    "poly_divides",
    "verify_relation",
    "weakest_divisibility",
]

SATURATION_PATIENCE = 8
VALIDATION_SAMPLES = 50
DEFAULT_BOUND = 10**4


@dataclass(frozen=True)
class RelationSpec:
    spec: SumSpec
    step: int
    divisibility: int
    coefficients: IntPolynomial

    def __post_init__(self) -> None:
        if self.step < 2:
            raise DomainError(f"step must be >= 2, got {self.step}")
        if self.divisibility < 1:
            raise DomainError(f"divisibility must be >= 1, got {self.divisibility}")


@dataclass
class RecurrenceReport:
    relation: RelationSpec
    status: str  # "verified" | "refuted" | "discovered"
    samples_checked: int
    counterexample: Optional[tuple[int, int]] = None
    subspace_rank: int = 0
    diagnostic: str = field(default="", compare=False)

    def to_json(self) -> dict:
        rel = self.relation
        out = {
            "q": rel.spec.q,
            "m": rel.spec.m,
            "l": rel.spec.l,
            "step": rel.step,
            "divisibility": rel.divisibility,
            "coefficients": [str(c) for c in rel.coefficients.coefficients],
            "status": self.status,
            "samples_checked": self.samples_checked,
        }
        if self.counterexample is not None:
            out["counterexample"] = [str(self.counterexample[0]), str(self.counterexample[1])]
        out["subspace_rank"] = self.subspace_rank
        return out


def _poly(coeffs: dict[int, int]) -> IntPolynomial:
    deg = max(coeffs)
    return IntPolynomial(tuple(coeffs.get(k, 0) for k in range(deg + 1)))


BUILTIN_RELATIONS: dict[str, RelationSpec] = {
    # S_{3,0}(4n) = 3 S_{3,0}(n), n even
    "eq6": RelationSpec(SumSpec(2, 3, 0), 2, 2, _poly({0: -3, 2: 1})),
    "eq9": RelationSpec(SumSpec(2, 3, 0), 2, 2, _poly({1: -3, 3: 1})),
    "eq10": RelationSpec(SumSpec(2, 5, 0), 2, 2, _poly({1: -5, 5: 1})),
    "eq11": RelationSpec(SumSpec(2, 7, 0), 2, 2, _poly({1: 7, 7: 1})),
    "eq12": RelationSpec(SumSpec(2, 9, 0), 2, 2, _poly({1: 9, 3: -3, 7: -3, 9: 1})),
    "eq13": RelationSpec(SumSpec(4, 5, 0), 16, 32, _poly({0: 5, 1: -10, 2: 1})),
}


class _Prefix:
    """Memoized prefix sums S(spec, x) through the fast evaluator."""

    def __init__(self, spec: SumSpec) -> None:
        self.spec = spec
        self._memo: dict[int, int] = {}

    def __call__(self, x: int) -> int:
        v = self._memo.get(x)
        if v is None:
            v = self._memo[x] = newman_sum_fast(self.spec, x)
        return v

    def sequence(self, step: int, u: int, v: int, length: int) -> list[int]:
        out = []
        su, sv = u, v
        for _ in range(length):
            out.append(self(sv) - self(su))
            su *= step
            sv *= step
        return out


def _draw_interval(rng: Lcg, d: int, bound: int) -> tuple[int, int]:
    i, j = rng.distinct_pair(bound // d + 1)
    return i * d, j * d


def _check_space(d: int, bound: int) -> None:
    if bound // d + 1 < 2:
        raise DomainError(
            f"no interval [u, v) with u < v <= {bound} and both endpoints divisible by {d}"
        )


def verify_relation(rel: RelationSpec, sample_count: int, bound: int, seed: int) -> RecurrenceReport:
    """Check a relation on ``sample_count`` seeded intervals with endpoints <= bound."""
    _check_space(rel.divisibility, bound)
    coeffs = rel.coefficients.coefficients
    if not coeffs:
        raise DomainError("relation polynomial must be nonzero")
    prefix = _Prefix(rel.spec)
    rng = Lcg(seed)
    for i in range(sample_count):
        u, v = _draw_interval(rng, rel.divisibility, bound)
        seq = prefix.sequence(rel.step, u, v, len(coeffs))
        if sum(c * s for c, s in zip(coeffs, seq)) != 0:
            return RecurrenceReport(rel, "refuted", i + 1, (u, v))
    return RecurrenceReport(rel, "verified", sample_count)


def weakest_divisibility(
    rel: RelationSpec, sample_count: int, bound: int, seed: int
) -> Optional[int]:
    """Smallest divisor d of ``rel.divisibility`` for which the relation still verifies."""
    for d in range(1, rel.divisibility + 1):
        if rel.divisibility % d:
            continue
        trial = RelationSpec(rel.spec, rel.step, d, rel.coefficients)
        if verify_relation(trial, sample_count, bound, seed).status == "verified":
            return d
    return None


def _hankel_rows(seqs, degree: int):
    for s in seqs:
        for k in range(len(s) - degree):
            yield s[k:k + degree + 1]


def _annihilates(coeffs, seq) -> bool:
    r = len(coeffs) - 1
    return all(
        sum(c * seq[k + j] for j, c in enumerate(coeffs)) == 0
        for k in range(len(seq) - r)
    )


def _solve_annihilator(seqs, max_degree: int) -> Optional[IntPolynomial]:
    """Lowest-degree polynomial killing every shift of every sequence.

    Degree ties among nullspace basis vectors go to the lexicographically
    smallest canonical coefficient tuple.
    """
    seqs = list(seqs)
    for degree in range(max_degree + 1):
        ns = nullspace(_hankel_rows(seqs, degree), degree + 1)
        cands = [IntPolynomial(tuple(v)) for v in ns if v[degree] != 0]
        if cands:
            return min(cands, key=lambda p: p.coefficients)
    return None


def _breaking_sample(samples, max_degree: int) -> int:
    """Index of the first sample after which no annihilator of degree <= max_degree exists."""
    eb = EchelonBasis(len(samples[0][1]))
    for i, (_, seq) in enumerate(samples):
        if eb.add(seq) and _solve_annihilator(eb.rows, max_degree) is None:
            return i
    return len(samples) - 1


def discover_recurrence(
    spec: SumSpec,
    step: int,
    divisibility: int,
    max_degree: int,
    sample_budget: int,
    seed: int,
    bound: int = DEFAULT_BOUND,
    validation: int = VALIDATION_SAMPLES,
) -> RecurrenceReport:
    """Find the minimal interval recurrence satisfied on sampled start intervals.

    Training intervals are drawn until the rank of the collected sequence
    space has not grown for ``SATURATION_PATIENCE`` consecutive samples or the
    budget runs out. The candidate must then annihilate ``validation`` fresh
    intervals; an out-of-sample failure joins the training set and the solve
    is repeated.
    """
    if max_degree < 1:
        raise DomainError(f"max_degree must be >= 1, got {max_degree}")
    if sample_budget < 1:
        raise DomainError(f"sample_budget must be >= 1, got {sample_budget}")
    _check_space(divisibility, bound)
    length = 2 * max_degree + 1
    prefix = _Prefix(spec)
    rng = Lcg(seed)
    basis = EchelonBasis(length)
    samples: list[tuple[tuple[int, int], list[int]]] = []
    stale = 0
    while len(samples) < sample_budget and stale < SATURATION_PATIENCE:
        u, v = _draw_interval(rng, divisibility, bound)
        seq = prefix.sequence(step, u, v, length)
        samples.append(((u, v), seq))
        stale = 0 if basis.add(seq) else stale + 1

    checked = len(samples)
    while True:
        poly = _solve_annihilator(basis.rows, max_degree)
        if poly is None:
            idx = _breaking_sample(samples, max_degree)
            # the zero polynomial marks "nothing found"
            return RecurrenceReport(
                RelationSpec(spec, step, divisibility, IntPolynomial(())), "refuted", checked, samples[idx][0], basis.rank,
                diagnostic=f"no annihilator of degree <= {max_degree}",
            )
        failed = None
        for _ in range(validation):
            u, v = _draw_interval(rng, divisibility, bound)
            seq = prefix.sequence(step, u, v, length)
            checked += 1
            if not _annihilates(poly.coefficients, seq):
                failed = ((u, v), seq)
                break
        if failed is None:
            rel = RelationSpec(spec, step, divisibility, poly)
            return RecurrenceReport(rel, "discovered", checked, None, basis.rank)
        samples.append(failed)
        basis.add(failed[1])


def minimal_annihilator(q: int, m: int, l: int, power: int) -> IntPolynomial:
    """Minimal polynomial P with e_l^T P(B^power) = 0, B the transfer matrix.

    Every such P gives an interval recurrence with step q^power valid for all
    intervals, because S([s u, s v)) components are e_l^T B^k (V(v) - V(u)).
    """
    if power < 1:
        raise DomainError(f"power must be >= 1, got {power}")
    SumSpec(q, m, l)
    b = transfer_matrix(q, m)
    mat = matpow(b.rows(), power)
    basis = EchelonBasis(m, tagged=True)
    w: list = [int(j == l) for j in range(m)]
    for k in range(m + 1):
        tag = [Fraction(int(i == k)) for i in range(m + 1)]
        v, t = basis.reduce(w, tag)
        if not any(v):
            return IntPolynomial(tuple(t[: k + 1]))
        basis.add(w, tag)
        w = vecmat(w, mat)
    raise AssertionError("Krylov sequence did not close within m + 1 steps")


def char_poly(b: TransferMatrix) -> IntPolynomial:
    return IntPolynomial(tuple(char_poly_bareiss(b.entries)))
