import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from newmansums import conjectures as cj
from newmansums.core import DomainError, SumSpec, gelfond_counts, newman_sum_naive
from newmansums.transfer import newman_sum_fast

PUBLISHED = [(3, 3), (5, 5), (7, -7), (11, 11), (13, 13), (17, 697), (19, 19), (23, -23), (29, 29)]


@pytest.mark.parametrize("n,expected", [(3, 3), (17, 697), (7, -7)])
def test_a_sequence_examples(n, expected):
    assert cj.a_sequence(n) == expected


def test_a_sequence_matches_naive_for_small_n():
    for n in range(1, 19):
        assert cj.a_sequence(n) == newman_sum_naive(SumSpec(2, n, 0), 2**n)


def test_scan_primes_reproduces_published_values():
    recs = cj.scan_primes(29)
    assert [(r.p, r.a_p) for r in recs] == PUBLISHED
    assert all(r.divisible_by_p for r in recs)
    assert [r.p for r in recs if not r.is_plus_minus_p] == [17]
    assert next(r for r in recs if r.p == 17).quotient == 41
    assert [r.p for r in recs if r.drmota_skalba] == [3, 5, 17]
    assert cj.published_mismatches(recs) == []


def test_scan_primes_trivial_range():
    assert cj.scan_primes(2) == []


def test_scan_primes_records_are_self_consistent():
    for r in cj.scan_primes(120):
        assert r.divisible_by_p == (divmod(r.a_p, r.p)[1] == 0)
        assert r.is_plus_minus_p == (abs(r.a_p) == r.p)
        if r.divisible_by_p:
            assert r.quotient * r.p == r.a_p


def test_scan_primes_parallel_matches_serial():
    assert cj.scan_primes(80, workers=3) == cj.scan_primes(80)


def test_is_prime():
    assert [n for n in range(30) if cj.is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


@pytest.mark.parametrize("spec", [SumSpec(2, 3, 0), SumSpec(2, 3, 1), SumSpec(4, 5, 0), SumSpec(3, 4, 2), SumSpec(6, 7, 3), SumSpec(2, 1, 0)])
def test_prefix_sums_match_naive(spec):
    arr = cj.prefix_sums(spec, 3000)
    for x in range(0, 3001):
        assert arr[x] == newman_sum_naive(spec, x)


def test_block_size_does_not_change_values():
    spec = SumSpec(4, 7, 3)
    whole = np.concatenate([v for _, v in cj.prefix_blocks(spec, 50000, block=1 << 20)])
    small = np.concatenate([v for _, v in cj.prefix_blocks(spec, 50000, block=997)])
    assert np.array_equal(whole, small)


@given(st.integers(0, 2**40), st.sampled_from([2, 3, 4, 6, 10]))
def test_digit_sum_parity(n, q):
    from newmansums.core import digit_sum
    assert int(cj.digit_sum_parity(np.array([n]), q)[0]) == digit_sum(n, q) % 2


def test_positivity_newman_class():
    rep = cj.positivity_scan(SumSpec(2, 3, 0), 2**16)
    assert rep.all_positive and rep.min_value > 0
    naive = [newman_sum_naive(SumSpec(2, 3, 0), n) for n in range(1, 2**12)]
    assert min(naive) > 0


def test_positivity_other_residue_goes_negative():
    rep = cj.positivity_scan(SumSpec(2, 3, 1), 100)
    assert not rep.all_positive
    assert rep.min_value < 0
    assert newman_sum_naive(SumSpec(2, 3, 1), rep.argmin) == rep.min_value


def test_positivity_base4_mod5_is_report_only():
    from newmansums.core import sign

    rep = cj.positivity_scan(SumSpec(4, 5, 0), 2**16)
    assert rep.n_range == (1, 2**16)
    running, lo, at = 0, None, None
    for n in range(1, 2**16 + 1):
        k = n - 1
        if k % 5 == 0:
            running += sign(k, 4)
        if lo is None or running < lo:
            lo, at = running, n
    assert (rep.min_value, rep.argmin) == (lo, at)


def brute_lambda(spec, n_max, n_min):
    best = None
    for n in range(n_min, n_max + 1):
        s = abs(newman_sum_naive(spec, n))
        if s >= 2:
            r = math.log(s) / math.log(n)
            best = r if best is None else max(best, r)
    return best


@pytest.mark.parametrize("spec", [SumSpec(2, 3, 0), SumSpec(2, 7, 0), SumSpec(4, 5, 0)])
def test_exponent_matches_brute(spec):
    est = cj.exponent_estimate(spec, 1500, 64)
    assert est.lambda_hat == pytest.approx(brute_lambda(spec, 1500, 64), abs=1e-12)
    assert abs(newman_sum_naive(spec, est.argmax_n)) == est.record_value


def test_exponent_empty_for_thue_morse():
    est = cj.exponent_estimate(SumSpec(2, 1, 0), 5000)
    assert est.empty and est.argmax_n is None


def test_exponent_monotone_in_n_max():
    spec = SumSpec(2, 5, 0)
    lams = [cj.exponent_estimate(spec, n, 64).lambda_hat for n in (500, 5000, 50000, 2**18)]
    assert lams == sorted(lams)


def test_exponent_trace_running_max_is_monotone():
    est = cj.exponent_estimate(SumSpec(2, 3, 0), 2**16)
    running = [lam for _, _, lam in est.trace]
    assert running == sorted(running)
    assert running[-1] == pytest.approx(est.lambda_hat)
    for n, s, _ in est.trace:
        if n <= 2**14:
            assert s == newman_sum_naive(SumSpec(2, 3, 0), n)


def test_exponent_rejects_bad_range():
    with pytest.raises(DomainError):
        cj.exponent_estimate(SumSpec(2, 3, 0), 100, 1)
    with pytest.raises(DomainError):
        cj.exponent_estimate(SumSpec(2, 3, 0), 64, 64)


def test_geometric_checkpoints():
    assert cj.geometric_checkpoints(2**20, 20) == [2**k for k in range(1, 21)]
    assert cj.geometric_checkpoints(7, 1) == [7]
    assert cj.geometric_checkpoints(0, 5) == [0]


def test_ratio_scan_7_vs_6():
    recs = cj.ratio_scan(7, 2, 2**20, 20)
    assert len(recs) == 20
    for r in recs:
        assert abs(r.s_3k) >= 1
        assert r.ratio == Fraction(abs(r.s_m), abs(r.s_3k))
        if r.n <= 2**14:
            assert r.s_m == newman_sum_naive(SumSpec(2, 7, 0), r.n)
            assert r.s_3k == newman_sum_naive(SumSpec(2, 6, 0), r.n)


def test_ratio_scan_skips_zero_denominators():
    recs = cj.ratio_scan(5, 1, 2**12, 12)
    pts = cj.geometric_checkpoints(2**12, 12)
    zero = [n for n in pts if newman_sum_fast(SumSpec(2, 3, 0), n) == 0]
    assert [r.n for r in recs] == [n for n in pts if n not in zero]


def test_ratio_scan_rejects_multiples_of_three():
    with pytest.raises(DomainError):
        cj.ratio_scan(6, 1, 100, 3)


def test_gelfond_remainder_examples():
    (r,) = cj.gelfond_remainder(3, 7, 1)
    assert (r.g0, r.g1) == (3, 0)
    assert r.rem0 == Fraction(11, 6)
    (z,) = cj.gelfond_remainder(4, 0, 5)
    assert z.rem0 == z.rem1 == 0 and z.exponent is None


def test_gelfond_remainder_matches_enumeration():
    for r in cj.gelfond_remainder(5, 2**14, 14):
        g = gelfond_counts(5, r.x)
        assert (r.g0, r.g1) == (g.g0, g.g1)
        assert r.rem0 == g.g0 - Fraction(r.x, 10)


def test_gelfond_remainder_exponent_for_m5_stays_below_ln3_ln4():
    recs = cj.gelfond_remainder(5, 2**20, 20)
    tail = [r.exponent for r in recs if r.x >= 2**14]
    assert max(tail) < math.log(3) / math.log(4)
