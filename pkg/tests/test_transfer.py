from math import gcd

import pytest
from hypothesis import given, settings, strategies as st

from newmansums.core import DomainError, SumSpec, gelfond_counts, newman_sum_naive
from newmansums.transfer import (
    NotCoprimeError,
    build_weight_tables,
    clear_cache,
    digits,
    even_modulus_reduce,
    gelfond_counts_fast,
    newman_sum_fast,
    transfer_matrix,
    vector_sums,
)


def brute_weights(q, m, i):
    w = [0] * m
    for n in range(q**i):
        w[n % m] += newman_sum_naive(SumSpec(q, 1, 0), n + 1) - newman_sum_naive(SumSpec(q, 1, 0), n)
    return tuple(w)


def test_weight_tables_examples():
    assert build_weight_tables(2, 3, 1).levels[1] == (1, -1, 0)
    assert all(build_weight_tables(2, 1, 6).levels[k] == (0,) for k in range(1, 7))
    # brute force over [0, 8): residue 0 -> {0, 3, 6}, 1 -> {1, 4, 7}, 2 -> {2, 5}
    assert build_weight_tables(2, 3, 3).levels[3] == (3, -3, 0)
    assert brute_weights(2, 3, 3) == (3, -3, 0)


@pytest.mark.parametrize("q,m", [(2, 3), (2, 6), (3, 4), (4, 5), (5, 10), (4, 6)])
def test_weight_table_invariants(q, m):
    t = build_weight_tables(q, m, 5)
    assert t.levels[0] == (1,) + (0,) * (m - 1)
    for i in range(5):
        assert t.levels[i] == brute_weights(q, m, i)
        nxt = tuple(
            sum((-1) ** a * t.levels[i][(c - a * q**i) % m] for a in range(q)) for c in range(m)
        )
        assert t.levels[i + 1] == nxt
    for i, lvl in enumerate(t.levels):
        assert sum(lvl) == newman_sum_naive(SumSpec(q, 1, 0), q**i)


def test_weight_tables_reject_bad_args():
    with pytest.raises(DomainError):
        build_weight_tables(2, 3, -1)
    with pytest.raises(DomainError):
        build_weight_tables(1, 3, 2)


@given(st.integers(0, 10**40), st.integers(2, 17))
def test_digits_roundtrip(x, q):
    ds = digits(x, q)
    assert sum(d * q**i for i, d in enumerate(ds)) == x
    assert all(0 <= d < q for d in ds)
    assert not ds or ds[-1] != 0


@pytest.mark.parametrize("m,expected", [(17, 697), (23, -23)])
def test_fast_published_values(m, expected):
    assert newman_sum_fast(SumSpec(2, m, 0), 2**m) == expected


def test_fast_matches_naive_at_million():
    spec = SumSpec(2, 3, 0)
    assert newman_sum_fast(spec, 10**6) == newman_sum_naive(spec, 10**6)


@settings(max_examples=300)
@given(st.integers(2, 7), st.integers(1, 15), st.integers(0, 20000))
def test_fast_equals_naive_random(q, m, x):
    v = vector_sums(q, m, x)
    for l in range(m):
        assert v[l] == newman_sum_naive(SumSpec(q, m, l), x)


def test_vector_sums_examples():
    assert vector_sums(2, 3, 8) == (3, -3, 0)
    assert vector_sums(2, 7, 0) == (0,) * 7
    assert vector_sums(2, 3, 1) == (1, 0, 0)


def test_streaming_path_agrees_with_cached_path(monkeypatch):
    import newmansums.transfer as tr

    xs = [0, 1, 2**20 + 12345, 3**30, 10**25 + 7]
    cached = [vector_sums(q, m, x) for q in (2, 3, 4) for m in (5, 9) for x in xs]
    clear_cache()
    monkeypatch.setattr(tr, "CACHE_ENTRY_LIMIT", 0)
    streamed = [vector_sums(q, m, x) for q in (2, 3, 4) for m in (5, 9) for x in xs]
    assert cached == streamed


def test_transfer_matrix_2_3():
    b = transfer_matrix(2, 3).entries
    assert b == ((1, -1, 0), (-1, 0, 1), (0, 1, -1))


def test_transfer_matrix_small_cases():
    assert transfer_matrix(2, 1).entries == ((0,),)
    b = transfer_matrix(4, 5).entries
    assert all(sum(r) == 0 for r in b)


@pytest.mark.parametrize("q,m", [(q, m) for q in (2, 3, 4, 5) for m in range(1, 13) if gcd(q, m) == 1])
def test_transfer_matrix_invariants(q, m):
    b = transfer_matrix(q, m)
    inv = pow(q, -1, m) if m > 1 else 0
    want = 1 if q % 2 else 0
    assert all(sum(r) == want for r in b.entries)
    assert all(sum(col) == want for col in zip(*b.entries))
    for l in range(m):
        for c in range(m):
            assert b.entries[l][c] == sum((-1) ** a for a in range(q) if (l - a) * inv % m == c)


@pytest.mark.parametrize("q,m", [(2, 3), (2, 7), (3, 4), (4, 5), (5, 12), (2, 9)])
def test_matrix_law(q, m):
    b = transfer_matrix(q, m)
    for x in list(range(0, 1001)) + [9999, 10000]:
        assert vector_sums(q, m, q * x) == b.apply(vector_sums(q, m, x))


def test_transfer_matrix_rejects_non_coprime():
    with pytest.raises(NotCoprimeError, match="even_modulus_reduce"):
        transfer_matrix(2, 6)


@pytest.mark.parametrize("m,l,expected", [(6, 0, (3, 0, 1)), (6, 1, (3, 0, -1)), (2, 0, (1, 0, 1))])
def test_even_modulus_reduce_examples(m, l, expected):
    assert even_modulus_reduce(m, l) == expected


def test_even_modulus_reduce_rejects_odd():
    with pytest.raises(DomainError):
        even_modulus_reduce(5, 0)


@pytest.mark.parametrize("m", [2, 4, 6, 10, 12])
def test_even_modulus_law(m):
    for l in range(m):
        m2, l2, s = even_modulus_reduce(m, l)
        for x in range(0, 10**4 + 1, 7):
            assert newman_sum_fast(SumSpec(2, m, l), 2 * x) == s * newman_sum_fast(SumSpec(2, m2, l2), x)


def test_eq6_specialization():
    spec = SumSpec(2, 3, 0)
    for n in range(0, 10**4 + 1, 2):
        assert newman_sum_fast(spec, 4 * n) == 3 * newman_sum_fast(spec, n)


def test_large_power_step():
    # digit-DP cost is O(p^2) here; p = 2003 must finish quickly
    a = newman_sum_fast(SumSpec(2, 2003, 0), 2**2003)
    assert isinstance(a, int)


def test_gelfond_fast_matches_enumeration():
    for m in range(1, 11):
        for x in range(0, 3000, 13):
            assert gelfond_counts_fast(m, x) == gelfond_counts(m, x)
