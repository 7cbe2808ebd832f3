from __future__ import annotations

import warnings

import pytest
from hypothesis import given
from hypothesis import strategies as st

from falsetheta.mex import (Partition, mex_count_bruteforce, mex_count_oracle, mex_dominance_counterexamples,
                            mex_gf, mex_of, mex_table, partitions, pentagonal_quotient, rank_of,
                            rank_zero_bruteforce, rank_zero_check, rank_zero_count,
                            truncated_pentagonal_diff, verify_tpn_theorem)
from falsetheta.report import SourceDiscrepancyWarning
from falsetheta.theta import partition_gf
from tests.oracles import partition_count


def test_partitions_enumerator_counts():
    for n in range(15):
        parts = list(partitions(n))
        assert len(parts) == partition_count(n) == len(set(parts))
        assert all(sum(p) == n and list(p) == sorted(p, reverse=True) for p in parts)


def test_mex_and_rank_of_small_partitions():
    assert mex_of(()) == 1
    assert mex_of((4, 2, 1)) == 3
    assert rank_of((4, 2, 1)) == 1
    assert rank_of(()) == 0
    assert Partition((3, 1, 1)).mex == 2 and Partition((3, 1, 1)).n == 5
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_mex_worked_examples():
    # M_1(5) counts the partitions of 5 without a 1: (5) and (3,2)
    assert mex_count_bruteforce(1, 5) == 2
    assert mex_count_bruteforce(2, 8) == 1
    assert mex_count_bruteforce(2, 5) == 0


def test_oracle_matches_bruteforce():
    for k in range(1, 5):
        for n in range(19):
            assert mex_count_oracle(k, n) == mex_count_bruteforce(k, n), (k, n)


@pytest.mark.parametrize("k", range(1, 7))
def test_gf_matches_oracle(k):
    gf = mex_gf(k, 60)
    assert [gf[n] for n in range(61)] == [mex_count_oracle(k, n) for n in range(61)]


@pytest.mark.parametrize("k", range(1, 5))
def test_truncated_pentagonal_difference(k):
    p = partition_gf(60).coeffs
    for n in range(1, 61):
        assert truncated_pentagonal_diff(k, n, p) == (-1) ** (k - 1) * mex_count_oracle(k, n), (k, n)


def test_truncated_pentagonal_difference_at_zero():
    # the truncated recurrence at n = 0 is just p(0) = 1, while M_k(0) = 0
    p = partition_gf(5).coeffs
    assert truncated_pentagonal_diff(1, 0, p) == 1
    assert mex_count_oracle(1, 0) == 0


def test_truncated_pentagonal_difference_guards():
    with pytest.raises(ValueError):
        truncated_pentagonal_diff(1, 10, [1, 1])
    with pytest.raises(ValueError):
        truncated_pentagonal_diff(0, 1, [1, 1])


def test_tpn_theorem_both_forms():
    rep = verify_tpn_theorem(200)
    assert rep.ok
    assert rep.details["mex_form"] and rep.details["double_sum_form"]


def test_tpn_negative_control():
    rep = verify_tpn_theorem(200, flip=1)
    assert not rep.ok and not rep.details["mex_form"]
    # M_2 starts at q^(1 + 3*2) = q^7
    assert rep.first_mismatch == min(n for n in range(201) if mex_gf(2, 200)[n])


def test_no_dominance_counterexample_small():
    assert mex_dominance_counterexamples(1, 60) == []


def test_first_dominance_counterexample_is_1101():
    assert mex_dominance_counterexamples(1, 1101) == [1101]
    assert mex_gf(2, 1101)[1101] == 74312978981137125234512499767461
    assert mex_gf(4, 1101)[1101] == 74318740096942622221055654096390


def test_pentagonal_quotient_nonnegative_with_early_zeros():
    quo = pentagonal_quotient(2000)
    assert quo[0] == 1
    assert [n for n in range(1, 30) if quo[n] == 0] == [1, 2, 3, 4, 5, 6]
    assert all(c >= 0 for c in quo.coeffs)


@given(st.integers(1, 22))
def test_rank_zero_count_matches_bruteforce(n):
    assert rank_zero_count(n) == rank_zero_bruteforce(n)


def test_rank_zero_check_supports_printed_sign():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        rep = rank_zero_check(60)
    assert rep.ok
    assert rep.details["matches"] == {"psi(-q^2,-q)": True, "psi(-q^2,q)": False}
    assert rep.details["nonzero_rank_count_even"]
    assert any(issubclass(w.category, SourceDiscrepancyWarning) for w in caught)


def test_mex_table_rows():
    rows = mex_table(2, 20)
    assert rows[8] == {"n": 8, "gf_coeff": 1, "oracle_count": 1, "diff_sum": -1}
    assert all(r["gf_coeff"] == r["oracle_count"] for r in rows)


def test_mex_gf_guard():
    with pytest.raises(ValueError):
        mex_gf(0, 10)
    with pytest.raises(ValueError):
        mex_count_oracle(0, 3)
