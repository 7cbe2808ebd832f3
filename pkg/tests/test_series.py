from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from falsetheta.series import (IntSeries, ModSeries, NonUnitConstantError, congruent, dumps_series,
                               extract_progression, interleave, loads_series, make_series, mul, one,
                               power, read_series, reciprocal, reduce_mod, series_equal, substitute_qk,
                               write_series, zero)
from tests.oracles import naive_mul, naive_reciprocal

coeff_lists = st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=80)
big_lists = st.lists(st.integers(-10**40, 10**40), min_size=1, max_size=60)


def unit_series(values):
    return IntSeries((1,) + tuple(values[1:]))


def test_make_series_sums_duplicates_and_drops_high_terms():
    s = make_series([(0, 1), (3, 2), (3, 5), (9, 1)], 5)
    assert s.coeffs == (1, 0, 0, 7, 0, 0)
    assert s.trunc == 5


def test_make_series_rejects_bad_input():
    with pytest.raises(ValueError):
        make_series([], -1)
    with pytest.raises(ValueError):
        make_series([(-1, 1)], 3)


def test_binary_ops_narrow_to_smaller_trunc():
    a = make_series([(0, 1), (1, 1)], 10)
    b = make_series([(0, 1), (1, -1)], 4)
    assert (a + b).trunc == 4
    assert (a - b).trunc == 4
    assert mul(a, b).coeffs == (1, 0, -1, 0, 0)


@given(coeff_lists, coeff_lists)
def test_mul_matches_schoolbook(x, y):
    n = min(len(x), len(y)) - 1
    assert mul(IntSeries(tuple(x)), IntSeries(tuple(y))).coeffs == tuple(naive_mul(x, y, n))


@given(big_lists, big_lists)
@settings(max_examples=40)
def test_mul_exact_with_huge_coefficients(x, y):
    n = min(len(x), len(y)) - 1
    assert list(mul(IntSeries(tuple(x)), IntSeries(tuple(y))).coeffs) == naive_mul(x, y, n)


def test_kronecker_path_matches_schoolbook():
    rng = np.random.default_rng(7)
    x = [int(v) for v in rng.integers(-10**9, 10**9, 300)]
    y = [int(v) * 10**25 for v in rng.integers(-10**9, 10**9, 300)]
    assert list(mul(IntSeries(tuple(x)), IntSeries(tuple(y))).coeffs) == naive_mul(x, y, 299)


@given(coeff_lists, st.sampled_from([1, -1]))
def test_reciprocal_matches_recurrence(x, c0):
    s = IntSeries((c0,) + tuple(x[1:]))
    r = reciprocal(s)
    assert list(r.coeffs) == naive_reciprocal(list(s.coeffs), s.trunc)
    assert mul(s, r).coeffs == one(s.trunc).coeffs


def test_reciprocal_dense_newton_path():
    rng = np.random.default_rng(3)
    s = IntSeries((1,) + tuple(int(v) for v in rng.integers(-5, 5, 400)))
    r = reciprocal(s)
    assert mul(s, r) == one(400)


def test_reciprocal_rejects_non_unit_constant():
    with pytest.raises(NonUnitConstantError):
        reciprocal(make_series([(0, 2), (1, 1)], 5))
    with pytest.raises(NonUnitConstantError):
        reciprocal(ModSeries([2, 1, 0], 4))


@given(st.lists(st.integers(0, 10**6), min_size=1, max_size=60), st.sampled_from([2, 3, 4, 8, 97, 2**31 + 11]))
def test_reduce_mod_commutes_with_mul(x, m):
    a = IntSeries(tuple(x))
    b = IntSeries(tuple(reversed(x)))
    assert mul(reduce_mod(a, m), reduce_mod(b, m)) == reduce_mod(mul(a, b), m)


@given(coeff_lists, st.sampled_from([2, 4, 5, 9, 1 << 40]))
def test_mod_reciprocal_agrees_with_exact(x, m):
    s = unit_series(x)
    assert reciprocal(reduce_mod(s, m)) == reduce_mod(reciprocal(s), m)


def test_reduce_mod_uses_floored_residues():
    s = make_series([(0, -1), (1, -7), (2, 5)], 2)
    assert list(reduce_mod(s, 4)) == [3, 1, 1]
    ok, first = congruent(s, make_series([(0, 3), (1, 1), (2, 1)], 2), 4)
    assert ok and first is None


def test_reduce_mod_series_requires_divisible_modulus():
    s = ModSeries([1, 2, 3], 8)
    assert list(reduce_mod(s, 4)) == [1, 2, 3]
    with pytest.raises(ValueError):
        reduce_mod(s, 3)


def test_modseries_invariants():
    s = ModSeries([5, -1, 12], 4)
    assert list(s) == [1, 3, 0]
    with pytest.raises(ValueError):
        s.coeffs[0] = 2
    with pytest.raises(AttributeError):
        s.modulus = 5
    with pytest.raises(ValueError):
        ModSeries([1], 1)
    with pytest.raises(ValueError):
        ModSeries([1], 1 << 63)


def test_power_and_zero_power():
    s = make_series([(0, 1), (1, 1)], 6)
    assert power(s, 0) == one(6)
    assert power(s, 3).coeffs == (1, 3, 3, 1, 0, 0, 0)
    with pytest.raises(ValueError):
        power(s, -1)


@given(coeff_lists, st.integers(1, 5))
def test_substitute_qk_spreads_coefficients(x, k):
    s = IntSeries(tuple(x))
    t = substitute_qk(s, k)
    for e, c in enumerate(t.coeffs):
        assert c == (s[e // k] if e % k == 0 else 0)


def test_substitute_qk_refuses_to_claim_unknown_terms():
    s = make_series([(0, 1), (1, 1)], 3)
    assert substitute_qk(s, 2, 7).trunc == 7
    with pytest.raises(ValueError):
        substitute_qk(s, 2, 8)


@given(coeff_lists, st.integers(1, 6))
def test_interleave_inverts_extraction(x, A):
    s = IntSeries(tuple(x))
    parts = [extract_progression(s, A, B) if B <= s.trunc else IntSeries((0,)) for B in range(A)]
    assert interleave(parts, s.trunc) == s


def test_extract_progression_validation():
    s = one(10)
    with pytest.raises(ValueError):
        extract_progression(s, 3, 3)
    with pytest.raises(ValueError):
        extract_progression(one(1), 5, 4)


def test_congruent_reports_first_mismatch_and_bounds():
    a = make_series([(3, 2), (5, 1)], 8)
    b = make_series([(5, 1)], 8)
    assert congruent(a, b, 2) == (True, None)
    assert congruent(a, b, 4) == (False, 3)
    assert series_equal(a, b) == (False, 3)
    with pytest.raises(ValueError):
        congruent(a, b, 2, upto=9)


def test_zero_and_one():
    assert zero(3).coeffs == (0, 0, 0, 0)
    assert one(0).coeffs == (1,)


def test_shift_keeps_truncation():
    s = make_series([(0, 1), (2, 3)], 4)
    assert s.shift(3).coeffs == (0, 0, 0, 1, 0)
    assert ModSeries([1, 1, 1], 5).shift(1) == ModSeries([0, 1, 1], 5)
    with pytest.raises(ValueError):
        s.shift(-1)


@given(coeff_lists)
def test_text_format_round_trip(x):
    s = IntSeries(tuple(x))
    assert loads_series(dumps_series(s)) == s


def test_text_format_mod_and_files(tmp_path):
    s = ModSeries([1, 0, 3, 2], 5)
    path = tmp_path / "s.txt"
    write_series(s, path)
    assert path.read_text().splitlines()[:2] == ["#trunc=3", "#modulus=5"]
    assert read_series(path) == s


@pytest.mark.parametrize("text", ["0\t1\n", "#trunc=3\n2\t1\n1\t1\n", "#trunc=1\n5\t1\n", "#trunc=2\n1 1\n"])
def test_text_format_rejects_malformed(text):
    with pytest.raises(ValueError):
        loads_series(text)


small = st.lists(st.integers(-50, 50), min_size=65, max_size=65).map(lambda v: IntSeries(tuple(v)))


@given(small, small, small)
@settings(max_examples=30)
def test_ring_axioms(a, b, c):
    assert mul(a, b) == mul(b, a)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))
    assert mul(a, b + c) == mul(a, b) + mul(a, c)


@given(small, st.sampled_from([2, 3, 5]), st.sampled_from([1, 2]))
@settings(max_examples=40)
def test_frobenius_congruence(s, p, k):
    lhs = power(s, p ** k)
    rhs = power(substitute_qk(s, p), p ** (k - 1))
    assert congruent(lhs, rhs, p ** k) == (True, None)


@given(small, st.integers(0, 5), st.sampled_from([2, 4, 7]))
@settings(max_examples=30)
def test_reduce_mod_commutes_with_power(s, e, m):
    assert power(reduce_mod(s, m), e) == reduce_mod(power(s, e), m)


@given(coeff_lists, st.sampled_from([2, 4, 8]))
def test_progressions_reassemble(x, A):
    s = IntSeries(tuple(x) + (0,) * A)
    parts = [extract_progression(s, A, B) for B in range(A)]
    assert interleave(parts, s.trunc) == s


def test_small_examples():
    assert make_series([(1, -1), (1, -1)], 3).coeffs == (0, -2, 0, 0)
    assert substitute_qk(make_series([(0, 1), (1, 1)], 4), 3).coeffs == (1, 0, 0, 1, 0)
    s = make_series([(1, 1), (3, 1), (5, 1)], 5)
    assert extract_progression(s, 2, 1).coeffs == (1, 1, 1)
    assert extract_progression(s, 1, 0) == s
    assert list(reduce_mod(make_series([(0, 1), (1, -1), (2, -1)], 2), 2)) == [1, 1, 1]
    assert congruent(make_series([(0, 1), (1, 1)], 1), make_series([(0, 1), (1, -1)], 1), 2)[0]
    assert congruent(make_series([(0, 1), (1, 1)], 1), make_series([(0, 1), (1, 2)], 1), 3) == (False, 1)
    assert reciprocal(one(5)) == one(5)
