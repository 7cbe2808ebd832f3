from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from falsetheta.series import IntSeries, congruent, make_series, mul, one, reciprocal, reduce_mod, substitute_qk
from falsetheta.theta import (EtaProductSpec, SpecParseError, ThetaSpec, eta_factor, eta_product,
                              expand_theta, false_theta_psi, gaussian_binomial, jtp_product, parse_eta,
                              parse_theta, partition_gf, pentagonal_terms, pochhammer, theta_f)
from tests.oracles import bilateral, euler_product, partition_count

PENTAGONAL_15 = (1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1, 0, 0, -1)


def spec(kind, sa, a, sb, b):
    return ThetaSpec(kind, sa, a, sb, b)


def test_f_minus_q_minus_q2_is_pentagonal():
    assert theta_f(spec("theta", -1, 1, -1, 2), 15).coeffs == PENTAGONAL_15


def test_theta_at_zero_exponent_counts_both_constant_terms():
    # f(q,1): n = 0 and n = -1 both give q^0
    assert theta_f(spec("theta", 1, 1, 1, 0), 0).coeffs == (2,)
    # f(q,q) has a single constant term; q^1 collects n = 1 and n = -1
    assert theta_f(spec("theta", 1, 1, 1, 1), 3).coeffs[:2] == (1, 2)


def test_psi_minus_q2_q():
    expected = make_series([(0, 1), (1, -1), (2, -1), (5, 1), (7, -1), (12, 1), (15, 1), (22, -1), (26, 1)], 26)
    assert false_theta_psi(parse_theta("psi(-q^2,q)"), 26) == expected
    assert false_theta_psi(parse_theta("psi(-q^5,q)"), 8).coeffs == (1, -1, 0, 0, 0, -1, 0, 0, 1)
    assert false_theta_psi(parse_theta("psi(-q^5,q)"), 0).coeffs == (1,)


signs = st.sampled_from([1, -1])
exps = st.integers(0, 9)


@given(signs, exps, signs, exps, st.booleans())
def test_bilateral_sums_match_wide_range_oracle(sa, a, sb, b, false):
    if a + b == 0:
        return
    kind = "false_theta" if false else "theta"
    got = expand_theta(spec(kind, sa, a, sb, b), 120)
    assert list(got.coeffs) == bilateral(sa, a, sb, b, 120, false=false)


@given(signs, exps, signs, exps)
def test_theta_is_symmetric(sa, a, sb, b):
    if a + b == 0:
        return
    s = spec("theta", sa, a, sb, b)
    assert theta_f(s, 100) == theta_f(s.swapped(), 100)


def test_invalid_specs_rejected():
    with pytest.raises(ValueError):
        spec("theta", 1, 0, 1, 0)
    with pytest.raises(ValueError):
        spec("mock", 1, 1, 1, 1)
    with pytest.raises(ValueError):
        spec("theta", 2, 1, 1, 1)


def test_pochhammer_examples():
    assert pochhammer(1, 1, 1, None, 15).coeffs == PENTAGONAL_15
    assert pochhammer(1, 3, 2, 0, 5) == one(5)
    assert pochhammer(1, 1, 2, 2, 5).coeffs == (1, -1, 0, -1, 1, 0)
    assert list(pochhammer(1, 1, 1, None, 200).coeffs) == euler_product(200)


def test_pochhammer_with_zero_base_exponent():
    # (q^0; q)_n contains the factor 1 - 1 = 0
    assert pochhammer(1, 0, 1, 3, 5).coeffs == (0,) * 6
    assert pochhammer(-1, 0, 1, 1, 3).coeffs == (2, 0, 0, 0)


def test_jtp_examples():
    assert jtp_product(spec("theta", -1, 1, -1, 2), 60) == eta_factor(1, 60)
    f51 = spec("theta", -1, 5, -1, 1)
    manual = mul(mul(pochhammer(1, 1, 6, None, 100), pochhammer(1, 5, 6, None, 100)), pochhammer(1, 6, 6, None, 100))
    assert jtp_product(f51, 100) == manual == theta_f(f51, 100)


def test_jtp_matches_theta_on_random_specs():
    rng = random.Random(11)
    for _ in range(20):
        s = spec("theta", rng.choice((1, -1)), rng.randint(0, 12), rng.choice((1, -1)), rng.randint(1, 12))
        assert jtp_product(s, 200) == theta_f(s, 200), s


@pytest.mark.slow
def test_jtp_full_grid():
    for a in range(13):
        for b in range(13):
            if a + b == 0:
                continue
            for sa in (1, -1):
                for sb in (1, -1):
                    s = spec("theta", sa, a, sb, b)
                    assert jtp_product(s, 300) == theta_f(s, 300), s


def test_eta_products():
    three_core = eta_product(parse_eta("f3^3/f1"), 20)
    assert three_core.coeffs == (1, 1, 2, 0, 2, 1, 2, 0, 1, 2, 2, 0, 2, 0, 2, 0, 3, 2, 0, 0, 2)
    robbins = make_series([(n * (3 * n - 2), 1) for n in range(-5, 6)], 20)
    assert congruent(three_core, robbins, 2) == (True, None)
    assert eta_product(EtaProductSpec(), 10) == one(10)
    assert eta_product(parse_eta("f1/f1"), 10) == one(10)
    assert eta_product(parse_eta("q^2*f1"), 4).coeffs == (0, 0, 1, -1, -1)


def test_eta_product_mod_matches_exact():
    e = parse_eta("q*f3^12/f1^4")
    assert eta_product(e, 300, 2) == reduce_mod(eta_product(e, 300), 2)


def test_cube_of_euler_product():
    tri = make_series([(n * (n + 1) // 2, (-1) ** n * (2 * n + 1)) for n in range(12)], 45)
    assert eta_factor(1, 45) ** 3 == tri


def test_f1f5_small():
    lhs = eta_product(parse_eta("f1*f5"), 30)
    rhs = eta_product(parse_eta("f1^6"), 30) + eta_product(parse_eta("q*f5^6"), 30)
    assert congruent(lhs, rhs, 2) == (True, None)


def test_substitute_matches_scaled_product():
    assert substitute_qk(eta_factor(1, 40), 5) == eta_factor(5, 40)


@pytest.mark.parametrize("n,k,expected", [(4, 2, (1, 1, 2, 1, 1)), (5, 0, (1,)), (3, 4, (0,)), (3, -1, (0,))])
def test_gaussian_binomial_examples(n, k, expected):
    assert gaussian_binomial(n, k).coeffs == expected


@given(st.integers(0, 14), st.integers(0, 14))
def test_gaussian_binomial_properties(n, k):
    if k > n:
        return
    g = gaussian_binomial(n, k)
    from math import comb
    assert g.trunc == k * (n - k)
    assert g.coeffs == g.coeffs[::-1]
    assert sum(g.coeffs) == comb(n, k)
    if 0 < k < n:
        # both q-Pascal recurrences
        a = gaussian_binomial(n - 1, k - 1, g.trunc)
        b = gaussian_binomial(n - 1, k, g.trunc)
        assert g == a + b.shift(k)
        assert g == b + a.shift(n - k)


def test_partition_numbers():
    p = partition_gf(100)
    assert p.coeffs[:10] == (1, 1, 2, 3, 5, 7, 11, 15, 22, 30)
    assert all(p[n] == partition_count(n) for n in range(40))
    assert p[100] == 190569292
    assert all(p[n] >= p[n - 1] for n in range(1, 101))
    assert all(p[n] % 5 == 0 for n in (4, 9, 14, 19, 24))
    assert mul(eta_factor(1, 50), reciprocal(eta_factor(1, 50))) == one(50)


def test_pentagonal_terms_signs():
    assert pentagonal_terms(26) == [(1, -1), (2, -1), (5, 1), (7, 1), (12, -1), (15, -1), (22, 1), (26, 1)]


@pytest.mark.parametrize("text,expected", [
    ("psi(-q^5,q)", spec("false_theta", -1, 5, 1, 1)),
    ("f(q^5, q)", spec("theta", 1, 5, 1, 1)),
    ("Psi(-q^14,-q^6)", spec("false_theta", -1, 14, -1, 6)),
    ("f(q,1)", spec("theta", 1, 1, 1, 0)),
])
def test_parse_theta(text, expected):
    assert parse_theta(text) == expected
    assert parse_theta(str(expected)) == expected


@pytest.mark.parametrize("text,column", [("psi(-q^5 q)", 9), ("g(q,q)", 0), ("psi(q,q))", 8), ("psi(x,q)", 4)])
def test_parse_theta_errors_point_at_column(text, column):
    with pytest.raises(SpecParseError) as info:
        parse_theta(text)
    assert info.value.position == column
    assert "^" in str(info.value)


def test_parse_eta():
    e = parse_eta("q^1 * f1^2 * f10^6")
    assert e == EtaProductSpec(1, ((1, 2), (10, 6)))
    assert parse_eta("f3^3/f1").factors == ((3, 3), (1, -1))
    assert parse_eta(str(e)) == e
    for bad in ("f0", "f1 + f2", "q^2/q", "x"):
        with pytest.raises(SpecParseError):
            parse_eta(bad)
