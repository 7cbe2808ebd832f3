from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from falsetheta.asymptotics import (LOWER_RECURRENCE, UPPER_RECURRENCE, PentagonalTable, RecurrenceSpec,
                                    bounding_sequences, c2_by_recurrence, difference_bounds_hold,
                                    eval_poly, false_theta_growth_table, growth_ratio, largest_real_root,
                                    pentagonal_compositions, run_recurrence, sandwich_holds,
                                    triple_product_variants)
from falsetheta.identities import c_t_series
from falsetheta.theta import pochhammer
from tests.oracles import bilateral, compositions, naive_reciprocal


def numpy_root(poly):
    roots = np.roots(poly)
    real = [r.real for r in roots if abs(r.imag) < 1e-9 and 1 <= r.real <= 2]
    return max(real)


def test_pentagonal_table_signs_match_products():
    t = PentagonalTable(200)
    assert t.exponents[:6] == [1, 2, 5, 7, 12, 15]
    assert list(t.series("false").coeffs) == bilateral(-1, 2, 1, 1, 200, false=True)
    assert t.series("pent") == pochhammer(1, 1, 1, None, 200)


def test_c2_recurrence_matches_reciprocal():
    c = c2_by_recurrence(800)
    assert c == list(c_t_series(2, 800).coeffs)
    psi = bilateral(-1, 2, 1, 1, 120, false=True)
    assert c[:121] == naive_reciprocal(psi, 120)


def test_recurrence_specs():
    assert [lag for lag, _ in UPPER_RECURRENCE.terms] == [1, 2, 5, 7]
    assert UPPER_RECURRENCE.char_poly == [1, -1, -1, 0, 0, 1, 0, -1]
    assert LOWER_RECURRENCE.degree == 26
    with pytest.raises(ValueError):
        RecurrenceSpec(((2, 1), (1, 1)))
    with pytest.raises(ValueError):
        RecurrenceSpec(((1, 2),))
    with pytest.raises(ValueError):
        run_recurrence(UPPER_RECURRENCE, [1, 1], 10)


def test_dominant_roots():
    r7 = largest_real_root(UPPER_RECURRENCE.char_poly)
    r26 = largest_real_root(LOWER_RECURRENCE.char_poly)
    assert abs(r7 - 1.54522) <= 1e-4 and abs(r7 - numpy_root(UPPER_RECURRENCE.char_poly)) < 1e-8
    assert abs(r26 - 1.53623) <= 1e-4 and abs(r26 - numpy_root(LOWER_RECURRENCE.char_poly)) < 1e-8


def test_degree26_poly_has_no_sign_change_on_unit_interval_ends():
    # both ends positive, so plain bisection on [1, 2] would not start
    p = LOWER_RECURRENCE.char_poly
    assert eval_poly(p, 1.0) > 0 and eval_poly(p, 2.0) > 0


def test_largest_root_guards():
    with pytest.raises(ValueError):
        largest_real_root([1, 0, 1])
    with pytest.raises(ValueError):
        largest_real_root([1, -1], 2, 1)
    assert largest_real_root([1, -2]) == 2.0


@given(st.floats(1.05, 1.95), st.floats(1.05, 1.95))
def test_largest_root_of_quadratic(x, y):
    lo, hi = sorted((x, y))
    if hi - lo < 1e-3:
        return
    poly = [1, -(lo + hi), lo * hi]
    assert abs(largest_real_root(poly) - hi) < 1e-7


def test_sandwich_and_difference_bounds():
    assert sandwich_holds(2000) == (True, None)
    assert difference_bounds_hold(600) == (True, None)
    a, b = bounding_sequences(100)
    c = c2_by_recurrence(100)
    assert a[:7] == c[:7] and b[:26] == c[:26]
    with pytest.raises(ValueError):
        bounding_sequences(10)


def test_c2_growth_ratio_between_roots():
    lo, hi = growth_ratio(c2_by_recurrence(1000), (500, 1000))
    assert 1.53623 < lo <= hi < 1.54522
    assert abs(lo - 1.5362326537) < 1e-6


def test_growth_ratio_is_rounded_outward():
    lo, hi = growth_ratio([1, 3, 9, 27], (0, 3))
    assert lo <= 3 <= hi
    lo, hi = growth_ratio([3, 10], (0, 1))
    assert lo <= 10 / 3 <= hi
    with pytest.raises(ValueError):
        growth_ratio([1, 0, 1], (0, 2))
    with pytest.raises(ValueError):
        growth_ratio([1, 2], (0, 5))


def test_c3_growth():
    lo, hi = growth_ratio(c_t_series(3, 1000).coeffs, (500, 1000))
    assert 1.35 <= lo and hi <= 1.39


def test_pentagonal_compositions():
    seq, ratio = pentagonal_compositions(300, (150, 300))
    parts = PentagonalTable(60).exponents
    assert seq[:61] == [compositions(n, tuple(parts)) for n in range(61)]
    assert 1.618 < ratio[0] and ratio[1] < 2
    assert pentagonal_compositions(1) == ([1, 1], None)


def test_growth_table_and_variants_are_labelled():
    rows = false_theta_growth_table([2, 3], 400, (200, 400))
    assert all(r["label"] == "empirical" for r in rows)
    assert rows[0]["ratio_lo"] > 1.5
    variants = triple_product_variants(2, 1, 200)
    assert len(variants) == 8
    # (q^2; q^3)(q; q^3)(q^3; q^3) is Euler's product, so its reciprocal is p(n) > 0
    plain = next(v for v in variants if v["signs"] == (1, 1, 1))
    assert plain["eventually_positive"] and plain["sign_changes"] == 0

