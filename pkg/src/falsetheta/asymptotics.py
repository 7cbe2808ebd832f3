"""Exponential growth of ``c_2(n)``, the coefficients of ``1/Psi(-q^2,q)``.

``Psi(-q^2,q)`` and ``(q;q)_inf`` share their support (the generalized
pentagonal numbers) and differ only in sign pattern: period 4 for the
product, period 8 for the false theta function. Solving for ``c_2`` gives an
infinite linear recurrence over pentagonal lags; cutting it after an added
term bounds ``c_2`` above and cutting it after a subtracted one bounds it
below, so ``c_2`` grows like ``b^n`` with ``b`` between the dominant roots of
the two characteristic polynomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .series import IntSeries, make_series, reciprocal
from .theta import ThetaSpec, false_theta_psi, pentagonal_terms, pochhammer

__all__ = [
    "PentagonalTable",
    "RecurrenceSpec",
    "UPPER_RECURRENCE",
    "LOWER_RECURRENCE",
    "c2_by_recurrence",
    "run_recurrence",
    "bounding_sequences",
    "sandwich_holds",
    "difference_bounds_hold",
    "largest_real_root",
    "eval_poly",
    "growth_ratio",
    "pentagonal_compositions",
    "false_theta_growth_table",
    "triple_product_variants",
]

PENT_PATTERN = (-1, -1, 1, 1)
FALSE_PATTERN = (-1, -1, 1, -1, 1, 1, -1, 1)


@dataclass(frozen=True)
class PentagonalTable:
    """Generalized pentagonal numbers ``m(3m-1)/2`` (m = 1, -1, 2, -2, ...) up
    to ``limit`` with the signs they carry in ``(q;q)_inf`` and ``Psi(-q^2,q)``."""

    limit: int

    @property
    def exponents(self) -> list[int]:
        return [g for g, _ in pentagonal_terms(self.limit)]

    @property
    def signs_pent(self) -> list[int]:
        return [PENT_PATTERN[i % 4] for i in range(len(self.exponents))]

    @property
    def signs_false(self) -> list[int]:
        return [FALSE_PATTERN[i % 8] for i in range(len(self.exponents))]

    def series(self, which: str = "false") -> IntSeries:
        """``1 + sum sign * q^g`` with the chosen sign pattern."""
        signs = {"false": self.signs_false, "pent": self.signs_pent}[which]
        return make_series([(0, 1)] + list(zip(self.exponents, signs)), self.limit)


@dataclass(frozen=True)
class RecurrenceSpec:
    """``u(n) = sum sign * u(n - lag)`` over ``terms``."""

    terms: tuple[tuple[int, int], ...]

    def __post_init__(self):
        lags = [lag for lag, _ in self.terms]
        if not lags or lags[0] < 1 or any(x >= y for x, y in zip(lags, lags[1:])):
            raise ValueError("lags must be positive and strictly increasing")
        if any(s not in (1, -1) for _, s in self.terms):
            raise ValueError("signs must be +1 or -1")

    @property
    def degree(self) -> int:
        return self.terms[-1][0]

    @property
    def char_poly(self) -> list[int]:
        """Coefficients, highest degree first, of ``x^d - sum sign x^(d-lag)``."""
        d = self.degree
        poly = [0] * (d + 1)
        poly[0] = 1
        for lag, sign in self.terms:
            poly[lag] -= sign
        return poly


def _recurrence_terms(count: int) -> tuple[tuple[int, int], ...]:
    # c_2(n) = -sum s_g c_2(n-g), s_g the Psi(-q^2,q) sign at lag g
    exps = []
    m = 1
    while len(exps) < count:
        exps += [m * (3 * m - 1) // 2, m * (3 * m + 1) // 2]
        m += 1
    return tuple((g, -FALSE_PATTERN[i % 8]) for i, g in enumerate(exps[:count]))


UPPER_RECURRENCE = RecurrenceSpec(_recurrence_terms(4))   # lags 1, 2, 5, 7
LOWER_RECURRENCE = RecurrenceSpec(_recurrence_terms(8))   # lags up to 26


def c2_by_recurrence(N: int) -> list[int]:
    """``c_2(0..N)`` from the full pentagonal recurrence (lags run until they exceed n)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    table = PentagonalTable(N)
    lags = [(g, -s) for g, s in zip(table.exponents, table.signs_false)]
    c = [0] * (N + 1)
    c[0] = 1
    for n in range(1, N + 1):
        total = 0
        for g, s in lags:
            if g > n:
                break
            total += s * c[n - g]
        c[n] = total
    return c


def run_recurrence(spec: RecurrenceSpec, initial: Sequence[int], N: int) -> list[int]:
    """Extend ``initial`` (which must cover the first ``degree`` values) to index N."""
    d = spec.degree
    if len(initial) < d:
        raise ValueError(f"need {d} initial values, got {len(initial)}")
    out = list(initial[: N + 1])
    for n in range(len(out), N + 1):
        out.append(sum(s * out[n - lag] for lag, s in spec.terms))
    return out


def bounding_sequences(N: int) -> tuple[list[int], list[int]]:
    """``(a, b)``: upper and lower bounding sequences for ``c_2`` on ``0..N``,
    both started from ``c_2``'s own initial values."""
    if N < LOWER_RECURRENCE.degree:
        raise ValueError(f"N must be at least {LOWER_RECURRENCE.degree}")
    c = c2_by_recurrence(N)
    a = run_recurrence(UPPER_RECURRENCE, c[: UPPER_RECURRENCE.degree], N)
    b = run_recurrence(LOWER_RECURRENCE, c[: LOWER_RECURRENCE.degree], N)
    return a, b


def sandwich_holds(N: int) -> tuple[bool, int | None]:
    """``b(n) <= c_2(n) <= a(n)`` for all n <= N; returns (ok, first failure)."""
    c = c2_by_recurrence(N)
    a, b = bounding_sequences(N)
    for n in range(N + 1):
        if not b[n] <= c[n] <= a[n]:
            return False, n
    return True, None


def difference_bounds_hold(N: int) -> tuple[bool, tuple[int, int] | None]:
    """``b(n)-b(n-z) <= c_2(n)-c_2(n-z) <= a(n)-a(n-z)`` with z <= 7 on the
    upper side and z <= 26 on the lower; returns (ok, first failing (n, z))."""
    c = c2_by_recurrence(N)
    a, b = bounding_sequences(N)
    at = lambda s, k: s[k] if k >= 0 else 0
    for n in range(N + 1):
        for z in range(1, LOWER_RECURRENCE.degree + 1):
            dc = c[n] - at(c, n - z)
            if z <= UPPER_RECURRENCE.degree and dc > a[n] - at(a, n - z):
                return False, (n, z)
            if b[n] - at(b, n - z) > dc:
                return False, (n, z)
    return True, None


def eval_poly(poly: Sequence[int], x: float) -> float:
    acc = 0.0
    for coef in poly:
        acc = acc * x + coef
    return acc


def largest_real_root(poly: Sequence[int], lo: float = 1.0, hi: float = 2.0, tol: float = 1e-9,
                      grid: int = 4096) -> float:
    """Largest root of ``poly`` (highest degree first) in ``[lo, hi]``.

    The interval is sampled on ``grid`` equal steps from the right; the first
    step whose ends differ in sign is bisected down to ``tol``. A polynomial
    with no sign change on the grid is rejected.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not lo < hi:
        raise ValueError("need lo < hi")
    width = (hi - lo) / grid
    right = hi
    fr = eval_poly(poly, right)
    if fr == 0:
        return hi
    for i in range(grid - 1, -1, -1):
        left = lo + i * width
        fl = eval_poly(poly, left)
        if fl == 0:
            return left
        if (fl > 0) != (fr > 0):
            break
        right, fr = left, fl
    else:
        raise ValueError(f"no sign change on [{lo}, {hi}]")
    while right - left > tol:
        mid = (left + right) / 2
        fm = eval_poly(poly, mid)
        if fm == 0:
            return mid
        if (fm > 0) == (fl > 0):
            left, fl = mid, fm
        else:
            right = mid
    return (left + right) / 2


def _down(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, -math.inf) if Fraction(f) > x else f


def _up(x: Fraction) -> float:
    f = float(x)
    return math.nextafter(f, math.inf) if Fraction(f) < x else f


def growth_ratio(seq: Sequence[int], window: tuple[int, int]) -> tuple[float, float]:
    """Min and max of ``seq[n+1]/seq[n]`` for ``n0 <= n < n1``, computed as
    exact fractions and rounded outward to floats."""
    n0, n1 = window
    if not 0 <= n0 < n1 or n1 >= len(seq):
        raise ValueError(f"window {window} does not fit a sequence of length {len(seq)}")
    for n in range(n0, n1 + 1):
        if seq[n] <= 0:
            raise ValueError(f"sequence is not positive at index {n}")
    ratios = [Fraction(seq[n + 1], seq[n]) for n in range(n0, n1)]
    return _down(min(ratios)), _up(max(ratios))


def pentagonal_compositions(N: int, window: tuple[int, int] | None = None
                            ) -> tuple[list[int], tuple[float, float] | None]:
    """Compositions of n into generalized pentagonal numbers, for n <= N,
    with the growth-ratio interval over ``window`` (default ``(N//2, N)``)."""
    if N < 0:
        raise ValueError("N must be non-negative")
    parts = [g for g, _ in pentagonal_terms(N)]
    c = [0] * (N + 1)
    c[0] = 1
    for n in range(1, N + 1):
        c[n] = sum(c[n - g] for g in parts if g <= n)
    if window is None:
        window = (N // 2, N) if N >= 2 else None
    return c, (growth_ratio(c, window) if window else None)


def false_theta_growth_table(a_values: Sequence[int] = range(2, 10), N: int = 1000,
                             window: tuple[int, int] = (500, 1000)) -> list[dict]:
    """Growth-ratio intervals of ``1/Psi(-q^a,q)`` for each a (an empirical probe)."""
    rows = []
    for a in a_values:
        c = reciprocal(false_theta_psi(ThetaSpec("false_theta", -1, a, 1, 1), N)).coeffs
        try:
            lo, hi = growth_ratio(c, window)
        except ValueError:
            lo = hi = None
        rows.append({"a": a, "ratio_lo": lo, "ratio_hi": hi, "label": "empirical"})
    return rows


def _abs_growth(c: Sequence[int], n0: int, n1: int) -> float | None:
    # exp of the average log growth of the running max of |c| between n0 and n1
    run = 0
    peaks = []
    for v in c[: n1 + 1]:
        run = max(run, abs(v))
        peaks.append(run)
    if peaks[n0] == 0:
        return None
    return math.exp((math.log(peaks[n1]) - math.log(peaks[n0])) / (n1 - n0))


def triple_product_variants(a: int, b: int, N: int = 1000) -> list[dict]:
    """Reciprocals of ``(s1 q^a; q^(a+b))(s2 q^b; q^(a+b))(s3 q^(a+b); q^(a+b))``
    for all sign choices: sign changes in the upper half of ``0..N`` and a
    growth estimate for the absolute values. Exploratory; asserts nothing."""
    step = a + b
    rows = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            for s3 in (1, -1):
                prod = pochhammer(s1, a, step, None, N)
                prod = prod * pochhammer(s2, b, step, None, N)
                prod = prod * pochhammer(s3, step, step, None, N)
                c = reciprocal(prod).coeffs
                tail = [v for v in c[N // 2:] if v]
                changes = sum(1 for x, y in zip(tail, tail[1:]) if (x > 0) != (y > 0))
                rows.append({"signs": (s1, s2, s3), "sign_changes": changes,
                             "eventually_positive": all(v > 0 for v in c[N // 2:]),
                             "abs_growth": _abs_growth(c, N // 2, N)})
    return rows
