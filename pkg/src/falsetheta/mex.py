"""Partitions by mex, the M_k generating functions and the truncated
pentagonal number theorem.

``M_k(n)`` counts partitions of n whose mex (least positive integer not
used as a part) is exactly k and which have more parts larger than k than
parts smaller than k. Truncating Euler's recurrence for p(n) after 2k terms
gives ``(-1)**(k-1) * M_k(n)``.

Two independent combinatorial oracles back the generating functions here:
a plain descending-parts enumerator (small n) and memoised counts over the
same recursion tree (n up to a few hundred).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .report import IdentityReport, flag, timed
from .series import IntSeries, make_series, mul, one, reciprocal, series_equal
from .theta import (ThetaSpec, eta_factor, false_theta_psi, gaussian_binomial, partition_gf,
                    pentagonal_terms, pochhammer)

__all__ = [
    "Partition",
    "partitions",
    "mex_of",
    "rank_of",
    "mex_count_bruteforce",
    "mex_count_oracle",
    "rank_zero_bruteforce",
    "rank_zero_count",
    "mex_gf",
    "truncated_pentagonal_diff",
    "verify_tpn_theorem",
    "rank_zero_check",
    "mex_dominance_counterexamples",
    "pentagonal_quotient",
    "mex_table",
]


@dataclass(frozen=True)
class Partition:
    parts: tuple[int, ...]

    def __post_init__(self):
        if any(p < 1 for p in self.parts):
            raise ValueError("parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("parts must be weakly decreasing")

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def mex(self) -> int:
        return mex_of(self.parts)

    @property
    def rank(self) -> int:
        return rank_of(self.parts)


def partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    """All partitions of n as weakly decreasing tuples, parts at most ``largest``."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def mex_of(parts: Sequence[int]) -> int:
    present = set(parts)
    k = 1
    while k in present:
        k += 1
    return k


def rank_of(parts: Sequence[int]) -> int:
    """Largest part minus number of parts; the empty partition has rank 0."""
    return (parts[0] if parts else 0) - len(parts)


def mex_count_bruteforce(k: int, n: int) -> int:
    count = 0
    for p in partitions(n):
        if mex_of(p) != k:
            continue
        larger = sum(1 for x in p if x > k)
        smaller = sum(1 for x in p if x < k)
        if larger > smaller:
            count += 1
    return count


@lru_cache(maxsize=None)
def _at_least(v: int, rem: int, need: int) -> int:
    # partitions of rem into parts >= v with more than `need` parts
    if rem == 0:
        return 1 if need < 0 else 0
    if v > rem:
        return 0
    total = 0
    for mult in range(rem // v + 1):
        total += _at_least(v + 1, rem - mult * v, need - mult)
    return total


@lru_cache(maxsize=None)
def _mex_small(v: int, k: int, rem: int, small: int) -> int:
    # parts 1..k-1 each used at least once (v is the next one to place)
    if v == k:
        return _at_least(k + 1, rem, small)
    total = 0
    for mult in range(1, rem // v + 1):
        total += _mex_small(v + 1, k, rem - mult * v, small + mult)
    return total


def mex_count_oracle(k: int, n: int) -> int:
    """M_k(n) counted over the descending-parts recursion with memoisation.

    Parts below k are placed first (each at least once), k is skipped, and
    the remaining weight goes to parts above k with more parts than were
    placed below k.
    """
    if k < 1 or n < 0:
        raise ValueError("need k >= 1 and n >= 0")
    return _mex_small(1, k, n, 0)


def rank_zero_bruteforce(n: int) -> int:
    if n == 0:
        return 0
    return sum(1 for p in partitions(n) if rank_of(p) == 0)


@lru_cache(maxsize=None)
def _exact_parts(rem: int, maxpart: int, count: int) -> int:
    # partitions of rem into exactly `count` parts, each <= maxpart
    if count == 0:
        return 1 if rem == 0 else 0
    if rem < count or maxpart == 0 or rem > count * maxpart:
        return 0
    total = 0
    for first in range(min(maxpart, rem - count + 1), 0, -1):
        total += _exact_parts(rem - first, first, count - 1)
    return total


def rank_zero_count(n: int) -> int:
    """Partitions of n with largest part equal to the number of parts (n >= 1)."""
    if n == 0:
        return 0
    return sum(_exact_parts(n - L, L, L - 1) for L in range(1, n + 1))


# ---------------------------------------------------------------------------
# generating functions
# ---------------------------------------------------------------------------

def _divide_one_minus_qk(coeffs: list[int], k: int) -> list[int]:
    # in-place division by (1 - q^k)
    for t in range(k, len(coeffs)):
        coeffs[t] += coeffs[t - k]
    return coeffs


def mex_gf(k: int, trunc: int) -> IntSeries:
    """``sum_{n>=k} q^(C(k,2)+(k+1)n) / (q;q)_n * [n-1 choose k-1]_q``."""
    if k < 1:
        raise ValueError("k must be positive")
    out = [0] * (trunc + 1)
    base = k * (k - 1) // 2
    inv_poch = [1] + [0] * trunc  # 1/(q;q)_n, built up one factor at a time
    n = 0
    while True:
        shift = base + (k + 1) * (n + 1)
        if shift > trunc:
            break
        n += 1
        _divide_one_minus_qk(inv_poch, n)
        if n < k:
            continue
        width = trunc - shift
        term = mul(IntSeries(tuple(inv_poch[: width + 1])), gaussian_binomial(n - 1, k - 1, width))
        for i, c in enumerate(term.coeffs):
            out[shift + i] += c
    return IntSeries(tuple(out))


def truncated_pentagonal_diff(k: int, n: int, p_table: Sequence[int]) -> int:
    """Euler's recurrence for p(n) cut after its first 2k terms."""
    if len(p_table) <= n:
        raise ValueError(f"p_table covers 0..{len(p_table) - 1}, need {n}")
    if k < 1:
        raise ValueError("k must be positive")
    # terms beyond n contribute p(<0) = 0, so listing those up to n suffices
    terms = [(0, 1)] + pentagonal_terms(n)[: 2 * k - 1]
    return sum(sign * p_table[n - g] for g, sign in terms)


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

def _tpn_rhs_mex_form(trunc: int, flip: int | None = None) -> IntSeries:
    # (q;q)_inf * (1 - 2(M_2 - M_4 + M_6 - ...)); `flip` negates M_{2*flip}
    bracket = [0] * (trunc + 1)
    bracket[0] = 1
    j = 1
    while (2 * j) * (2 * j - 1) // 2 + (2 * j + 1) * (2 * j) <= trunc:
        sign = 1 if j & 1 else -1
        if flip == j:
            sign = -sign
        for e, c in mex_gf(2 * j, trunc).items():
            bracket[e] -= 2 * sign * c
        j += 1
    return mul(eta_factor(1, trunc), IntSeries(tuple(bracket)))


def _tpn_rhs_double_sum(trunc: int) -> IntSeries:
    # same identity written out as a double sum; the q-binomial comes from its
    # product formula here rather than the q-Pascal recurrence
    bracket = [0] * (trunc + 1)
    bracket[0] = 1
    j = 1
    while (2 * j) * (2 * j - 1) // 2 + (2 * j + 1) * (2 * j) <= trunc:
        n = 2 * j
        while True:
            e = (2 * j) * (2 * j - 1) // 2 + (2 * j + 1) * n
            if e > trunc:
                break
            w = trunc - e
            # [n-1, 2j-1] = (q;q)_{n-1} / ((q;q)_{2j-1} (q;q)_{n-2j})
            num = pochhammer(1, 1, 1, n - 1, w)
            den = mul(pochhammer(1, 1, 1, 2 * j - 1, w), pochhammer(1, 1, 1, n - 2 * j, w))
            gauss = mul(num, reciprocal(den))
            term = mul(reciprocal(pochhammer(1, 1, 1, n, w)), gauss)
            sgn = 1 if j & 1 else -1
            for i, c in term.items():
                bracket[e + i] -= 2 * sgn * c
            n += 1
        j += 1
    return mul(pochhammer(1, 1, 1, None, trunc), IntSeries(tuple(bracket)))


def verify_tpn_theorem(trunc: int, flip: int | None = None) -> IdentityReport:
    """``Psi(-q^2,q) = (q;q)_inf (1 - 2 sum_j (-1)^(j+1) M_{2j})`` in both the
    M_k form and the explicit double-sum form, exactly to ``trunc``.

    ``flip=j`` negates the sign of ``M_{2j}`` in the first form (negative control).
    """
    with timed() as clock:
        lhs = false_theta_psi(ThetaSpec("false_theta", -1, 2, 1, 1), trunc)
        ok1, bad1 = series_equal(lhs, _tpn_rhs_mex_form(trunc, flip))
        ok2, bad2 = series_equal(lhs, _tpn_rhs_double_sum(trunc)) if flip is None else (True, None)
    mismatches = [b for b in (bad1, bad2) if b is not None]
    first = min(mismatches) if mismatches else None
    return IdentityReport(
        "tpn_theorem", trunc, "exact", "verified" if first is None else "failed", first,
        clock[0], details={"mex_form": ok1, "double_sum_form": ok2, "mex_form_first_mismatch": bad1})


def rank_zero_check(trunc: int) -> IdentityReport:
    """``(Psi(-q^2,-q) - 1)/(q;q)_inf`` against a direct count of rank-0 partitions.

    Both sign readings of the second argument are tried; the report says
    which one the count supports, and also checks that p(n) minus the
    number of rank-0 partitions is even.
    """
    with timed() as clock:
        counts = make_series(((n, rank_zero_count(n)) for n in range(trunc + 1)), trunc)
        p = partition_gf(trunc)
        matches = {}
        firsts = {}
        for label, sb in (("psi(-q^2,-q)", -1), ("psi(-q^2,q)", 1)):
            psi = false_theta_psi(ThetaSpec("false_theta", -1, 2, sb, 1), trunc)
            gf = mul(psi - 1, p)
            matches[label], firsts[label] = series_equal(gf, counts)
        parity_ok = all((p[n] - counts[n]) % 2 == 0 for n in range(1, trunc + 1))
    first = firsts["psi(-q^2,-q)"]
    if first is None and not parity_ok:
        first = next(n for n in range(1, trunc + 1) if (p[n] - counts[n]) % 2)
    report = IdentityReport(
        "rank_zero", trunc, "exact", "verified" if first is None else "failed", first, clock[0],
        details={"matches": matches, "nonzero_rank_count_even": parity_ok})
    flag("rank0_sign", report)
    return report


def mex_dominance_counterexamples(k: int, n_max: int) -> list[int]:
    """All n <= n_max with M_{4k-2}(n) < M_{4k}(n)."""
    lo = mex_gf(4 * k - 2, n_max)
    hi = mex_gf(4 * k, n_max)
    return [n for n in range(n_max + 1) if lo[n] < hi[n]]


def pentagonal_quotient(trunc: int) -> IntSeries:
    """``(q;q)_inf / Psi(-q^2,q)``."""
    psi = false_theta_psi(ThetaSpec("false_theta", -1, 2, 1, 1), trunc)
    return mul(eta_factor(1, trunc), reciprocal(psi))


def mex_table(k: int, n_max: int) -> list[dict[str, int]]:
    """Per-n rows ``{n, gf_coeff, oracle_count, diff_sum}``."""
    gf = mex_gf(k, n_max)
    p = partition_gf(n_max)
    return [
        {
            "n": n,
            "gf_coeff": gf[n],
            "oracle_count": mex_count_oracle(k, n),
            "diff_sum": truncated_pentagonal_diff(k, n, p.coeffs),
        }
        for n in range(n_max + 1)
    ]
