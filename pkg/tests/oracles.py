"""Deliberately naive reference computations, independent of the package."""

from __future__ import annotations

from functools import lru_cache


def naive_mul(a, b, n):
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n + 1)]


def naive_reciprocal(s, n):
    # r(0) = 1/s(0), r(k) = -s(0)^-1 sum_{j>=1} s(j) r(k-j)
    inv = s[0]
    assert inv in (1, -1)
    r = [inv]
    for k in range(1, n + 1):
        r.append(-inv * sum(s[j] * r[k - j] for j in range(1, k + 1)))
    return r


def bilateral(sa, a, sb, b, trunc, false=False, span=200):
    """f or Psi at (sa q^a, sb q^b) by summing n over a fixed wide range."""
    out = [0] * (trunc + 1)
    for n in range(-span, span + 1):
        p, q = n * (n + 1) // 2, n * (n - 1) // 2
        e = a * p + b * q
        if 0 <= e <= trunc:
            c = sa ** (p % 2) * sb ** (q % 2)
            out[e] += -c if (false and n < 0) else c
    return out


def euler_product(trunc):
    out = [1] + [0] * trunc
    for k in range(1, trunc + 1):
        out = [out[i] - (out[i - k] if i >= k else 0) for i in range(trunc + 1)]
    return out


@lru_cache(maxsize=None)
def partition_count(n, largest=None):
    if largest is None:
        largest = n
    if n == 0:
        return 1
    return sum(partition_count(n - k, k) for k in range(1, min(n, largest) + 1))


def compositions(n, parts):
    """Number of ordered sums of elements of ``parts`` equal to n, by recursion."""
    @lru_cache(maxsize=None)
    def go(m):
        if m == 0:
            return 1
        return sum(go(m - p) for p in parts if p <= m)
    return go(n)
