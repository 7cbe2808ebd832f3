"""Inner loops for series arithmetic over Z/mZ.

Every kernel exists twice: a numba ``@njit`` version and a pure-numpy one.
The backend is chosen at import time. Setting ``FALSETHETA_DISABLE_NUMBA=1``
(or running without numba installed) selects numpy; ``use_backend`` switches
at runtime, which the tests and the benchmark rely on.

All kernels take int64 residue arrays and a modulus below
``MAX_KERNEL_MODULUS`` so that a product of two residues fits in int64.
"""

from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover - exercised only without numba
    numba = None

MAX_KERNEL_MODULUS = 1 << 31
# below this bound a full dot product of residues cannot overflow int64
_INT64_HEADROOM = 1 << 62


def _env_disabled() -> bool:
    return os.environ.get("FALSETHETA_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes")


if numba is not None:
    njit = numba.njit(cache=True, nogil=True)
else:  # pragma: no cover
    def njit(f):
        return f


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

@njit
def _mul_mod_numba(a, b, n, m, lazy):
    out = np.zeros(n + 1, dtype=np.int64)
    la = min(a.shape[0], n + 1)
    lb = min(b.shape[0], n + 1)
    for i in range(la):
        ai = a[i]
        if ai == 0:
            continue
        top = min(lb, n + 1 - i)
        if lazy:
            for j in range(top):
                out[i + j] += ai * b[j]
        else:
            for j in range(top):
                out[i + j] = (out[i + j] + ai * b[j]) % m
    for k in range(n + 1):
        out[k] %= m
    return out


@njit
def _reciprocal_mod_numba(s, n, m, inv0, lazy):
    nz = np.nonzero(s[1:n + 1])[0] + 1
    vals = s[nz]
    r = np.zeros(n + 1, dtype=np.int64)
    r[0] = inv0 % m
    for k in range(1, n + 1):
        acc = 0
        for t in range(nz.shape[0]):
            j = nz[t]
            if j > k:
                break
            if lazy:
                acc += vals[t] * r[k - j]
            else:
                acc = (acc + vals[t] * r[k - j]) % m
        acc %= m
        r[k] = ((m - acc) % m) * inv0 % m
    return r


@njit
def _zero_classes_numba(values, modulus_a):
    # hit[B] becomes True once some index congruent to B mod A is nonzero
    hit = np.zeros(modulus_a, dtype=np.bool_)
    for i in range(values.shape[0]):
        if values[i] != 0:
            hit[i % modulus_a] = True
    return ~hit


# ---------------------------------------------------------------------------
# numpy kernels
# ---------------------------------------------------------------------------

def _convolve_mod(a, b, n, m, lazy):
    """Dense product mod m via int64 convolution, splitting into 16-bit limbs
    when a direct convolution could overflow."""
    if lazy:
        return np.convolve(a, b)[: n + 1] % m
    a0, a1 = a & 0xFFFF, a >> 16
    b0, b1 = b & 0xFFFF, b >> 16
    c00 = np.convolve(a0, b0)[: n + 1] % m
    c01 = (np.convolve(a0, b1)[: n + 1] + np.convolve(a1, b0)[: n + 1]) % m
    c11 = np.convolve(a1, b1)[: n + 1] % m
    t1 = c01 * ((1 << 16) % m) % m
    t2 = c11 * ((1 << 32) % m) % m
    return (c00 + t1 + t2) % m


def _mul_mod_numpy(a, b, n, m, lazy):
    a = a[: n + 1]
    b = b[: n + 1]
    out = np.zeros(n + 1, dtype=np.int64)
    if len(a) == 0 or len(b) == 0:
        return out
    if np.count_nonzero(b) < np.count_nonzero(a):
        a, b = b, a
    nz = np.flatnonzero(a)
    if 8 * len(nz) < len(a):
        for i in nz:
            top = min(len(b), n + 1 - i)
            out[i:i + top] = (out[i:i + top] + int(a[i]) * b[:top]) % m
        return out
    prod = _convolve_mod(a, b, n, m, lazy)
    out[: len(prod)] = prod
    return out


def _reciprocal_mod_numpy(s, n, m, inv0, lazy):
    nz = np.flatnonzero(s[1:n + 1]) + 1
    vals = s[nz]
    r = np.zeros(n + 1, dtype=np.int64)
    r[0] = inv0 % m
    cut = np.searchsorted(nz, np.arange(n + 1), side="right")
    for k in range(1, n + 1):
        c = cut[k]
        if c == 0:
            continue
        acc = int(((vals[:c] * r[k - nz[:c]]) % m).sum()) % m
        r[k] = (m - acc) % m * inv0 % m
    return r


def _zero_classes_numpy(values, modulus_a):
    counts = np.bincount(np.flatnonzero(values) % modulus_a, minlength=modulus_a)
    return counts == 0


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

_BACKENDS = {
    "numba": (_mul_mod_numba, _reciprocal_mod_numba, _zero_classes_numba),
    "numpy": (_mul_mod_numpy, _reciprocal_mod_numpy, _zero_classes_numpy),
}

_active = "numpy" if (numba is None or _env_disabled()) else "numba"


def backend() -> str:
    return _active


def use_backend(name: str) -> str:
    """Select ``"numba"`` or ``"numpy"``; returns the previous backend."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and numba is None:
        raise RuntimeError("numba is not installed")
    previous, _active = _active, name
    return previous


def mul_mod(a: np.ndarray, b: np.ndarray, n: int, m: int) -> np.ndarray:
    """Cauchy product of residue arrays, coefficients 0..n, reduced mod m."""
    m = int(m)
    lazy = (m - 1) ** 2 * (min(len(a), len(b), n + 1) + 1) < _INT64_HEADROOM
    return _BACKENDS[_active][0](a, b, int(n), m, lazy)


def reciprocal_mod(s: np.ndarray, n: int, m: int, inv0: int) -> np.ndarray:
    """Coefficients 0..n of 1/s mod m, given inv0 = s[0]^-1 mod m."""
    m = int(m)
    lazy = (m - 1) ** 2 * (min(len(s), n + 1) + 1) < _INT64_HEADROOM
    return _BACKENDS[_active][1](s, int(n), m, int(inv0), lazy)


def zero_classes(values: np.ndarray, modulus_a: int) -> np.ndarray:
    """Boolean mask over B in [0, A): True where values[A*k + B] == 0 for all k."""
    return _BACKENDS[_active][2](values, modulus_a)
