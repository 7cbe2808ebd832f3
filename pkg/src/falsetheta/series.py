"""Dense truncated power series over Z and over Z/mZ.

``IntSeries`` holds arbitrary-precision Python integers and is exact on the
exponents ``0..trunc``. ``ModSeries`` holds residues in ``[0, m)`` as an
int64 array and routes its inner loops through :mod:`falsetheta._kernels`.

Binary operations narrow to the smaller truncation, so a result never claims
coefficients that its inputs could not certify.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from os import PathLike
from typing import Iterable, Iterator, Union

import numpy as np

from . import _kernels

__all__ = [
    "IntSeries",
    "ModSeries",
    "make_series",
    "one",
    "zero",
    "mul",
    "reciprocal",
    "power",
    "substitute_qk",
    "extract_progression",
    "interleave",
    "reduce_mod",
    "congruent",
    "series_equal",
    "dumps_series",
    "loads_series",
    "write_series",
    "read_series",
]

# operands with at most this many nonzero terms are multiplied row by row
_SPARSE_ROWS = 12
# below this length schoolbook beats packing into one big integer
_SCHOOLBOOK_LEN = 48


class NonUnitConstantError(ValueError):
    """Raised when a reciprocal is requested of a series whose constant term
    is not invertible."""


# ---------------------------------------------------------------------------
# exact integer kernels (lists of Python ints)
# ---------------------------------------------------------------------------

def _schoolbook(a: list[int], b: list[int], n: int) -> list[int]:
    out = [0] * (n + 1)
    for i, ai in enumerate(a[: n + 1]):
        if ai:
            for j, bj in enumerate(b[: n + 1 - i]):
                out[i + j] += ai * bj
    return out


def _sparse_rows(a: list[int], b: list[int], n: int) -> list[int]:
    # a has few nonzero terms: add shifted, scaled copies of b
    out = [0] * (n + 1)
    for i, ai in enumerate(a[: n + 1]):
        if not ai:
            continue
        top = min(len(b), n + 1 - i)
        if ai == 1:
            for j in range(top):
                out[i + j] += b[j]
        elif ai == -1:
            for j in range(top):
                out[i + j] -= b[j]
        else:
            for j in range(top):
                out[i + j] += ai * b[j]
    return out


def _pack(values: list[int], width: int) -> int:
    return int.from_bytes(b"".join(v.to_bytes(width, "little") for v in values), "little")


def _unpack(value: int, width: int, count: int) -> list[int]:
    raw = value.to_bytes(width * count + width, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(count)]


def _kronecker(a: list[int], b: list[int], n: int) -> list[int]:
    """Exact product through one big-integer multiplication.

    Coefficients are split into positive and negative parts so every packed
    slot is non-negative; the slot width covers the largest possible
    coefficient of the product, so no carries cross slot boundaries.
    """
    a = a[: n + 1]
    b = b[: n + 1]
    bound = max(map(abs, a)) * max(map(abs, b)) * min(len(a), len(b))
    width = (bound.bit_length() + 8) // 8 + 1
    ap = _pack([x if x > 0 else 0 for x in a], width)
    am = _pack([-x if x < 0 else 0 for x in a], width)
    bp = _pack([x if x > 0 else 0 for x in b], width)
    bm = _pack([-x if x < 0 else 0 for x in b], width)
    count = min(n + 1, len(a) + len(b) - 1)
    pos = _unpack(ap * bp + am * bm, width, len(a) + len(b))[:count]
    neg = _unpack(ap * bm + am * bp, width, len(a) + len(b))[:count]
    out = [p - q for p, q in zip(pos, neg)]
    out.extend([0] * (n + 1 - len(out)))
    return out


def _mul_exact(a: list[int], b: list[int], n: int) -> list[int]:
    a = a[: n + 1]
    b = b[: n + 1]
    nza = sum(1 for x in a if x)
    nzb = sum(1 for x in b if x)
    if nza == 0 or nzb == 0:
        return [0] * (n + 1)
    if nzb < nza:
        a, b, nza, nzb = b, a, nzb, nza
    if nza <= _SPARSE_ROWS:
        return _sparse_rows(a, b, n)
    if n < _SCHOOLBOOK_LEN:
        return _schoolbook(a, b, n)
    return _kronecker(a, b, n)


def _reciprocal_exact(s: list[int], n: int) -> list[int]:
    c0 = s[0]
    nz = [(k, s[k]) for k in range(1, n + 1) if s[k]]
    if len(nz) <= 4 * max(1, int(n ** 0.5)):
        # r(k) = -c0 * sum_{j>=1} s(j) r(k-j), with c0 = +-1 its own inverse
        r = [0] * (n + 1)
        r[0] = c0
        for k in range(1, n + 1):
            acc = 0
            for j, v in nz:
                if j > k:
                    break
                acc += v * r[k - j]
            r[k] = -c0 * acc
        return r
    # dense input: Newton iteration r <- r (2 - s r), doubling precision
    r = [c0]
    prec = 1
    while prec < n + 1:
        prec = min(2 * prec, n + 1)
        e = _mul_exact(s[:prec], r, prec - 1)
        e = [-x for x in e]
        e[0] += 2
        r = _mul_exact(r, e, prec - 1)
    return r


# ---------------------------------------------------------------------------
# series types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class IntSeries:
    """Truncated power series with exact integer coefficients.

    ``coeffs[n]`` is the coefficient of ``q**n`` for ``0 <= n <= trunc``.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise ValueError("a series needs at least the constant coefficient")
        if not isinstance(self.coeffs, tuple):
            object.__setattr__(self, "coeffs", tuple(int(c) for c in self.coeffs))

    @property
    def trunc(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __iter__(self) -> Iterator[int]:
        return iter(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{c}*q^{e}" for e, c in self.items()][:12]
        more = " + ..." if len(terms) == 12 else ""
        return f"IntSeries({' + '.join(terms) or '0'}{more}; trunc={self.trunc})"

    def items(self) -> Iterator[tuple[int, int]]:
        """(exponent, coefficient) pairs for the nonzero coefficients."""
        return ((e, c) for e, c in enumerate(self.coeffs) if c)

    def nonzero_count(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def truncate(self, trunc: int) -> IntSeries:
        if trunc > self.trunc:
            raise ValueError(f"cannot extend a series exact to {self.trunc} up to {trunc}")
        return IntSeries(self.coeffs[: trunc + 1])

    def shift(self, s: int) -> IntSeries:
        """Multiply by q**s, keeping the truncation order."""
        if s < 0:
            raise ValueError("negative shifts would leave the power-series ring")
        return IntSeries((0,) * min(s, len(self.coeffs)) + self.coeffs[: max(0, len(self.coeffs) - s)])

    def scale(self, c: int) -> IntSeries:
        return IntSeries(tuple(c * x for x in self.coeffs))

    def _narrow(self, other: IntSeries) -> tuple[tuple[int, ...], tuple[int, ...], int]:
        n = min(self.trunc, other.trunc)
        return self.coeffs[: n + 1], other.coeffs[: n + 1], n

    def __add__(self, other):
        if isinstance(other, int):
            return IntSeries((self.coeffs[0] + other,) + self.coeffs[1:])
        if not isinstance(other, IntSeries):
            return NotImplemented
        a, b, _ = self._narrow(other)
        return IntSeries(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self) -> IntSeries:
        return IntSeries(tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        if not isinstance(other, IntSeries):
            return NotImplemented
        a, b, _ = self._narrow(other)
        return IntSeries(tuple(x - y for x, y in zip(a, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not isinstance(other, IntSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntSeries:
        return power(self, e)


class ModSeries:
    """Truncated power series with coefficients in Z/mZ, stored in [0, m)."""

    __slots__ = ("coeffs", "modulus")

    def __init__(self, coeffs, modulus: int):
        modulus = int(modulus)
        if modulus < 2:
            raise ValueError("modulus must be at least 2")
        if modulus >= 1 << 63:
            raise ValueError("modulus must be below 2**63")
        if isinstance(coeffs, np.ndarray) and coeffs.dtype == np.int64:
            arr = np.mod(coeffs, modulus)
        else:
            arr = np.array([int(c) % modulus for c in coeffs], dtype=np.int64)
        if arr.ndim != 1 or arr.size == 0:
            raise ValueError("a series needs at least the constant coefficient")
        arr.flags.writeable = False
        object.__setattr__(self, "coeffs", arr)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, value):
        raise AttributeError("ModSeries is immutable")

    @property
    def trunc(self) -> int:
        return self.coeffs.shape[0] - 1

    def __len__(self) -> int:
        return self.coeffs.shape[0]

    def __getitem__(self, n):
        v = self.coeffs[n]
        return int(v) if np.ndim(v) == 0 else v

    def __iter__(self) -> Iterator[int]:
        return (int(c) for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ModSeries):
            return NotImplemented
        return self.modulus == other.modulus and np.array_equal(self.coeffs, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.modulus, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        terms = [f"{c}*q^{e}" for e, c in self.items()][:12]
        more = " + ..." if len(terms) == 12 else ""
        return f"ModSeries({' + '.join(terms) or '0'}{more}; trunc={self.trunc}, mod {self.modulus})"

    def items(self) -> Iterator[tuple[int, int]]:
        for e in np.flatnonzero(self.coeffs):
            yield int(e), int(self.coeffs[e])

    def nonzero_count(self) -> int:
        return int(np.count_nonzero(self.coeffs))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def truncate(self, trunc: int) -> ModSeries:
        if trunc > self.trunc:
            raise ValueError(f"cannot extend a series exact to {self.trunc} up to {trunc}")
        return ModSeries(self.coeffs[: trunc + 1].copy(), self.modulus)

    def shift(self, s: int) -> ModSeries:
        if s < 0:
            raise ValueError("negative shifts would leave the power-series ring")
        out = np.zeros_like(self.coeffs)
        if s < len(out):
            out[s:] = self.coeffs[: len(out) - s]
        return ModSeries(out, self.modulus)

    def scale(self, c: int) -> ModSeries:
        c %= self.modulus
        if self.modulus < _kernels.MAX_KERNEL_MODULUS:
            return ModSeries(self.coeffs * c % self.modulus, self.modulus)
        return ModSeries([int(x) * c for x in self.coeffs], self.modulus)

    def lift(self) -> IntSeries:
        """Representatives in [0, m) as an exact integer series."""
        return IntSeries(tuple(int(c) for c in self.coeffs))

    def _coerce(self, other) -> tuple[np.ndarray, np.ndarray, int]:
        if isinstance(other, IntSeries):
            other = reduce_mod(other, self.modulus)
        if not isinstance(other, ModSeries):
            raise TypeError(f"cannot combine ModSeries with {type(other).__name__}")
        if other.modulus != self.modulus:
            raise ValueError(f"moduli differ: {self.modulus} vs {other.modulus}")
        n = min(self.trunc, other.trunc)
        return self.coeffs[: n + 1], other.coeffs[: n + 1], n

    def __add__(self, other):
        if isinstance(other, int):
            out = self.coeffs.copy()
            out[0] = (int(out[0]) + other) % self.modulus
            return ModSeries(out, self.modulus)
        a, b, _ = self._coerce(other)
        return ModSeries(_addmod(a, b, self.modulus), self.modulus)

    __radd__ = __add__

    def __neg__(self) -> ModSeries:
        return ModSeries((self.modulus - self.coeffs) % self.modulus, self.modulus)

    def __sub__(self, other):
        if isinstance(other, int):
            return self + (-other)
        a, b, _ = self._coerce(other)
        return ModSeries(_addmod(a, (self.modulus - b) % self.modulus, self.modulus), self.modulus)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, (IntSeries, ModSeries)):
            return mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e: int) -> ModSeries:
        return power(self, e)


Series = Union[IntSeries, ModSeries]


def _addmod(a: np.ndarray, b: np.ndarray, m: int) -> np.ndarray:
    if m < _kernels.MAX_KERNEL_MODULUS:
        return (a + b) % m
    return np.array([(int(x) + int(y)) % m for x, y in zip(a, b)], dtype=np.int64)


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def make_series(pairs: Iterable[tuple[int, int]], trunc: int) -> IntSeries:
    """Series from (exponent, coefficient) pairs; duplicates are summed and
    exponents beyond ``trunc`` dropped."""
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    out = [0] * (trunc + 1)
    for e, c in pairs:
        if e < 0:
            raise ValueError(f"negative exponent {e}")
        if e <= trunc:
            out[e] += int(c)
    return IntSeries(tuple(out))


def one(trunc: int) -> IntSeries:
    return make_series([(0, 1)], trunc)


def zero(trunc: int) -> IntSeries:
    return make_series([], trunc)


def mul(a: Series, b: Series) -> Series:
    """Exact Cauchy product truncated at ``min(a.trunc, b.trunc)``."""
    if isinstance(a, IntSeries) and isinstance(b, IntSeries):
        n = min(a.trunc, b.trunc)
        return IntSeries(tuple(_mul_exact(list(a.coeffs), list(b.coeffs), n)))
    if isinstance(a, IntSeries):
        a, b = b, a
    x, y, n = a._coerce(b)
    m = a.modulus
    if m < _kernels.MAX_KERNEL_MODULUS:
        return ModSeries(_kernels.mul_mod(x, y, n, m), m)
    prod = _mul_exact([int(v) for v in x], [int(v) for v in y], n)
    return ModSeries(prod, m)


def reciprocal(s: Series) -> Series:
    """Multiplicative inverse to the same truncation order.

    Over Z the constant term must be +1 or -1; over Z/mZ it must be a unit.
    """
    if isinstance(s, IntSeries):
        if s.coeffs[0] not in (1, -1):
            raise NonUnitConstantError(
                f"constant term {s.coeffs[0]} is not a unit in Z; reciprocal would not be integral")
        return IntSeries(tuple(_reciprocal_exact(list(s.coeffs), s.trunc)))
    m = s.modulus
    c0 = int(s.coeffs[0])
    try:
        inv0 = pow(c0, -1, m)
    except ValueError:
        raise NonUnitConstantError(f"constant term {c0} is not a unit mod {m}") from None
    if m < _kernels.MAX_KERNEL_MODULUS:
        return ModSeries(_kernels.reciprocal_mod(s.coeffs, s.trunc, m, inv0), m)
    coeffs = [int(c) for c in s.coeffs]
    nz = [(k, v) for k, v in enumerate(coeffs) if k and v]
    r = [inv0] + [0] * s.trunc
    for k in range(1, s.trunc + 1):
        acc = 0
        for j, v in nz:
            if j > k:
                break
            acc += v * r[k - j]
        r[k] = -acc * inv0 % m
    return ModSeries(r, m)


def power(s: Series, e: int) -> Series:
    """``s**e`` by repeated squaring; ``power(s, 0)`` is 1."""
    if e < 0:
        raise ValueError("use reciprocal() for negative powers")
    if isinstance(s, IntSeries):
        result: Series = one(s.trunc)
    else:
        result = ModSeries([1] + [0] * s.trunc, s.modulus)
    base = s
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def substitute_qk(s: Series, k: int, trunc: int | None = None) -> Series:
    """``s(q**k)`` to order ``trunc`` (default: ``s.trunc``).

    The result is exact up to ``k*(s.trunc+1) - 1``; asking for more is an error.
    """
    if k < 1:
        raise ValueError("k must be positive")
    if trunc is None:
        trunc = s.trunc
    if trunc > k * (s.trunc + 1) - 1:
        raise ValueError(f"s(q^{k}) is only exact to {k * (s.trunc + 1) - 1}, not {trunc}")
    top = trunc // k
    if isinstance(s, IntSeries):
        out = [0] * (trunc + 1)
        out[::k] = s.coeffs[: top + 1]
        return IntSeries(tuple(out))
    out = np.zeros(trunc + 1, dtype=np.int64)
    out[::k] = s.coeffs[: top + 1]
    return ModSeries(out, s.modulus)


def extract_progression(s: Series, A: int, B: int) -> Series:
    """Series whose n-th coefficient is the (A*n + B)-th coefficient of s."""
    if A < 1 or not 0 <= B < A:
        raise ValueError(f"need A >= 1 and 0 <= B < A, got A={A}, B={B}")
    if B > s.trunc:
        raise ValueError(f"offset {B} lies beyond trunc {s.trunc}")
    if isinstance(s, IntSeries):
        return IntSeries(s.coeffs[B::A])
    return ModSeries(s.coeffs[B::A].copy(), s.modulus)


def interleave(parts: list[Series], trunc: int) -> Series:
    """Inverse of extract_progression over all B in [0, A) with A = len(parts)."""
    A = len(parts)
    for B, p in enumerate(parts):
        if trunc >= B and p.trunc < (trunc - B) // A:
            raise ValueError(f"part {B} too short for trunc {trunc}")
    if all(isinstance(p, IntSeries) for p in parts):
        out = [0] * (trunc + 1)
        for B, p in enumerate(parts):
            out[B::A] = p.coeffs[: len(range(B, trunc + 1, A))]
        return IntSeries(tuple(out))
    m = parts[0].modulus
    out = np.zeros(trunc + 1, dtype=np.int64)
    for B, p in enumerate(parts):
        out[B::A] = p.coeffs[: len(range(B, trunc + 1, A))]
    return ModSeries(out, m)


def reduce_mod(s: Series, m: int) -> ModSeries:
    """Coefficientwise floored reduction into [0, m)."""
    if m < 2:
        raise ValueError("modulus must be at least 2")
    if isinstance(s, ModSeries):
        if s.modulus % m:
            raise ValueError(f"cannot reduce a series mod {s.modulus} to mod {m}")
        return ModSeries(s.coeffs % m, m)
    return ModSeries([c % m for c in s.coeffs], m)


def _residues(s: Series, m: int, upto: int) -> list[int] | np.ndarray:
    if isinstance(s, ModSeries):
        if s.modulus % m:
            raise ValueError(f"a series known mod {s.modulus} says nothing mod {m}")
        return s.coeffs[: upto + 1] % m
    return np.array([c % m for c in s.coeffs[: upto + 1]], dtype=object)


def congruent(a: Series, b: Series, m: int, upto: int | None = None) -> tuple[bool, int | None]:
    """Compare coefficients 0..upto modulo m.

    Returns ``(True, None)`` or ``(False, first_mismatching_exponent)``.
    ``upto`` defaults to the smaller truncation and may never exceed it.
    """
    if upto is None:
        upto = min(a.trunc, b.trunc)
    if upto > a.trunc or upto > b.trunc:
        raise ValueError(f"upto={upto} exceeds an operand's truncation ({a.trunc}, {b.trunc})")
    ra = _residues(a, m, upto)
    rb = _residues(b, m, upto)
    diff = np.flatnonzero(np.asarray(ra != rb, dtype=bool))
    if diff.size:
        return False, int(diff[0])
    return True, None


def series_equal(a: IntSeries, b: IntSeries, upto: int | None = None) -> tuple[bool, int | None]:
    """Exact coefficient comparison on 0..upto, same reporting as ``congruent``."""
    if upto is None:
        upto = min(a.trunc, b.trunc)
    if upto > a.trunc or upto > b.trunc:
        raise ValueError(f"upto={upto} exceeds an operand's truncation ({a.trunc}, {b.trunc})")
    for n in range(upto + 1):
        if a.coeffs[n] != b.coeffs[n]:
            return False, n
    return True, None


# ---------------------------------------------------------------------------
# text interchange format
# ---------------------------------------------------------------------------

def dumps_series(s: Series) -> str:
    """``#trunc=N`` header (plus ``#modulus=m`` for residue series), then one
    ``exponent<TAB>coefficient`` line per nonzero coefficient."""
    buf = io.StringIO()
    buf.write(f"#trunc={s.trunc}\n")
    if isinstance(s, ModSeries):
        buf.write(f"#modulus={s.modulus}\n")
    for e, c in s.items():
        buf.write(f"{e}\t{c}\n")
    return buf.getvalue()


def loads_series(text: str) -> Series:
    trunc = modulus = None
    pairs = []
    last = -1
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, _, value = line[1:].partition("=")
            if key.strip() == "trunc":
                trunc = int(value)
            elif key.strip() == "modulus":
                modulus = int(value)
            continue
        try:
            e_text, c_text = line.split("\t")
            e, c = int(e_text), int(c_text)
        except ValueError:
            raise ValueError(f"line {lineno}: expected 'exponent<TAB>coefficient', got {line!r}") from None
        if e <= last:
            raise ValueError(f"line {lineno}: exponents must be strictly ascending")
        last = e
        pairs.append((e, c))
    if trunc is None:
        raise ValueError("missing '#trunc=N' header")
    if pairs and pairs[-1][0] > trunc:
        raise ValueError(f"exponent {pairs[-1][0]} exceeds trunc {trunc}")
    s = make_series(pairs, trunc)
    return reduce_mod(s, modulus) if modulus is not None else s


def write_series(s: Series, path: str | PathLike) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(dumps_series(s))


def read_series(path: str | PathLike) -> Series:
    with open(path, encoding="ascii") as fh:
        return loads_series(fh.read())
