"""Theta, false theta, Pochhammer and eta-product constructors.

Arguments are always monomials ``±q^a``. A :class:`ThetaSpec` describes
``f(±q^a, ±q^b)`` or ``Psi(±q^a, ±q^b)`` symbolically; the functions here
expand it into an :class:`~falsetheta.series.IntSeries`.

Surface syntax accepted by :func:`parse_theta` and :func:`parse_eta`::

    f(q^5,q)        psi(-q^5,q)        psi(-q^2,-1)
    q^1 * f1^2 * f10^6        f3^3 / f1        q * f1^-4 * f3^12
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator

import numpy as np

from .series import IntSeries, ModSeries, make_series, mul, one, power, reciprocal, reduce_mod

__all__ = [
    "ThetaSpec",
    "EtaProductSpec",
    "SpecParseError",
    "parse_theta",
    "parse_eta",
    "bilateral_terms",
    "theta_f",
    "false_theta_psi",
    "expand_theta",
    "pochhammer",
    "jtp_product",
    "eta_factor",
    "eta_product",
    "gaussian_binomial",
    "pentagonal_terms",
    "partition_gf",
]


class SpecParseError(ValueError):
    """Malformed spec string; ``position`` is the 0-based offending column."""

    def __init__(self, message: str, text: str, position: int):
        self.text = text
        self.position = position
        super().__init__(f"{message} at column {position}\n  {text}\n  {' ' * position}^")


@dataclass(frozen=True)
class ThetaSpec:
    """``f(sign_a*q^exp_a, sign_b*q^exp_b)`` or the false theta ``Psi`` of the same."""

    kind: str
    sign_a: int
    exp_a: int
    sign_b: int
    exp_b: int

    def __post_init__(self):
        if self.kind not in ("theta", "false_theta"):
            raise ValueError(f"kind must be 'theta' or 'false_theta', not {self.kind!r}")
        if self.sign_a not in (1, -1) or self.sign_b not in (1, -1):
            raise ValueError("signs must be +1 or -1")
        if self.exp_a < 0 or self.exp_b < 0:
            raise ValueError("exponents must be non-negative")
        if self.exp_a + self.exp_b == 0:
            raise ValueError("a + b must be positive, otherwise the bilateral sum diverges")

    def __str__(self) -> str:
        name = "f" if self.kind == "theta" else "psi"
        return f"{name}({_monomial(self.sign_a, self.exp_a)},{_monomial(self.sign_b, self.exp_b)})"

    def swapped(self) -> ThetaSpec:
        return ThetaSpec(self.kind, self.sign_b, self.exp_b, self.sign_a, self.exp_a)

    def with_kind(self, kind: str) -> ThetaSpec:
        return ThetaSpec(kind, self.sign_a, self.exp_a, self.sign_b, self.exp_b)


def _monomial(sign: int, e: int) -> str:
    body = "1" if e == 0 else ("q" if e == 1 else f"q^{e}")
    return body if sign > 0 else "-" + body


@dataclass(frozen=True)
class EtaProductSpec:
    """``q^prefactor_exp * prod f_k^e`` with ``f_k = (q^k; q^k)_inf``."""

    prefactor_exp: int = 0
    factors: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.prefactor_exp < 0:
            raise ValueError("prefactor exponent must be non-negative")
        ks = [k for k, _ in self.factors]
        if len(set(ks)) != len(ks):
            raise ValueError("each f_k may appear once")
        for k, e in self.factors:
            if k < 1:
                raise ValueError(f"f_{k}: k must be positive")
            if e == 0:
                raise ValueError(f"f_{k} has exponent 0")
        object.__setattr__(self, "factors", tuple(tuple(f) for f in self.factors))

    def __str__(self) -> str:
        parts = []
        if self.prefactor_exp:
            parts.append(f"q^{self.prefactor_exp}")
        parts += [f"f{k}" if e == 1 else f"f{k}^{e}" for k, e in self.factors]
        return " * ".join(parts) or "1"


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_THETA_RE = re.compile(r"\s*(f|psi|Psi)\s*\(")
_MONO_RE = re.compile(r"\s*([+-]?)\s*(?:(q)(?:\s*\^\s*(\d+))?|(1))\s*")


def _parse_monomial(text: str, pos: int) -> tuple[int, int, int]:
    m = _MONO_RE.match(text, pos)
    if not m or (m.group(2) is None and m.group(4) is None):
        raise SpecParseError("expected a monomial like 'q', '-q^5' or '1'", text, pos)
    sign = -1 if m.group(1) == "-" else 1
    if m.group(4) is not None:
        e = 0
    else:
        e = int(m.group(3)) if m.group(3) is not None else 1
    return sign, e, m.end()


def parse_theta(text: str) -> ThetaSpec:
    """Parse ``f(±q^a,±q^b)`` or ``psi(±q^a,±q^b)``."""
    m = _THETA_RE.match(text)
    if not m:
        raise SpecParseError("expected 'f(' or 'psi('", text, len(text) - len(text.lstrip()))
    kind = "theta" if m.group(1) == "f" else "false_theta"
    sa, a, pos = _parse_monomial(text, m.end())
    if pos >= len(text) or text[pos] != ",":
        raise SpecParseError("expected ','", text, pos)
    sb, b, pos = _parse_monomial(text, pos + 1)
    if pos >= len(text) or text[pos] != ")":
        raise SpecParseError("expected ')'", text, pos)
    rest = text[pos + 1:]
    if rest.strip():
        raise SpecParseError("unexpected trailing text", text, pos + 1 + len(rest) - len(rest.lstrip()))
    try:
        return ThetaSpec(kind, sa, a, sb, b)
    except ValueError as exc:
        raise SpecParseError(str(exc), text, m.end()) from None


_ETA_TOKEN = re.compile(r"\s*(?:(?P<q>q)(?:\^(?P<qe>\d+))?|f(?P<k>\d+)(?:\^(?P<e>-?\d+))?|(?P<num>1))\s*")


def parse_eta(text: str) -> EtaProductSpec:
    """Parse products such as ``q^1 * f1^2 * f10^6`` or ``f3^3 / f1``."""
    pos = 0
    op = "*"
    prefactor = 0
    exps: dict[int, int] = {}
    order: list[int] = []
    while True:
        m = _ETA_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise SpecParseError("expected 'q^s', 'fK' or 'fK^e'", text, pos)
        if m.group("q"):
            if op == "/":
                raise SpecParseError("q^s may not divide", text, m.start("q"))
            prefactor += int(m.group("qe") or 1)
        elif m.group("k"):
            k = int(m.group("k"))
            if k < 1:
                raise SpecParseError("f index must be positive", text, m.start("k"))
            e = int(m.group("e") or 1) * (-1 if op == "/" else 1)
            if k not in exps:
                order.append(k)
            exps[k] = exps.get(k, 0) + e
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] not in "*/":
            raise SpecParseError("expected '*' or '/'", text, pos)
        op = text[pos]
        pos += 1
    factors = tuple((k, exps[k]) for k in order if exps[k] != 0)
    return EtaProductSpec(prefactor, factors)


# ---------------------------------------------------------------------------
# bilateral sums
# ---------------------------------------------------------------------------

def _tri(n: int) -> int:
    return n * (n - 1) // 2


def bilateral_terms(spec: ThetaSpec, trunc: int) -> Iterator[tuple[int, int, int]]:
    """Yield ``(n, sign, exponent)`` for the summand ``a^C(n+1,2) b^C(n,2)``.

    ``sign`` is the sign of the monomial itself, before the false theta
    subtraction of the ``n <= -1`` terms. Each direction stops once its
    exponent passes ``trunc``; for ``a, b >= 0`` exponents never decrease
    along either direction, so nothing is skipped.
    """
    for direction in (1, -1):
        n = 0 if direction == 1 else -1
        while True:
            ca, cb = _tri(n + 1), _tri(n)
            e = spec.exp_a * ca + spec.exp_b * cb
            if e > trunc:
                break
            sign = 1
            if spec.sign_a < 0 and ca & 1:
                sign = -sign
            if spec.sign_b < 0 and cb & 1:
                sign = -sign
            yield n, sign, e
            n += direction


def theta_f(spec: ThetaSpec, trunc: int) -> IntSeries:
    """The general theta function ``f(a, b)`` as a truncated series."""
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    if spec.kind != "theta":
        raise ValueError("theta_f needs a spec of kind 'theta'")
    return make_series(((e, s) for _, s, e in bilateral_terms(spec, trunc)), trunc)


def false_theta_psi(spec: ThetaSpec, trunc: int) -> IntSeries:
    """False theta ``Psi(a, b)``: terms with ``n <= -1`` enter with a minus sign."""
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    if spec.kind != "false_theta":
        raise ValueError("false_theta_psi needs a spec of kind 'false_theta'")
    return make_series(((e, s if n >= 0 else -s) for n, s, e in bilateral_terms(spec, trunc)), trunc)


def expand_theta(spec: ThetaSpec, trunc: int) -> IntSeries:
    return theta_f(spec, trunc) if spec.kind == "theta" else false_theta_psi(spec, trunc)


# ---------------------------------------------------------------------------
# products
# ---------------------------------------------------------------------------

def pochhammer(base_sign: int, base_exp: int, step: int, n: int | None, trunc: int,
               step_sign: int = 1) -> IntSeries:
    """``(base_sign*q^j ; step_sign*q^k)_n``, i.e. the product over i < n of
    ``1 - base_sign * step_sign**i * q^(j + i*k)``. ``n=None`` means infinity;
    the product then stops at the first factor beyond ``trunc``.
    """
    if base_exp < 0 or step < 1:
        raise ValueError("need base exponent >= 0 and step >= 1")
    if n is not None and n < 0:
        raise ValueError("n must be non-negative")
    out = np.zeros(trunc + 1, dtype=object)
    out[0] = 1
    i = 0
    while n is None or i < n:
        e = base_exp + i * step
        if e > trunc:
            break
        c = base_sign * (step_sign if i & 1 else 1)
        if e == 0:
            out = out * (1 - c)
        else:
            out[e:] = out[e:] - c * out[: trunc + 1 - e]
        i += 1
    return IntSeries(tuple(int(x) for x in out))


def _jtp_factors(spec: ThetaSpec) -> list[tuple[int, int, int, int]]:
    """Pochhammer parameters (base_sign, base_exp, step_sign, step) for
    ``(-a; ab)(-b; ab)(ab; ab)`` with a, b the two monomials."""
    ab_sign = spec.sign_a * spec.sign_b
    ab_exp = spec.exp_a + spec.exp_b
    return [
        (-spec.sign_a, spec.exp_a, ab_sign, ab_exp),
        (-spec.sign_b, spec.exp_b, ab_sign, ab_exp),
        (ab_sign, ab_exp, ab_sign, ab_exp),
    ]


def jtp_product(spec: ThetaSpec, trunc: int) -> IntSeries:
    """``f(a, b)`` through its triple product factorisation."""
    result = one(trunc)
    for base_sign, base_exp, step_sign, step in _jtp_factors(spec):
        result = mul(result, pochhammer(base_sign, base_exp, step, None, trunc, step_sign))
    return result


@lru_cache(maxsize=64)
def eta_factor(k: int, trunc: int) -> IntSeries:
    """``f_k = (q^k; q^k)_inf`` from its pentagonal expansion ``f(-q^k, -q^2k)``."""
    return theta_f(ThetaSpec("theta", -1, k, -1, 2 * k), trunc)


def eta_product(spec: EtaProductSpec, trunc: int, modulus: int | None = None):
    """``q^s prod f_k^e`` to order ``trunc``; reduced mod ``modulus`` when given
    (much cheaper for large truncations)."""
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    work = trunc - spec.prefactor_exp
    if work < 0:
        result = one(trunc) if modulus is None else reduce_mod(one(trunc), modulus)
        return result.scale(0)
    num = one(work) if modulus is None else reduce_mod(one(work), modulus)
    den = num
    for k, e in spec.factors:
        base = eta_factor(k, work)
        if modulus is not None:
            base = reduce_mod(base, modulus)
        if e > 0:
            num = mul(num, power(base, e))
        else:
            den = mul(den, power(base, -e))
    result = mul(num, reciprocal(den)) if any(e < 0 for _, e in spec.factors) else num
    if spec.prefactor_exp:
        pad = [0] * spec.prefactor_exp + list(result)
        return IntSeries(tuple(pad)) if modulus is None else ModSeries(pad, modulus)
    return result


@lru_cache(maxsize=None)
def _gauss(n: int, k: int) -> tuple[int, ...]:
    # [n, k] = [n-1, k-1] + q^k [n-1, k]
    if k < 0 or k > n:
        return (0,)
    if k == 0 or k == n:
        return (1,)
    left = _gauss(n - 1, k - 1)
    right = _gauss(n - 1, k)
    out = [0] * (k * (n - k) + 1)
    for i, c in enumerate(left):
        out[i] += c
    for i, c in enumerate(right):
        out[i + k] += c
    return tuple(out)


def gaussian_binomial(n: int, k: int, trunc: int | None = None) -> IntSeries:
    """The q-binomial coefficient ``[n choose k]_q`` as a polynomial.

    With ``trunc=None`` the result is exact to its own degree ``k(n-k)``;
    any other ``trunc`` pads with zeros or cuts, both exact for a polynomial.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    # fill whole rows every 100 levels so recursion depth stays bounded
    for m in range(100, n, 100):
        for j in range(min(k, m) + 1):
            _gauss(m, j)
    poly = _gauss(n, k)
    if trunc is None:
        trunc = len(poly) - 1
    coeffs = list(poly[: trunc + 1]) + [0] * max(0, trunc + 1 - len(poly))
    return IntSeries(tuple(coeffs))


def pentagonal_terms(limit: int) -> list[tuple[int, int]]:
    """``(g, sign)`` for the nonzero terms ``g >= 1`` of ``(q;q)_inf`` up to
    ``limit``, ascending: g = m(3m-1)/2 for m = 1, -1, 2, -2, ... with sign (-1)^m."""
    out = []
    m = 1
    while m * (3 * m - 1) // 2 <= limit:
        sign = -1 if m & 1 else 1
        out.append((m * (3 * m - 1) // 2, sign))
        g2 = m * (3 * m + 1) // 2
        if g2 <= limit:
            out.append((g2, sign))
        m += 1
    return out


def partition_gf(trunc: int) -> IntSeries:
    """``1/(q;q)_inf``: the partition numbers p(0..trunc)."""
    return reciprocal(eta_factor(1, trunc))
