"""The false theta dissection and a registry of checkable identities.

Every identity is verified numerically to a truncation bound and reported
as an :class:`~falsetheta.report.IdentityReport`; nothing here is a proof.

The dissection splits ``Psi(±q^a, ±q^b)`` (a != b) into two false theta
functions in ``q^2``-friendly arguments:

* a > b:  ``Psi(e q^(3a+b), e q^(a+3b)) - s_b q^b Psi(e q^(3a+5b), e q^(a-b))``
* b > a:  ``Psi(e q^(3a+b), e q^(a+3b)) + s_a q^a Psi(e q^(5a+3b), e q^(b-a))``

with ``e = s_a * s_b``. For a, b both odd this is an even/odd split.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Union

from . import mex
from .report import IdentityReport, flag, timed
from .series import (IntSeries, ModSeries, congruent, extract_progression, make_series, mul, one,
                     power, reciprocal, reduce_mod, series_equal, substitute_qk)
from .theta import (ThetaSpec, eta_factor, eta_product, expand_theta, false_theta_psi, parse_eta,
                    pochhammer, theta_f)

__all__ = [
    "Dissection",
    "dissect_false_theta",
    "expand_dissection",
    "verify_dissection",
    "c_t_series",
    "REGISTRY",
    "registry_ids",
    "verify_registry_identity",
    "telescoped_inverse_check",
]

Series = Union[IntSeries, ModSeries]


def _psi(sa: int, a: int, sb: int, b: int) -> ThetaSpec:
    return ThetaSpec("false_theta", sa, a, sb, b)


def _scaled(spec: ThetaSpec, k: int) -> ThetaSpec:
    """The spec of ``F(q^k)`` when ``spec`` describes ``F(q)``."""
    return ThetaSpec(spec.kind, spec.sign_a, k * spec.exp_a, spec.sign_b, k * spec.exp_b)


@dataclass(frozen=True)
class Dissection:
    """``source = even_part + odd_sign * q^odd_prefactor_exp * odd_part``."""

    source: ThetaSpec
    even_part: ThetaSpec
    odd_part: ThetaSpec
    odd_sign: int
    odd_prefactor_exp: int

    @property
    def even_odd(self) -> bool:
        """True when the split is by exponent parity (a and b both odd)."""
        return self.source.exp_a % 2 == 1 and self.source.exp_b % 2 == 1

    def __str__(self) -> str:
        op = "+" if self.odd_sign > 0 else "-"
        pre = "" if self.odd_prefactor_exp == 0 else (
            "q*" if self.odd_prefactor_exp == 1 else f"q^{self.odd_prefactor_exp}*")
        return f"{self.source} = {self.even_part} {op} {pre}{self.odd_part}"


def dissect_false_theta(spec: ThetaSpec) -> Dissection:
    if spec.kind != "false_theta":
        raise ValueError("only false theta specs are dissected here")
    a, b = spec.exp_a, spec.exp_b
    if a == b:
        raise ValueError("a == b: the second term would have a constant argument")
    eps = spec.sign_a * spec.sign_b
    even = _psi(eps, 3 * a + b, eps, a + 3 * b)
    if a > b:
        return Dissection(spec, even, _psi(eps, 3 * a + 5 * b, eps, a - b), -spec.sign_b, b)
    return Dissection(spec, even, _psi(eps, 5 * a + 3 * b, eps, b - a), spec.sign_a, a)


def expand_dissection(d: Dissection, trunc: int) -> tuple[IntSeries, IntSeries]:
    """The two summands of the right-hand side as series."""
    even = false_theta_psi(d.even_part, trunc)
    odd = false_theta_psi(d.odd_part, trunc).shift(d.odd_prefactor_exp).scale(d.odd_sign)
    return even, odd


def _supported_on(s: IntSeries, parity: int) -> bool:
    return all(e % 2 == parity for e, _ in s.items())


def verify_dissection(spec: ThetaSpec, trunc: int) -> IdentityReport:
    """Expand both sides and compare exactly; record whether the two summands
    are supported on even and odd exponents respectively."""
    with timed() as clock:
        d = dissect_false_theta(spec)
        lhs = false_theta_psi(spec, trunc)
        even, odd = expand_dissection(d, trunc)
        ok, first = series_equal(lhs, even + odd)
        split = _supported_on(even, 0) and _supported_on(odd, 1)
    return IdentityReport(
        f"dissection {spec}", trunc, "exact", "verified" if ok else "failed", first, clock[0],
        details={"rhs": str(d), "both_odd": d.even_odd, "even_odd_support": split})


@lru_cache(maxsize=32)
def c_t_series(t: int, trunc: int, modulus: int | None = None) -> Series:
    """Coefficients of ``1/Psi(-q^t, q)``, exact or reduced mod ``modulus``."""
    if t < 1:
        raise ValueError("t must be positive")
    psi = false_theta_psi(_psi(-1, t, 1, 1), trunc)
    return reciprocal(psi if modulus is None else reduce_mod(psi, modulus))


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

# one comparison: (label, lhs, rhs, modulus or None for exact)
Check = tuple[str, Series, Series, Union[int, None]]


@dataclass(frozen=True)
class RegistryEntry:
    identity_id: str
    statement: str
    modulus: int | None
    build: Callable[[int, Union[int, None]], list[Check]]
    default_trunc: int
    max_trunc: int | None = None
    discrepancy: str | None = None
    # a modulus override must divide this (the congruence checks say nothing mod anything else)
    congruence_mod: int | None = None

    def __post_init__(self):
        if self.congruence_mod is None and self.modulus is not None:
            object.__setattr__(self, "congruence_mod", self.modulus)


def _maybe_mod(s: IntSeries, m: int | None) -> Series:
    return s if m is None else reduce_mod(s, m)


def _eta(text: str, trunc: int, m: int | None) -> Series:
    return eta_product(parse_eta(text), trunc, m)


def _quadratic_exponents(alpha: int, beta: int, trunc: int) -> IntSeries:
    """``sum over integers n of q^(alpha n^2 + beta n)`` (alpha > 0)."""
    pairs = []
    for direction in (1, -1):
        n = 0 if direction == 1 else -1
        while True:
            e = alpha * n * n + beta * n
            if e > trunc and n * direction > 0 and 2 * alpha * n * direction + beta * direction > 0:
                break
            if 0 <= e <= trunc:
                pairs.append((e, 1))
            n += direction
    return make_series(pairs, trunc)


def _zero_like(s: Series) -> Series:
    return s.scale(0)


def _rlnpsi_rhs(trunc: int) -> IntSeries:
    # summed until the q^n factor alone exceeds trunc
    rhs = [0] * (trunc + 1)
    n = 0
    while n <= trunc:
        w = trunc - n
        num = pochhammer(1, 1, 2, n, w)          # (q; q^2)_n
        den = pochhammer(-1, 1, 2, n + 1, w)     # (-q; q^2)_{n+1}
        for e, c in mul(num, reciprocal(den)).items():
            rhs[n + e] += c
        n += 1
    return IntSeries(tuple(rhs))


def _build_rlnpsi(trunc, m):
    lhs = false_theta_psi(_psi(1, 3, 1, 1), trunc)
    return [("Psi(q^3,q) = sum (q;q^2)_n q^n / (-q;q^2)_{n+1}", _maybe_mod(lhs, m),
             _maybe_mod(_rlnpsi_rhs(trunc), m), m)]


def _build_rlnpsi_rescaled(trunc, m):
    lhs = false_theta_psi(_psi(1, 12, 1, 4), trunc)
    return [("Psi(q^12,q^4) = sum (q;q^2)_n q^n / (-q;q^2)_{n+1}", _maybe_mod(lhs, m),
             _maybe_mod(_rlnpsi_rhs(trunc), m), m)]


def _triangular(trunc: int, weighted: bool) -> IntSeries:
    pairs = []
    n = 0
    while n * (n + 1) // 2 <= trunc:
        pairs.append((n * (n + 1) // 2, (-1) ** n * (2 * n + 1) if weighted else 1))
        n += 1
    return make_series(pairs, trunc)


def _build_cubeeq(trunc, m):
    f1_3 = power(eta_factor(1, trunc), 3)
    return [
        ("f1^3 = sum (-1)^n (2n+1) q^T(n)", _maybe_mod(f1_3, m), _maybe_mod(_triangular(trunc, True), m), m),
        ("f1^3 == sum q^T(n) mod 2", f1_3, _triangular(trunc, False), m or 2),
    ]


def _build_f1f5(trunc, m):
    m = m or 2
    return [("f1 f5 == f1^6 + q f5^6", _eta("f1*f5", trunc, m),
             _eta("f1^6", trunc, m) + _eta("q*f5^6", trunc, m), m)]


def _build_xia_yao(trunc, m):
    m = m or 2
    return [("f3^3/f1 == f1^8 + q f3^12/f1^4", _eta("f3^3/f1", trunc, m),
             _eta("f1^8", trunc, m) + _eta("q*f3^12/f1^4", trunc, m), m)]


def _build_robbins(trunc, m):
    m = m or 2
    return [("f3^3/f1 == sum_{n in Z} q^(n(3n-2))", _eta("f3^3/f1", trunc, m),
             _quadratic_exponents(3, -2, trunc), m)]


def _build_bailey(trunc, m):
    checks = []
    for a in range(1, 11):
        for b in range(0, a):
            lhs = theta_f(ThetaSpec("theta", 1, a, 1, b), trunc)
            rhs = theta_f(ThetaSpec("theta", 1, a + 3 * b, 1, 3 * a + b), trunc) + \
                theta_f(ThetaSpec("theta", 1, 3 * a + 5 * b, 1, a - b), trunc).shift(b)
            checks.append((f"f(q^{a},q^{b})", _maybe_mod(lhs, m), _maybe_mod(rhs, m), m))
    return checks


def _build_c5_mod2(trunc, m):
    m = m or 2
    c5 = c_t_series(5, trunc, m)
    odd = extract_progression(c5, 2, 1)
    checks = [
        ("sum c5(2n+1) q^n == sum_{n in Z} q^(n(3n-2))", odd, _quadratic_exponents(3, -2, odd.trunc), m),
        ("sum c5(2n+1) q^n == f3^3/f1", odd, _eta("f3^3/f1", odd.trunc, m), m),
    ]
    for A, B in ((10, 5), (10, 9), (8, 5)):
        sub = extract_progression(c5, A, B)
        checks.append((f"c5({A}n+{B}) == 0", sub, _zero_like(sub), m))
    return checks


def _build_c5_mod4(trunc, m):
    m = m or 4
    sub = extract_progression(c_t_series(5, trunc, m), 32, 31)
    return [("c5(32n+31) == 0", sub, _zero_like(sub), m)]


# the series named in the mod 4 argument for c5:
#   Psi(-q^5,q) = A(q^8) - q B(q^4),  B(q) = F(q^8) + q G(q^4),  G(q) = F(q^8) - q G(q^4)
_T2 = {"A": _psi(-1, 2, -1, 1), "B": _psi(-1, 5, -1, 1), "F": _psi(1, 2, 1, 1), "G": _psi(1, 5, 1, 1)}


def _build_c5_dissections(trunc, m):
    P = lambda spec, k=1: false_theta_psi(_scaled(spec, k), trunc)
    checks = [
        ("Psi(-q^5,q) = A(q^8) - q B(q^4)", false_theta_psi(_psi(-1, 5, 1, 1), trunc),
         P(_T2["A"], 8) - P(_T2["B"], 4).shift(1), m),
        ("B(q) = F(q^8) + q G(q^4)", P(_T2["B"]), P(_T2["F"], 8) + P(_T2["G"], 4).shift(1), m),
        ("G(q) = F(q^8) - q G(q^4)", P(_T2["G"]), P(_T2["F"], 8) - P(_T2["G"], 4).shift(1), m),
    ]
    return [(lab, _maybe_mod(l, m), _maybe_mod(r, m), mm) for lab, l, r, mm in checks]


def _build_c5_squares(trunc, m):
    m = m or 4
    sq = {k: power(reduce_mod(false_theta_psi(v, trunc), 4), 2) for k, v in _T2.items()}
    # F^2 == H(q^2) + 2q I(q^2) mod 4 means the odd-index coefficients of F^2 are even
    f_odd = extract_progression(sq["F"], 2, 1)
    return [
        ("A^2 == F^2 mod 4", sq["A"], sq["F"], m),
        ("B^2 == G^2 mod 4", sq["B"], sq["G"], m),
        ("odd part of F^2 == 0 mod 2", reduce_mod(f_odd, 2), _zero_like(reduce_mod(f_odd, 2)), 2),
    ]


# the series named in the mod 2 argument for c9:
#   Psi(-q^9,q) = A(q^4) - q B(q^8),  A(q) = C(q^8) + q^3 D(q^4)
_T3 = {"A": _psi(-1, 7, -1, 3), "B": _psi(-1, 4, -1, 1), "C": _psi(1, 3, 1, 2), "D": _psi(1, 9, 1, 1)}


def _t3(name: str, k: int, trunc: int, m: int | None) -> Series:
    return _maybe_mod(false_theta_psi(_scaled(_T3[name], k), trunc), m)


def _build_c9_dissections(trunc, m):
    checks = [
        ("Psi(-q^9,q) = A(q^4) - q B(q^8)", _maybe_mod(false_theta_psi(_psi(-1, 9, 1, 1), trunc), m),
         _t3("A", 4, trunc, m) - _t3("B", 8, trunc, m).shift(1), m),
        ("A(q) = C(q^8) + q^3 D(q^4)", _t3("A", 1, trunc, m),
         _t3("C", 8, trunc, m) + _t3("D", 4, trunc, m).shift(3), m),
    ]
    return checks


def _build_c9_bridge(trunc, m):
    m = m or 2
    g = lambda name, k: _t3(name, k, trunc, m)
    lhs = mul(g("C", 4), g("B", 4)) + mul(g("D", 2), g("A", 2)).shift(1)
    return [("C(q^4)B(q^4) + q D(q^2)A(q^2) == A(q)D(q)", lhs, mul(g("A", 1), g("D", 1)), m)]


def _build_c9_eta(trunc, m):
    m = m or 2
    return [("f4^2 f5^2 f20 + q f1^2 f10^6 == f1 f2 f5 f10^3",
             _eta("f4^2*f5^2*f20", trunc, m) + _eta("q*f1^2*f10^6", trunc, m),
             _eta("f1*f2*f5*f10^3", trunc, m), m)]


def _build_c9_main(trunc, m):
    m = m or 2
    c9 = c_t_series(9, trunc, m)
    sub = extract_progression(c9, 8, 4)
    target = reduce_mod(false_theta_psi(_psi(-1, 14, -1, 6), sub.trunc), m)
    checks = [("sum c9(8n+4) q^n == Psi(-q^14,-q^6)", sub, target, m)]
    for A, B in ((16, 12), (24, 12), (56, 20), (56, 28), (56, 44)):
        if B <= trunc:
            part = extract_progression(c9, A, B)
            checks.append((f"c9({A}n+{B}) == 0", part, _zero_like(part), m))
    return checks


def _build_c9_extraction(trunc, m):
    # sum c9(8n+4) q^n == A(q) / (A(q^4) - q B(q^8)) * [C(q^4)B(q^4) + q D(q^2)A(q^2)]
    m = m or 2
    n = (trunc - 4) // 8
    g = lambda name, k: _t3(name, k, n, m)
    bracket = mul(g("C", 4), g("B", 4)) + mul(g("D", 2), g("A", 2)).shift(1)
    rhs = mul(mul(g("A", 1), reciprocal(g("A", 4) - g("B", 8).shift(1))), bracket)
    sub = extract_progression(c_t_series(9, trunc, m), 8, 4).truncate(n)
    return [("sum c9(8n+4) q^n == A(q) bracket / (A(q^4) - q B(q^8))", sub, rhs, m)]


def _build_tpn(trunc, m):
    lhs = false_theta_psi(_psi(-1, 2, 1, 1), trunc)
    return [
        ("Psi(-q^2,q) = (q;q)_inf (1 - 2 sum (-1)^(j+1) M_2j)", _maybe_mod(lhs, m),
         _maybe_mod(mex._tpn_rhs_mex_form(trunc), m), m),
        ("explicit double sum form", _maybe_mod(lhs, m), _maybe_mod(mex._tpn_rhs_double_sum(trunc), m), m),
    ]


def _build_rank_zero(trunc, m):
    counts = make_series(((n, mex.rank_zero_count(n)) for n in range(trunc + 1)), trunc)
    psi = false_theta_psi(_psi(-1, 2, -1, 1), trunc)
    gf = mul(psi - 1, reciprocal(eta_factor(1, trunc)))
    return [("(Psi(-q^2,-q) - 1)/(q;q)_inf = rank-0 counts", _maybe_mod(gf, m), _maybe_mod(counts, m), m)]


REGISTRY: dict[str, RegistryEntry] = {
    e.identity_id: e
    for e in (
        RegistryEntry("rlnpsi", "Psi(q^3,q) = sum_{n>=0} (q;q^2)_n q^n / (-q;q^2)_{n+1}", None, _build_rlnpsi, 300,
                      discrepancy="rlnpsi_base"),
        RegistryEntry("rlnpsi_rescaled", "Psi(q^12,q^4) = sum_{n>=0} (q;q^2)_n q^n / (-q;q^2)_{n+1}", None,
                      _build_rlnpsi_rescaled, 300, discrepancy="rlnpsi_base"),
        RegistryEntry("cubeeq", "f1^3 = sum (-1)^n (2n+1) q^(n(n+1)/2) == sum q^(n(n+1)/2) mod 2", None,
                      _build_cubeeq, 2000, congruence_mod=2),
        RegistryEntry("f1f5", "f1 f5 == f1^6 + q f5^6 (mod 2)", 2, _build_f1f5, 2000),
        RegistryEntry("xia_yao", "f3^3/f1 == f1^8 + q f3^12/f1^4 (mod 2)", 2, _build_xia_yao, 2000),
        RegistryEntry("robbins_3core", "f3^3/f1 == sum_{n in Z} q^(n(3n-2)) (mod 2)", 2, _build_robbins, 2000),
        RegistryEntry("bailey_theta_dissection", "f(q^a,q^b) = f(q^(a+3b),q^(3a+b)) + q^b f(q^(3a+5b),q^(a-b)), "
                      "all 0 <= b < a <= 10", None, _build_bailey, 400),
        RegistryEntry("thm1_main", "sum c5(2n+1) q^n == sum_{n in Z} q^(n(3n-2)) (mod 2); "
                      "c5(10n+5), c5(10n+9), c5(8n+5) even", 2, _build_c5_mod2, 20000, discrepancy="c5_label"),
        RegistryEntry("thm2_main", "c5(32n+31) == 0 (mod 4)", 4, _build_c5_mod4, 20000),
        RegistryEntry("thm2_dissections", "Psi(-q^5,q) = A(q^8) - qB(q^4), B = F(q^8) + qG(q^4), "
                      "G = F(q^8) - qG(q^4)", None, _build_c5_dissections, 2000),
        RegistryEntry("thm2_squares", "A^2 == F^2, B^2 == G^2 (mod 4); F^2 == H(q^2) + 2qI(q^2)", 4,
                      _build_c5_squares, 2000, congruence_mod=2),
        RegistryEntry("thm3_dissections", "Psi(-q^9,q) = A(q^4) - qB(q^8), A = C(q^8) + q^3 D(q^4)", None,
                      _build_c9_dissections, 2000, discrepancy="c9_missing_q"),
        RegistryEntry("thm3_bridge", "C(q^4)B(q^4) + q D(q^2)A(q^2) == A(q)D(q) (mod 2)", 2,
                      _build_c9_bridge, 2000),
        RegistryEntry("thm3_eta", "f4^2 f5^2 f20 + q f1^2 f10^6 == f1 f2 f5 f10^3 (mod 2)", 2,
                      _build_c9_eta, 2000),
        RegistryEntry("thm3_extraction", "sum c9(8n+4) q^n == A(q)[C(q^4)B(q^4) + qD(q^2)A(q^2)]"
                      "/(A(q^4) - qB(q^8)) (mod 2)", 2, _build_c9_extraction, 16000),
        RegistryEntry("thm3_main", "sum c9(8n+4) q^n == Psi(-q^14,-q^6) (mod 2) and its progressions", 2,
                      _build_c9_main, 16000, discrepancy="c9_missing_q"),
        RegistryEntry("tpn_theorem", "Psi(-q^2,q) = (q;q)_inf (1 - 2(M_2 - M_4 + M_6 - ...))", None,
                      _build_tpn, 200),
        RegistryEntry("rank_zero", "(Psi(-q^2,-q) - 1)/(q;q)_inf generates rank-0 partitions", None,
                      _build_rank_zero, 60, max_trunc=400, discrepancy="rank0_sign"),
    )
}


def registry_ids() -> list[str]:
    return list(REGISTRY)


def verify_registry_identity(identity_id: str, trunc: int | None = None,
                             modulus: int | None = None) -> IdentityReport:
    """Build both sides of a registered identity and compare to ``trunc``.

    Exact identities compare exactly unless ``modulus`` is given. Congruences
    compare modulo their own modulus; an override must divide it.
    """
    try:
        entry = REGISTRY[identity_id]
    except KeyError:
        raise KeyError(f"unknown identity {identity_id!r}; known: {', '.join(REGISTRY)}") from None
    if trunc is None:
        trunc = entry.default_trunc
    if trunc < 0:
        raise ValueError("trunc must be non-negative")
    if entry.max_trunc is not None and trunc > entry.max_trunc:
        raise ValueError(f"{identity_id} is limited to trunc <= {entry.max_trunc}")
    if modulus is not None and modulus < 2:
        raise ValueError("modulus must be at least 2")
    if modulus is not None and entry.congruence_mod is not None and entry.congruence_mod % modulus:
        raise ValueError(f"{identity_id} is a congruence mod {entry.congruence_mod}; it says nothing mod {modulus}")
    with timed() as clock:
        checks = entry.build(trunc, modulus)
        failures = []
        for label, lhs, rhs, m in checks:
            m = modulus or m
            if m is None:
                ok, first = series_equal(lhs, rhs)
            else:
                ok, first = congruent(lhs, rhs, m)
            if not ok:
                failures.append((first, label))
    first = min(failures)[0] if failures else None
    report = IdentityReport(
        identity_id, trunc, modulus or entry.modulus or "exact",
        "verified" if not failures else "failed", first, clock[0],
        details={"checks": len(checks), "failed_checks": [lab for _, lab in sorted(failures)]})
    if entry.discrepancy:
        flag(entry.discrepancy, report)
    return report


def printed_c9_dissection_holds(trunc: int = 200) -> bool:
    """Whether ``Psi(-q^9,q) = Psi(-q^28,-q^12) - Psi(-q^32,-q^8)`` holds as printed,
    i.e. without the factor q on the second term."""
    lhs = false_theta_psi(_psi(-1, 9, 1, 1), trunc)
    rhs = false_theta_psi(_psi(-1, 28, -1, 12), trunc) - false_theta_psi(_psi(-1, 32, -1, 8), trunc)
    return series_equal(lhs, rhs)[0]


# ---------------------------------------------------------------------------
# telescoping
# ---------------------------------------------------------------------------

def _support_step(s: Series) -> int:
    """gcd of the exponents carrying nonzero coefficients (0 for the zero series)."""
    from math import gcd
    g = 0
    for e, _ in s.items():
        g = gcd(g, e)
    return g


def telescoped_inverse_check(spec: ThetaSpec, levels: int, modulus: int | None, trunc: int) -> IdentityReport:
    """Write ``spec = X - Y`` via its dissection and check

    ``(X - Y) * prod_{i<levels} (X^(2^i) + Y^(2^i)) = X^(2^levels) - Y^(2^levels)``

    and ``1/(X - Y) = prod(...) / (X^(2^levels) - Y^(2^levels))``, mod ``modulus``
    (exactly when it is None). The report also records the exponent step on
    which the telescoped denominator is supported.
    """
    if levels < 1:
        raise ValueError("levels must be at least 1")
    with timed() as clock:
        d = dissect_false_theta(spec)
        even, odd = expand_dissection(d, trunc)
        X = _maybe_mod(even, modulus)
        Y = _maybe_mod(-odd, modulus)
        lhs_spec = _maybe_mod(false_theta_psi(spec, trunc), modulus)
        numer = X + Y
        Xp, Yp = X, Y
        for _ in range(1, levels):
            Xp, Yp = mul(Xp, Xp), mul(Yp, Yp)
            numer = mul(numer, Xp + Yp)
        top = 1 << levels
        denom = mul(Xp, Xp) - mul(Yp, Yp)
        cmp = (lambda a, b: series_equal(a, b)) if modulus is None else (lambda a, b: congruent(a, b, modulus))
        results = [
            ("spec = X - Y", cmp(lhs_spec, X - Y)),
            ("telescoped product", cmp(mul(X - Y, numer), denom)),
            ("inverse", cmp(reciprocal(lhs_spec), mul(numer, reciprocal(denom)))),
        ]
    bad = [(r[1], lab) for lab, r in results if not r[0]]
    first = min(bad)[0] if bad else None
    return IdentityReport(
        f"telescope {spec} levels={levels}", trunc, modulus or "exact",
        "verified" if not bad else "failed", first, clock[0],
        details={"power": top, "denominator_support_step": _support_step(denom),
                 "failed_checks": [lab for _, lab in sorted(bad)]})
