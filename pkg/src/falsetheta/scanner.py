"""Search for and check congruences ``coeff(An+B) == 0 (mod m)``.

Everything here certifies "holds up to N" and nothing more. The
quadratic-form helpers explain where the progressions for c5 and c9 come
from: a coefficient can only be odd at indices the relevant form represents.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from . import _kernels
from .series import IntSeries, ModSeries, reduce_mod

__all__ = [
    "Progression",
    "QuadFormSpec",
    "ResidueAnalysis",
    "ConjectureEntry",
    "ConjectureReport",
    "scan_progressions",
    "quadform_residue_analysis",
    "representability_progressions",
    "c5_odd_progressions",
    "CONJECTURES",
    "check_conjecture",
    "worker_count",
]

Series = Union[IntSeries, ModSeries]


@dataclass(frozen=True, order=True)
class Progression:
    """``coeff(A n + B) == 0 (mod modulus)`` for every ``A n + B <= verified_upto``."""

    A: int
    B: int
    modulus: int
    verified_upto: int = field(default=-1, compare=False)

    def __post_init__(self):
        if self.A < 1 or not 0 <= self.B < self.A:
            raise ValueError(f"need A >= 1 and 0 <= B < A, got ({self.A}, {self.B})")
        if self.modulus < 2:
            raise ValueError("modulus must be at least 2")

    def holds_in(self, series: Series, upto: int | None = None) -> tuple[bool, int | None]:
        """Direct lookup; returns (ok, first index An+B with a nonzero residue)."""
        upto = series.trunc if upto is None else upto
        if upto > series.trunc:
            raise ValueError(f"series is only exact to {series.trunc}")
        for idx in range(self.B, upto + 1, self.A):
            if series[idx] % self.modulus:
                return False, idx
        return True, None

    def to_dict(self) -> dict:
        return {"A": self.A, "B": self.B, "mod": self.modulus, "verified_upto": self.verified_upto}

    def __str__(self) -> str:
        return f"{self.A}n+{self.B} (mod {self.modulus})"


def worker_count() -> int:
    """Thread cap from ``FALSETHETA_THREADS`` (default: CPU count, at most 8)."""
    raw = os.environ.get("FALSETHETA_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            raise ValueError(f"FALSETHETA_THREADS must be an integer, got {raw!r}") from None
    return min(8, os.cpu_count() or 1)


def _residue_array(series: Series, modulus: int | None) -> tuple[np.ndarray, int]:
    if isinstance(series, ModSeries):
        if modulus is not None and modulus != series.modulus:
            series = reduce_mod(series, modulus)
        return np.asarray(series.coeffs), series.modulus
    if modulus is None:
        raise ValueError("an integer series needs an explicit modulus")
    return np.asarray(reduce_mod(series, modulus).coeffs), modulus


def scan_progressions(series: Series, A_max: int, min_hits: int = 50,
                      modulus: int | None = None, threads: int | None = None) -> list[Progression]:
    """All minimal progressions ``(A, B)`` with ``A <= A_max`` on which the
    series vanishes mod m, sorted by ``(A, B)``.

    ``(A, B)`` is left out when some reported ``(A', B')`` with ``A'`` a
    proper divisor of ``A`` and ``B == B' (mod A')`` already covers it.
    """
    values, m = _residue_array(series, modulus)
    if A_max < 1:
        raise ValueError("A_max must be positive")
    if min_hits < 1:
        raise ValueError("min_hits must be positive")
    need = min_hits * A_max - 1
    trunc = values.shape[0] - 1
    if trunc < need:
        raise ValueError(f"trunc {trunc} too small: A_max={A_max} with min_hits={min_hits} "
                         f"needs trunc >= {need}")
    if not values.any():
        raise ValueError("the series is identically zero mod m; every progression would match")

    workers = threads or worker_count()
    moduli = range(1, A_max + 1)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            masks = list(pool.map(lambda A: _kernels.zero_classes(values, A), moduli))
    else:
        masks = [_kernels.zero_classes(values, A) for A in moduli]

    found: list[Progression] = []
    for A, mask in zip(moduli, masks):
        for B in np.flatnonzero(mask):
            B = int(B)
            if any(A % p.A == 0 and B % p.A == p.B for p in found):
                continue
            found.append(Progression(A, B, m, trunc))
    return sorted(found)


@dataclass(frozen=True)
class QuadFormSpec:
    """The map ``n -> alpha n^2 + beta n`` on the integers."""

    alpha: int
    beta: int

    def __post_init__(self):
        if self.alpha == 0:
            raise ValueError("alpha must be nonzero")

    def __call__(self, n: int) -> int:
        return self.alpha * n * n + self.beta * n

    def __str__(self) -> str:
        b = f" + {self.beta}n" if self.beta >= 0 else f" - {-self.beta}n"
        return f"{self.alpha}n^2{b}"


@dataclass(frozen=True)
class ResidueAnalysis:
    form: QuadFormSpec
    modulus: int
    attained: tuple[int, ...]
    avoided: tuple[int, ...]
    # j -> whether (4 alpha j + beta^2) is a square mod p; only for odd p coprime to alpha
    square_criterion: dict | None = None


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def quadform_residue_analysis(form: QuadFormSpec, p: int) -> ResidueAnalysis:
    """Residues mod ``p`` taken by the form, and those it misses.

    The values mod p depend only on n mod p, so enumerating one period is
    exact for any modulus (including powers of 2). For an odd prime p not
    dividing alpha, completing the square also decides each residue: j is
    attained iff ``4 alpha j + beta^2`` is a square mod p. That criterion is
    reported alongside and must agree with the enumeration.
    """
    if p < 2:
        raise ValueError("modulus must be at least 2")
    attained = sorted({form(n) % p for n in range(p)})
    avoided = tuple(j for j in range(p) if j not in set(attained))
    criterion = None
    if p % 2 == 1 and _is_prime(p) and form.alpha % p:
        squares = {x * x % p for x in range(p)}
        criterion = {j: (4 * form.alpha * j + form.beta ** 2) % p in squares for j in range(p)}
        if {j for j, ok in criterion.items() if ok} != set(attained):
            raise AssertionError("completed-square criterion disagrees with enumeration")
    return ResidueAnalysis(form, p, tuple(attained), avoided, criterion)


def representability_progressions(form: QuadFormSpec, outer: tuple[int, int], moduli: Iterable[int],
                                  series: Series | None = None,
                                  modulus: int = 2) -> list[Progression]:
    """Progressions inside ``outer = (A0, B0)`` on which the form has no representative.

    If ``coeff(A0 n + B0)`` can be nonzero only when n is a value of the form,
    then for every residue j the form misses mod m, ``A0 m n + (A0 j + B0)``
    is a zero progression. When ``series`` is given each one is checked
    against it and a failure raises.
    """
    A0, B0 = outer
    out = []
    for m in moduli:
        for j in quadform_residue_analysis(form, m).avoided:
            prog = Progression(A0 * m, A0 * j + B0, modulus,
                               series.trunc if series is not None else -1)
            if series is not None:
                ok, witness = prog.holds_in(series)
                if not ok:
                    raise AssertionError(f"{prog} fails at index {witness}")
            out.append(prog)
    return out


def c5_odd_progressions(p: int) -> list[Progression]:
    """Zero progressions of c5 mod 2 implied by ``3n^2 - 2n`` missing residues mod p.

    ``c5(2N+1)`` is odd only when N = n(3n-2); N = pn + j with j missed gives
    index ``2(pn + j) + 1``.
    """
    analysis = quadform_residue_analysis(QuadFormSpec(3, -2), p)
    return [Progression(2 * p, 2 * j + 1, 2) for j in analysis.avoided]


# ---------------------------------------------------------------------------
# conjecture tables
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConjectureEntry:
    t: int
    A: int
    B: int
    modulus: int
    status: str
    first_counterexample: int | None
    checked_upto: int

    def to_dict(self) -> dict:
        return {"t": self.t, "A": self.A, "B": self.B, "mod": self.modulus, "status": self.status,
                "first_counterexample": self.first_counterexample, "checked_upto": self.checked_upto}


@dataclass
class ConjectureReport:
    conjecture_id: str
    trunc: int
    entries: list[ConjectureEntry]
    label: str = "empirical"

    @property
    def ok(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    def to_dict(self) -> dict:
        return {"conjecture": self.conjecture_id, "trunc": self.trunc, "label": self.label,
                "status": "pass" if self.ok else "fail", "entries": [e.to_dict() for e in self.entries]}


# (t, modulus, A, B)
CONJECTURES: dict[str, tuple[tuple[int, int, int, int], ...]] = {
    "c9_c13_c17_mod2": (
        (9, 2, 36, 14), (9, 2, 196, 54), (9, 2, 196, 166), (9, 2, 196, 194),
        (13, 2, 32, 23), (13, 2, 64, 63), (13, 2, 72, 15), (13, 2, 72, 21), (13, 2, 72, 39), (13, 2, 72, 69),
        (17, 2, 128, 80),
    ),
    "c5_mod4_mod8": (
        (5, 8, 32, 31), (5, 8, 128, 123), (5, 8, 512, 491),
        (5, 4, 64, 19), (5, 4, 256, 75),
        *((5, 4, 196, 7 * j + 5) for j in (2, 6, 10, 14, 15, 19, 22, 26, 27)),
    ),
}


def check_conjecture(conjecture_id: str, trunc: int,
                     extra: Iterable[tuple[int, int, int, int]] = ()) -> ConjectureReport:
    """Check each table entry ``c_t(An+B) == 0 (mod m)`` up to ``trunc``.

    ``extra`` appends further ``(t, m, A, B)`` rows, e.g. a deliberately
    wrong one as a negative control.
    """
    from .identities import c_t_series

    try:
        table = CONJECTURES[conjecture_id]
    except KeyError:
        raise KeyError(f"unknown conjecture {conjecture_id!r}; known: {', '.join(CONJECTURES)}") from None
    rows = list(table) + list(extra)
    largest = max(A for _, _, A, _ in rows)
    if trunc < 10 * largest:
        raise ValueError(f"trunc must be at least {10 * largest} (10 x the largest progression modulus)")
    entries = []
    for t, m, A, B in rows:
        series = c_t_series(t, trunc, m)
        ok, witness = Progression(A, B, m).holds_in(series)
        entries.append(ConjectureEntry(t, A, B, m, "pass" if ok else "fail", witness, trunc))
    return ConjectureReport(conjecture_id, trunc, entries)
