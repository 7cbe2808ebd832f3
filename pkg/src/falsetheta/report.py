"""Verification reports and recorded discrepancies in published statements."""

from __future__ import annotations

import time
import warnings
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any


@dataclass
class IdentityReport:
    """Outcome of checking one identity or congruence up to ``trunc``.

    ``modulus`` is an integer for congruences and ``"exact"`` otherwise.
    ``status`` is ``"failed"`` exactly when ``first_mismatch`` is set.
    """

    identity_id: str
    trunc: int
    modulus: int | str
    status: str
    first_mismatch: int | None = None
    elapsed: float = 0.0
    label: str = "verified-to-bound"
    details: dict[str, Any] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)

    def __post_init__(self):
        if self.status not in ("verified", "failed"):
            raise ValueError(f"bad status {self.status!r}")
        if (self.status == "failed") != (self.first_mismatch is not None):
            raise ValueError("status 'failed' requires a first mismatch and vice versa")

    @property
    def ok(self) -> bool:
        return self.status == "verified"

    def to_dict(self, timing: bool = False) -> dict[str, Any]:
        out = {
            "identity": self.identity_id,
            "trunc": self.trunc,
            "modulus": self.modulus,
            "status": self.status,
            "first_mismatch": self.first_mismatch,
            "label": self.label,
        }
        if self.details:
            out["details"] = self.details
        if self.warnings:
            out["warnings"] = list(self.warnings)
        if timing:
            out["elapsed"] = round(self.elapsed, 6)
        return out


@contextmanager
def timed():
    """Yields a one-element list that holds the elapsed seconds on exit."""
    box = [0.0]
    start = time.perf_counter()
    try:
        yield box
    finally:
        box[0] = time.perf_counter() - start


class SourceDiscrepancyWarning(UserWarning):
    """A published statement that disagrees with its own derivation; the
    computation follows the derivation."""


@dataclass(frozen=True)
class Discrepancy:
    key: str
    context: str
    printed: str
    adopted: str
    reason: str

    def message(self) -> str:
        return (f"[{self.key}] {self.context}: printed '{self.printed}', "
                f"using '{self.adopted}' ({self.reason})")


DISCREPANCIES: dict[str, Discrepancy] = {
    d.key: d
    for d in (
        Discrepancy(
            key="c5_label",
            context="odd-index congruences for 1/Psi(-q^5,q)",
            printed="c_2(10n+5) and c_2(10+9)",
            adopted="c_5(10n+5) and c_5(10n+9)",
            reason="the statement is about c_5 and the residues j=2,4 mod 5 give 2(5n+j)+1",
        ),
        Discrepancy(
            key="c9_missing_q",
            context="dissection of Psi(-q^9,q)",
            printed="Psi(-q^28,-q^12) - Psi(-q^32,-q^8)",
            adopted="Psi(-q^28,-q^12) - q*Psi(-q^32,-q^8)",
            reason="the definition A(q^4) - q B(q^8) and the false theta dissection both carry the factor q",
        ),
        Discrepancy(
            key="rank0_sign",
            context="rank-zero generating function",
            printed="(Psi(-q^2,-q) - 1)/(q;q)_inf",
            adopted="(Psi(-q^2,-q) - 1)/(q;q)_inf, as printed",
            reason="neighbouring identities use Psi(-q^2,q); the rank oracle decides which sign is right",
        ),
        Discrepancy(
            key="rlnpsi_base",
            context="lost notebook false theta identity",
            printed="Psi(q^3,q) = sum (q;q^2)_n q^n/(-q;q^2)_{n+1}",
            adopted="Psi(q^12,q^4) = sum (q;q^2)_n q^n/(-q;q^2)_{n+1}",
            reason="with Psi as defined the sum equals sum (-1)^n q^(2n(n+1)), which is Psi(q^3,q) at q^4",
        ),
    )
}


def flag(key: str, report: IdentityReport | None = None) -> Discrepancy:
    """Emit the structured warning for ``key`` and attach it to ``report``."""
    d = DISCREPANCIES[key]
    warnings.warn(d.message(), SourceDiscrepancyWarning, stacklevel=2)
    if report is not None and key not in report.warnings:
        report.warnings.append(key)
    return d
