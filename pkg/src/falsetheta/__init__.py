"""Exact truncated q-series for theta and false theta functions, their
reciprocals and eta-products, with congruence and identity checks."""

from .asymptotics import (c2_by_recurrence, bounding_sequences, growth_ratio, largest_real_root,
                          pentagonal_compositions, sandwich_holds)
from .identities import (Dissection, c_t_series, dissect_false_theta, telescoped_inverse_check,
                         verify_dissection, verify_registry_identity)
from .mex import mex_count_oracle, mex_gf, rank_zero_check, truncated_pentagonal_diff, verify_tpn_theorem
from .report import IdentityReport, SourceDiscrepancyWarning
from .scanner import (Progression, QuadFormSpec, check_conjecture, quadform_residue_analysis,
                      representability_progressions, scan_progressions)
from .series import (IntSeries, ModSeries, NonUnitConstantError, congruent, extract_progression, interleave,
                     make_series, mul, one, power, reciprocal, reduce_mod, series_equal, substitute_qk, zero)
from .theta import (EtaProductSpec, SpecParseError, ThetaSpec, eta_product, expand_theta, false_theta_psi,
                    gaussian_binomial, jtp_product, parse_eta, parse_theta, partition_gf, pochhammer, theta_f)

__version__ = "0.1.0"

__all__ = [
    "IntSeries", "ModSeries", "NonUnitConstantError", "make_series", "one", "zero", "mul", "reciprocal",
    "power", "substitute_qk", "extract_progression", "interleave", "reduce_mod", "congruent",
    "series_equal", "ThetaSpec", "EtaProductSpec", "SpecParseError", "parse_theta", "parse_eta",
    "theta_f", "false_theta_psi", "expand_theta", "jtp_product", "pochhammer", "eta_product",
    "gaussian_binomial", "partition_gf", "Dissection", "dissect_false_theta", "verify_dissection",
    "c_t_series", "verify_registry_identity", "telescoped_inverse_check", "IdentityReport",
    "SourceDiscrepancyWarning", "Progression", "QuadFormSpec", "scan_progressions",
    "quadform_residue_analysis", "representability_progressions", "check_conjecture", "c2_by_recurrence",
    "bounding_sequences", "sandwich_holds", "largest_real_root", "growth_ratio", "pentagonal_compositions",
    "mex_gf", "mex_count_oracle", "truncated_pentagonal_diff", "verify_tpn_theorem", "rank_zero_check",
]
