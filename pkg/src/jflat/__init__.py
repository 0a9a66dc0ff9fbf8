"""Exact elliptic expansions of Klein's j-function at the hexagonal and
square points, with flat-coordinate series and an identity verifier."""

from .series import Rational, SeriesError, TruncatedSeries, format_rational, parse_rational
from .quasimodular import (DerivationRules, MixedWeightError, QPolynomial,
                           RAMANUJAN_RULES, serre_derivative)
from .elliptic import (CalibrationError, CMPointSpec, HEXAGONAL, POINT_KINDS,
                       SQUARE, calibrate, cm_point, derivative_tower,
                       elliptic_j_series)
from .flatcoord import (CUBIC, CurveKind, QUARTIC, flat_ratio, g_series,
                        h_series, multifactorial)
from .closedform import closed_form_series, hesse_j
from .numerics import (OmegaConstant, delta_qexp, divisor_sigma, eisenstein_qexp,
                       j_numeric, j_qexp, omega, uniformizer)
from .verify import (Mismatch, SuiteResult, VerificationReport, composed_series,
                     run_expand, run_selftest, run_verify)

__version__ = "0.1.0"

__all__ = [
    "Rational", "SeriesError", "TruncatedSeries", "format_rational", "parse_rational",
    "DerivationRules", "MixedWeightError", "QPolynomial", "RAMANUJAN_RULES",
    "serre_derivative",
    "CalibrationError", "CMPointSpec", "HEXAGONAL", "POINT_KINDS", "SQUARE",
    "calibrate", "cm_point", "derivative_tower", "elliptic_j_series",
    "CUBIC", "CurveKind", "QUARTIC", "flat_ratio", "g_series", "h_series",
    "multifactorial",
    "closed_form_series", "hesse_j",
    "OmegaConstant", "delta_qexp", "divisor_sigma", "eisenstein_qexp",
    "j_numeric", "j_qexp", "omega", "uniformizer",
    "Mismatch", "SuiteResult", "VerificationReport", "composed_series",
    "run_expand", "run_selftest", "run_verify",
    "__version__",
]
