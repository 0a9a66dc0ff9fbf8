"""Independent oracles: exact q-expansions and floating-point evaluation.

Nothing here feeds the exact pipeline; these routines exist so that its
outputs can be cross-checked along a completely different route (classical
q-expansions, numeric evaluation of j on the upper half-plane, and the
gamma-function periods that make the scaled disk coordinate concrete).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .elliptic import HEXAGONAL, SQUARE, _check_point_kind
from .series import TruncatedSeries

# Truncation used by the numeric evaluator.  With Im(tau) >= 0.5 we have
# |q| <= e^{-pi}, and the 40-term tail of the j-expansion is far below
# double-precision resolution.
Q_SERIES_CUTOFF = 40
MIN_IMAG = 0.5

# Exact arithmetic gives 21493760 for the q^2 coefficient of j; the value
# 21393760 circulates in some printed tables and is flagged, not asserted.
J_Q2_MISQUOTED = 21393760

TAU_STAR = {
    HEXAGONAL: complex(0.5, math.sqrt(3) / 2),
    SQUARE: 1j,
}
IM_TAU_STAR = {kind: tau.imag for kind, tau in TAU_STAR.items()}


def divisor_sigma(k: int, n: int) -> int:
    """Sum of d^k over the divisors d of n, by trial division up to sqrt(n)."""
    if k < 1 or n < 1:
        raise ValueError("divisor_sigma needs k >= 1 and n >= 1")
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d ** k
            partner = n // d
            if partner != d:
                total += partner ** k
        d += 1
    return total


_EISENSTEIN = {2: (-24, 1), 4: (240, 3), 6: (-504, 5)}


def eisenstein_qexp(weight: int, order: int) -> TruncatedSeries:
    """q-expansion 1 + factor * sum sigma_{weight-1}(n) q^n, exact."""
    if weight not in _EISENSTEIN:
        raise ValueError("eisenstein_qexp supports weights 2, 4 and 6")
    if order < 0:
        raise ValueError("order must be non-negative")
    factor, power = _EISENSTEIN[weight]
    coeffs = [Fraction(1)]
    coeffs += [Fraction(factor * divisor_sigma(power, n)) for n in range(1, order + 1)]
    return TruncatedSeries(0, coeffs, order)


def delta_qexp(order: int) -> TruncatedSeries:
    """Discriminant cusp form (E4^3 - E6^2)/1728 = q - 24q^2 + 252q^3 - ..."""
    e4 = eisenstein_qexp(4, order)
    e6 = eisenstein_qexp(6, order)
    return (e4 ** 3 - e6 ** 2) / 1728


def j_qexp(order: int) -> TruncatedSeries:
    """Laurent q-expansion of j = E4^3 / Delta, valuation -1, exact through q^order."""
    if order < -1:
        raise ValueError("order must be at least -1")
    # Delta's simple zero costs two orders on inversion; build with headroom.
    work = order + 2
    e4 = eisenstein_qexp(4, work)
    return e4 ** 3 / delta_qexp(work)


def q_derivative(series: TruncatedSeries) -> TruncatedSeries:
    """Apply q*d/dq: multiply each coefficient by its exponent."""
    coeffs = [n * c for n, c in
              zip(range(series.valuation, series.truncation + 1), series.coefficients)]
    return TruncatedSeries(series.valuation, coeffs, series.truncation)


@lru_cache(maxsize=1)
def _j_float_window() -> tuple[int, tuple[float, ...]]:
    series = j_qexp(Q_SERIES_CUTOFF)
    return series.valuation, tuple(float(c) for c in series.coefficients)


def j_numeric(tau: complex) -> complex:
    """Evaluate j at a point of the upper half-plane in double precision.

    Requires Im(tau) >= 0.5; callers must reduce toward the fundamental
    domain themselves.
    """
    tau = complex(tau)
    if tau.imag < MIN_IMAG:
        raise ValueError("j_numeric requires Im(tau) >= 0.5")
    q = cmath.exp(2j * math.pi * tau)
    valuation, coeffs = _j_float_window()
    acc = 0j
    for coeff in reversed(coeffs):
        acc = acc * q + coeff
    return acc * q ** valuation


@dataclass(frozen=True)
class OmegaConstant:
    """Gamma-expression period making the scaled disk coordinate concrete."""

    kind: str
    value: float


def omega(kind: str) -> OmegaConstant:
    """Period constant: (1/sqrt(6 pi)) (G(1/3)/G(2/3))^{3/2} or (1/sqrt(8 pi)) G(1/4)/G(3/4)."""
    _check_point_kind(kind)
    if kind == HEXAGONAL:
        value = (math.gamma(1 / 3) / math.gamma(2 / 3)) ** 1.5 / math.sqrt(6 * math.pi)
    else:
        value = (math.gamma(0.25) / math.gamma(0.75)) / math.sqrt(8 * math.pi)
    return OmegaConstant(kind, value)


def disk_scale(kind: str) -> float:
    """The rescaling factor 2*pi*Omega^2 between the plain and scaled coordinates."""
    return 2 * math.pi * omega(kind).value ** 2


def uniformizer(kind: str, z: complex, *, inverse: bool = False,
                scaled: bool = False) -> complex:
    """Moebius maps between the upper half-plane and the unit disk at tau_*.

    Forward: S(tau) = (tau - tau_*)/(tau - conj(tau_*)), optionally rescaled
    by 2*pi*Omega^2.  Inverse: S^{-1}(w) = (tau_* - conj(tau_*) w)/(1 - w),
    unscaling w first when ``scaled``.
    """
    _check_point_kind(kind)
    tau_star = TAU_STAR[kind]
    z = complex(z)
    if inverse:
        if scaled:
            z = z / disk_scale(kind)
        if abs(z) >= 1:
            raise ValueError("inverse uniformizer needs |w| < 1 (after unscaling)")
        return (tau_star - tau_star.conjugate() * z) / (1 - z)
    if z.imag <= 0:
        raise ValueError("forward uniformizer needs a point of the upper half-plane")
    w = (z - tau_star) / (z - tau_star.conjugate())
    return w * disk_scale(kind) if scaled else w
