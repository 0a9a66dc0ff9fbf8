"""Exact elliptic expansions of the j-function at the two branching points.

In the scaled disk coordinate every transcendental period cancels: with v
the weight-two unit at the expansion point, the degree-n coefficient of the
expansion is P_n(hats)/n!, where P_n is the n-th `serre_derivative` of the
seed b^3*d and the hats are the four generator values measured in v.

The grading leaves exactly one hat value per point undetermined.  It is
recovered ("calibrated") from the known leading coefficient of each
expansion; every later coefficient is then an independent prediction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .quasimodular import (B, D, DerivationRules, QPolynomial, RAMANUJAN_RULES,
                           serre_derivative)
from .series import TruncatedSeries

HEXAGONAL = "hexagonal"
SQUARE = "square"
POINT_KINDS = (HEXAGONAL, SQUARE)

# The j-function as an element of the generator ring: b^3 * d.
J_SEED = B ** 3 * D

# Leading coefficient of the scaled expansion at each point, the single
# datum the calibration consumes: degree -> value.
CALIBRATION = {
    HEXAGONAL: (3, Fraction(13824)),
    SQUARE: (2, Fraction(20736)),
}

# Index of the generator whose hat value survives at each point (c resp. b);
# a vanishes at both points, as does b resp. c.
_UNKNOWN_INDEX = {HEXAGONAL: 2, SQUARE: 1}
_VANISHING_INDEX = {HEXAGONAL: 1, SQUARE: 2}


class CalibrationError(RuntimeError):
    """The leading-coefficient equation has no consistent rational solution."""


@dataclass(frozen=True)
class CMPointSpec:
    """One expansion point: exact location marker plus calibrated hat values."""

    kind: str
    hat_values: tuple[Fraction, Fraction, Fraction, Fraction]
    vanishing_modulus: int
    calibration_degree: int
    calibration_value: Fraction
    y_star_squared: Fraction  # (Im tau_*)^2, exactly 3/4 or 1

    @property
    def tau_star(self) -> complex:
        """Numeric position in the upper half-plane: exp(pi*i/3) or i."""
        return complex(0.5, self.y_star) if self.kind == HEXAGONAL else 1j

    @property
    def y_star(self) -> float:
        return float(self.y_star_squared) ** 0.5


def _check_point_kind(kind: str) -> str:
    if kind not in POINT_KINDS:
        raise ValueError(f"unknown expansion point {kind!r}; expected one of {POINT_KINDS}")
    return kind


def calibrate(kind: str, rules: DerivationRules = RAMANUJAN_RULES) -> CMPointSpec:
    """Solve for the one unknown hat value from the leading expansion coefficient.

    At each point two generators vanish (a and one of b, c).  Substituting
    those zeros into the calibration-degree derivative must leave a single
    monomial x^p * d, and eliminating d through the discriminant relation
    (b^3 - c^2) * d = 1728 turns the leading-coefficient equation into a
    linear one for x.  Anything else falsifies the normalization scheme and
    raises :class:`CalibrationError`.
    """
    _check_point_kind(kind)
    degree, target = CALIBRATION[kind]
    unknown = _UNKNOWN_INDEX[kind]
    vanishing = (0, _VANISHING_INDEX[kind])

    p = J_SEED
    for _ in range(degree):
        p = serre_derivative(p, rules)
    survivors = {mono: coef for mono, coef in p.terms.items()
                 if all(mono[g] == 0 for g in vanishing)}
    if len(survivors) != 1:
        raise CalibrationError(
            f"calibration failed at the {kind} point: expected one surviving monomial "
            f"after substituting the vanishing generators, found {len(survivors)}")
    (mono, gamma), = survivors.items()
    if mono[3] != 1:
        raise CalibrationError(
            f"calibration failed at the {kind} point: surviving monomial {mono} is not "
            "linear in the reciprocal discriminant")

    # (b^3 - c^2)*d = 1728 with the vanishing generator zeroed out:
    # d = sign * 1728 / x^disc_power.
    disc_power, disc_sign = (3, 1) if unknown == 1 else (2, -1)
    if mono[unknown] - disc_power != 1:
        raise CalibrationError(
            f"calibration failed at the {kind} point: leading-coefficient equation "
            "is not linear in the unknown hat value")
    x = target * factorial(degree) / (gamma * disc_sign * 1728)
    if x == 0:
        raise CalibrationError(f"calibration failed at the {kind} point: zero solution")
    hats = [Fraction(0)] * 4
    hats[unknown] = x
    hats[3] = Fraction(disc_sign * 1728) / x ** disc_power
    hat_values = tuple(hats)

    if p.evaluate(hat_values) / factorial(degree) != target:
        raise CalibrationError(
            f"calibration failed at the {kind} point: solved values do not reproduce "
            "the leading coefficient")
    if (hat_values[1] ** 3 - hat_values[2] ** 2) * hat_values[3] != 1728:
        raise CalibrationError(
            f"calibration failed at the {kind} point: discriminant relation violated")

    return CMPointSpec(
        kind=kind,
        hat_values=hat_values,  # type: ignore[arg-type]
        vanishing_modulus=3 if kind == HEXAGONAL else 2,
        calibration_degree=degree,
        calibration_value=target,
        y_star_squared=Fraction(3, 4) if kind == HEXAGONAL else Fraction(1),
    )


_DEFAULT_SPECS: dict[str, CMPointSpec] = {}


def cm_point(kind: str) -> CMPointSpec:
    """Calibrated spec for the given point under the default derivation rules."""
    _check_point_kind(kind)
    if kind not in _DEFAULT_SPECS:
        _DEFAULT_SPECS[kind] = calibrate(kind)
    return _DEFAULT_SPECS[kind]


def derivative_tower(order: int,
                     rules: DerivationRules = RAMANUJAN_RULES) -> list[QPolynomial]:
    """P_0 .. P_order, checking each is homogeneous of weight 2n."""
    tower = [J_SEED]
    for _ in range(order):
        tower.append(serre_derivative(tower[-1], rules))
    for n, p in enumerate(tower):
        if p and p.weight() != 2 * n:
            raise ValueError(
                f"derivation does not raise weight by two: P_{n} has weight {p.weight()}")
    return tower


def elliptic_j_series(point: str | CMPointSpec, order: int,
                      rules: DerivationRules = RAMANUJAN_RULES) -> TruncatedSeries:
    """Scaled disk expansion of j at the point, exact through the given order."""
    if order < 0:
        raise ValueError("order must be non-negative")
    if isinstance(point, CMPointSpec):
        spec = point
    elif rules is RAMANUJAN_RULES:
        spec = cm_point(point)
    else:
        spec = calibrate(point, rules)
    tower = derivative_tower(order, rules)
    coeffs = [tower[n].evaluate(spec.hat_values) / factorial(n)
              for n in range(order + 1)]
    return TruncatedSeries(0, coeffs, order)
