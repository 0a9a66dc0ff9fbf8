"""Closed-form target series: the one-parameter family j-formulas.

Hexagonal point (Hesse cubic family x^3 + y^3 + z^3 + 3t*xyz = 0):

    j = 27 t^3 ((8 - t^3) / (1 + t^3))^3

Square point (quartic family, parameter entering through t^2):

    j = (192 + 256 t^2) ((3 + 4 t^2) / (1 - 4 t^2))^2
      = 64 (3 + 4 t^2)^3 / (1 - 4 t^2)^2

Both are expanded from their factored form so every factor can be audited
term by term.
"""

from __future__ import annotations

from fractions import Fraction

from .elliptic import HEXAGONAL, SQUARE, _check_point_kind
from .series import TruncatedSeries, as_rational


def closed_form_series(point: str, order: int) -> TruncatedSeries:
    """Exact expansion of the family j-formula through the given order."""
    _check_point_kind(point)
    if order < 0:
        raise ValueError("order must be non-negative")
    if point == HEXAGONAL:
        prefactor = TruncatedSeries.monomial(27, 3, order)
        numerator = TruncatedSeries.from_terms({0: 8, 3: -1}, order)
        denominator = TruncatedSeries.from_terms({0: 1, 3: 1}, order)
        return prefactor * numerator ** 3 * denominator ** -3
    prefactor = TruncatedSeries.from_terms({0: 192, 2: 256}, order)
    numerator = TruncatedSeries.from_terms({0: 3, 2: 4}, order)
    denominator = TruncatedSeries.from_terms({0: 1, 2: -4}, order)
    return prefactor * numerator ** 2 * denominator ** -2


def hesse_j(t: int | Fraction) -> Fraction:
    """j-invariant of the Hesse pencil member with parameter t."""
    t = as_rational(t)
    cube = t ** 3
    if cube == -1:
        raise ZeroDivisionError(
            "hesse_j has a pole at t^3 = -1 (degenerate member of the pencil)")
    return 27 * cube * ((8 - cube) / (1 + cube)) ** 3
