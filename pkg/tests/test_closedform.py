from fractions import Fraction as F

import pytest

from jflat.closedform import closed_form_series, hesse_j
from jflat.elliptic import HEXAGONAL, SQUARE
from jflat.series import TruncatedSeries


def test_hexagonal_prefix():
    series = closed_form_series(HEXAGONAL, 15)
    expected = {3: 13824, 6: -46656, 9: 99144, 12: -171315, 15: 263169}
    for degree in range(16):
        assert series[degree] == expected.get(degree, 0)


def test_square_prefix():
    series = closed_form_series(SQUARE, 8)
    expected = {0: 1728, 2: 20736, 4: 147456, 6: 851968, 8: 4456448}
    for degree in range(9):
        assert series[degree] == expected.get(degree, 0)


def test_hexagonal_low_order_is_zero():
    assert closed_form_series(HEXAGONAL, 2) == 0


def test_hexagonal_polynomial_identity():
    # Multiplying the expansion back by (1 + t^3)^3 must return the exact
    # polynomial 27 t^3 (8 - t^3)^3: a non-circular check of the inversion.
    order = 30
    series = closed_form_series(HEXAGONAL, order)
    den = TruncatedSeries.from_terms({0: 1, 3: 1}, order) ** 3
    poly = TruncatedSeries.monomial(27, 3, order) * \
        TruncatedSeries.from_terms({0: 8, 3: -1}, order) ** 3
    assert series * den == poly


def test_square_polynomial_identity():
    order = 30
    series = closed_form_series(SQUARE, order)
    den = TruncatedSeries.from_terms({0: 1, 2: -4}, order) ** 2
    poly = TruncatedSeries.from_terms({0: 192, 2: 256}, order) * \
        TruncatedSeries.from_terms({0: 3, 2: 4}, order) ** 2
    assert series * den == poly


def test_square_target_equals_64_times_cube_form():
    # 192 + 256 t^2 = 64 (3 + 4 t^2) collapses the target to a single cube.
    order = 24
    series = closed_form_series(SQUARE, order)
    alt = 64 * TruncatedSeries.from_terms({0: 3, 2: 4}, order) ** 3 * \
        TruncatedSeries.from_terms({0: 1, 2: -4}, order) ** -2
    assert series == alt


def test_support_patterns():
    hexagonal = closed_form_series(HEXAGONAL, 24)
    square = closed_form_series(SQUARE, 24)
    assert hexagonal[0] == 0
    for degree in range(25):
        if degree % 3:
            assert hexagonal[degree] == 0
        if degree % 2:
            assert square[degree] == 0


def test_integrality_through_24():
    for point in (HEXAGONAL, SQUARE):
        series = closed_form_series(point, 24)
        for degree in range(25):
            assert series[degree].denominator == 1


def test_hesse_j_values():
    assert hesse_j(0) == 0                      # the branching point itself
    assert hesse_j(1) == F(9261, 8)             # 27 * (7/2)^3
    assert hesse_j(2) == 0                      # factor 8 - t^3 vanishes
    assert hesse_j(F(1, 2)) == F(9261, 8)       # 27/8 * ((63/8)/(9/8))^3


def test_hesse_j_matches_series_construction():
    # The series and the pointwise formula come from the same rational
    # function; checking a value against the cleared-denominator polynomial
    # ties them together exactly.
    t = F(1, 3)
    lhs = hesse_j(t) * (1 + t ** 3) ** 3
    rhs = 27 * t ** 3 * (8 - t ** 3) ** 3
    assert lhs == rhs


def test_hesse_j_pole():
    with pytest.raises(ZeroDivisionError, match="pole"):
        hesse_j(-1)
