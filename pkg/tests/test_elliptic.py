from dataclasses import replace
from fractions import Fraction as F

import pytest

from jflat.elliptic import (CalibrationError, HEXAGONAL, SQUARE, calibrate,
                            cm_point, elliptic_j_series)
from jflat.quasimodular import A, B, C, DerivationRules, RAMANUJAN_RULES


def test_hexagonal_calibration():
    spec = calibrate(HEXAGONAL)
    assert spec.hat_values == (0, 0, 216, F(-1, 27))
    assert spec.vanishing_modulus == 3
    assert spec.calibration_degree == 3
    assert spec.calibration_value == 13824


def test_square_calibration():
    spec = calibrate(SQUARE)
    assert spec.hat_values == (0, 48, 0, F(1, 64))
    assert spec.vanishing_modulus == 2
    assert spec.calibration_value == 20736


def test_discriminant_relation_holds_exactly():
    for kind in (HEXAGONAL, SQUARE):
        a, b, c, d = calibrate(kind).hat_values
        assert a == 0
        assert (b ** 3 - c ** 2) * d == 1728


def test_tau_star_markers():
    hexagonal = cm_point(HEXAGONAL)
    square = cm_point(SQUARE)
    assert hexagonal.y_star_squared == F(3, 4)
    assert square.tau_star == 1j
    assert abs(hexagonal.tau_star - complex(0.5, 3 ** 0.5 / 2)) < 1e-15


def test_unknown_kind_rejected():
    with pytest.raises(ValueError, match="unknown expansion point"):
        calibrate("cusp")


def test_hexagonal_expansion_reproduces_reference_values():
    series = elliptic_j_series(HEXAGONAL, 12)
    assert series[3] == 13824              # calibration input
    assert series[6] == -39744             # everything below is a prediction
    assert series[9] == F(1920024, 35)
    assert series[12] == F(-1736613, 35)


def test_square_expansion_reproduces_reference_values():
    series = elliptic_j_series(SQUARE, 8)
    assert series[0] == 1728
    assert series[2] == 20736              # calibration input
    assert series[4] == 105984
    assert series[6] == F(1594112, 5)
    assert series[8] == F(3398656, 5)


def test_hexagonal_expansion_vanishes_through_degree_two():
    assert elliptic_j_series(HEXAGONAL, 2) == 0


def test_vanishing_patterns():
    hexagonal = elliptic_j_series(HEXAGONAL, 24)
    square = elliptic_j_series(SQUARE, 24)
    for degree in range(25):
        if degree % 3:
            assert hexagonal[degree] == 0
        if degree % 2:
            assert square[degree] == 0


def test_expansion_has_non_integral_coefficients():
    hexagonal = elliptic_j_series(HEXAGONAL, 12)
    square = elliptic_j_series(SQUARE, 8)
    assert hexagonal[9].denominator == 35
    assert square[6].denominator == 5


def test_prefix_stability():
    short = elliptic_j_series(SQUARE, 8)
    long = elliptic_j_series(SQUARE, 24)
    for degree in range(9):
        assert short[degree] == long[degree]


def test_forced_a_hat_changes_degree_four():
    spec = cm_point(SQUARE)
    forced = replace(spec, hat_values=(F(1), *spec.hat_values[1:]))
    series = elliptic_j_series(forced, 4)
    assert series[0] == 1728 and series[2] == 20736
    assert series[4] != 105984


def test_perturbed_rule_fails_calibration_or_changes_output():
    rules = DerivationRules(da=RAMANUJAN_RULES.da, db=(A * B - C) / 4,
                            dc=RAMANUJAN_RULES.dc, dd=RAMANUJAN_RULES.dd)
    try:
        series = elliptic_j_series(SQUARE, 8, rules)
    except CalibrationError:
        return
    reference = elliptic_j_series(SQUARE, 8)
    assert any(series[d] != reference[d] for d in range(9))
