import json
import subprocess
import sys
from dataclasses import replace
from fractions import Fraction as F

import pytest

from jflat.elliptic import HEXAGONAL, SQUARE, cm_point
from jflat.quasimodular import A, B, C, RAMANUJAN_RULES
from jflat.verify import (VerificationReport, composed_series, run_expand,
                          run_selftest, run_verify)


def test_verify_hexagonal_order_24():
    report = run_verify(HEXAGONAL, 24)
    assert report.verified and report.integrality_ok
    assert report.first_mismatch is None
    assert report.checked_degrees == tuple(range(3, 25, 3))


def test_verify_square_order_24():
    report = run_verify(SQUARE, 24)
    assert report.verified and report.integrality_ok
    assert report.checked_degrees == tuple(range(0, 25, 2))


def test_verify_beyond_paper_depth():
    assert run_verify(HEXAGONAL, 33).verified
    assert run_verify(SQUARE, 30).verified


def test_composed_prefixes():
    hexagonal = composed_series(HEXAGONAL, 15)
    for degree, value in {3: 13824, 6: -46656, 9: 99144, 12: -171315,
                          15: 263169}.items():
        assert hexagonal[degree] == value
    square = composed_series(SQUARE, 8)
    for degree, value in {0: 1728, 2: 20736, 4: 147456, 6: 851968,
                          8: 4456448}.items():
        assert square[degree] == value


def test_verify_order_prefix_stability():
    short = composed_series(SQUARE, 10)
    long = composed_series(SQUARE, 24)
    for degree in range(11):
        assert short[degree] == long[degree]


def test_verify_minimum_order():
    with pytest.raises(ValueError, match="at least 3"):
        run_verify(HEXAGONAL, 2)


def test_report_json_round_trip():
    for report in (run_verify(HEXAGONAL, 12),
                   run_verify(HEXAGONAL, 12, _perturb={9: F(1, 7)})):
        assert VerificationReport.from_json_obj(
            json.loads(json.dumps(report.to_json_obj()))) == report


# --- fault injection -----------------------------------------------------------

def test_perturbed_coefficient_is_localized():
    report = run_verify(HEXAGONAL, 24, _perturb={9: F(1)})
    assert not report.verified
    assert report.first_mismatch.degree == 9
    assert report.first_mismatch.lhs - report.first_mismatch.rhs == 1


def test_forced_a_hat_fails_at_degree_four():
    spec = cm_point(SQUARE)
    forced = replace(spec, hat_values=(F(1), *spec.hat_values[1:]))
    report = run_verify(SQUARE, 8, _spec=forced)
    assert not report.verified
    assert report.first_mismatch.degree == 4
    suites = {r.name: r for r in run_selftest(specs={SQUARE: forced})}
    assert not suites["elliptic-expansion"].passed


def test_perturbed_rule_fails_ramanujan_suite():
    rules = replace(RAMANUJAN_RULES, db=(A * B - C) / 4)
    suites = {r.name: r for r in run_selftest(rules=rules)}
    assert not suites["ramanujan-q-consistency"].passed
    assert suites["series-ring-laws"].passed      # unrelated suites still pass
    report = run_verify(SQUARE, 8, _rules=rules)
    assert not report.verified


def test_selftest_all_green():
    results = run_selftest()
    assert len(results) == 10
    assert all(r.passed for r in results), [r for r in results if not r.passed]


def test_selftest_reports_q2_note():
    results = {r.name: r for r in run_selftest()}
    note = results["j-qexp-oracle"].detail
    assert "21493760" in note and "21393760" in note


# --- expand -----------------------------------------------------------------------

def test_expand_elliptic_csv_rows():
    series, var = run_expand("elliptic", point=HEXAGONAL, order=12)
    assert var == "w"
    rows = series.to_csv().splitlines()
    assert rows[0] == "degree,numerator,denominator"
    assert len(rows) == 5
    assert rows[-1] == "12,-1736613,35"


def test_expand_flat_cubic_order_4():
    series, var = run_expand("flat", kind="cubic", order=4)
    assert var == "t"
    assert series.to_csv().splitlines()[1:] == ["1,1,1", "4,-1,6"]


def test_expand_j_qexp():
    series, var = run_expand("j-qexp", order=1)
    assert var == "q"
    assert series[-1] == 1 and series[0] == 744 and series[1] == 196884


def test_expand_validation():
    with pytest.raises(ValueError, match="unknown series id"):
        run_expand("mystery", order=4)
    with pytest.raises(ValueError, match="--point"):
        run_expand("elliptic", order=4)
    with pytest.raises(ValueError, match="--kind"):
        run_expand("flat", order=4)


# --- CLI end-to-end -----------------------------------------------------------------

def cli(*args):
    return subprocess.run([sys.executable, "-m", "jflat", *args],
                          capture_output=True, text=True)


def test_cli_verify_exit_zero_and_json():
    proc = cli("verify", "--point", "both", "--order", "24", "--format", "json")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert [r["point"] for r in payload["reports"]] == [HEXAGONAL, SQUARE]
    assert all(r["verified"] and r["integrality_ok"] for r in payload["reports"])


def test_cli_verify_mismatch_exit_one():
    proc = cli("verify", "--point", "hexagonal", "--order", "24",
               "--format", "json", "--perturb", "9:1/1")
    assert proc.returncode == 1
    payload = json.loads(proc.stdout)
    assert payload["reports"][0]["first_mismatch"]["degree"] == 9


def test_cli_usage_error_exit_two():
    assert cli("expand", "--series", "mystery").returncode == 2
    assert cli("expand", "--series", "flat").returncode == 2
    assert cli("frobnicate").returncode == 2


def test_cli_expand_table():
    proc = cli("expand", "--series", "j-qexp", "--order", "1", "--format", "table")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert lines[0].startswith("q^-1") and lines[0].endswith("1")
    assert any("196884" in line for line in lines)


def test_cli_expand_csv_matches_library():
    proc = cli("expand", "--series", "composed", "--point", "square",
               "--order", "8", "--format", "csv")
    series, _ = run_expand("composed", point=SQUARE, order=8)
    assert proc.stdout.strip() == series.to_csv()


def test_cli_selftest_passes():
    proc = cli("selftest")
    assert proc.returncode == 0
    lines = proc.stdout.splitlines()
    assert sum(line.startswith("PASS ") for line in lines) == 10
    assert lines[-1].startswith("selftest: 10 suites, 0 failed")


def test_cli_verify_table_and_csv_formats():
    table = cli("verify", "--point", "square", "--order", "8")
    assert table.returncode == 0
    assert "verified" in table.stdout and "4456448/1" in table.stdout
    csv = cli("verify", "--point", "square", "--order", "8", "--format", "csv")
    assert "point,degree,lhs,rhs,equal" in csv.stdout
    assert "square,8,4456448/1,4456448/1,true" in csv.stdout
