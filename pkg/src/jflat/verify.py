"""End-to-end identity verification and the deterministic invariant suites.

`run_verify` builds both sides of the disk-coordinate identity

    j(elliptic expansion) o (h/g)  ==  closed-form family j

to a requested order and compares them coefficient by coefficient, exactly.
`run_selftest` executes every cross-module invariant (ring laws, Leibniz,
homogeneity, the q-expansion consistency of the derivation rules, numeric
cross-checks) so a single command can vouch for a build.
"""

from __future__ import annotations

import cmath
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from math import isclose, pi

from . import numerics
from .closedform import closed_form_series
from .elliptic import (CALIBRATION, CMPointSpec, HEXAGONAL, POINT_KINDS, SQUARE,
                       calibrate, cm_point, derivative_tower, elliptic_j_series)
from .flatcoord import CUBIC, QUARTIC, flat_ratio
from .quasimodular import (DerivationRules, QPolynomial, RAMANUJAN_RULES,
                           serre_derivative)
from .series import TruncatedSeries, format_rational, parse_rational

COMPOSITION_KIND = {HEXAGONAL: CUBIC, SQUARE: QUARTIC}

# Reference coefficients of the two elliptic expansions.  The calibration
# degree (3 resp. 2) is the input; everything else is a prediction.
REFERENCE_DISK_COEFFS = {
    HEXAGONAL: {3: Fraction(13824), 6: Fraction(-39744),
                9: Fraction(1920024, 35), 12: Fraction(-1736613, 35)},
    SQUARE: {0: Fraction(1728), 2: Fraction(20736), 4: Fraction(105984),
             6: Fraction(1594112, 5), 8: Fraction(3398656, 5)},
}


@dataclass(frozen=True)
class Mismatch:
    degree: int
    lhs: Fraction
    rhs: Fraction


@dataclass(frozen=True)
class VerificationReport:
    point: str
    order: int
    verified: bool
    first_mismatch: Mismatch | None
    integrality_ok: bool
    checked_degrees: tuple[int, ...]
    elapsed_ms: int

    def to_json_obj(self) -> dict:
        mismatch = None
        if self.first_mismatch is not None:
            mismatch = {"degree": self.first_mismatch.degree,
                        "lhs": format_rational(self.first_mismatch.lhs),
                        "rhs": format_rational(self.first_mismatch.rhs)}
        return {"point": self.point, "order": self.order, "verified": self.verified,
                "first_mismatch": mismatch, "integrality_ok": self.integrality_ok,
                "checked_degrees": list(self.checked_degrees),
                "elapsed_ms": self.elapsed_ms}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "VerificationReport":
        mismatch = obj.get("first_mismatch")
        first = None
        if mismatch is not None:
            first = Mismatch(degree=int(mismatch["degree"]),
                             lhs=parse_rational(mismatch["lhs"]),
                             rhs=parse_rational(mismatch["rhs"]))
        return cls(point=obj["point"], order=int(obj["order"]),
                   verified=bool(obj["verified"]), first_mismatch=first,
                   integrality_ok=bool(obj["integrality_ok"]),
                   checked_degrees=tuple(int(d) for d in obj["checked_degrees"]),
                   elapsed_ms=int(obj["elapsed_ms"]))


def composed_series(point: str | CMPointSpec, order: int,
                    rules: DerivationRules = RAMANUJAN_RULES) -> TruncatedSeries:
    """Left side of the identity: elliptic expansion composed with h/g."""
    kind = point.kind if isinstance(point, CMPointSpec) else point
    outer = elliptic_j_series(point, order, rules)
    inner = flat_ratio(COMPOSITION_KIND[kind], order)
    return outer.compose(inner)


def run_verify(point: str, order: int, *,
               _rules: DerivationRules | None = None,
               _spec: CMPointSpec | None = None,
               _perturb: dict[int, Fraction] | None = None) -> VerificationReport:
    """Compare both sides of the identity exactly, degree by degree.

    The underscored keywords are fault-injection hooks for tests: alternate
    derivation rules, a forced point spec, and an additive perturbation of
    the composed side.
    """
    if point not in POINT_KINDS:
        raise ValueError(f"unknown expansion point {point!r}")
    if order < CALIBRATION[point][0]:
        raise ValueError(f"order must be at least {CALIBRATION[point][0]} for {point}")
    start = time.perf_counter()
    rules = _rules if _rules is not None else RAMANUJAN_RULES
    lhs = composed_series(_spec if _spec is not None else point, order, rules)
    if _perturb:
        lhs = lhs + TruncatedSeries.from_terms(_perturb, order)
    rhs = closed_form_series(point, order)

    first_mismatch = None
    for degree in range(order + 1):
        if lhs[degree] != rhs[degree]:
            first_mismatch = Mismatch(degree, lhs[degree], rhs[degree])
            break
    integrality_ok = all(lhs[d].denominator == 1 for d in range(order + 1))
    modulus = 3 if point == HEXAGONAL else 2
    start_degree = 3 if point == HEXAGONAL else 0
    checked = tuple(range(start_degree, order + 1, modulus))
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    return VerificationReport(point=point, order=order,
                              verified=first_mismatch is None,
                              first_mismatch=first_mismatch,
                              integrality_ok=integrality_ok,
                              checked_degrees=checked, elapsed_ms=elapsed_ms)


SERIES_IDS = ("elliptic", "flat", "closed", "composed", "j-qexp")


def run_expand(series_id: str, *, point: str | None = None, kind: str | None = None,
               order: int = 24) -> tuple[TruncatedSeries, str]:
    """Build the requested coefficient table; returns (series, variable letter)."""
    if series_id == "elliptic":
        return elliptic_j_series(_required_point(series_id, point), order), "w"
    if series_id == "flat":
        if kind is None:
            raise ValueError("expand --series flat needs --kind cubic|quartic")
        return flat_ratio(kind, order), "t"
    if series_id == "closed":
        return closed_form_series(_required_point(series_id, point), order), "t"
    if series_id == "composed":
        return composed_series(_required_point(series_id, point), order), "t"
    if series_id == "j-qexp":
        return numerics.j_qexp(order), "q"
    raise ValueError(f"unknown series id {series_id!r}; expected one of {SERIES_IDS}")


def _required_point(series_id: str, point: str | None) -> str:
    if point is None:
        raise ValueError(f"expand --series {series_id} needs --point hexagonal|square")
    return point


# ---------------------------------------------------------------------------
# Invariant suites
# ---------------------------------------------------------------------------

@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str = ""


def _random_series(rng: random.Random, *, unit: bool = False,
                   positive_valuation: bool = False) -> TruncatedSeries:
    truncation = rng.randint(4, 9)
    valuation = 1 if positive_valuation else rng.randint(-2, 2)
    length = truncation - valuation + 1
    coeffs = [Fraction(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(length)]
    if unit or positive_valuation:
        while coeffs[0] == 0:
            coeffs[0] = Fraction(rng.randint(-6, 6), rng.randint(1, 6))
    return TruncatedSeries(valuation, coeffs, truncation)


def _random_qpoly(rng: random.Random) -> QPolynomial:
    terms = {}
    for _ in range(rng.randint(1, 5)):
        mono = tuple(rng.randint(0, 2) for _ in range(4))
        terms[mono] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
    return QPolynomial(terms)


def _eval_qseries_at(series: TruncatedSeries, tau: complex) -> complex:
    """Numerically evaluate an exact q-series (valuation >= 0) at q = e^{2 pi i tau}."""
    q = cmath.exp(2j * pi * tau)
    acc = 0j
    for coeff in reversed(series.coefficients):
        acc = acc * q + float(coeff)
    return acc * q ** series.valuation


def _suite_series_ring_laws(rng: random.Random, _ctx) -> tuple[bool, str]:
    for i in range(100):
        a, b, c = (_random_series(rng) for _ in range(3))
        if (a * b) * c != a * (b * c):
            return False, f"associativity broke on case {i}"
        if a * (b + c) != a * b + a * c:
            return False, f"distributivity broke on case {i}"
        if a * b != b * a:
            return False, f"commutativity broke on case {i}"
    for i in range(100):
        u = _random_series(rng, unit=True)
        if u * u.invert() != 1:
            return False, f"inverse round trip broke on case {i}"
    for i in range(50):
        outer = _random_series(rng, positive_valuation=True)
        f, g = (_random_series(rng, positive_valuation=True) for _ in range(2))
        if outer.compose(f).compose(g) != outer.compose(f.compose(g)):
            return False, f"composition associativity broke on case {i}"
    return True, "100 ring-law cases, 100 inversions, 50 compositions"


def _suite_leibniz(rng: random.Random, ctx) -> tuple[bool, str]:
    rules = ctx["rules"]
    for i in range(100):
        p, q = _random_qpoly(rng), _random_qpoly(rng)
        lhs = serre_derivative(p * q, rules)
        rhs = serre_derivative(p, rules) * q + p * serre_derivative(q, rules)
        if lhs != rhs:
            return False, f"Leibniz law broke on pair {i}"
    return True, "100 random pairs"


def _suite_homogeneity(rng: random.Random, ctx) -> tuple[bool, str]:
    tower = derivative_tower(48, ctx["rules"])
    for n, p in enumerate(tower):
        if p and p.weight() != 2 * n:
            return False, f"P_{n} is not homogeneous of weight {2 * n}"
    return True, "P_0..P_48 homogeneous of weight 2n"


def _suite_ramanujan_qexp(rng: random.Random, ctx) -> tuple[bool, str]:
    order = 32
    rules = ctx["rules"]
    e2 = numerics.eisenstein_qexp(2, order)
    e4 = numerics.eisenstein_qexp(4, order)
    e6 = numerics.eisenstein_qexp(6, order)
    delta = numerics.delta_qexp(order)
    delta_inv = delta.invert()
    values = (e2, e4, e6, delta_inv)
    zero = TruncatedSeries.zero(order - 2)
    checks = [
        ("a", numerics.q_derivative(e2) - rules.da.evaluate(values, zero=zero)),
        ("b", numerics.q_derivative(e4) - rules.db.evaluate(values, zero=zero)),
        ("c", numerics.q_derivative(e6) - rules.dc.evaluate(values, zero=zero)),
        ("d", numerics.q_derivative(delta_inv) - rules.dd.evaluate(values, zero=zero)),
        ("delta", numerics.q_derivative(delta) - e2 * delta),
    ]
    for name, residual in checks:
        if residual != 0:
            return False, f"derivation rule for {name} disagrees with q-expansions"
    return True, "all four rules plus the discriminant rule, to q^30"


def _suite_calibration(rng: random.Random, ctx) -> tuple[bool, str]:
    rules = ctx["rules"]
    for kind in POINT_KINDS:
        spec = calibrate(kind, rules)
        a_hat, b_hat, c_hat, d_hat = spec.hat_values
        if a_hat != 0:
            return False, f"{kind}: a-hat is {a_hat}, expected 0"
        if (b_hat ** 3 - c_hat ** 2) * d_hat != 1728:
            return False, f"{kind}: discriminant relation violated"
        if kind == HEXAGONAL and b_hat != 0:
            return False, "hexagonal: b-hat should vanish"
        if kind == SQUARE and c_hat != 0:
            return False, "square: c-hat should vanish"
        # Numeric cross-check of the solved hat value against q-expansions,
        # measured in the weight-two unit v = Omega^2 / (2 Im tau_*).
        weight, power, hat = (4, 2, b_hat) if kind == SQUARE else (6, 3, c_hat)
        series = numerics.eisenstein_qexp(weight, numerics.Q_SERIES_CUTOFF)
        value = _eval_qseries_at(series, numerics.TAU_STAR[kind])
        v = numerics.omega(kind).value ** 2 / (2 * numerics.IM_TAU_STAR[kind])
        numeric_hat = value.real / v ** power
        if not isclose(numeric_hat, float(hat), rel_tol=1e-6):
            return False, f"{kind}: solved hat {hat} vs numeric {numeric_hat:.6f}"
    return True, "hat values match q-expansion evaluations through the period unit"


def _suite_e2star_vanishing(rng: random.Random, _ctx) -> tuple[bool, str]:
    series = numerics.eisenstein_qexp(2, numerics.Q_SERIES_CUTOFF)
    for kind in POINT_KINDS:
        e2 = _eval_qseries_at(series, numerics.TAU_STAR[kind])
        target = 3 / (pi * numerics.IM_TAU_STAR[kind])
        if abs(e2 - target) >= 1e-8:
            return False, f"{kind}: |E2(tau_*) - 3/(pi Im tau_*)| = {abs(e2 - target):.2e}"
    return True, "completed weight-two series vanishes at both points (1e-8)"


def _suite_elliptic_expansion(rng: random.Random, ctx) -> tuple[bool, str]:
    rules = ctx["rules"]
    for kind in POINT_KINDS:
        spec = ctx["specs"].get(kind) or calibrate(kind, rules)
        series = elliptic_j_series(spec, 24, rules)
        for degree, value in REFERENCE_DISK_COEFFS[kind].items():
            if series[degree] != value:
                return False, (f"{kind}: coefficient of degree {degree} is "
                               f"{series[degree]}, expected {value}")
        modulus = spec.vanishing_modulus
        for degree in range(25):
            if degree % modulus and series[degree] != 0:
                return False, f"{kind}: unexpected support at degree {degree}"
    return True, "reference coefficients and vanishing patterns through order 24"


def _suite_flat_ratio_support(rng: random.Random, _ctx) -> tuple[bool, str]:
    u_cubic = flat_ratio(CUBIC, 25)
    u_quartic = flat_ratio(QUARTIC, 25)
    if u_cubic[0] != 0 or u_cubic[1] != 1 or u_quartic[0] != 0 or u_quartic[1] != 1:
        return False, "flat ratio does not start t + O(t^2)"
    for degree in range(26):
        if degree % 3 != 1 and u_cubic[degree] != 0:
            return False, f"cubic ratio has support at degree {degree}"
        if degree % 2 == 0 and u_quartic[degree] != 0:
            return False, f"quartic ratio has support at degree {degree}"
    return True, "cubic support in degrees 1 mod 3, quartic support odd, through 25"


def _suite_j_qexp_oracle(rng: random.Random, _ctx) -> tuple[bool, str]:
    series = numerics.j_qexp(3)
    expected = {-1: 1, 0: 744, 1: 196884, 3: 864299970}
    for degree, value in expected.items():
        if series[degree] != value:
            return False, f"j coefficient at q^{degree} is {series[degree]}"
    delta = numerics.delta_qexp(3)
    if [delta[1], delta[2], delta[3]] != [1, -24, 252]:
        return False, "discriminant expansion does not start q - 24q^2 + 252q^3"
    q2 = series[2]
    note = (f"q^2 coefficient computed as {q2}"
            f" (note: some printed tables give {numerics.J_Q2_MISQUOTED})")
    return True, note


def _suite_numeric_crosscheck(rng: random.Random, ctx) -> tuple[bool, str]:
    j_square = numerics.j_numeric(1j)
    if abs(j_square - 1728) > 1e-9 * 1728:
        return False, f"j(i) = {j_square}"
    j_hex = numerics.j_numeric(numerics.TAU_STAR[HEXAGONAL])
    if abs(j_hex) > 1e-6:
        return False, f"j(exp(pi i/3)) = {j_hex}"
    # Disk expansion vs direct evaluation at the square point.
    spec = ctx["specs"].get(SQUARE) or cm_point(SQUARE)
    series = elliptic_j_series(spec, 20)
    for w0 in (0.01, 0.02):
        partial = sum(float(series[n]) * w0 ** n for n in range(21))
        direct = numerics.j_numeric(
            numerics.uniformizer(SQUARE, w0, inverse=True, scaled=True))
        if abs(partial - direct) >= 1e-4 * (1 + abs(direct)):
            return False, (f"w0={w0}: partial sum {partial:.6f} vs direct "
                           f"{direct.real:.6f}")
    # Modular invariance spot check.
    for _ in range(20):
        tau = complex(rng.uniform(-0.3, 0.3), rng.uniform(1.0, 1.2))
        lhs, rhs = numerics.j_numeric(tau), numerics.j_numeric(-1 / tau)
        if abs(lhs - rhs) > 1e-8 * max(1.0, abs(lhs)):
            return False, f"j(tau) != j(-1/tau) at tau = {tau}"
    # Uniformizer round trips.
    for kind in POINT_KINDS:
        for _ in range(100):
            tau = complex(rng.uniform(-0.5, 0.5), rng.uniform(0.6, 2.0))
            w = numerics.uniformizer(kind, tau)
            back = numerics.uniformizer(kind, w, inverse=True)
            if abs(back - tau) > 1e-12 * max(1.0, abs(tau)):
                return False, f"{kind}: round trip error at tau = {tau}"
            ws = numerics.uniformizer(kind, tau, scaled=True)
            back = numerics.uniformizer(kind, ws, inverse=True, scaled=True)
            if abs(back - tau) > 1e-12 * max(1.0, abs(tau)):
                return False, f"{kind}: scaled round trip error at tau = {tau}"
    return True, "disk partial sums, CM values, modular invariance, round trips"


_SUITES = (
    ("series-ring-laws", _suite_series_ring_laws),
    ("quasimodular-leibniz", _suite_leibniz),
    ("derivative-homogeneity", _suite_homogeneity),
    ("ramanujan-q-consistency", _suite_ramanujan_qexp),
    ("calibration", _suite_calibration),
    ("e2star-vanishing", _suite_e2star_vanishing),
    ("elliptic-expansion", _suite_elliptic_expansion),
    ("flat-ratio-support", _suite_flat_ratio_support),
    ("j-qexp-oracle", _suite_j_qexp_oracle),
    ("numeric-crosscheck", _suite_numeric_crosscheck),
)


def run_selftest(*, rules: DerivationRules | None = None,
                 specs: dict[str, CMPointSpec] | None = None,
                 seed: int = 987654321) -> list[SuiteResult]:
    """Run every invariant suite; deterministic for a fixed seed.

    ``rules`` and ``specs`` are fault-injection hooks: perturbed derivation
    rules or forced point specs flow into the affected suites.
    """
    ctx = {"rules": rules if rules is not None else RAMANUJAN_RULES,
           "specs": specs or {}}
    results = []
    for name, fn in _SUITES:
        rng = random.Random(f"{seed}:{name}")
        try:
            passed, detail = fn(rng, ctx)
        except Exception as exc:  # a crashed suite is a failed suite
            passed, detail = False, f"raised {type(exc).__name__}: {exc}"
        results.append(SuiteResult(name=name, passed=passed, detail=detail))
    return results
