"""Flat-coordinate power series for the cubic and quartic families.

Both families come with a pair of series g (unit) and h (h = t + ...)
built from step-3 or step-4 multifactorials; the flat coordinate is the
ratio u = h/g.  Cubic terms alternate in sign and carry cubed
multifactorials in degree steps of three; quartic terms are all positive
and carry squared multifactorials in degree steps of two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .series import TruncatedSeries


@dataclass(frozen=True)
class CurveKind:
    name: str
    factorial_step: int
    sign_alternates: bool

    @property
    def degree_step(self) -> int:
        return 3 if self.factorial_step == 3 else 2

    @property
    def multifactorial_power(self) -> int:
        return self.degree_step


CUBIC = CurveKind("cubic", 3, True)
QUARTIC = CurveKind("quartic", 4, False)
CURVE_KINDS = {CUBIC.name: CUBIC, QUARTIC.name: QUARTIC}


def _as_kind(kind: str | CurveKind) -> CurveKind:
    if isinstance(kind, CurveKind):
        return kind
    try:
        return CURVE_KINDS[kind]
    except KeyError:
        raise ValueError(f"unknown curve kind {kind!r}; expected one of "
                         f"{tuple(CURVE_KINDS)}") from None


def multifactorial(m: int, step: int) -> int:
    """Product m*(m-step)*(m-2*step)*... over positive factors; 1 for m <= 0."""
    if step not in (3, 4):
        raise ValueError("multifactorial step must be 3 or 4")
    out = 1
    while m > 0:
        out *= m
        m -= step
    return out


def _term(kind: CurveKind, n: int, shift: int) -> Fraction:
    """Coefficient of the n-th term of g (shift 0) or h (shift 1)."""
    step = kind.factorial_step
    arg = step * n - (step - 1 if shift == 0 else 1)
    numerator = multifactorial(arg, step) ** kind.multifactorial_power
    degree = kind.degree_step * n + shift
    sign = -1 if kind.sign_alternates and n % 2 else 1
    return Fraction(sign * numerator, factorial(degree))


def g_series(kind: str | CurveKind, order: int) -> TruncatedSeries:
    """The unit series g; support in degrees 0, step, 2*step, ..."""
    kind = _as_kind(kind)
    terms = {}
    n = 0
    while kind.degree_step * n <= order:
        terms[kind.degree_step * n] = _term(kind, n, 0)
        n += 1
    return TruncatedSeries.from_terms(terms, order)


def h_series(kind: str | CurveKind, order: int) -> TruncatedSeries:
    """The companion series h = t + ...; support in degrees 1, step+1, ..."""
    kind = _as_kind(kind)
    terms = {}
    n = 0
    while kind.degree_step * n + 1 <= order:
        terms[kind.degree_step * n + 1] = _term(kind, n, 1)
        n += 1
    return TruncatedSeries.from_terms(terms, order)


def flat_ratio(kind: str | CurveKind, order: int) -> TruncatedSeries:
    """The flat coordinate u = h/g; u(0) = 0 and u'(0) = 1."""
    if order < 1:
        raise ValueError("flat_ratio needs order >= 1")
    kind = _as_kind(kind)
    return h_series(kind, order) / g_series(kind, order)
