"""Exact truncated power/Laurent series over the rationals.

The scalar type used throughout the package is :class:`fractions.Fraction`:
arbitrary precision, always reduced to lowest terms with a positive
denominator, so no rounding can occur anywhere in the exact pipeline.

A :class:`TruncatedSeries` stores a dense window of coefficients together
with the largest exponent (``truncation``) through which those coefficients
are exact.  Exponents below ``valuation`` are exactly zero; exponents above
``truncation`` are unknown.  Every operation computes the largest truncation
order at which all of its output coefficients are still exact, so a result
can never silently contain a coefficient polluted by a discarded tail, and
reading past the truncation order raises instead of returning garbage.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Rational = Fraction


class SeriesError(ValueError):
    """Structurally invalid series operation (bad window, non-unit, ...)."""


def as_rational(value: int | Fraction) -> Fraction:
    """Coerce an exact scalar; floats are rejected to protect exactness."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact rational scalar, got {type(value).__name__}")


def format_rational(value: int | Fraction) -> str:
    """Render as ``"num/den"``: lowest terms, positive denominator, ``"0/1"`` for zero."""
    value = as_rational(value)
    return f"{value.numerator}/{value.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"num/den"`` (or a bare integer) into a Fraction."""
    num, _, den = text.strip().partition("/")
    return Fraction(int(num), int(den)) if den else Fraction(int(num))


class TruncatedSeries:
    """Dense window of exact coefficients for exponents ``valuation..truncation``."""

    __slots__ = ("valuation", "coefficients", "truncation")

    def __init__(self, valuation: int, coefficients: Iterable[int | Fraction],
                 truncation: int | None = None):
        coeffs = [as_rational(c) for c in coefficients]
        if not coeffs:
            raise SeriesError("a series window must hold at least one coefficient")
        if truncation is None:
            truncation = valuation + len(coeffs) - 1
        if truncation != valuation + len(coeffs) - 1:
            raise SeriesError("coefficient window does not match the truncation order")
        # Exact zeros at the bottom of the window tighten the valuation; an
        # all-zero window collapses to valuation == truncation.
        start = 0
        while start < len(coeffs) - 1 and coeffs[start] == 0:
            start += 1
        self.valuation: int = valuation + start
        self.coefficients: tuple[Fraction, ...] = tuple(coeffs[start:])
        self.truncation: int = truncation

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, truncation: int) -> "TruncatedSeries":
        return cls(truncation, [0], truncation)

    @classmethod
    def constant(cls, value: int | Fraction, truncation: int) -> "TruncatedSeries":
        return cls.from_terms({0: value}, truncation)

    @classmethod
    def monomial(cls, coefficient: int | Fraction, degree: int,
                 truncation: int) -> "TruncatedSeries":
        return cls.from_terms({degree: coefficient}, truncation)

    @classmethod
    def from_terms(cls, terms: Mapping[int, int | Fraction],
                   truncation: int) -> "TruncatedSeries":
        """Build from a sparse ``degree -> coefficient`` map, dropping terms past the truncation."""
        kept = {d: as_rational(c) for d, c in terms.items()
                if d <= truncation and c != 0}
        if not kept:
            return cls.zero(truncation)
        lo = min(kept)
        coeffs = [kept.get(d, Fraction(0)) for d in range(lo, truncation + 1)]
        return cls(lo, coeffs, truncation)

    # -- access ------------------------------------------------------------

    def __getitem__(self, degree: int) -> Fraction:
        if degree > self.truncation:
            raise SeriesError(
                f"coefficient of degree {degree} is beyond truncation order {self.truncation}")
        if degree < self.valuation:
            return Fraction(0)
        return self.coefficients[degree - self.valuation]

    def support(self) -> Iterator[tuple[int, Fraction]]:
        """Yield ``(degree, coefficient)`` for the nonzero stored coefficients."""
        for offset, coeff in enumerate(self.coefficients):
            if coeff != 0:
                yield self.valuation + offset, coeff

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coefficients)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- equality ----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        # Series agree iff they match coefficientwise on the overlap of their
        # represented ranges; nothing past the shared truncation is read.
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(other, self.truncation)
        elif not isinstance(other, TruncatedSeries):
            return NotImplemented
        hi = min(self.truncation, other.truncation)
        lo = min(self.valuation, other.valuation)
        return all(self[d] == other[d] for d in range(lo, hi + 1))

    __hash__ = None  # type: ignore[assignment]

    # -- ring operations ----------------------------------------------------

    def _promote(self, other) -> "TruncatedSeries | None":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries.constant(other, self.truncation)
        return None

    def __add__(self, other) -> "TruncatedSeries":
        other = self._promote(other)
        if other is None:
            return NotImplemented
        hi = min(self.truncation, other.truncation)
        lo = min(self.valuation, other.valuation, hi)
        coeffs = [self[d] + other[d] for d in range(lo, hi + 1)]
        return TruncatedSeries(lo, coeffs, hi)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.valuation, [-c for c in self.coefficients],
                               self.truncation)

    def __sub__(self, other) -> "TruncatedSeries":
        other = self._promote(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            scalar = as_rational(other)
            return TruncatedSeries(self.valuation,
                                   [scalar * c for c in self.coefficients],
                                   self.truncation)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        # Cauchy product.  Degrees up to min(Ta + vb, Tb + va) never touch an
        # unknown coefficient of either factor, so the window below is exact.
        lo = self.valuation + other.valuation
        hi = min(self.truncation + other.valuation,
                 other.truncation + self.valuation)
        coeffs = []
        for n in range(lo, hi + 1):
            total = Fraction(0)
            i_lo = max(self.valuation, n - other.truncation)
            i_hi = min(self.truncation, n - other.valuation)
            for i in range(i_lo, i_hi + 1):
                a = self.coefficients[i - self.valuation]
                if a:
                    b = other.coefficients[n - i - other.valuation]
                    if b:
                        total += a * b
            coeffs.append(total)
        return TruncatedSeries(lo, coeffs, hi)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / as_rational(other))
        if isinstance(other, TruncatedSeries):
            return self * other.invert()
        return NotImplemented

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires a nonzero coefficient at the valuation."""
        lead = self.coefficients[0]
        if lead == 0:
            raise SeriesError("non-unit leading coefficient")
        # Peel off x^valuation and invert the unit part by the usual recurrence.
        rel = self.truncation - self.valuation
        unit = self.coefficients
        inv = [Fraction(1) / lead]
        for n in range(1, rel + 1):
            acc = Fraction(0)
            for k in range(1, n + 1):
                if unit[k]:
                    acc += unit[k] * inv[n - k]
            inv.append(-acc / lead)
        return TruncatedSeries(-self.valuation, inv, rel - self.valuation)

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.invert() ** (-exponent)
        result = TruncatedSeries.constant(1, self.truncation)
        base = self
        k = exponent
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def compose(self, inner: "TruncatedSeries") -> "TruncatedSeries":
        """Substitute ``inner`` (positive valuation) into this series."""
        if self.valuation < 0:
            raise SeriesError("composition requires a non-negative outer valuation")
        if inner.valuation < 1:
            raise SeriesError("composition requires positive valuation")
        # Exactness window: the discarded outer tail first contributes at
        # degree (To+1)*vi, and powers of the inner series are exact to Ti.
        hi = min(inner.truncation, (self.truncation + 1) * inner.valuation - 1)
        u = [inner[d] for d in range(hi + 1)]
        acc = [Fraction(0)] * (hi + 1)
        for k in range(self.truncation, -1, -1):
            # acc <- acc * u  (mod x^{hi+1})
            nxt = [Fraction(0)] * (hi + 1)
            for i, a in enumerate(acc):
                if a:
                    for j in range(inner.valuation, hi + 1 - i):
                        if u[j]:
                            nxt[i + j] += a * u[j]
            acc = nxt
            acc[0] += self[k]
        return TruncatedSeries(0, acc, hi)

    # -- serialization -----------------------------------------------------

    def to_json_terms(self) -> list[dict]:
        return [{"degree": d, "value": format_rational(c)} for d, c in self.support()]

    @classmethod
    def from_json_terms(cls, terms: Iterable[Mapping], truncation: int) -> "TruncatedSeries":
        return cls.from_terms({t["degree"]: parse_rational(t["value"]) for t in terms},
                              truncation)

    def to_csv(self) -> str:
        lines = ["degree,numerator,denominator"]
        lines += [f"{d},{c.numerator},{c.denominator}" for d, c in self.support()]
        return "\n".join(lines)

    def render(self, var: str = "x") -> str:
        """Human-readable expansion such as ``13824*w^3 - 39744*w^6 + O(w^13)``."""
        parts: list[str] = []
        for d, c in self.support():
            if d == 0:
                term = str(c)
            else:
                mag = str(abs(c)) + "*" + (var if d == 1 else f"{var}^{d}")
                term = mag if c > 0 else "-" + mag
            if not parts:
                parts.append(term)
            elif term.startswith("-"):
                parts.append("- " + term[1:])
            else:
                parts.append("+ " + term)
        if not parts:
            parts.append("0")
        parts.append(f"+ O({var}^{self.truncation + 1})")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.render()})"
