"""Weight-graded polynomials in four Eisenstein-type generators.

The ring is Q[a, b, c, d] where a models the completed weight-two
Eisenstein series, b and c the weight-four and weight-six Eisenstein
series, and d the reciprocal of the discriminant cusp form, so the four
generators carry weights 2, 4, 6 and -12.  No relation between them is
imposed: evaluation handles the discriminant identity numerically.

`serre_derivative` is the derivation acting by Ramanujan's rules on
a, b, c and by the discriminant's logarithmic derivative on d.  It raises
homogeneous weight by exactly two, which is what makes the j-function
seed b^3*d generate one homogeneous polynomial per derivative order.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .series import as_rational

Monomial = tuple[int, int, int, int]

GENERATOR_NAMES = ("a", "b", "c", "d")
GENERATOR_WEIGHTS = (2, 4, 6, -12)


class MixedWeightError(ValueError):
    """A polynomial expected to be homogeneous mixes weights."""


def monomial_weight(exponents: Monomial) -> int:
    return sum(e * w for e, w in zip(exponents, GENERATOR_WEIGHTS))


def _render_monomial(exponents: Monomial) -> str:
    parts = []
    for name, e in zip(GENERATOR_NAMES, exponents):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class QPolynomial:
    """Sparse polynomial ``{exponent quadruple: coefficient}`` with no stored zeros."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, int | Fraction] | None = None):
        cleaned: dict[Monomial, Fraction] = {}
        for mono, coef in (terms or {}).items():
            coef = as_rational(coef)
            if coef != 0:
                cleaned[tuple(mono)] = coef  # type: ignore[index]
        self.terms: dict[Monomial, Fraction] = cleaned

    @classmethod
    def zero(cls) -> "QPolynomial":
        return cls()

    @classmethod
    def constant(cls, value: int | Fraction) -> "QPolynomial":
        return cls({(0, 0, 0, 0): value})

    @classmethod
    def generator(cls, index: int) -> "QPolynomial":
        exponents = [0, 0, 0, 0]
        exponents[index] = 1
        return cls({tuple(exponents): 1})  # type: ignore[arg-type]

    # -- ring operations ----------------------------------------------------

    def __add__(self, other) -> "QPolynomial":
        if isinstance(other, (int, Fraction)):
            other = QPolynomial.constant(other)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        out = dict(self.terms)
        for mono, coef in other.terms.items():
            out[mono] = out.get(mono, Fraction(0)) + coef
        return QPolynomial(out)

    __radd__ = __add__

    def __neg__(self) -> "QPolynomial":
        return QPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "QPolynomial":
        if isinstance(other, (int, Fraction)):
            other = QPolynomial.constant(other)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "QPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "QPolynomial":
        if isinstance(other, (int, Fraction)):
            scalar = as_rational(other)
            return QPolynomial({m: scalar * c for m, c in self.terms.items()})
        if not isinstance(other, QPolynomial):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = tuple(e1 + e2 for e1, e2 in zip(m1, m2))
                out[mono] = out.get(mono, Fraction(0)) + c1 * c2  # type: ignore[index]
        return QPolynomial(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "QPolynomial":
        if isinstance(scalar, (int, Fraction)):
            return self * (Fraction(1) / as_rational(scalar))
        return NotImplemented

    def __pow__(self, exponent: int) -> "QPolynomial":
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        out = QPolynomial.constant(1)
        for _ in range(exponent):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = QPolynomial.constant(other)
        if not isinstance(other, QPolynomial):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.terms)

    # -- structure ----------------------------------------------------------

    def weight(self) -> int:
        """Homogeneous weight; raises :class:`MixedWeightError` otherwise."""
        if not self.terms:
            raise ValueError("the zero polynomial has no well-defined weight")
        weights = sorted({monomial_weight(m) for m in self.terms})
        if len(weights) > 1:
            offending = ", ".join(
                f"{_render_monomial(m) or '1'} (weight {monomial_weight(m)})"
                for m in sorted(self.terms))
            raise MixedWeightError(f"mixed weight: {offending}")
        return weights[0]

    def is_homogeneous(self, weight: int | None = None) -> bool:
        try:
            w = self.weight()
        except MixedWeightError:
            return False
        except ValueError:
            return True  # zero polynomial is homogeneous of every weight
        return weight is None or w == weight

    def evaluate(self, values, zero=Fraction(0)):
        """Substitute the four generator values (rationals, series, ...)."""
        total = zero
        for mono, coef in self.terms.items():
            term = coef
            for value, e in zip(values, mono):
                if e:
                    term = term * value ** e
            total = total + term
        return total

    def render(self) -> str:
        """Deterministic human-readable form, e.g. ``2/3*b*c^2*d + 1/2*b^4*d``."""
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms):
            coef = self.terms[mono]
            body = _render_monomial(mono)
            if not body:
                text = str(coef)
            elif coef == 1:
                text = body
            elif coef == -1:
                text = "-" + body
            else:
                text = f"{coef}*{body}"
            parts.append(text)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self) -> str:
        return f"QPolynomial({self.render()})"


A = QPolynomial.generator(0)
B = QPolynomial.generator(1)
C = QPolynomial.generator(2)
D = QPolynomial.generator(3)


@dataclass(frozen=True)
class DerivationRules:
    """Images of the four generators under the derivation."""

    da: QPolynomial
    db: QPolynomial
    dc: QPolynomial
    dd: QPolynomial

    def image(self, index: int) -> QPolynomial:
        return (self.da, self.db, self.dc, self.dd)[index]


RAMANUJAN_RULES = DerivationRules(
    da=(A * A - B) / 12,
    db=(A * B - C) / 3,
    dc=(A * C - B * B) / 2,
    dd=-(A * D),
)


def serre_derivative(p: QPolynomial,
                     rules: DerivationRules = RAMANUJAN_RULES) -> QPolynomial:
    """Extend the generator rules to the whole ring by the Leibniz law."""
    out = QPolynomial.zero()
    for mono, coef in p.terms.items():
        for g in range(4):
            e = mono[g]
            if e:
                lowered = list(mono)
                lowered[g] -= 1
                cofactor = QPolynomial({tuple(lowered): coef * e})
                out = out + cofactor * rules.image(g)
    return out
