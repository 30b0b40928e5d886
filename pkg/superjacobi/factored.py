"""
Affine forms in (k, p) and products of their integer powers.

Every Pieri coefficient is such a product, so the blow-up limit along
p = t(k+1), k -> -1 can be read off factor by factor.
"""

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, Tuple, Union

from sympy import QQ
from sympy.polys.fields import FracElement

from superjacobi.arith import (
    INFINITY,
    K_FIELD,
    P,
    P_FIELD,
    ExtendedScalar,
    Rational,
    RationalLike,
    format_rational,
    qpow,
    to_rational,
    uni_linear,
)
from superjacobi.errors import DegenerateParameters

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class AffineForm:
    """a*k + b*p + c"""

    a: Rational = QQ(0)
    b: Rational = QQ(0)
    c: Rational = QQ(0)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, to_rational(getattr(self, name)))

    @classmethod
    def k(cls) -> "AffineForm":
        return cls(1, 0, 0)

    @classmethod
    def p(cls) -> "AffineForm":
        return cls(0, 1, 0)

    @classmethod
    def const(cls, value: RationalLike) -> "AffineForm":
        return cls(0, 0, value)

    @property
    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0

    @property
    def is_constant(self) -> bool:
        return self.a == 0 and self.b == 0

    @property
    def has_p(self) -> bool:
        return self.b != 0

    @property
    def vanishes_on_blowup(self) -> bool:
        """True iff the form is a multiple of k+1 once p = t(k+1), for every t"""
        return self.c == self.a

    def __add__(self, other):
        other = _as_form(other)
        return AffineForm(self.a + other.a, self.b + other.b, self.c + other.c)

    __radd__ = __add__

    def __neg__(self):
        return AffineForm(-self.a, -self.b, -self.c)

    def __sub__(self, other):
        return self + (-_as_form(other))

    def __rsub__(self, other):
        return _as_form(other) - self

    def __mul__(self, scalar: RationalLike):
        scalar = to_rational(scalar)
        return AffineForm(self.a * scalar, self.b * scalar, self.c * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: RationalLike):
        return self * (QQ(1) / to_rational(scalar))

    def evaluate(self, k, p):
        """Value at a point; k and p may be rationals or field elements"""
        return k * self.a + p * self.b + self.c

    def blowup_line(self, t: RationalLike) -> Tuple[Rational, Rational]:
        """(slope, const) of the form after p = t(k+1), as slope*k + const"""
        t = to_rational(t)
        return self.a + self.b * t, self.b * t + self.c

    def normalized(self) -> Tuple[Rational, "AffineForm"]:
        """Split into scale * monic form, the leading coefficient taken on p, then k"""
        if self.b != 0:
            scale = self.b
        elif self.a != 0:
            scale = self.a
        else:
            scale = QQ(1) if self.c == 0 else self.c
        return scale, self / scale

    def __str__(self) -> str:
        terms = []
        for coeff, name in ((self.a, "k"), (self.b, "p")):
            if coeff == 1:
                terms.append(name)
            elif coeff == -1:
                terms.append("-" + name)
            elif coeff != 0:
                terms.append(f"{_short(coeff)}*{name}")
        if self.c != 0 or not terms:
            terms.append(_short(self.c))
        return " + ".join(terms).replace("+ -", "- ")


def _short(value: Rational) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return format_rational(value)


def _as_form(value) -> AffineForm:
    if isinstance(value, AffineForm):
        return value
    return AffineForm.const(value)


@dataclass(frozen=True)
class FactoredRational:
    """prefactor * prod(form ** exponent); the zero value has no factors"""

    prefactor: Rational = QQ(1)
    factors: Tuple[Tuple[AffineForm, int], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "prefactor", to_rational(self.prefactor))
        if self.prefactor == 0:
            object.__setattr__(self, "factors", ())

    @classmethod
    def one(cls) -> "FactoredRational":
        return cls(QQ(1))

    @classmethod
    def zero(cls) -> "FactoredRational":
        return cls(QQ(0))

    @classmethod
    def constant(cls, value: RationalLike) -> "FactoredRational":
        return cls(to_rational(value))

    @classmethod
    def of(cls, form: AffineForm, exponent: int = 1) -> "FactoredRational":
        """A single affine form raised to an integer power"""
        if exponent == 0:
            return cls.one()
        if form.is_constant:
            if form.c == 0:
                if exponent < 0:
                    raise ZeroDivisionError("division by the zero form")
                return cls.zero()
            return cls(qpow(form.c, exponent))
        scale, monic = form.normalized()
        return cls(qpow(scale, exponent), ((monic, exponent),))

    @classmethod
    def ratio(cls, numerators: Iterable[AffineForm], denominators: Iterable[AffineForm] = ()) -> "FactoredRational":
        result = cls.one()
        for form in numerators:
            result = result * cls.of(form)
        for form in denominators:
            result = result / cls.of(form)
        return result

    @property
    def is_zero(self) -> bool:
        return self.prefactor == 0

    def depends_on_p(self) -> bool:
        return any(form.has_p for form, _ in self.factors)

    def __mul__(self, other: Union["FactoredRational", RationalLike]) -> "FactoredRational":
        if not isinstance(other, FactoredRational):
            other = FactoredRational.constant(other)
        if self.is_zero or other.is_zero:
            return FactoredRational.zero()
        merged: Dict[AffineForm, int] = defaultdict(int)
        for form, exponent in self.factors + other.factors:
            merged[form] += exponent
        factors = tuple(sorted((f, e) for f, e in merged.items() if e != 0))
        return FactoredRational(self.prefactor * other.prefactor, factors)

    __rmul__ = __mul__

    def inverse(self) -> "FactoredRational":
        if self.is_zero:
            raise ZeroDivisionError("inverse of a zero FactoredRational")
        return FactoredRational(QQ(1) / self.prefactor, tuple((f, -e) for f, e in self.factors))

    def __truediv__(self, other: Union["FactoredRational", RationalLike]) -> "FactoredRational":
        if not isinstance(other, FactoredRational):
            other = FactoredRational.constant(other)
        return self * other.inverse()

    def __pow__(self, exponent: int) -> "FactoredRational":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = FactoredRational.one()
        for _ in range(exponent):
            result = result * self
        return result

    def evaluate(self, k, p) -> Rational:
        """Exact value at a rational point (k, p)"""
        value = self.prefactor
        for form, exponent in self.factors:
            base = form.evaluate(to_rational(k), to_rational(p))
            if base == 0 and exponent < 0:
                raise ZeroDivisionError(f"factor {form} vanishes at k={k}, p={p}")
            value = value * qpow(base, exponent)
        return value

    def substitute_blowup(self, t: RationalLike) -> FracElement:
        """Element of QQ(k) obtained by p = t(k+1)"""
        return substitute_blowup(self, t)

    def blowup_limit(self, t) -> ExtendedScalar:
        return blowup_limit(self, t)

    def limit_k(self, point: RationalLike = -1) -> FracElement:
        """
        Limit k -> point at free p, as an element of QQ(p).

        Raises ZeroDivisionError when a p-free factor makes the limit infinite.
        """
        point = to_rational(point)
        value = P_FIELD.ground_new(self.prefactor)
        order = 0
        for form, exponent in self.factors:
            const = form.a * point + form.c
            if form.b == 0 and const == 0:
                order += exponent
                continue
            value = value * (P * form.b + const) ** exponent
        if order > 0 or self.is_zero:
            return P_FIELD.zero
        if order < 0:
            raise ZeroDivisionError(f"{self} has a pole at k={point} for generic p")
        return value

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        pieces = [format_rational(self.prefactor)]
        for form, exponent in self.factors:
            pieces.append(f"({form})^{exponent}" if exponent != 1 else f"({form})")
        return " * ".join(pieces)


def substitute_blowup(phi: FactoredRational, t: RationalLike) -> FracElement:
    """
    Substitute p = t(k+1) and expand into QQ(k).

    A numerator form that becomes identically zero gives the zero function;
    a denominator form that does raises DegenerateParameters.
    """
    t = to_rational(t)
    if phi.is_zero:
        return K_FIELD.zero
    value = K_FIELD.ground_new(phi.prefactor)
    vanishes = False
    for form, exponent in phi.factors:
        slope, const = form.blowup_line(t)
        if slope == 0 and const == 0:
            if exponent < 0:
                raise DegenerateParameters(f"denominator factor {form} vanishes identically at t={format_rational(t)}", t=t)
            vanishes = True
            continue
        value = value * uni_linear(slope, const) ** exponent
    if vanishes:
        return K_FIELD.zero
    return value


def blowup_limit(phi: FactoredRational, t) -> ExtendedScalar:
    """
    lim_{k->-1} phi(k, t(k+1)) read from the factors.

    A form a*k + b*p + c with c == a becomes (a + b*t)(k+1) after the
    substitution and contributes one order of vanishing; any other form
    contributes its nonzero value c - a. Net positive order gives 0, net
    negative order gives infinity, and order zero gives the product of the
    surviving values as a rational function of t. For t = infinity only
    the t-degree and leading coefficient of that function matter.

    At a finite t a numerator form that vanishes identically makes the
    limit 0; a denominator form that does raises DegenerateParameters.
    """
    if not isinstance(t, ExtendedScalar):
        t = ExtendedScalar.finite(t)
    if t.is_undefined:
        raise ValueError("blow-up slope must be finite or infinite")
    if phi.is_zero:
        return ExtendedScalar.finite(0)

    order = 0
    value = phi.prefactor
    lead = phi.prefactor
    t_degree = 0
    identically_zero = False
    for form, exponent in phi.factors:
        if not form.vanishes_on_blowup:
            base = form.c - form.a
            value = value * qpow(base, exponent)
            lead = lead * qpow(base, exponent)
            continue
        order += exponent
        if t.is_finite:
            slope = form.a + form.b * t.value
            if slope == 0:
                if exponent < 0:
                    raise DegenerateParameters(
                        f"denominator factor {form} vanishes identically at t={format_rational(t.value)}", t=t.value
                    )
                identically_zero = True
            else:
                value = value * qpow(slope, exponent)
        elif form.b != 0:
            t_degree += exponent
            lead = lead * qpow(form.b, exponent)
        else:
            lead = lead * qpow(form.a, exponent)

    if identically_zero or order > 0:
        return ExtendedScalar.finite(0)
    if order < 0:
        return INFINITY
    if t.is_finite:
        return ExtendedScalar.finite(value)
    if t_degree > 0:
        return INFINITY
    if t_degree < 0:
        return ExtendedScalar.finite(0)
    return ExtendedScalar.finite(lead)
