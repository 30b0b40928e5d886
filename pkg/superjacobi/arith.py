"""
Exact scalars used everywhere in the package.

Rationals are sympy ``QQ`` elements. Rational functions of the single
parameter k live in the field ``K_FIELD = QQ(k)``, and their numerators in
the ring ``K_POLY_RING = QQ[k]``; rational functions of p
(for k -> -1 limits taken at free p) live in ``P_FIELD = QQ(p)``.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Optional, Union

from sympy import QQ, field
from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement

logger = logging.getLogger(__name__)

Rational = QQ.dtype

K_FIELD, K = field("k", QQ)
K_DOMAIN = K_FIELD.to_domain()

# QQ[k], where numerators live while a denominator is carried separately
K_POLY_RING = K_FIELD.ring
K_POLY = K_POLY_RING.gens[0]
K_POLY_DOMAIN = K_POLY_RING.to_domain()

P_FIELD, P = field("p", QQ)

RationalLike = Union[int, str, Fraction, "Rational"]


def to_rational(value: RationalLike) -> Rational:
    """Convert an int, Fraction, "a/b" string or QQ element to QQ"""
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    return QQ.convert(value)


def parse_rational(text: str) -> Rational:
    """Parse "a", "-a" or "a/b" into an exact rational"""
    text = text.strip()
    try:
        if "/" in text:
            num, den = text.split("/", 1)
            den_value = int(den)
            if den_value == 0:
                raise ZeroDivisionError(text)
            return QQ(int(num), den_value)
        return QQ(int(text))
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"'{text}' is not a rational number (expected a or a/b)") from e


def format_rational(value: Rational) -> str:
    """Format as "num/den", always with an explicit denominator"""
    value = to_rational(value)
    return f"{value.numerator}/{value.denominator}"


def qpow(value: Rational, exponent: int) -> Rational:
    """Integer power of a rational, negative exponents allowed"""
    if exponent >= 0:
        return value ** exponent
    return QQ(1) / (value ** (-exponent))


def uni_linear(slope: Rational, const: Rational) -> FracElement:
    """The element slope*k + const of QQ(k)"""
    return K * to_rational(slope) + to_rational(const)


def coerce_scalar(domain, value):
    """Convert value into an element of a coefficient domain (QQ, QQ[k] or QQ(k))"""
    if domain == QQ:
        return to_rational(value)
    if domain.is_PolynomialRing:
        target = domain.ring
        if isinstance(value, PolyElement):
            if value.ring != target:
                raise TypeError(f"cannot use an element of {value.ring} as a coefficient in {target}")
            return value
        if isinstance(value, FracElement):
            if value.field.ring != target or value.denom != 1:
                raise TypeError(f"{value.as_expr()} is not a polynomial coefficient in {target}")
            return value.numer
        return target.ground_new(to_rational(value))
    target = domain.field
    if isinstance(value, FracElement):
        if value.field != target:
            raise TypeError(f"cannot use an element of {value.field} as a coefficient in {target}")
        return value
    if isinstance(value, PolyElement) and value.ring == target.ring:
        return target.new(value)
    return target.ground_new(to_rational(value))


class ScalarKind(Enum):
    FINITE = "finite"
    INFINITY = "inf"
    UNDEFINED = "undefined"


@dataclass(frozen=True)
class ExtendedScalar:
    """A rational, or the symbols Infinity / Undefined"""

    kind: ScalarKind
    value: Optional[Rational] = None

    @classmethod
    def finite(cls, value: RationalLike) -> "ExtendedScalar":
        return cls(ScalarKind.FINITE, to_rational(value))

    @classmethod
    def parse(cls, text: str) -> "ExtendedScalar":
        """Parse "a/b", "inf" or "infinity" """
        if text.strip().lower() in ("inf", "infinity", "oo"):
            return INFINITY
        return cls.finite(parse_rational(text))

    @property
    def is_finite(self) -> bool:
        return self.kind is ScalarKind.FINITE

    @property
    def is_infinite(self) -> bool:
        return self.kind is ScalarKind.INFINITY

    @property
    def is_undefined(self) -> bool:
        return self.kind is ScalarKind.UNDEFINED

    def as_rational(self) -> Rational:
        if not self.is_finite:
            raise ValueError(f"{self} is not a finite value")
        return self.value

    def __mul__(self, other: "ExtendedScalar") -> "ExtendedScalar":
        other = as_extended(other)
        if self.is_undefined or other.is_undefined:
            return UNDEFINED
        if self.is_finite and other.is_finite:
            return ExtendedScalar.finite(self.value * other.value)
        # at least one infinite factor
        for side in (self, other):
            if side.is_finite and side.value == 0:
                return UNDEFINED
        return INFINITY

    __rmul__ = __mul__

    def __add__(self, other: "ExtendedScalar") -> "ExtendedScalar":
        other = as_extended(other)
        if self.is_undefined or other.is_undefined:
            return UNDEFINED
        if self.is_finite and other.is_finite:
            return ExtendedScalar.finite(self.value + other.value)
        if self.is_infinite and other.is_infinite:
            return UNDEFINED
        return INFINITY

    __radd__ = __add__

    def __neg__(self) -> "ExtendedScalar":
        if self.is_finite:
            return ExtendedScalar.finite(-self.value)
        return self

    def __str__(self) -> str:
        if self.is_finite:
            return format_rational(self.value)
        return self.kind.value


INFINITY = ExtendedScalar(ScalarKind.INFINITY)
UNDEFINED = ExtendedScalar(ScalarKind.UNDEFINED)


def as_extended(value) -> ExtendedScalar:
    if isinstance(value, ExtendedScalar):
        return value
    return ExtendedScalar.finite(value)


def order_at(poly, point: Rational):
    """Multiplicity of the root `point` of a univariate polynomial, and the cofactor"""
    linear = poly.ring.gens[0] - point
    order = 0
    while poly and poly(point) == 0:
        poly = poly.exquo(linear)
        order += 1
    return order, poly


def uni_limit(f: FracElement, point: RationalLike) -> ExtendedScalar:
    """
    Limit of a univariate rational function as its variable tends to `point`.

    Returns a finite value, or INFINITY for a pole. A 0/0 left after
    cancellation cannot happen for canonical input and is asserted.
    """
    point = to_rational(point)
    num, den = f.numer, f.denom
    if not num:
        return ExtendedScalar.finite(0)

    num_order, num_rest = order_at(num, point)
    den_order, den_rest = order_at(den, point)
    if num_order > den_order:
        return ExtendedScalar.finite(0)
    if num_order < den_order:
        return INFINITY

    num_value, den_value = num_rest(point), den_rest(point)
    assert num_value != 0 and den_value != 0, "0/0 after cancellation"
    return ExtendedScalar.finite(QQ.convert(num_value) / QQ.convert(den_value))


def uni_value(f: FracElement, point: RationalLike) -> Rational:
    """Finite limit of f at point, raising ZeroDivisionError at a pole"""
    limit = uni_limit(f, point)
    if not limit.is_finite:
        raise ZeroDivisionError(f"{f.as_expr()} has a pole at {point}")
    return limit.value
