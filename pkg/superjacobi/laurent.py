"""
Sparse Laurent polynomials in x, y1..yn.

A LaurentPoly is a sympy polynomial with no monomial factor, times a
monomial x^s0 y1^s1 ... (the shift). The pair is normalised so the
representation of every Laurent polynomial is unique.
"""

import logging
from functools import lru_cache
from typing import Callable, Dict, Iterator, Mapping, Sequence, Tuple

from sympy import QQ, ring
from sympy.polys.orderings import lex
from sympy.polys.polyerrors import ExactQuotientFailed

from superjacobi.arith import coerce_scalar
from superjacobi.errors import DivisionNotExact

logger = logging.getLogger(__name__)

Exponent = Tuple[int, ...]


class LaurentRing:
    """Laurent polynomials in x, y1..yn over a coefficient domain (QQ, QQ[k] or QQ(k))"""

    def __init__(self, n: int, domain=QQ):
        if n < 0:
            raise ValueError(f"number of y variables must be nonnegative, got {n}")
        self.n = n
        self.nvars = n + 1
        self.names = ("x",) + tuple(f"y{j}" for j in range(1, n + 1))
        self.domain = domain
        self.poly_ring = ring(",".join(self.names), domain, lex)[0]
        self._zero_shift = (0,) * self.nvars

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentRing) and self.poly_ring == other.poly_ring

    def __hash__(self) -> int:
        return hash(self.poly_ring)

    def __repr__(self) -> str:
        return f"LaurentRing(n={self.n}, domain={self.domain})"

    def convert(self, value):
        return coerce_scalar(self.domain, value)

    def zero(self) -> "LaurentPoly":
        return LaurentPoly(self, self.poly_ring.zero, self._zero_shift)

    def one(self) -> "LaurentPoly":
        return self.constant(1)

    def constant(self, value) -> "LaurentPoly":
        return self.monomial(self._zero_shift, value)

    def monomial(self, exponent: Sequence[int], coeff=1) -> "LaurentPoly":
        exponent = tuple(exponent)
        if len(exponent) != self.nvars:
            raise ValueError(f"exponent {exponent} has length {len(exponent)}, expected {self.nvars}")
        coeff = self.convert(coeff)
        if not coeff:
            return self.zero()
        poly = self.poly_ring.from_dict({self._zero_shift: coeff})
        return LaurentPoly(self, poly, exponent)

    def variable(self, index: int, power: int = 1) -> "LaurentPoly":
        """x for index 0, y_j for index j, raised to `power`"""
        exponent = [0] * self.nvars
        exponent[index] = power
        return self.monomial(exponent)

    def from_terms(self, terms: Mapping[Exponent, object]) -> "LaurentPoly":
        """Build from an {exponent vector: coefficient} mapping"""
        cleaned: Dict[Exponent, object] = {}
        for exponent, coeff in terms.items():
            exponent = tuple(exponent)
            if len(exponent) != self.nvars:
                raise ValueError(f"exponent {exponent} has length {len(exponent)}, expected {self.nvars}")
            coeff = self.convert(coeff)
            if coeff:
                cleaned[exponent] = coeff
        if not cleaned:
            return self.zero()
        mins = tuple(min(e[i] for e in cleaned) for i in range(self.nvars))
        poly = self.poly_ring.from_dict(
            {tuple(e - m for e, m in zip(exponent, mins)): c for exponent, c in cleaned.items()}
        )
        return LaurentPoly(self, poly, mins)


@lru_cache(maxsize=None)
def laurent_ring(n: int, domain=QQ) -> LaurentRing:
    """Shared LaurentRing instance per (n, domain)"""
    return LaurentRing(n, domain)


class LaurentPoly:
    """An immutable Laurent polynomial: shift monomial times a polynomial without monomial factor"""

    __slots__ = ("ring", "poly", "shift")

    def __init__(self, ring: LaurentRing, poly, shift: Sequence[int]):
        self.ring = ring
        self.poly, self.shift = _normalize(ring, poly, tuple(shift))

    # --- inspection -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.poly

    def __bool__(self) -> bool:
        return bool(self.poly)

    def __len__(self) -> int:
        return len(self.poly)

    def terms(self) -> Iterator[Tuple[Exponent, object]]:
        for monom, coeff in self.poly.iterterms():
            yield tuple(m + s for m, s in zip(monom, self.shift)), coeff

    def as_dict(self) -> Dict[Exponent, object]:
        return dict(self.terms())

    def coefficient(self, exponent: Sequence[int]):
        monom = tuple(e - s for e, s in zip(exponent, self.shift))
        if any(m < 0 for m in monom):
            return self.ring.domain.zero
        return self.poly.get(monom, self.ring.domain.zero)

    def sorted_terms(self):
        """Terms in graded-lex order, highest total degree first"""
        return sorted(self.terms(), key=lambda item: (sum(item[0]), item[0]), reverse=True)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            if self.is_zero() and other == 0:
                return True
            return NotImplemented
        return self.ring == other.ring and self.shift == other.shift and self.poly == other.poly

    __hash__ = None

    # --- ring operations ------------------------------------------------

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.ring, -self.poly, self.shift)

    def __add__(self, other) -> "LaurentPoly":
        other = self._coerce(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        common = tuple(min(a, b) for a, b in zip(self.shift, other.shift))
        left = self.poly.mul_monom(tuple(s - c for s, c in zip(self.shift, common)))
        right = other.poly.mul_monom(tuple(s - c for s, c in zip(other.shift, common)))
        return LaurentPoly(self.ring, left + right, common)

    __radd__ = __add__

    def __sub__(self, other) -> "LaurentPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "LaurentPoly":
        return self._coerce(other) - self

    def __mul__(self, other) -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return self.scale(other)
        self._check_ring(other)
        shift = tuple(a + b for a, b in zip(self.shift, other.shift))
        return LaurentPoly(self.ring, self.poly * other.poly, shift)

    def __rmul__(self, other) -> "LaurentPoly":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "LaurentPoly":
        if exponent < 0:
            raise ValueError("negative powers are only defined for monomials")
        result = self.ring.one()
        for _ in range(exponent):
            result = result * self
        return result

    def scale(self, scalar) -> "LaurentPoly":
        scalar = self.ring.convert(scalar)
        if not scalar:
            return self.ring.zero()
        return LaurentPoly(self.ring, self.poly.mul_ground(scalar), self.shift)

    # --- structural maps --------------------------------------------------

    def euler_derivative(self, index: int) -> "LaurentPoly":
        """z d/dz for the variable z of the given index"""
        shift = self.shift[index]
        terms = {}
        for monom, coeff in self.poly.iterterms():
            degree = monom[index] + shift
            if degree:
                terms[monom] = coeff * degree
        if not terms:
            return self.ring.zero()
        return LaurentPoly(self.ring, self.ring.poly_ring.from_dict(terms), self.shift)

    def map_exponents(self, transform: Callable[[Exponent], Exponent], sign: int = 1) -> "LaurentPoly":
        """Apply a map on exponent vectors (which must be injective on the support)"""
        terms = {}
        for exponent, coeff in self.terms():
            terms[tuple(transform(exponent))] = coeff * sign
        return self.ring.from_terms(terms)

    def map_coefficients(self, convert: Callable, target: LaurentRing) -> "LaurentPoly":
        """Apply `convert` to every coefficient, landing in `target`"""
        return target.from_terms({exponent: convert(coeff) for exponent, coeff in self.terms()})

    def evaluate(self, point: Sequence):
        """Value at x = point[0], y_j = point[j]"""
        total = self.ring.domain.zero
        for exponent, coeff in self.terms():
            term = coeff
            for value, power in zip(point, exponent):
                term = term * _power(value, power)
            total += term
        return total

    # --- helpers ------------------------------------------------------------

    def _check_ring(self, other: "LaurentPoly"):
        if self.ring != other.ring:
            raise TypeError(f"cannot combine polynomials of {self.ring} and {other.ring}")

    def _coerce(self, other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            self._check_ring(other)
            return other
        return self.ring.constant(other)

    def __repr__(self) -> str:
        return f"LaurentPoly({format_terms(self)})"


def _power(value, exponent: int):
    if exponent >= 0:
        return value ** exponent
    return 1 / (value ** (-exponent))


def _normalize(ring: LaurentRing, poly, shift: Exponent):
    """Pull the monomial content of poly into the shift"""
    if not poly:
        return ring.poly_ring.zero, ring._zero_shift
    mins = [min(monom[i] for monom in poly.itermonoms()) for i in range(ring.nvars)]
    if any(mins):
        poly = ring.poly_ring.from_dict(
            {tuple(m - d for m, d in zip(monom, mins)): coeff for monom, coeff in poly.iterterms()}
        )
        shift = tuple(s + d for s, d in zip(shift, mins))
    return poly, shift


def laurent_exact_div(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """The q with q*g = f, raising DivisionNotExact when there is none"""
    f._check_ring(g)
    if g.is_zero():
        raise ZeroDivisionError("Laurent division by zero")
    if f.is_zero():
        return f.ring.zero()
    try:
        quotient = f.poly.exquo(g.poly)
    except ExactQuotientFailed as e:
        raise DivisionNotExact(f, g) from e
    shift = tuple(a - b for a, b in zip(f.shift, g.shift))
    return LaurentPoly(f.ring, quotient, shift)


def format_terms(f: LaurentPoly, coeff_format: Callable = str) -> str:
    """One-line rendering "c * x^a y1^b + ..." in graded-lex order"""
    if f.is_zero():
        return "0"
    return " + ".join(format_monomial(f.ring, exponent, coeff, coeff_format) for exponent, coeff in f.sorted_terms())


def format_monomial(ring: LaurentRing, exponent: Exponent, coeff, coeff_format: Callable = str) -> str:
    powers = " ".join(f"{name}^{power}" for name, power in zip(ring.names, exponent) if power)
    text = coeff_format(coeff)
    return f"{text} * {powers}" if powers else text
