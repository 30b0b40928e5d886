"""
Polynomial engine: the deformed CMS operator, Jacobi polynomials by the
spectral-projector recursion, translation functors, the I basis, and the
specialisations SJ_lambda(t), SJ_lambda(infinity), SI_lambda.
"""

import logging
import threading
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence

from sympy import QQ
from sympy.polys.fields import FracElement
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyElement

from superjacobi.arith import (
    K,
    K_DOMAIN,
    K_FIELD,
    K_POLY,
    K_POLY_DOMAIN,
    K_POLY_RING,
    ExtendedScalar,
    Rational,
    RationalLike,
    as_extended,
    coerce_scalar,
    format_rational,
    order_at,
    to_rational,
)
from superjacobi.config import get_settings
from superjacobi.errors import DegenerateParameters, PoleAtLimit, PreconditionError
from superjacobi.factored import AffineForm
from superjacobi.laurent import LaurentPoly, LaurentRing, laurent_exact_div, laurent_ring
from superjacobi.partitions import (
    ParamCtx,
    Partition,
    canonical_parent,
    classify,
    eigenvalue,
    in_hook,
    sharp_chain,
    s_set,
    tilde_c,
)
from superjacobi.pieri import a_coeff, b_coeff, limit_table_coeff, pieri_terms

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Specialization:
    """
    Where the operator coefficients live.

    On the blow-up line p = t(k+1) scalars are elements of QQ(k), or of
    QQ[k] when a denominator is carried separately; at the point
    (k, p) = (-1, 0) they are rationals.
    """

    domain: object
    k: object
    p: object
    t: Optional[Rational] = None

    @classmethod
    def blowup(cls, t: RationalLike) -> "Specialization":
        t = to_rational(t)
        return cls(K_DOMAIN, K, (K + 1) * t, t)

    @classmethod
    def blowup_polynomial(cls, t: RationalLike) -> "Specialization":
        """The blow-up line with scalars kept in QQ[k]"""
        t = to_rational(t)
        return cls(K_POLY_DOMAIN, K_POLY, (K_POLY + 1) * t, t)

    @classmethod
    def limit_point(cls) -> "Specialization":
        return cls(QQ, QQ(-1), QQ(0), None)

    def value(self, form: AffineForm):
        return form.evaluate(self.k, self.p)

    def ring(self, n: int) -> LaurentRing:
        return laurent_ring(n, self.domain)


def apply_cms(f: LaurentPoly, ctx: ParamCtx, spec: Specialization) -> LaurentPoly:
    """
    The deformed CMS operator with q = 0 (only m = 1).

    Every quotient is taken first and must be exact; f outside the
    invariant algebra raises DivisionNotExact.
    """
    if ctx.m != 1:
        raise PreconditionError(f"the operator is implemented for m = 1 only, got m={ctx.m}")
    ring = f.ring
    if f.is_zero():
        return f
    k = ring.convert(spec.k)
    p = ring.convert(spec.p)
    one = ring.one()
    x = ring.variable(0)
    ys = [ring.variable(j) for j in range(1, ctx.n + 1)]
    d = [f.euler_derivative(index) for index in range(ctx.n + 1)]

    result = d[0].euler_derivative(0)
    for j in range(1, ctx.n + 1):
        result = result + d[j].euler_derivative(j) * k

    for i in range(1, ctx.n + 1):
        for j in range(i + 1, ctx.n + 1):
            y_i, y_j = ys[i - 1], ys[j - 1]
            result = result - (y_i + y_j) * laurent_exact_div(d[i] - d[j], y_i - y_j)
            result = result - (y_i * y_j + one) * laurent_exact_div(d[i] + d[j], y_i * y_j - one)

    result = result - ((x + one) * laurent_exact_div(d[0], x - one)) * p

    for j in range(1, ctx.n + 1):
        y = ys[j - 1]
        result = result - ((y + one) * laurent_exact_div(d[j], y - one)) * p
        result = result - ((y * y + one) * laurent_exact_div(d[j], y * y - one)) * (1 - k)
        result = result - (x + y) * laurent_exact_div(d[0] - d[j] * k, x - y)
        result = result - (x * y + one) * laurent_exact_div(d[0] + d[j] * k, x * y - one)
    return result


def p1_polynomial(ring: LaurentRing, spec: Specialization) -> LaurentPoly:
    """x + 1/x + k^-1 (y_1 + 1/y_1 + ... + y_n + 1/y_n)"""
    x_part = ring.variable(0) + ring.variable(0, -1)
    y_part = ring.zero()
    for j in range(1, ring.n + 1):
        y_part = y_part + ring.variable(j) + ring.variable(j, -1)
    return x_part + y_part * (1 / ring.convert(spec.k))


def p1_multiply(f: LaurentPoly, ctx: ParamCtx, spec: Specialization) -> LaurentPoly:
    return f * p1_polynomial(f.ring, spec)


def p1_numerator(ring: LaurentRing) -> LaurentPoly:
    """k p_1 = k(x + 1/x) + y_1 + 1/y_1 + ... + y_n + 1/y_n, over QQ[k]"""
    k = ring.convert(K_POLY)
    x_part = ring.variable(0) + ring.variable(0, -1)
    y_part = ring.zero()
    for j in range(1, ring.n + 1):
        y_part = y_part + ring.variable(j) + ring.variable(j, -1)
    return x_part * k + y_part


def project(
    g: LaurentPoly,
    target,
    others: Iterable,
    ctx: ParamCtx,
    spec: Specialization,
) -> LaurentPoly:
    """prod over the eigenvalues c in others of (L - c)/(target - c), applied to g"""
    for c in others:
        gap = target - c
        g = (apply_cms(g, ctx, spec) - g * c) * (1 / gap)
    return g


@dataclass(frozen=True)
class JacobiPoly:
    lam: Partition
    t: Rational
    poly: LaurentPoly


@dataclass(frozen=True)
class ScaledPoly:
    """
    num / den with num a Laurent polynomial over QQ[k] and den in QQ[k].

    Built with ``reduced``, den is monic and shares no factor with every
    coefficient of num, so equal quotients have equal pairs.
    """

    num: LaurentPoly
    den: PolyElement

    @classmethod
    def reduced(cls, num: LaurentPoly, den: PolyElement) -> "ScaledPoly":
        if not den:
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            return cls(num, K_POLY_RING.one)
        common = den
        for _, coeff in num.terms():
            common = common.gcd(coeff)
            if common.is_ground:
                common = K_POLY_RING.one
                break
        den = den.exquo(common)
        lead = den.LC
        if common == 1 and lead == 1:
            return cls(num, den)
        num = num.map_coefficients(lambda c: c.exquo(common).quo_ground(lead), num.ring)
        return cls(num, den.quo_ground(lead))

    def to_field(self, ring: LaurentRing) -> LaurentPoly:
        """The same polynomial with coefficients in QQ(k)"""
        return self.num.map_coefficients(lambda c: K_FIELD.new(c, self.den), ring)


def combine(terms: Iterable, ring: LaurentRing) -> ScaledPoly:
    """sum of coeff * part for (part, coeff in QQ(k)) pairs, over one common denominator"""
    pieces = []
    for part, coeff in terms:
        coeff = coerce_scalar(K_DOMAIN, coeff)
        if coeff:
            pieces.append((part.num * coeff.numer, part.den * coeff.denom))
    common = K_POLY_RING.one
    for _, den in pieces:
        common = common.lcm(den)
    total = ring.zero()
    for num, den in pieces:
        total = total + num * common.exquo(den)
    return ScaledPoly.reduced(total, common)


@dataclass
class JBasisCombo:
    """A finite combination sum c_mu J_mu with coefficients in QQ(k)"""

    terms: Dict[Partition, FracElement] = field(default_factory=dict)

    @classmethod
    def single(cls, lam: Partition) -> "JBasisCombo":
        return cls({lam: K_FIELD.one})

    def add(self, lam: Partition, coeff: FracElement):
        value = self.terms.get(lam, K_FIELD.zero) + coeff
        if value:
            self.terms[lam] = value
        else:
            self.terms.pop(lam, None)

    def __add__(self, other: "JBasisCombo") -> "JBasisCombo":
        result = JBasisCombo(dict(self.terms))
        for lam, coeff in other.terms.items():
            result.add(lam, coeff)
        return result

    def scale(self, scalar) -> "JBasisCombo":
        if not scalar:
            return JBasisCombo()
        return JBasisCombo({lam: coeff * scalar for lam, coeff in self.terms.items()})

    def coefficient(self, lam: Partition) -> FracElement:
        return self.terms.get(lam, K_FIELD.zero)

    def __eq__(self, other) -> bool:
        return isinstance(other, JBasisCombo) and self.terms == other.terms

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"({coeff.as_expr()}) J[{lam}]" for lam, coeff in sorted(self.terms.items()))


@dataclass(frozen=True)
class SpecializedPoly:
    lam: Partition
    t: ExtendedScalar
    poly: LaurentPoly


class JacobiEngine:
    """
    Builds and memoises J_lambda and I_lambda for fixed n on the line p = t(k+1).

    Each J_lambda is kept as a ScaledPoly: the projector runs on numerators
    over QQ[k] and collects the eigenvalue gaps in one denominator, which is
    cancelled once per finished polynomial.

    The memo is guarded by a re-entrant lock, so one engine can be shared
    between threads; a single build runs sequentially.
    """

    def __init__(self, n: int, t: RationalLike):
        self.ctx = ParamCtx(n)
        self.t = to_rational(t)
        self.spec = Specialization.blowup(self.t)
        self.poly_spec = Specialization.blowup_polynomial(self.t)
        self.ring = self.spec.ring(n)
        self.num_ring = self.poly_spec.ring(n)
        self._scaled: Dict[Partition, ScaledPoly] = {}
        self._jacobi: Dict[Partition, LaurentPoly] = {}
        self._i_basis: Dict[Partition, JBasisCombo] = {}
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        return f"JacobiEngine(n={self.ctx.n}, t={format_rational(self.t)})"

    def eigenvalue(self, lam: Partition) -> FracElement:
        return self.spec.value(eigenvalue(lam, self.ctx))

    def eigenvalue_polynomial(self, lam: Partition) -> PolyElement:
        return self.poly_spec.value(eigenvalue(lam, self.ctx))

    def coefficient(self, lam: Partition, mu: Partition) -> FracElement:
        return a_coeff(lam, mu, self.ctx).substitute_blowup(self.t)

    def _check_hook(self, lam: Partition):
        if not in_hook(lam, 1, self.ctx.n):
            raise PreconditionError(f"{lam} is not in H(1,{self.ctx.n})")

    def scaled(self, lam: Partition) -> ScaledPoly:
        """J_lambda as numerator over QQ[k] and denominator"""
        self._check_hook(lam)
        with self._lock:
            cached = self._scaled.get(lam)
            if cached is not None:
                logger.debug("J[%s] cache hit (%r)", lam, self)
                return cached
            logger.debug("J[%s] cache miss (%r)", lam, self)
            part = self._build(lam)
            self._scaled[lam] = part
            return part

    def jacobi(self, lam: Partition) -> LaurentPoly:
        """J_lambda with coefficients in QQ(k)"""
        self._check_hook(lam)
        with self._lock:
            cached = self._jacobi.get(lam)
            if cached is None:
                cached = self.scaled(lam).to_field(self.ring)
                self._jacobi[lam] = cached
            return cached

    def _build(self, lam: Partition) -> ScaledPoly:
        if lam.size == 0:
            return ScaledPoly(self.num_ring.one(), K_POLY_RING.one)
        parent = canonical_parent(lam)
        target = self.eigenvalue_polynomial(lam)
        others = []
        for nu in s_set(parent, self.ctx.n):
            if nu == lam:
                continue
            c_nu = self.eigenvalue_polynomial(nu)
            if c_nu == target:
                raise DegenerateParameters(
                    f"c[{lam}] = c[{nu}] identically at t={format_rational(self.t)}", t=self.t, pair=(lam, nu)
                )
            others.append(c_nu)

        coeff = self.coefficient(parent, lam)
        if not coeff:
            raise DegenerateParameters(
                f"a[{parent},{lam}] vanishes identically at t={format_rational(self.t)}", t=self.t, pair=(parent, lam)
            )
        logger.debug("building J[%s] from J[%s] through %d projector factors", lam, parent, len(others))
        start = self.scaled(parent)
        num = start.num * p1_numerator(self.num_ring)
        den = start.den * K_POLY
        for c in others:
            num = apply_cms(num, self.ctx, self.poly_spec) - num * c
            den = den * (target - c)
        return ScaledPoly.reduced(num * coeff.denom, den * coeff.numer)

    def is_eigenfunction(self, lam: Partition) -> bool:
        """L J_lambda = c_lambda J_lambda, checked on the numerator"""
        part = self.scaled(lam)
        return apply_cms(part.num, self.ctx, self.poly_spec) == part.num * self.eigenvalue_polynomial(lam)

    def p1_parts(self, lam: Partition) -> ScaledPoly:
        """p_1 J_lambda"""
        part = self.scaled(lam)
        return ScaledPoly.reduced(part.num * p1_numerator(self.num_ring), part.den * K_POLY)

    def translation(self, combo: JBasisCombo, target: int) -> JBasisCombo:
        """Expand p_1 f by the Pieri rule and keep the J_mu with c~_mu = target"""
        result = JBasisCombo()
        for lam, coeff in combo.terms.items():
            for mu, a in pieri_terms(lam, self.ctx):
                if tilde_c(mu, self.ctx.n) != target:
                    continue
                result.add(mu, coeff * a.substitute_blowup(self.t))
        return result

    def i_basis(self, lam: Partition) -> JBasisCombo:
        if not in_hook(lam, 1, self.ctx.n):
            raise PreconditionError(f"{lam} is not in H(1,{self.ctx.n})")
        with self._lock:
            cached = self._i_basis.get(lam)
            if cached is not None:
                return cached
            if lam.part(1) <= self.ctx.n:
                combo = JBasisCombo.single(lam)
            else:
                combo = self.translation(self.i_basis(lam.remove_box(1)), tilde_c(lam, self.ctx.n))
            self._i_basis[lam] = combo
            return combo

    def realize_parts(self, combo: JBasisCombo) -> ScaledPoly:
        return combine(((self.scaled(lam), coeff) for lam, coeff in combo.terms.items()), self.num_ring)

    def realize(self, combo: JBasisCombo) -> LaurentPoly:
        return self.realize_parts(combo).to_field(self.ring)

    def b(self, lam: Partition) -> FracElement:
        return b_coeff(lam, self.t, self.ctx)

    def j_from_i(self, lam: Partition) -> JBasisCombo:
        """J_lambda = I_lambda - b_lambda I_lambda# + b_lambda b_lambda# I_lambda## - ..., expanded in the J basis"""
        if not classify(lam, self.ctx.n).is_singular:
            return self.i_basis(lam)
        chain = sharp_chain(lam, self.ctx.n)
        total = JBasisCombo()
        weight = K_FIELD.one
        for s, nu in enumerate(chain):
            sign = 1 if s % 2 == 0 else -1
            total = total + self.i_basis(nu).scale(weight * sign)
            if s + 1 < len(chain):
                weight = weight * self.b(nu)
        return total


@lru_cache(maxsize=None)
def get_engine(n: int, t: Rational) -> JacobiEngine:
    """Shared engine per (n, t)"""
    return JacobiEngine(n, t)


def build_jacobi(lam: Partition, ctx: ParamCtx, t: RationalLike) -> JacobiPoly:
    t = to_rational(t)
    return JacobiPoly(lam, t, get_engine(ctx.n, t).jacobi(lam))


def translation(combo: JBasisCombo, target: int, ctx: ParamCtx, t: RationalLike) -> JBasisCombo:
    return get_engine(ctx.n, to_rational(t)).translation(combo, target)


def build_i_poly(lam: Partition, ctx: ParamCtx, t: RationalLike) -> JBasisCombo:
    return get_engine(ctx.n, to_rational(t)).i_basis(lam)


def realize(combo: JBasisCombo, ctx: ParamCtx, t: RationalLike) -> LaurentPoly:
    return get_engine(ctx.n, to_rational(t)).realize(combo)


def j_from_i(lam: Partition, ctx: ParamCtx, t: RationalLike) -> JBasisCombo:
    return get_engine(ctx.n, to_rational(t)).j_from_i(lam)


def limit_at_minus_one(part: ScaledPoly, lam: Partition, t) -> LaurentPoly:
    """Coefficientwise k -> -1 limit of num/den; each coefficient must absorb the zero of den"""
    target = laurent_ring(part.num.ring.n, QQ)
    point = QQ(-1)
    order, rest = order_at(part.den, point)
    vanishing = (K_POLY + 1) ** order
    scale = 1 / QQ.convert(rest(point))
    terms = {}
    for exponent, coeff in part.num.terms():
        try:
            reduced = coeff.exquo(vanishing)
        except ExactQuotientFailed:
            raise PoleAtLimit(lam, t, exponent) from None
        terms[exponent] = QQ.convert(reduced(point)) * scale
    return target.from_terms(terms)


def _limit_jacobi(lam: Partition, n: int, t: Rational) -> SpecializedPoly:
    part = get_engine(n, t).scaled(lam)
    return SpecializedPoly(lam, ExtendedScalar.finite(t), limit_at_minus_one(part, lam, format_rational(t)))


def specialize_sj(lam: Partition, t, n: int, route: str = "formula") -> SpecializedPoly:
    """
    SJ_lambda(t) = lim_{k -> -1} J_lambda(k, t(k+1), 0).

    The formula route expands over the SJ(infinity) family along the sharp
    chain and is valid at every t where the limit exists. The limit route
    builds J_lambda at the fixed slope t and takes coefficientwise limits.
    """
    t = as_extended(t)
    if t.is_undefined:
        raise PreconditionError("t must be a rational or infinity")
    if route == "limit":
        if t.is_infinite:
            return sj_infinity(lam, n)
        return _limit_jacobi(lam, n, t.value)
    if route != "formula":
        raise ValueError(f"unknown route '{route}' (expected formula or limit)")

    diagram = classify(lam, n)
    if t.is_infinite or not diagram.is_singular:
        return SpecializedPoly(lam, t, sj_infinity(lam, n).poly)

    chain = sharp_chain(lam, n)
    l = lam.column(diagram.j)
    gap = t.value - l + 1
    if gap == 0:
        raise PoleAtLimit(lam, t)
    if t.value.denominator == 1 and t.value != l:
        logger.warning(
            "SJ[%s](%s): integer slope on a singular diagram; the value comes from the sharp-chain formula "
            "and the direct limit may be degenerate here",
            lam,
            t,
        )
    total = sj_infinity(lam, n).poly
    for s in range(1, l + 1):
        weight = QQ(2) / gap if s == l else QQ(1) / gap
        if s % 2:
            weight = -weight
        total = total + sj_infinity(chain[s], n).poly * weight
    return SpecializedPoly(lam, t, total)


@lru_cache(maxsize=None)
def _sj_infinity_pieri(lam: Partition, n: int) -> LaurentPoly:
    spec = Specialization.limit_point()
    ring = spec.ring(n)
    if lam.size == 0:
        return ring.one()
    ctx = ParamCtx(n)
    parent = canonical_parent(lam)
    target = tilde_c(lam, n)
    members = s_set(parent, n)
    others = sorted({tilde_c(kappa, n) for kappa in members} - {target})
    g = p1_multiply(_sj_infinity_pieri(parent, n), ctx, spec)
    g = project(g, QQ(target), [QQ(c) for c in others], ctx, spec)
    for kappa in members:
        if kappa != lam and tilde_c(kappa, n) == target:
            coeff = limit_table_coeff(parent, kappa, n)
            if coeff:
                logger.debug("SJ[%s](inf): removing collision with %s (coefficient %s)", lam, kappa, coeff)
                g = g - _sj_infinity_pieri(kappa, n) * coeff
    return g * (1 / limit_table_coeff(parent, lam, n))


def sj_infinity(lam: Partition, n: int, method: str = "pieri") -> SpecializedPoly:
    """SJ_lambda(infinity), by the specialised Pieri recursion or from the SI family"""
    if not in_hook(lam, 1, n):
        raise PreconditionError(f"{lam} is not in H(1,{n})")
    if method == "pieri":
        return SpecializedPoly(lam, ExtendedScalar.parse("inf"), _sj_infinity_pieri(lam, n))
    if method != "si":
        raise ValueError(f"unknown method '{method}' (expected pieri or si)")
    diagram = classify(lam, n)
    if not diagram.is_singular:
        return SpecializedPoly(lam, ExtendedScalar.parse("inf"), si_poly(lam, n, method="limit").poly)
    chain = sharp_chain(lam, n)
    total = laurent_ring(n, QQ).zero()
    for s in range(lam.column(diagram.j)):
        term = si_poly(chain[s], n, method="limit").poly
        total = total + term if s % 2 == 0 else total - term
    return SpecializedPoly(lam, ExtendedScalar.parse("inf"), total)


def si_poly(
    lam: Partition,
    n: int,
    method: str = "formula",
    retry_t: Optional[Sequence[RationalLike]] = None,
) -> SpecializedPoly:
    """
    SI_lambda, which does not depend on t.

    "formula" combines SJ(infinity) values; "limit" realises I_lambda on a
    line p = t(k+1) and takes coefficientwise limits, trying the slopes of
    retry_t in order until one is nondegenerate.
    """
    if not in_hook(lam, 1, n):
        raise PreconditionError(f"{lam} is not in H(1,{n})")
    infinity = ExtendedScalar.parse("inf")
    if method == "formula":
        poly = sj_infinity(lam, n).poly
        diagram = classify(lam, n)
        if diagram.is_singular and lam.column(diagram.j) > 1:
            poly = poly + sj_infinity(sharp_chain(lam, n)[1], n).poly
        return SpecializedPoly(lam, infinity, poly)
    if method != "limit":
        raise ValueError(f"unknown method '{method}' (expected formula or limit)")

    if retry_t is None:
        retry_t = get_settings().retry_t
    last_error = None
    for t in retry_t:
        t = to_rational(t)
        try:
            ctx = ParamCtx(n)
            combo = build_i_poly(lam, ctx, t)
            part = get_engine(n, t).realize_parts(combo)
            return SpecializedPoly(lam, infinity, limit_at_minus_one(part, lam, format_rational(t)))
        except DegenerateParameters as e:
            logger.warning("SI[%s]: t=%s is degenerate (%s); trying the next slope", lam, format_rational(t), e)
            last_error = e
    raise DegenerateParameters(
        f"every slope in the retry list is degenerate for SI[{lam}]", t=getattr(last_error, "t", None)
    )


def sj_from_si(lam: Partition, t, n: int) -> SpecializedPoly:
    """SJ_lambda(t) = sum_s (-1)^s B_s SI_{lambda^(s#)} along the sharp chain"""
    t = as_extended(t)
    diagram = classify(lam, n)
    if not diagram.is_singular:
        return SpecializedPoly(lam, t, si_poly(lam, n).poly)
    chain = sharp_chain(lam, n)
    l = lam.column(diagram.j)
    total = si_poly(lam, n).poly
    if t.is_infinite:
        for s in range(1, l):
            term = si_poly(chain[s], n).poly
            total = total - term if s % 2 else total + term
        return SpecializedPoly(lam, t, total)
    gap = t.value - l + 1
    if gap == 0:
        raise PoleAtLimit(lam, t)
    for s in range(1, l + 1):
        weight = QQ(2) / gap if s == l else (t.value - l + s + 1) / gap
        if s % 2:
            weight = -weight
        total = total + si_poly(chain[s], n).poly * weight
    return SpecializedPoly(lam, t, total)
