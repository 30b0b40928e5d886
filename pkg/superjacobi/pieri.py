"""
Pieri coefficients of the super Jacobi polynomials of type BC(1,n).

Off-diagonal coefficients are products of affine forms in (k, p), built
factor by factor so that their blow-up limits are exact. The diagonal
coefficient is the only sum and is kept as a DiagonalCoeff.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import List, Tuple, Union

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
    as_extended,
    uni_limit,
)
from superjacobi.errors import NotAdjacent, NotInS, NotSingular
from superjacobi.factored import AffineForm, FactoredRational
from superjacobi.partitions import (
    ParamCtx,
    Partition,
    b_chain,
    box_difference,
    classify,
    in_hook,
    minus_set,
    plus_set,
    s_set,
    s_stat,
)

logger = logging.getLogger(__name__)

KF = AffineForm.k()
PF = AffineForm.p()
HALF = QQ(1, 2)


class HookKind(Enum):
    C0 = "C0"
    CMINUS = "Cminus"
    CPLUS = "Cplus"


def _a(lam: Partition, i: int) -> AffineForm:
    """a_i = lambda_i + k*i"""
    return AffineForm(i, 0, lam.part(i))


def hook_products(lam: Partition, x: AffineForm, which: HookKind) -> FactoredRational:
    """Product over the boxes (i, j) of lambda of c0, c- or c+ at x"""
    result = FactoredRational.one()
    for box in lam.boxes():
        i, j = box.row, box.col
        if which is HookKind.C0:
            form = AffineForm(i - 1, 0, j - 1) + x
        elif which is HookKind.CMINUS:
            form = AffineForm(-(lam.column(j) - i), 0, lam.part(i) - j) + x
        else:
            form = AffineForm(lam.column(j) + i, 0, lam.part(i) + j) + x
        result = result * FactoredRational.of(form)
    return result


def j_norm(lam: Partition, ctx: ParamCtx) -> FactoredRational:
    """J_lambda(1), the value at x = y = 1"""
    h = ctx.h
    numerator = hook_products(lam, h + PF * HALF, HookKind.C0) * hook_products(
        lam, KF + h - PF * HALF + HALF, HookKind.C0
    )
    denominator = hook_products(lam, -KF, HookKind.CMINUS) * hook_products(lam, h * 2 - 1, HookKind.CPLUS)
    return numerator / denominator * QQ(4) ** lam.size


def _step(lam: Partition, mu: Partition) -> Tuple[int, int]:
    step = box_difference(lam, mu)
    if step is None:
        raise NotAdjacent(lam, mu)
    return step


def _pair(numerator: AffineForm, denominator: AffineForm) -> FactoredRational:
    return FactoredRational.of(numerator) / FactoredRational.of(denominator)


def v_coeff(lam: Partition, mu: Partition, ctx: ParamCtx) -> FactoredRational:
    """V_mu(lambda) for mu one box away from lambda; a_i is read from lambda"""
    i, sign = _step(lam, mu)
    h = ctx.h
    l = lam.length
    a_i = _a(lam, i)

    if sign > 0:
        result = FactoredRational.one()
        for r in range(1, l + 2):
            if r == i:
                continue
            a_r = _a(lam, r)
            result = result * _pair(a_i - a_r - KF, a_i - a_r)
            result = result * _pair(a_i + a_r + h * 2 - KF, a_i + a_r + h * 2)
            if result.is_zero:
                return result
        result = result * _pair(a_i - KF + h + PF * HALF, a_i - KF * (l + 2))
        result = result * _pair(a_i + KF * (l + 1) + h * 2, a_i + h)
        return result * _pair(a_i + h - PF * HALF + HALF, a_i + h + HALF)

    result = FactoredRational.one()
    for r in range(1, l + 1):
        if r == i:
            continue
        a_r = _a(lam, r)
        result = result * _pair(a_i - a_r + KF, a_i - a_r)
        result = result * _pair(a_i + a_r + KF + h * 2, a_i + a_r + h * 2)
    result = result * _pair(a_i + KF + h - PF * HALF, a_i + KF * (l + 1) + h * 2)
    result = result * _pair(a_i - KF * l, a_i + h)
    return result * _pair(a_i + h + PF * HALF - HALF, a_i + h - HALF)


@dataclass(frozen=True)
class DiagonalCoeff:
    """a_{lambda,lambda} = head - sum(terms)"""

    lam: Partition
    n: int
    head: FactoredRational
    terms: Tuple[FactoredRational, ...]

    def evaluate(self, k: RationalLike, p: RationalLike) -> Rational:
        value = self.head.evaluate(k, p)
        for term in self.terms:
            value -= term.evaluate(k, p)
        return value

    def substitute_blowup(self, t: RationalLike) -> FracElement:
        value = self.head.substitute_blowup(t)
        for term in self.terms:
            value -= term.substitute_blowup(t)
        return value

    def limit_k(self, point: RationalLike = -1) -> FracElement:
        value = self.head.limit_k(point)
        for term in self.terms:
            value -= term.limit_k(point)
        return value

    def blowup_limit(self, t) -> ExtendedScalar:
        t = as_extended(t)
        if t.is_infinite:
            return uni_limit(a_limit(self.lam, self.lam, self.n), 0)
        return uni_limit(self.substitute_blowup(t.value), -1)


PieriCoeff = Union[FactoredRational, DiagonalCoeff]


@lru_cache(maxsize=None)
def a_coeff(lam: Partition, mu: Partition, ctx: ParamCtx) -> PieriCoeff:
    """
    Coefficient of J_mu in p_1 J_lambda.

    mu may be any partition one box away from lambda; the value is zero
    when mu leaves H(1, n).
    """
    if mu == lam:
        head = FactoredRational.ratio([ctx.h * 2 + PF], [KF]) * -1
        terms = tuple(v_coeff(lam, nu, ctx) for nu in plus_set(lam) + minus_set(lam))
        return DiagonalCoeff(lam, ctx.n, head, terms)
    if box_difference(lam, mu) is None:
        raise NotInS(lam, mu)
    v = v_coeff(lam, mu, ctx)
    if v.is_zero:
        return v
    return v * j_norm(lam, ctx) / j_norm(mu, ctx)


def a2_factored(lam: Partition, mu: Partition, ctx: ParamCtx) -> FactoredRational:
    """The factor of a_{lambda,mu} that carries all of its p-dependence"""
    i, sign = _step(lam, mu)
    h2 = ctx.h * 2
    h = ctx.h
    l = lam.length
    a_i = _a(lam, i)

    if sign > 0:
        j = lam.part(i) + 1
        col = lam.column(j)
        result = FactoredRational.constant(HALF * HALF)
        for r in range(1, l + 2):
            if r != i:
                a_r = _a(lam, r)
                result = result * _pair(a_i + a_r + h2 - KF, a_i + a_r + h2)
        result = result * _pair(a_i + KF * (l + 1) + h2, a_i + h)
        result = result * _pair(a_i + h - PF * HALF + HALF, a_i + h + HALF)
        result = result * _pair(AffineForm(2 * i, 0, 2 * j - 1) + h2, AffineForm(i, 0, j - 1) + h - PF * HALF + HALF)
        for s in range(1, j):
            base = a_i + KF * lam.column(s) + s + h2
            result = result * _pair(base, base - 1)
        for r in range(1, i):
            base = _a(lam, r) + j + KF * col + h2 - 1
            result = result * _pair(base + KF, base)
        return result

    j = lam.part(i)
    col = lam.column(j)
    result = FactoredRational.constant(4)
    for r in range(1, l + 1):
        if r != i:
            a_r = _a(lam, r)
            result = result * _pair(a_i + a_r + h2 + KF, a_i + a_r + h2)
    result = result * _pair(a_i + KF + h - PF * HALF, a_i + KF * (l + 1) + h2)
    result = result / FactoredRational.of(a_i + h)
    result = result * _pair(a_i + h + PF * HALF - HALF, a_i + h - HALF)
    result = result * FactoredRational.ratio(
        [AffineForm(i - 1, 0, j - 1) + h + PF * HALF, AffineForm(i, 0, j - 1) + h - PF * HALF + HALF],
        [AffineForm(2 * i, 0, 2 * j - 1) + h2],
    )
    for s in range(1, j):
        base = a_i + KF * lam.column(s) + s + h2 - 1
        result = result * _pair(base - 1, base)
    for r in range(1, i):
        base = _a(lam, r) + j + KF * col + h2 - 1
        result = result * _pair(base - KF, base)
    return result


def a_limit(lam: Partition, mu: Partition, n: int) -> FracElement:
    """lim_{k -> -1} a_{lambda,mu} at q = 0, as a rational function of p"""
    if mu == lam:
        value = P * (P + 1) / (1 - 2 * n - 2 * lam.length - P) + P
        for i in range(1, lam.length + 1):
            shifted = 2 * (lam.part(i) - i) + 2 - 2 * n - P
            value -= 2 * P * (P + 1) / ((shifted - 1) * (shifted + 1))
        return value
    step = box_difference(lam, mu)
    if step is None:
        raise NotInS(lam, mu)
    i, sign = step
    if sign > 0:
        return P_FIELD.one
    # 2 a~_i + 2 h~ + p, which does not depend on p
    x = 2 * (lam.part(i) - i) + 2 - 2 * n
    numerator = x * (x - 2 * P - 2) * (x - 1) * (x - 2 * P - 1)
    denominator = (x - P - 1) ** 2 * (x - P) * (x - P - 2)
    return P_FIELD.one * numerator / denominator


def limit_table_coeff(lam: Partition, mu: Partition, n: int) -> Rational:
    """a_{lambda,mu} at (k, p, q) = (-1, 0, 0)"""
    if mu == lam:
        return QQ(0)
    step = box_difference(lam, mu)
    if step is None:
        raise NotInS(lam, mu)
    i, sign = step
    if sign < 0 and i == 1:
        if lam.part(1) == n:
            return QQ(0)
        if lam.part(1) == n + 1:
            return QQ(2)
    return QQ(1)


def a_blowup(lam: Partition, mu: Partition, t, n: int) -> ExtendedScalar:
    """lim_{k -> -1} a_{lambda,mu}(k, t(k+1), 0)"""
    return a_coeff(lam, mu, ParamCtx(n)).blowup_limit(as_extended(t))


def b_coeff(lam: Partition, t: RationalLike, ctx: ParamCtx) -> FracElement:
    """b_lambda at p = t(k+1) as an element of QQ(k)"""
    chain = b_chain(lam, ctx.n)
    value = K_FIELD.one
    for parent, child in zip(chain, chain[1:]):
        value = value * a_coeff(parent, child, ctx).substitute_blowup(t)
    return value


def b_coeff_blowup(lam: Partition, t, n: int, method: str = "closed") -> ExtendedScalar:
    """Blow-up limit of b_lambda, from the closed form or from the chain of a-coefficients"""
    t = as_extended(t)
    diagram = classify(lam, n)
    if not diagram.is_singular:
        raise NotSingular(lam, n)
    if method == "chain":
        chain = b_chain(lam, n)
        value = ExtendedScalar.finite(1)
        for parent, child in zip(chain, chain[1:]):
            value = value * a_blowup(parent, child, t, n)
        return value
    if method != "closed":
        raise ValueError(f"unknown method '{method}' (expected closed or chain)")

    l = lam.column(diagram.j)
    if l == 1:
        if t.is_infinite:
            return ExtendedScalar.finite(0)
        if t.value == 0:
            return INFINITY
        return ExtendedScalar.finite(2 / t.value)
    if t.is_infinite:
        return ExtendedScalar.finite(1)
    if t.value == l - 1:
        return INFINITY
    return ExtendedScalar.finite((t.value - l + 2) / (t.value - l + 1))


def euler_coeff(lam: Partition, mu: Partition, n: int) -> int:
    """Coefficient of E(mu) in E(box) E(lambda)"""
    if mu not in s_set(lam, n):
        raise NotInS(lam, mu)
    if mu == lam:
        return 0
    if mu.part(1) == lam.part(1) - 1:
        if lam.part(1) == n:
            return 0
        if lam.part(1) == n + 1:
            return 2
    return (-1) ** ((s_stat(lam) - s_stat(mu)) % 2)


def pieri_terms(lam: Partition, ctx: ParamCtx) -> List[Tuple[Partition, PieriCoeff]]:
    """(mu, a_{lambda,mu}) for mu in S(lambda), the members of H(1, n) only"""
    return [(mu, a_coeff(lam, mu, ctx)) for mu in s_set(lam, ctx.n, ctx.m) if in_hook(mu, ctx.m, ctx.n)]
