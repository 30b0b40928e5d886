"""
Supercharacters of osp(2,2n) and of the supergroup OSP(2,2n).

Characters are Laurent polynomials over QQ in x = e^eps, y_j = e^delta_j.
Kac and irreducible supercharacters come from alternation over the Weyl
group S_n x Z_2^n followed by exact division by the Weyl denominator.
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Optional, Tuple

from sympy import QQ
from sympy.combinatorics import Permutation

from superjacobi.errors import MultipleAtypicalRoots, NotSingular, PreconditionError
from superjacobi.laurent import LaurentPoly, LaurentRing, laurent_exact_div, laurent_ring
from superjacobi.partitions import Partition, classify, in_hook, s_set, s_stat, sharp_chain
from superjacobi.pieri import euler_coeff

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Weight:
    """e*eps + d_1 delta_1 + ... + d_n delta_n"""

    e: int
    d: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "e", int(self.e))
        object.__setattr__(self, "d", tuple(int(v) for v in self.d))

    @property
    def n(self) -> int:
        return len(self.d)

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.e + other.e, tuple(a + b for a, b in zip(self.d, other.d)))

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(self.e - other.e, tuple(a - b for a, b in zip(self.d, other.d)))

    def pairing(self, other: "Weight") -> int:
        """(eps, eps) = 1, (delta_j, delta_j) = -1, all other pairings 0"""
        return self.e * other.e - sum(a * b for a, b in zip(self.d, other.d))

    def is_dominant(self) -> bool:
        """Member of P+: d weakly decreasing and nonnegative"""
        return all(v >= 0 for v in self.d) and all(self.d[i] >= self.d[i + 1] for i in range(self.n - 1))

    def __str__(self) -> str:
        pieces = [f"{self.e}eps"] + [f"{v}delta{j}" for j, v in enumerate(self.d, start=1) if v]
        return " + ".join(pieces).replace("+ -", "- ")


@dataclass(frozen=True)
class OddRoot:
    """eps + sign * delta_index"""

    index: int
    sign: int

    def weight(self, n: int) -> Weight:
        d = [0] * n
        d[self.index - 1] = self.sign
        return Weight(1, tuple(d))

    def __str__(self) -> str:
        return f"eps {'+' if self.sign > 0 else '-'} delta{self.index}"


def rho0(n: int) -> Weight:
    """Half sum of the even positive roots: sum (n+1-i) delta_i"""
    return Weight(0, tuple(n + 1 - i for i in range(1, n + 1)))


def rho(n: int) -> Weight:
    """rho_0 - rho_1 with rho_1 = n eps"""
    return rho0(n) - Weight(n, (0,) * n)


def odd_positive_roots(n: int) -> Tuple[OddRoot, ...]:
    return tuple(OddRoot(i, sign) for i in range(1, n + 1) for sign in (1, -1))


def atypical_root(chi: Weight, n: int) -> Optional[OddRoot]:
    """The odd positive root orthogonal to chi + rho, or None for a typical weight"""
    shifted = chi + rho(n)
    found = [alpha for alpha in odd_positive_roots(n) if shifted.pairing(alpha.weight(n)) == 0]
    if len(found) > 1:
        raise MultipleAtypicalRoots(chi, found)
    return found[0] if found else None


def char_ring(n: int) -> LaurentRing:
    return laurent_ring(n, QQ)


def weight_monomial(weight: Weight) -> LaurentPoly:
    return char_ring(weight.n).monomial((weight.e,) + weight.d)


@lru_cache(maxsize=None)
def weyl_group(n: int) -> Tuple[Tuple[Tuple[int, ...], Tuple[int, ...], int], ...]:
    """(permutation, sign flips, determinant) for every element of S_n x Z_2^n"""
    elements = []
    for perm in permutations(range(n)):
        parity = Permutation(list(perm)).signature()
        for flips in product((1, -1), repeat=n):
            det = parity
            for flip in flips:
                det *= flip
            elements.append((perm, flips, det))
    return tuple(elements)


def alternate(f: LaurentPoly) -> LaurentPoly:
    """sum over w in W_0 of det(w) w(f); x is left alone"""
    n = f.ring.n
    total = f.ring.zero()
    for perm, flips, det in weyl_group(n):

        def act(exponent, perm=perm, flips=flips):
            moved = [0] * n
            for i in range(n):
                moved[perm[i]] = flips[i] * exponent[i + 1]
            return (exponent[0],) + tuple(moved)

        total = total + f.map_exponents(act, det)
    return total


@lru_cache(maxsize=None)
def weyl_denominator(n: int) -> LaurentPoly:
    """prod (y_i - 1/y_i) * prod_{i<j} (v_i - v_j)"""
    ring = char_ring(n)
    result = ring.one()
    v = [ring.variable(j) + ring.variable(j, -1) for j in range(1, n + 1)]
    for j in range(1, n + 1):
        result = result * (ring.variable(j) - ring.variable(j, -1))
    for i in range(n):
        for j in range(i + 1, n):
            result = result * (v[i] - v[j])
    return result


def _odd_factor(ring: LaurentRing, alpha: OddRoot) -> LaurentPoly:
    """1 - e^{-alpha}"""
    exponent = [-1] + [0] * ring.n
    exponent[alpha.index] = -alpha.sign
    return ring.one() - ring.monomial(exponent)


def _kac_numerator(chi: Weight, n: int, skip: Optional[OddRoot] = None) -> LaurentPoly:
    ring = char_ring(n)
    numerator = weight_monomial(chi + rho0(n))
    for alpha in odd_positive_roots(n):
        if alpha != skip:
            numerator = numerator * _odd_factor(ring, alpha)
    return numerator


def _check_weight(chi: Weight, n: int):
    if chi.n != n:
        raise PreconditionError(f"weight {chi} has {chi.n} delta coordinates, expected {n}")


def kac_sch(chi: Weight, n: int) -> LaurentPoly:
    """Supercharacter of the Kac module K(chi)"""
    _check_weight(chi, n)
    return laurent_exact_div(alternate(_kac_numerator(chi, n)), weyl_denominator(n))


def irr_sch(chi: Weight, n: int) -> LaurentPoly:
    """Supercharacter of the irreducible module L(chi), chi in P+"""
    _check_weight(chi, n)
    alpha = atypical_root(chi, n)
    if alpha is not None:
        logger.debug("weight %s is atypical for %s", chi, alpha)
    return laurent_exact_div(alternate(_kac_numerator(chi, n, skip=alpha)), weyl_denominator(n))


def chi_of(lam: Partition, n: int) -> Weight:
    """lambda_1 eps + sum mu'_j delta_j, mu = lambda without its first row"""
    if not in_hook(lam, 1, n):
        raise PreconditionError(f"{lam} is not in H(1,{n})")
    mu = lam.without_first_row()
    return Weight(lam.part(1), tuple(mu.column(j) for j in range(1, n + 1)))


def theta(f: LaurentPoly) -> LaurentPoly:
    """x <-> 1/x"""
    return f.map_exponents(lambda exponent: (-exponent[0],) + tuple(exponent[1:]))


def ls_formula(lam: Partition, n: int) -> LaurentPoly:
    """sch E(lambda) for lambda_1 <= n as {y^(mu'+rho_0) prod_{i<=lambda_1} (u - v_i)} / L_0"""
    if lam.part(1) > n:
        raise PreconditionError(f"{lam} has lambda_1 > n={n}")
    ring = char_ring(n)
    mu = lam.without_first_row()
    top = Weight(0, tuple(mu.column(j) for j in range(1, n + 1))) + rho0(n)
    bracket = weight_monomial(top)
    u = ring.variable(0) + ring.variable(0, -1)
    for i in range(1, lam.part(1) + 1):
        bracket = bracket * (u - ring.variable(i) - ring.variable(i, -1))
    return laurent_exact_div(alternate(bracket), weyl_denominator(n))


@lru_cache(maxsize=None)
def e_sch(lam: Partition, n: int) -> LaurentPoly:
    """sch E(lambda): L(chi) when lambda_1 <= n, else K(chi) + theta K(chi)"""
    chi = chi_of(lam, n)
    if lam.part(1) <= n:
        return irr_sch(chi, n)
    kac = kac_sch(chi, n)
    return kac + theta(kac)


@lru_cache(maxsize=None)
def l_sch(lam: Partition, n: int) -> LaurentPoly:
    """sch L(lambda): L(chi) when lambda_1 <= n, else L(chi) + theta L(chi)"""
    chi = chi_of(lam, n)
    irr = irr_sch(chi, n)
    if lam.part(1) <= n:
        return irr
    return irr + theta(irr)


def _signed(value: LaurentPoly, lam: Partition) -> LaurentPoly:
    return -value if s_stat(lam) % 2 else value


def signed_e(lam: Partition, n: int) -> LaurentPoly:
    """(-1)^s(lambda) sch E(lambda)"""
    return _signed(e_sch(lam, n), lam)


def signed_l(lam: Partition, n: int) -> LaurentPoly:
    """(-1)^s(lambda) sch L(lambda)"""
    return _signed(l_sch(lam, n), lam)


def projective_sch(lam: Partition, n: int) -> LaurentPoly:
    """Supercharacter of the projective cover, with the sign (-1)^s"""
    value = signed_e(lam, n)
    diagram = classify(lam, n)
    if diagram.is_singular and lam.column(diagram.j) > 1:
        value = value + signed_e(sharp_chain(lam, n)[1], n)
    return value


def euler_pieri_check(lam: Partition, n: int) -> bool:
    """sch E(box) sch E(lambda) = sum d_{lambda,mu} sch E(mu)"""
    left = e_sch(Partition((1,)), n) * e_sch(lam, n)
    right = char_ring(n).zero()
    for mu in s_set(lam, n):
        d = euler_coeff(lam, mu, n)
        if d:
            right = right + e_sch(mu, n) * d
    if left != right:
        logger.warning("Euler Pieri identity fails for %s, n=%d", lam, n)
        return False
    return True


def kac_decomposition_check(lam: Partition, n: int) -> bool:
    """
    sch K(chi_lam) = sch L(chi_lam) + (-1)^(s(lam)-s(lam#)) sch L(chi_lam#), and the
    alternating expansion of (-1)^s(lam) sch L(chi_lam) along the sharp chain.
    """
    diagram = classify(lam, n)
    if not diagram.is_singular:
        raise NotSingular(lam, n)
    chain = sharp_chain(lam, n)
    chi = chi_of(lam, n)
    following = chi_of(chain[1], n)
    sign = -1 if (s_stat(lam) - s_stat(chain[1])) % 2 else 1
    if kac_sch(chi, n) != irr_sch(chi, n) + irr_sch(following, n) * sign:
        logger.warning("Kac decomposition fails for %s, n=%d", lam, n)
        return False

    l = lam.column(diagram.j)
    expansion = char_ring(n).zero()
    for s in range(l):
        term = _signed(kac_sch(chi_of(chain[s], n), n), chain[s])
        expansion = expansion + term if s % 2 == 0 else expansion - term
    last = _signed(irr_sch(chi_of(chain[l], n), n), chain[l])
    expansion = expansion + last if l % 2 == 0 else expansion - last
    if expansion != _signed(irr_sch(chi, n), lam):
        logger.warning("alternating Kac expansion fails for %s, n=%d", lam, n)
        return False
    return True
