"""
Partitions and the diagram combinatorics behind translation functors:
S(lambda), eigenvalues, singular diagrams, the sharp operation and the
sets F_lambda(mu), pi_lambda.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Optional, Tuple

from sympy import QQ
from sympy.utilities.iterables import partitions as integer_partitions

from superjacobi.errors import LengthMismatch, NotSingular, PreconditionError
from superjacobi.factored import AffineForm

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Partition:
    """A weakly decreasing tuple of positive parts"""

    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(part) for part in self.parts)
        if any(part <= 0 for part in parts):
            raise PreconditionError(f"partition parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise PreconditionError(f"partition parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """Parse "3,1" (or "-" / "" for the empty partition)"""
        text = text.strip()
        if text in ("", "-", "()", "0"):
            return cls(())
        try:
            return cls(tuple(int(piece) for piece in text.replace(" ", "").strip("()").split(",") if piece))
        except ValueError as e:
            raise PreconditionError(f"'{text}' is not a partition (expected e.g. 3,1 or -)") from e

    def __str__(self) -> str:
        return ",".join(str(part) for part in self.parts) if self.parts else "-"

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def part(self, i: int) -> int:
        """lambda_i with 1-based i, zero beyond the length"""
        return self.parts[i - 1] if 1 <= i <= len(self.parts) else 0

    @cached_property
    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for part in self.parts if part >= j) for j in range(1, self.parts[0] + 1)))

    def column(self, j: int) -> int:
        """lambda'_j"""
        return self.conjugate.part(j)

    def boxes(self) -> Iterator["Box"]:
        for i, part in enumerate(self.parts, start=1):
            for j in range(1, part + 1):
                yield Box(i, j)

    def add_box(self, row: int) -> "Partition":
        parts = list(self.parts) + [0]
        parts[row - 1] += 1
        return Partition(tuple(part for part in parts if part))

    def remove_box(self, row: int) -> "Partition":
        parts = list(self.parts)
        parts[row - 1] -= 1
        return Partition(tuple(part for part in parts if part))

    def remove_from_row(self, row: int, count: int) -> "Partition":
        parts = list(self.parts)
        parts[row - 1] -= count
        return Partition(tuple(part for part in parts if part))

    def addable_rows(self) -> List[int]:
        return [i for i in range(1, self.length + 2) if i == 1 or self.part(i - 1) > self.part(i)]

    def removable_rows(self) -> List[int]:
        return [i for i in range(1, self.length + 1) if self.part(i) > self.part(i + 1)]

    def without_first_row(self) -> "Partition":
        return Partition(self.parts[1:])


@dataclass(frozen=True, order=True)
class Box:
    row: int
    col: int


@dataclass(frozen=True)
class DiagramClass:
    """Regular, or singular with the witness j of lambda_1 - n = lambda'_j + n - j"""

    j: Optional[int] = None
    witnesses: Tuple[int, ...] = ()

    @property
    def is_singular(self) -> bool:
        return self.j is not None

    def __str__(self) -> str:
        return f"singular(j={self.j})" if self.is_singular else "regular"


@dataclass(frozen=True)
class ParamCtx:
    """
    Parameters of the deformed operator.

    k and p stay symbolic as the coordinates of AffineForm; q is fixed to 0.
    """

    n: int
    m: int = 1

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise PreconditionError(f"m and n must be nonnegative, got m={self.m}, n={self.n}")

    @property
    def h(self) -> AffineForm:
        """h = -k*m - n - p/2 - q with q = 0"""
        return AffineForm(-self.m, QQ(-1, 2), -self.n)


def conjugate(lam: Partition) -> Partition:
    return lam.conjugate


def in_hook(lam: Partition, m: int, n: int) -> bool:
    """lambda in H(m, n), i.e. lambda_{m+1} <= n"""
    return lam.part(m + 1) <= n


def plus_set(lam: Partition) -> List[Partition]:
    """Unrestricted S+(lambda)"""
    return sorted(lam.add_box(row) for row in lam.addable_rows())


def minus_set(lam: Partition) -> List[Partition]:
    """Unrestricted S-(lambda)"""
    return sorted(lam.remove_box(row) for row in lam.removable_rows())


def add_remove_sets(lam: Partition, m: int, n: int) -> Tuple[List[Partition], List[Partition]]:
    """(S+(lambda) and S-(lambda)) intersected with H(m, n)"""
    if not in_hook(lam, m, n):
        raise PreconditionError(f"{lam} is not in H({m},{n})")
    plus = [mu for mu in plus_set(lam) if in_hook(mu, m, n)]
    minus = [mu for mu in minus_set(lam) if in_hook(mu, m, n)]
    return plus, minus


def s_set(lam: Partition, n: int, m: int = 1) -> List[Partition]:
    """S(lambda) = S+ u S- u {lambda}, restricted to H(m, n)"""
    plus, minus = add_remove_sets(lam, m, n)
    return sorted(plus + minus + [lam])


def box_difference(lam: Partition, mu: Partition) -> Optional[Tuple[int, int]]:
    """(row, +1) if mu adds a box to lambda in that row, (row, -1) if it removes one, else None"""
    rows = max(lam.length, mu.length)
    diff = [(i, mu.part(i) - lam.part(i)) for i in range(1, rows + 1) if mu.part(i) != lam.part(i)]
    if len(diff) != 1 or abs(diff[0][1]) != 1:
        return None
    return diff[0]


def n_stat(lam: Partition) -> int:
    """n(lambda) = sum (i-1) lambda_i"""
    return sum((i - 1) * part for i, part in enumerate(lam.parts, start=1))


def s_stat(lam: Partition) -> int:
    """s(lambda) = lambda_2 + lambda_3 + ..."""
    return sum(lam.parts[1:])


def eigenvalue(lam: Partition, ctx: ParamCtx) -> AffineForm:
    """c_lambda as an affine form in (k, p)"""
    if ctx.m != 1:
        return eigenvalue_general(lam, ctx)
    total = AffineForm()
    for box in lam.boxes():
        total = total + AffineForm(2 * (box.row - 1), -1, 2 * (box.col - 1) + 1 - 2 * ctx.n)
    return total


def eigenvalue_general(lam: Partition, ctx: ParamCtx) -> AffineForm:
    """c_lambda = 2n(lambda') + 2k n(lambda) + |lambda| (2h + 2k + 1)"""
    base = AffineForm(2 * n_stat(lam), 0, 2 * n_stat(lam.conjugate))
    return base + (ctx.h * 2 + AffineForm(2, 0, 1)) * lam.size


def tilde_c(lam: Partition, n: int) -> int:
    """c_lambda at (k, p, q) = (-1, 0, 0)"""
    return sum(2 * box.col - 2 * box.row + 1 - 2 * n for box in lam.boxes())


def classify(lam: Partition, n: int) -> DiagramClass:
    """Singular iff lambda_1 - n = lambda'_j + n - j for some 1 <= j <= n"""
    witnesses = tuple(j for j in range(1, n + 1) if lam.part(1) - n == lam.column(j) + n - j)
    if not witnesses:
        return DiagramClass()
    if len(witnesses) > 1:
        logger.warning("partition %s has several singular witnesses %s for n=%d; using j=%d", lam, witnesses, n, witnesses[0])
    return DiagramClass(witnesses[0], witnesses)


def _witness(lam: Partition, n: int) -> int:
    diagram = classify(lam, n)
    if not diagram.is_singular:
        raise NotSingular(lam, n)
    return diagram.j


def r_of(lam: Partition, n: int) -> int:
    """r(lambda) = |{r : j <= r <= n, lambda'_r = lambda'_j}|"""
    j = _witness(lam, n)
    return sum(1 for r in range(j, n + 1) if lam.column(r) == lam.column(j))


def sharp(lam: Partition, n: int) -> Partition:
    """Delete r boxes from the first row and r boxes from row lambda'_j"""
    j = _witness(lam, n)
    r = r_of(lam, n)
    return lam.remove_from_row(1, r).remove_from_row(lam.column(j), r)


def sharp_chain(lam: Partition, n: int) -> List[Partition]:
    """[lambda, lambda#, lambda##, ...] ending at the first regular diagram"""
    j = _witness(lam, n)
    chain = [lam]
    while classify(chain[-1], n).is_singular:
        chain.append(sharp(chain[-1], n))
    expected = lam.column(j) + 1
    if len(chain) != expected:
        raise LengthMismatch(lam, expected, len(chain))
    return chain


def b_chain(lam: Partition, n: int) -> List[Partition]:
    """
    lambda^(0), ..., lambda^(r): lambda^(0) drops r boxes from the first row,
    each next diagram drops one more box from row lambda'_j.
    """
    j = _witness(lam, n)
    r = r_of(lam, n)
    row = lam.column(j)
    chain = [lam.remove_from_row(1, r)]
    for _ in range(r):
        chain.append(chain[-1].remove_box(row))
    return chain


def partitions_in_hook(max_size: int, n: int, m: int = 1) -> List[Partition]:
    """All lambda in H(m, n) with |lambda| <= max_size, by size then lexicographically"""
    found = []
    for size in range(max_size + 1):
        for multiplicities in integer_partitions(size):
            parts = sorted((part for part, count in multiplicities.items() for _ in range(count) if part > 0), reverse=True)
            lam = Partition(tuple(parts))
            if in_hook(lam, m, n):
                found.append(lam)
    return sorted(found, key=lambda lam: (lam.size, lam.parts))


def collision_pairs(lam: Partition, n: int) -> List[Tuple[Partition, Partition]]:
    """Pairs mu < nu of S(lambda) with equal specialised eigenvalues"""
    members = s_set(lam, n)
    return [
        (mu, nu)
        for a, mu in enumerate(members)
        for nu in members[a + 1:]
        if tilde_c(mu, n) == tilde_c(nu, n)
    ]


def f_set(lam: Partition, mu: Partition, n: int) -> List[Partition]:
    """F_lambda(mu) = {nu in S(mu) : c~_nu = c~_lambda}"""
    target = tilde_c(lam, n)
    return [nu for nu in s_set(mu, n) if tilde_c(nu, n) == target]


def f_set_closed_form(lam: Partition, mu: Partition, n: int) -> Optional[List[Partition]]:
    """
    Closed form of F_lambda(mu) in the four situations where it is known,
    None otherwise.
    """
    step = box_difference(mu, lam)
    if step is not None and step[1] == 1:
        if lam.part(1) <= n and mu.part(1) <= n:
            return [lam]
        if step[0] == 1 and lam.part(1) > n:
            diagram = classify(lam, n)
            if not diagram.is_singular:
                return [lam]
            # the foot of column j of mu has to be a removable corner
            j = diagram.j
            if mu.column(j + 1) < mu.column(j):
                return sorted([lam, mu.remove_box(mu.column(j))])
            return [lam]
        return None

    if lam.part(1) <= lam.part(2):
        return None
    parent = lam.remove_box(1)
    if classify(parent, n).is_singular and mu == sharp(parent, n):
        if classify(lam, n).is_singular:
            return [sharp(lam, n)]
        return []
    return None


def pi_set(lam: Partition, n: int) -> List[Partition]:
    """pi_lambda = {lambda} if lambda_1 <= n, else F_lambda(pi_mu) with mu = lambda minus its last first-row box"""
    if lam.part(1) <= n:
        return [lam]
    mu = lam.remove_box(1)
    result = set()
    for nu in pi_set(mu, n):
        result.update(f_set(lam, nu, n))
    return sorted(result)


def canonical_parent(lam: Partition) -> Partition:
    """lambda minus its bottom-most removable corner"""
    return lam.remove_box(lam.length)
