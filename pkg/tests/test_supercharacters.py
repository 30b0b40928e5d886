from itertools import combinations_with_replacement

import pytest
from sympy import QQ

from superjacobi.errors import MultipleAtypicalRoots, NotSingular, PreconditionError
from superjacobi.laurent import laurent_ring
from superjacobi.partitions import Partition, sharp_chain
from superjacobi.supercharacters import (
    OddRoot,
    Weight,
    alternate,
    atypical_root,
    chi_of,
    e_sch,
    euler_pieri_check,
    irr_sch,
    kac_decomposition_check,
    kac_sch,
    l_sch,
    ls_formula,
    projective_sch,
    rho,
    rho0,
    signed_e,
    theta,
    weight_monomial,
    weyl_denominator,
    weyl_group,
)

R1 = laurent_ring(1)
X = R1.variable(0)
XI = R1.variable(0, -1)
U = X + XI
V = R1.variable(1) + R1.variable(1, -1)


def P(*parts):
    return Partition(tuple(parts))


def test_weights():
    assert rho0(2) == Weight(0, (2, 1))
    assert rho(1) == Weight(-1, (1,))
    assert Weight(1, (2,)).pairing(Weight(3, (1,))) == 1
    assert Weight(0, (2, 1)).is_dominant()
    assert not Weight(0, (1, 2)).is_dominant()
    assert str(Weight(2, (0, -1))) == "2eps - 1delta2"
    assert OddRoot(2, -1).weight(2) == Weight(1, (0, -1))


def test_weyl_group():
    assert len(weyl_group(1)) == 2
    assert len(weyl_group(2)) == 8
    assert sum(det for _, _, det in weyl_group(2)) == 0


def test_weyl_denominator_is_alternating():
    assert weyl_denominator(1) == R1.variable(1) - R1.variable(1, -1)
    for n in (1, 2):
        assert alternate(weight_monomial(rho0(n))) == weyl_denominator(n)


def test_atypicality():
    assert atypical_root(Weight(2, (0,)), 1) == OddRoot(1, 1)
    assert atypical_root(Weight(0, (0,)), 1) == OddRoot(1, -1)
    assert atypical_root(Weight(1, (0,)), 1) is None
    with pytest.raises(MultipleAtypicalRoots):
        atypical_root(Weight(5, (1, 2)), 2)


def test_kac_and_irreducible_characters():
    assert kac_sch(Weight(0, (0,)), 1) == R1.one() + R1.variable(0, -2) - XI * V
    assert irr_sch(Weight(0, (0,)), 1) == R1.one()
    assert kac_sch(Weight(2, (0,)), 1) == X * X - X * V + 1
    assert irr_sch(Weight(2, (0,)), 1) == X * X - X * V
    with pytest.raises(PreconditionError):
        kac_sch(Weight(0, (0, 0)), 1)


def test_chi_of():
    assert chi_of(P(3, 1, 1), 1) == Weight(3, (2,))
    assert chi_of(P(), 2) == Weight(0, (0, 0))
    with pytest.raises(PreconditionError):
        chi_of(P(2, 2), 1)


@pytest.mark.parametrize(
    "lam, expected",
    [
        (P(1), U - V),
        (P(2), U * U - U * V),
        (P(1, 1), U * V - V * V),
        (P(3), U ** 3 - 2 * U - U * U * V + 2 * V),
    ],
)
def test_euler_characters(lam, expected):
    assert e_sch(lam, 1) == expected


def test_irreducible_character_of_a_singular_diagram():
    assert l_sch(P(2), 1) == X * X - X * V + R1.variable(0, -2) - XI * V


def test_ls_formula_agrees_below_the_wall():
    for lam in (P(1), P(1, 1), P(1, 1, 1)):
        assert ls_formula(lam, 1) == e_sch(lam, 1)
    with pytest.raises(PreconditionError):
        ls_formula(P(2), 1)


def test_theta_symmetry_above_the_wall():
    assert theta(e_sch(P(3), 1)) == e_sch(P(3), 1)
    assert theta(X) == XI


def test_signs_and_projective_cover():
    assert signed_e(P(1, 1), 1) == V * V - U * V
    assert projective_sch(P(2), 1) == e_sch(P(2), 1)


@pytest.mark.parametrize("lam", [P(), P(1), P(2), P(1, 1), P(2, 1), P(3)])
def test_euler_pieri_identity(lam):
    assert euler_pieri_check(lam, 1)


@pytest.mark.parametrize("lam", [P(2), P(3, 1)])
def test_kac_decomposition(lam):
    assert kac_decomposition_check(lam, 1)


def test_kac_decomposition_needs_a_singular_diagram():
    with pytest.raises(NotSingular):
        kac_decomposition_check(P(1), 1)


R2 = laurent_ring(2)
U2 = R2.variable(0) + R2.variable(0, -1)
SP4_WEIGHTS = [R2.variable(1), R2.variable(1, -1), R2.variable(2), R2.variable(2, -1)]


def sym_power(degree):
    """Character of Sym^degree of the 4-dimensional sp(4) module"""
    total = R2.zero()
    for factors in combinations_with_replacement(SP4_WEIGHTS, degree):
        term = R2.one()
        for factor in factors:
            term = term * factor
        total = total + term
    return total


# L(chi) for (1,1) and (1,1,1) at n = 2, by hand from the Weyl character formula
L_11 = U2 * sym_power(1) - sym_power(2) - 1
L_111 = U2 * sym_power(2) - sym_power(3) - sym_power(1)


def test_small_irreducibles_for_n2():
    assert sym_power(2).evaluate((QQ(1),) * 3) == 10
    assert ls_formula(P(1, 1), 2) == L_11
    assert l_sch(P(1, 1), 2) == L_11
    assert ls_formula(P(1, 1, 1), 2) == L_111
    assert l_sch(P(1, 1, 1), 2) == L_111


def test_kac_decomposition_of_3_1_for_n2():
    assert sharp_chain(P(3, 1), 2) == [P(3, 1), P(1, 1)]
    chi = chi_of(P(3, 1), 2)
    assert chi == Weight(3, (1, 0))
    assert chi_of(P(1, 1), 2) == Weight(1, (1, 0))
    assert atypical_root(chi, 2) == OddRoot(2, 1)
    assert atypical_root(Weight(1, (1, 0)), 2) == OddRoot(2, -1)

    kac = kac_sch(chi, 2)
    assert kac.sorted_terms()[0] == ((3, 1, 0), 1)
    assert kac.evaluate((QQ(1),) * 3) == 0
    # s(3,1) = s(1,1) = 1, so the second composition factor comes with +1
    assert kac == irr_sch(chi, 2) + L_11
    assert kac_decomposition_check(P(3, 1), 2)


def test_alternating_kac_expansion_of_4_2_1_for_n2():
    chain = sharp_chain(P(4, 2, 1), 2)
    assert chain == [P(4, 2, 1), P(3, 1, 1), P(1, 1, 1)]
    assert [chi_of(lam, 2) for lam in chain] == [Weight(4, (2, 1)), Weight(3, (2, 0)), Weight(1, (2, 0))]
    assert atypical_root(Weight(4, (2, 1)), 2) == OddRoot(2, 1)

    # -L(4,2,1) = -K(4,2,1) - K(3,1,1) + L(1,1,1), with s = 3, 2, 2 along the chain
    irr = irr_sch(Weight(4, (2, 1)), 2)
    assert irr == kac_sch(Weight(4, (2, 1)), 2) + kac_sch(Weight(3, (2, 0)), 2) - L_111
    assert irr.evaluate((QQ(1),) * 3) == 4
    assert kac_decomposition_check(P(4, 2, 1), 2)
