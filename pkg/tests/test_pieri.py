import pytest
from sympy import QQ

from superjacobi.arith import INFINITY, ExtendedScalar, uni_limit
from superjacobi.errors import NotAdjacent, NotInS, NotSingular
from superjacobi.factored import AffineForm, FactoredRational
from superjacobi.partitions import ParamCtx, Partition, partitions_in_hook, plus_set, s_set
from superjacobi.pieri import (
    DiagonalCoeff,
    HookKind,
    a2_factored,
    a_blowup,
    a_coeff,
    a_limit,
    b_coeff,
    b_coeff_blowup,
    euler_coeff,
    hook_products,
    j_norm,
    limit_table_coeff,
    pieri_terms,
    v_coeff,
)

CTX1 = ParamCtx(1)
POINT = (QQ(1, 3), QQ(2, 7))


def P(*parts):
    return Partition(tuple(parts))


def test_j_norm_of_empty_partition():
    assert j_norm(P(), CTX1) == FactoredRational.one()


@pytest.mark.parametrize("lam, mu", [(P(), P(1)), (P(1), P(2)), (P(2, 1), P(3, 1))])
def test_first_row_addition_is_one(lam, mu):
    assert a_coeff(lam, mu, CTX1).evaluate(*POINT) == 1


def test_second_row_addition_for_n_equal_one():
    # a_{(1),(1,1)} = 2/(1-k)
    assert a_coeff(P(1), P(1, 1), CTX1).evaluate(*POINT) == 3


def test_diagonal_coefficient_type():
    diagonal = a_coeff(P(1), P(1), CTX1)
    assert isinstance(diagonal, DiagonalCoeff)
    assert diagonal.limit_k(-1) == a_limit(P(1), P(1), 1)


def test_leaving_the_hook_gives_zero():
    for lam in partitions_in_hook(4, 1):
        for mu in plus_set(lam):
            if mu.part(2) > 1:
                assert a_coeff(lam, mu, CTX1).is_zero


def test_not_adjacent():
    with pytest.raises(NotInS):
        a_coeff(P(1), P(3), CTX1)
    with pytest.raises(NotAdjacent):
        v_coeff(P(1), P(3), CTX1)


@pytest.mark.parametrize(
    "lam, mu, expected",
    [
        (P(1), P(), 0),
        (P(2), P(1), 2),
        (P(1, 1), P(1), 1),
        (P(1), P(2), 1),
        (P(1), P(1), 0),
        (P(3), P(2), 1),
    ],
)
def test_limit_table(lam, mu, expected):
    assert limit_table_coeff(lam, mu, 1) == expected


def test_a_limit_for_removals():
    assert a_limit(P(1), P(), 1) == 0
    assert uni_limit(a_limit(P(2), P(1), 1), 0) == ExtendedScalar.finite(2)
    assert a_limit(P(1), P(2), 1) == 1


@pytest.mark.parametrize("n", [1, 2])
def test_a_limit_at_p_zero_is_the_table(n):
    for lam in partitions_in_hook(3, n):
        for mu in s_set(lam, n):
            assert uni_limit(a_limit(lam, mu, n), 0) == ExtendedScalar.finite(limit_table_coeff(lam, mu, n))


@pytest.mark.parametrize("lam, mu", [(P(2), P(1)), (P(1, 1), P(1)), (P(1), P(2)), (P(2, 1), P(2))])
def test_limit_k_matches_a_limit(lam, mu):
    assert a_coeff(lam, mu, CTX1).limit_k(-1) == a_limit(lam, mu, 1)


@pytest.mark.parametrize("lam, mu", [(P(1), P()), (P(2), P(1)), (P(1), P(1, 1)), (P(2, 1), P(3, 1))])
def test_a2_carries_the_p_dependence(lam, mu):
    assert not (a_coeff(lam, mu, CTX1) / a2_factored(lam, mu, CTX1)).depends_on_p()


def test_a_blowup_of_first_row_removal():
    # a_{(1), empty} tends to 2/t along p = t(k+1)
    assert a_blowup(P(1), P(), QQ(1, 2), 1) == ExtendedScalar.finite(4)
    assert a_blowup(P(1), P(), QQ(5, 3), 1) == ExtendedScalar.finite(QQ(6, 5))
    assert a_blowup(P(1), P(), INFINITY, 1) == ExtendedScalar.finite(0)


@pytest.mark.parametrize(
    "lam, t, expected",
    [
        (P(2), QQ(1, 2), ExtendedScalar.finite(4)),
        (P(2), INFINITY, ExtendedScalar.finite(0)),
        (P(2), QQ(0), INFINITY),
        (P(3, 1), QQ(1, 2), ExtendedScalar.finite(-1)),
        (P(3, 1), QQ(1), INFINITY),
        (P(3, 1), INFINITY, ExtendedScalar.finite(1)),
    ],
)
def test_b_closed_form(lam, t, expected):
    assert b_coeff_blowup(lam, t, 1) == expected


@pytest.mark.parametrize("t", [QQ(1, 2), QQ(5, 3), INFINITY])
def test_b_closed_form_matches_chain(t):
    assert b_coeff_blowup(P(2), t, 1, "chain") == b_coeff_blowup(P(2), t, 1)
    assert b_coeff_blowup(P(3, 1), t, 1, "chain") == b_coeff_blowup(P(3, 1), t, 1)


def test_b_coeff_over_qq_k():
    assert uni_limit(b_coeff(P(2), QQ(1, 2), CTX1), -1) == ExtendedScalar.finite(4)


def test_b_needs_a_singular_diagram():
    with pytest.raises(NotSingular):
        b_coeff_blowup(P(1), QQ(1, 2), 1)
    with pytest.raises(ValueError):
        b_coeff_blowup(P(2), QQ(1, 2), 1, "other")


def test_euler_coefficients():
    assert [euler_coeff(P(1), mu, 1) for mu in s_set(P(1), 1)] == [0, 0, -1, 1]
    assert euler_coeff(P(2), P(1), 1) == 2
    with pytest.raises(NotInS):
        euler_coeff(P(1), P(3), 1)


def test_pieri_terms_stay_in_the_hook():
    assert [mu for mu, _ in pieri_terms(P(1), CTX1)] == [P(), P(1), P(1, 1), P(2)]
    assert all(mu.part(2) <= 1 for mu, _ in pieri_terms(P(2, 1), CTX1))


@pytest.mark.parametrize(
    "lam, x, which, expected",
    [
        (P(2), AffineForm(0, 0, 1), HookKind.C0, 2),
        (P(1), AffineForm(1, 0, 0), HookKind.CMINUS, QQ(1, 3)),
        (P(1), AffineForm(0, 0, 0), HookKind.CPLUS, QQ(8, 3)),
    ],
)
def test_hook_products(lam, x, which, expected):
    assert hook_products(lam, x, which).evaluate(*POINT) == expected
