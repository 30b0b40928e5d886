import pytest
from hypothesis import given, strategies as st
from sympy import QQ

from conftest import hook_partition_strategy, partition_strategy
from superjacobi.errors import NotSingular, PreconditionError
from superjacobi.factored import AffineForm
from superjacobi.partitions import (
    ParamCtx,
    Partition,
    add_remove_sets,
    b_chain,
    box_difference,
    canonical_parent,
    classify,
    collision_pairs,
    eigenvalue,
    eigenvalue_general,
    f_set,
    f_set_closed_form,
    in_hook,
    n_stat,
    partitions_in_hook,
    pi_set,
    r_of,
    s_set,
    s_stat,
    sharp,
    sharp_chain,
    tilde_c,
)


def P(*parts):
    return Partition(tuple(parts))


def test_parse_and_str():
    assert Partition.parse("3,1") == P(3, 1)
    assert Partition.parse("(2, 2)") == P(2, 2)
    assert Partition.parse("-") == P()
    assert str(P(3, 1)) == "3,1"
    assert str(P()) == "-"


@pytest.mark.parametrize("text", ["2,3", "x", "1,-1"])
def test_parse_rejects(text):
    with pytest.raises(PreconditionError):
        Partition.parse(text)


def test_basic_shape_data():
    lam = P(3, 1)
    assert lam.size == 4
    assert lam.length == 2
    assert lam.conjugate == P(2, 1, 1)
    assert lam.column(1) == 2
    assert lam.column(4) == 0
    assert lam.part(5) == 0
    assert lam.addable_rows() == [1, 2, 3]
    assert lam.removable_rows() == [1, 2]


@given(partition_strategy())
def test_conjugate_is_an_involution(lam):
    assert lam.conjugate.conjugate == lam
    assert lam.conjugate.size == lam.size


def test_statistics():
    assert n_stat(P(2, 1)) == 1
    assert s_stat(P(3, 1, 1)) == 2
    assert s_stat(P()) == 0


def test_hook_membership():
    assert in_hook(P(5, 1, 1), 1, 1)
    assert not in_hook(P(2, 2), 1, 1)
    assert in_hook(P(2, 2), 1, 2)


def test_s_set():
    assert s_set(P(1), 1) == [P(), P(1), P(1, 1), P(2)]
    assert s_set(P(1, 1), 1) == [P(1), P(1, 1), P(1, 1, 1), P(2, 1)]
    with pytest.raises(PreconditionError):
        s_set(P(2, 2), 1)


def test_box_difference():
    assert box_difference(P(2, 1), P(3, 1)) == (1, 1)
    assert box_difference(P(2, 1), P(2)) == (2, -1)
    assert box_difference(P(2, 1), P(3, 2)) is None
    assert box_difference(P(2, 1), P(2, 1)) is None


def test_partitions_in_hook():
    assert partitions_in_hook(2, 1) == [P(), P(1), P(1, 1), P(2)]
    assert P(2, 2) not in partitions_in_hook(4, 1)
    assert P(2, 2) in partitions_in_hook(4, 2)


def test_eigenvalue_forms():
    ctx = ParamCtx(1)
    assert ctx.h == AffineForm(-1, QQ(-1, 2), -1)
    assert eigenvalue(P(1), ctx) == AffineForm(0, -1, -1)
    assert eigenvalue(P(), ctx) == AffineForm()


@given(hook_partition_strategy(n=2))
def test_eigenvalue_closed_form_agrees(lam):
    ctx = ParamCtx(2)
    assert eigenvalue(lam, ctx) == eigenvalue_general(lam, ctx)


@given(hook_partition_strategy(n=2))
def test_tilde_c_is_the_specialised_eigenvalue(lam):
    assert eigenvalue(lam, ParamCtx(2)).evaluate(-1, 0) == tilde_c(lam, 2)


@given(hook_partition_strategy(n=2, max_size=0))
def test_hook_strategy_keeps_the_empty_partition(lam):
    assert lam == Partition(())
    assert eigenvalue(lam, ParamCtx(2)) == eigenvalue_general(lam, ParamCtx(2))
    assert tilde_c(lam, 2) == 0


def test_tilde_c_values():
    assert tilde_c(P(3, 1), 2) == -8
    assert tilde_c(P(2), 1) == 0
    assert tilde_c(P(1, 1), 1) == -4


@pytest.mark.parametrize(
    "lam, n, j",
    [
        (P(2), 1, 1),
        (P(3, 1), 1, 1),
        (P(4, 1, 1), 1, 1),
        (P(3, 1), 2, 2),
        (P(4), 2, 1),
        (P(1), 1, None),
        (P(2, 1), 1, None),
        (P(), 1, None),
    ],
)
def test_classify(lam, n, j):
    diagram = classify(lam, n)
    assert diagram.j == j
    assert diagram.is_singular == (j is not None)


def test_sharp_operations():
    assert sharp(P(2), 1) == P()
    assert sharp(P(3, 1), 1) == P(2)
    assert sharp_chain(P(3, 1), 1) == [P(3, 1), P(2), P()]
    assert r_of(P(4), 2) == 2
    assert sharp(P(4), 2) == P()
    assert b_chain(P(4), 2) == [P(2), P(1), P()]
    with pytest.raises(NotSingular):
        sharp(P(1), 1)


# for n = 1 the singular diagrams are (b+2, 1^b)
@given(st.integers(min_value=0, max_value=6).map(lambda b: Partition((b + 2,) + (1,) * b)))
def test_sharp_chain_length_and_eigenvalue(lam):
    diagram = classify(lam, 1)
    assert diagram.is_singular
    chain = sharp_chain(lam, 1)
    assert len(chain) == lam.column(diagram.j) + 1
    assert all(tilde_c(mu, 1) == tilde_c(lam, 1) for mu in chain)
    assert not classify(chain[-1], 1).is_singular


def test_collisions_and_f_sets():
    assert collision_pairs(P(1), 1) == [(P(), P(2))]
    assert f_set(P(2), P(1), 1) == [P(), P(2)]
    assert f_set_closed_form(P(2), P(1), 1) == [P(), P(2)]
    assert f_set_closed_form(P(1), P(), 2) == [P(1)]


def test_pi_set():
    assert pi_set(P(1), 1) == [P(1)]
    assert pi_set(P(2), 1) == [P(), P(2)]
    assert pi_set(P(2, 1), 1) == [P(2, 1)]


def test_canonical_parent():
    assert canonical_parent(P(3, 2)) == P(3, 1)
    assert canonical_parent(P(2, 2)) == P(2, 1)
    assert canonical_parent(P(1)) == P()


def test_add_remove_sets_stay_in_the_hook():
    plus, minus = add_remove_sets(P(1), 1, 1)
    assert set(plus) == {P(2), P(1, 1)}
    assert minus == [P()]
    plus, _ = add_remove_sets(P(2, 1), 1, 1)
    assert P(2, 2) not in plus
    with pytest.raises(PreconditionError):
        add_remove_sets(P(2, 2), 1, 1)
