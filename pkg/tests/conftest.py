from collections import Counter

from hypothesis import strategies as st
from sympy import QQ

from superjacobi.factored import AffineForm, FactoredRational
from superjacobi.laurent import laurent_ring
from superjacobi.partitions import Partition


@st.composite
def partition_strategy(draw, max_size=8):
    size = draw(st.integers(min_value=0, max_value=max_size))
    if size == 0:
        return Partition(())
    bins = draw(st.integers(min_value=1, max_value=size))

    # Assign each box to a random row
    assignments = draw(st.lists(st.integers(min_value=0, max_value=bins - 1), min_size=size, max_size=size))
    counts = Counter(assignments)
    return Partition(tuple(sorted(counts.values(), reverse=True)))


@st.composite
def hook_partition_strategy(draw, n=1, max_size=8):
    """Partitions with lambda_2 <= n"""
    lam = draw(partition_strategy(max_size=max_size))
    if not lam.parts:
        return lam
    parts = [lam.part(1)] + [min(part, n) for part in lam.parts[1:]]
    return Partition(tuple(parts))


rationals = st.builds(
    lambda num, den: QQ(num, den),
    st.integers(min_value=-20, max_value=20),
    st.integers(min_value=1, max_value=12),
)


@st.composite
def affine_form_strategy(draw):
    a = draw(st.integers(min_value=-3, max_value=3))
    b = draw(st.sampled_from([QQ(0), QQ(1), QQ(-1), QQ(1, 2), QQ(-1, 2), QQ(2)]))
    vanishing = draw(st.booleans())
    c = a if vanishing else draw(st.integers(min_value=-3, max_value=3))
    form = AffineForm(a, b, c)
    if form.is_constant:
        form = AffineForm(1, b, 1 if vanishing else c)
    return form


@st.composite
def factored_strategy(draw, max_factors=4):
    phi = FactoredRational.constant(draw(st.integers(min_value=1, max_value=9)))
    for form in draw(st.lists(affine_form_strategy(), max_size=max_factors)):
        phi = phi * FactoredRational.of(form, draw(st.sampled_from([-2, -1, 1, 2])))
    return phi


@st.composite
def laurent_strategy(draw, n=1, max_terms=4):
    ring = laurent_ring(n)
    exponents = st.tuples(*[st.integers(min_value=-2, max_value=2)] * (n + 1))
    terms = draw(st.dictionaries(exponents, st.integers(min_value=-5, max_value=5), max_size=max_terms))
    return ring.from_terms(terms)
