from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eqmcg.groups import (AlgebraElement, FiniteGroup, GroupError, cyclic, dagger, named_group,
                          plus_cone_basis, symmetric, trace_form, trace_gram_matrix, trivial)
from eqmcg.linalg import EchelonBasis, to_domain

from conftest import SMALL_GROUPS, algebra_elements


def e(group, label, coeff=1):
    return AlgebraElement.basis(group, label, coeff)


@pytest.mark.parametrize("name", SMALL_GROUPS + ["D5", "Dic3", "Z6", "SL(2,3)", "S4"])
def test_group_axioms(name):
    g = named_group(name)
    n = g.order
    assert all(g.inv(g.inv(x)) == x for x in range(n))
    assert all(g.mul(x, g.inv(x)) == 0 for x in range(n))
    seen = sorted(x for cls in g.conjugacy_classes for x in cls)
    assert seen == list(range(n))
    for cls in g.conjugacy_classes:
        assert all(g.conj(h, x) in cls for x in cls for h in range(n))


@pytest.mark.parametrize("name,order,classes", [
    ("1", 1, 1), ("Z4", 4, 4), ("S3", 6, 3), ("Q8", 8, 5), ("D4", 8, 5), ("A4", 12, 4),
    ("Dic3", 12, 6), ("SL(2,3)", 24, 7), ("S4", 24, 5)])
def test_catalog_orders_and_class_numbers(name, order, classes):
    g = named_group(name)
    assert (g.order, len(g.conjugacy_classes)) == (order, classes)


def test_table_validation_rejects_nonassociative():
    # a Latin square with identity that is not associative (order 5 loop)
    table = ((0, 1, 2, 3, 4), (1, 0, 3, 4, 2), (2, 4, 0, 1, 3), (3, 2, 4, 0, 1), (4, 3, 1, 2, 0))
    with pytest.raises(GroupError):
        FiniteGroup(table, tuple("abcde"))


def test_json_round_trip_and_permutation_input():
    g = symmetric(3)
    h = FiniteGroup.from_json(g.to_json())
    assert h.table == g.table
    p = FiniteGroup.from_json({"permutations": [[1, 0, 2], [1, 2, 0]]})
    assert p.order == 6 and not p.is_abelian()


def test_dagger_examples():
    g = cyclic(3)
    assert dagger(e(g, "t")) == e(g, "t^2")
    x = e(g, "1", 2) + e(g, "t", 3)
    assert dagger(x) == e(g, "1", 2) + e(g, "t^2", 3)


@given(st.data())
def test_dagger_is_an_anti_involution(data):
    g = symmetric(3)
    x = data.draw(algebra_elements(g))
    y = data.draw(algebra_elements(g))
    assert dagger(x * y) == dagger(y) * dagger(x)
    assert dagger(dagger(x)) == x


def test_trace_form_examples():
    z2 = cyclic(2)
    assert trace_form(e(z2, "t"), e(z2, "t")) == 2
    for name in SMALL_GROUPS:
        g = named_group(name)
        assert trace_form(AlgebraElement.one(g), AlgebraElement.one(g)) == g.order


def test_trace_form_mismatched_groups():
    with pytest.raises(ValueError, match="mismatched"):
        trace_form(AlgebraElement.one(cyclic(2)), AlgebraElement.one(cyclic(3)))


@given(st.data())
def test_trace_form_is_trace_of_left_multiplication(data):
    from eqmcg.groups import left_regular_matrix
    g = named_group("Q8")
    x = data.draw(algebra_elements(g))
    y = data.draw(algebra_elements(g))
    mat = left_regular_matrix(x * dagger(y))
    assert trace_form(x, y) == sum(mat[i, i] for i in range(g.order))
    assert trace_form(x, y) == trace_form(y, x)
    if x:
        assert trace_form(x, x) > 0


def test_trace_gram_positive_definite_s3():
    gram = trace_gram_matrix(symmetric(3))
    minors = [to_domain(gram[:k, :k]).det() for k in range(1, 7)]
    assert all(m > 0 for m in minors)


def test_plus_cone_examples():
    z2 = cyclic(2)
    pc = plus_cone_basis(z2)
    assert sorted(pc.plus_basis) == [(0, 1), (1, 0)]
    assert sorted(pc.plusplus_basis) == [(0, 2), (2, 0)]
    pc1 = plus_cone_basis(trivial())
    assert pc1.plus_basis == ((1,),) and pc1.plusplus_basis == ((2,),)
    z3 = plus_cone_basis(cyclic(3))
    assert sorted(z3.plusplus_basis) == [(0, 1, 1), (2, 0, 0)]
    assert z3.index == 2


@pytest.mark.parametrize("name", SMALL_GROUPS + ["Dic3", "D5"])
def test_plus_cone_invariants(name):
    g = named_group(name)
    pc = plus_cone_basis(g)
    for v in pc.plusplus_elements():
        assert dagger(v) == v
    lattice = EchelonBasis(g.order)
    for v in pc.plusplus_basis:
        assert lattice.add(v)

    def in_lattice(x):
        return all(Fraction(c).denominator == 1 for c in lattice.coordinates(x))

    # r + r^dagger for every basis element r, and 2 R+, lie in the Z-span of R++
    for x in range(g.order):
        r = e(g, x)
        assert in_lattice((r + dagger(r)).coeffs)
    for v in pc.plus_basis:
        assert in_lattice([2 * c for c in v])
    index = pc.index
    assert index & (index - 1) == 0
