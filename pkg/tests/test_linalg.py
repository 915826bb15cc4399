from fractions import Fraction

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from eqmcg.linalg import (EchelonBasis, charpoly, identity, inverse, nullspace, nullspace_mod_p,
                          poly_eval_matrix, qarray, rank, smith)


def int_matrices(rows, cols, bound=5):
    return st.lists(st.lists(st.integers(-bound, bound), min_size=cols, max_size=cols),
                    min_size=rows, max_size=rows).map(lambda r: np.array(r, dtype=object))


@given(int_matrices(3, 5))
def test_nullspace_is_kernel_of_full_dimension(m):
    ns = nullspace(m)
    assert not any(m.dot(ns).flat)
    assert ns.shape[1] + rank(m) == 5


@given(int_matrices(4, 4))
def test_nullspace_mod_p(m):
    ns = nullspace_mod_p(m, 3)
    assert all(x % 3 == 0 for x in m.dot(ns).flat)


@given(int_matrices(3, 4))
def test_smith_decomposition(m):
    D, U, V = smith(m)
    assert (U.dot(m).dot(V) == D).all()
    assert abs(int(round(float(np.linalg.det(U.astype(float)))))) == 1
    off = [D[i, j] for i in range(3) for j in range(4) if i != j]
    assert not any(off)


@given(int_matrices(3, 3))
def test_cayley_hamilton(m):
    assert not any(poly_eval_matrix(charpoly(m), m).flat)


def test_inverse_exact():
    m = qarray([[2, 1], [1, 1]])
    assert (m.dot(inverse(m)) == identity(2)).all()
    m = qarray([[Fraction(1, 2), 0], [0, 3]])
    assert inverse(m)[0, 0] == 2


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=6))
def test_echelon_basis_coordinates(vectors):
    eb = EchelonBasis(4)
    for v in vectors:
        eb.add(v)
    for v in vectors:
        coords = eb.coordinates(v)
        rebuilt = [sum(Fraction(c) * w[i] for c, w in zip(coords, eb.vectors)) for i in range(4)]
        assert rebuilt == [Fraction(x) for x in v]
