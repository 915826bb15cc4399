import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from eqmcg.groups import AlgebraElement, named_group, plus_cone_basis
from eqmcg.hermitian import (FormError, RMatrix, SkewHermitianRModule, add, augmented_test_module,
                             commutator, commutator_identity_check, double_hyperbolic_module,
                             eichler, eichler_default, gamma_generators, hyperbolic_module,
                             isotropic_transvection, rho, scale, vector)
from eqmcg.linalg import matrix_key

from conftest import SMALL_GROUPS, algebra_elements

Z3 = named_group("Z3")
S3 = named_group("S3")


def sym(r):
    return r + r.dagger()


@pytest.mark.parametrize("name", SMALL_GROUPS)
def test_standard_modules_are_skew_hermitian_and_unimodular(name):
    g = named_group(name)
    assert hyperbolic_module(g).is_unimodular()
    assert double_hyperbolic_module(g).is_unimodular()
    assert not augmented_test_module(g).is_unimodular()


def test_gram_must_be_skew():
    with pytest.raises(FormError):
        SkewHermitianRModule.from_matrix(Z3, [[0, 1], [1, 0]])


@given(algebra_elements(S3, integral=True), algebra_elements(S3, integral=True),
       algebra_elements(S3, integral=True))
def test_form_sesquilinear_and_skew(r, x0, y0):
    m = hyperbolic_module(S3)
    x = (x0, r)
    y = (r * x0, y0)
    assert m.form(y, x) == -m.form(x, y).dagger()
    assert m.form(scale(r, x), y) == r * m.form(x, y)
    assert m.form(x, scale(r, y)) == m.form(x, y) * r.dagger()


def test_transvection_on_hyperbolic_plane_entries():
    m = hyperbolic_module(Z3)
    r = sym(AlgebraElement.basis(Z3, "t"))
    t = isotropic_transvection(m, m.basis_vector(0), r)
    assert t == RMatrix.from_rows(Z3, [[1, -r], [0, 1]])
    f = m.basis_vector(1)
    assert t.apply(f) == add(f, scale(-r, m.basis_vector(0)))


@given(algebra_elements(S3, integral=True), algebra_elements(S3, integral=True))
def test_transvections_add_and_invert(r0, s0):
    m = hyperbolic_module(S3)
    e = m.basis_vector(0)
    r, s = sym(r0), sym(s0)
    tr, ts = isotropic_transvection(m, e, r), isotropic_transvection(m, e, s)
    assert tr @ ts == isotropic_transvection(m, e, r + s)
    assert tr.inverse() == isotropic_transvection(m, e, -r)
    assert tr.preserves_form(m)


def test_transvection_preconditions():
    m = hyperbolic_module(Z3)
    with pytest.raises(FormError):
        isotropic_transvection(m, m.basis_vector(0), AlgebraElement.basis(Z3, "t"))
    with pytest.raises(FormError):
        isotropic_transvection(m, add(m.basis_vector(0), scale(AlgebraElement.basis(Z3, "t"), m.basis_vector(1))), 1)


def test_augmented_eichler_moves_f_by_minus_c():
    m = augmented_test_module(Z3)
    e, f, c = m.basis()
    E = eichler(m, c, e, 0)
    assert E.apply(f) == add(f, scale(AlgebraElement.one(Z3) * -1, c))
    assert E.apply(e) == e and E.apply(c) == c


def _isotropic_lambda(x, y):
    # for a = x e + y f + z c, <a, a> = x y^dagger - y x^dagger
    return x * y.dagger()


@given(*(algebra_elements(Z3, integral=True) for _ in range(6)))
def test_eichler_composition(x, y, z, x2, y2, z2):
    m = double_hyperbolic_module(Z3)
    c = m.basis_vector(2)
    zero = AlgebraElement.zero(Z3)
    a, a2 = (x, y, z, zero), (x2, y2, z2, zero)
    lam, lam2 = _isotropic_lambda(x, y), _isotropic_lambda(x2, y2)
    lhs = eichler(m, c, a, lam) @ eichler(m, c, a2, lam2)
    rhs = eichler(m, c, add(a, a2), lam + lam2 + m.form(a2, a))
    assert lhs == rhs
    assert lhs.preserves_form(m)


@pytest.mark.parametrize("name", ["Z2", "Z3", "S3", "Q8"])
def test_eichler_is_product_of_transvections_for_isotropic_a(name):
    g = named_group(name)
    m = double_hyperbolic_module(g)
    e, f, c, d = m.basis()
    h = AlgebraElement.basis(g, g.generators[0])
    a = add(e, scale(h, e))
    T = lambda v: isotropic_transvection(m, v, 1)
    assert eichler(m, c, a) == T(add(a, c)) @ T(a).inverse() @ T(c).inverse()
    assert eichler_default(m, c, a) == eichler(m, c, a, 0)


def test_eichler_preconditions():
    m = double_hyperbolic_module(Z3)
    e, f, c, d = m.basis()
    with pytest.raises(FormError):
        eichler(m, c, d)
    with pytest.raises(FormError):
        eichler(m, e, f)
    with pytest.raises(FormError):
        eichler(m, c, add(e, scale(AlgebraElement.basis(Z3, "t"), f)), 0)


@pytest.mark.parametrize("name", SMALL_GROUPS)
@pytest.mark.parametrize("module", ["double", "augmented"])
def test_commutator_identity(name, module):
    g = named_group(name)
    for r in plus_cone_basis(g).plusplus_elements():
        assert commutator_identity_check(g, r, module)
    assert commutator_identity_check(g, 3, module)


def test_commutator_with_swapped_roles_is_constant():
    # [E(c, a - lam b), E(c, b)] does not depend on lam; it is always T_c(-2)
    m = double_hyperbolic_module(Z3)
    a, b, c, _ = m.basis()
    base = eichler(m, c, b)
    target = isotropic_transvection(m, c, -2)
    for lam in (0, 1, 5, sym(AlgebraElement.basis(Z3, "t"))):
        lam = AlgebraElement.one(Z3) * lam if not isinstance(lam, AlgebraElement) else lam
        shifted = add(a, scale(-lam, b))
        assert commutator(eichler(m, c, shifted, -lam), base) == target


@pytest.mark.parametrize("name", ["Z3", "S3", "Q8"])
def test_rho_homomorphism_and_conjugation(name):
    g = named_group(name)
    m = hyperbolic_module(g)
    e = m.basis_vector(0)
    r = sym(AlgebraElement.basis(g, g.generators[-1]) * 2 + 1)
    for x in range(g.order):
        assert rho(m, x).preserves_form(m)
        for y in range(g.order):
            assert rho(m, x) @ rho(m, y) == rho(m, g.mul(x, y))
        conj = AlgebraElement.basis(g, x) * r * AlgebraElement.basis(g, g.inv(x))
        lhs = rho(m, x) @ isotropic_transvection(m, e, r) @ rho(m, x).inverse()
        assert lhs == isotropic_transvection(m, e, conj)


@pytest.mark.parametrize("name,count", [("1", 3), ("Z2", 5)])
def test_gamma_generator_counts(name, count):
    assert len(gamma_generators(named_group(name))) == count


@pytest.mark.parametrize("name", SMALL_GROUPS)
def test_gamma_generators_integral_and_form_preserving(name):
    g = named_group(name)
    m = hyperbolic_module(g)
    for x in gamma_generators(g):
        assert x.preserves_form(m)
        mat = x.to_integer()
        assert abs(int(round(float(np.linalg.det(mat.astype(float)))))) == 1


def test_rational_round_trip():
    x = gamma_generators(S3)[0]
    assert RMatrix.from_rational(S3, x.to_rational()) == x
    assert matrix_key((x @ x.inverse()).to_rational()) == matrix_key(RMatrix.identity(S3, 2).to_rational())


def test_vector_helper():
    v = vector(Z3, [1, 0])
    assert v[0] == AlgebraElement.one(Z3) and not v[1]
