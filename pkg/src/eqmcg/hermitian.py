"""Skew-hermitian modules over ZG, transvections and Eichler transformations.

Vectors are tuples of ``AlgebraElement`` coordinates with scalars acting on
the left. An R-linear map therefore acts on coordinates by right
multiplication: ``(M x)_i = sum_j x_j M[i][j]``. The form on a free module
with Gram matrix ``Gamma`` is ``<x, y> = sum x_i Gamma_ij y_j^dagger``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .groups import AlgebraElement, FiniteGroup, plus_cone_basis, right_regular_matrix
from .linalg import identity, inverse, is_integral, matrix_key, to_domain, zeros


class FormError(ValueError):
    """A precondition on the hermitian data failed; the message names the equation."""


def _elem(group: FiniteGroup, x) -> AlgebraElement:
    if isinstance(x, AlgebraElement):
        return x
    return AlgebraElement.one(group) * x


def vector(group: FiniteGroup, coords: Sequence) -> tuple:
    return tuple(_elem(group, c) for c in coords)


@dataclass(frozen=True)
class SkewHermitianRModule:
    """Free R-module with an R-valued form given by its Gram matrix."""

    group: FiniteGroup
    gram: tuple  # tuple of tuples of AlgebraElement
    name: str = ""

    def __post_init__(self):
        k = self.rank
        if any(len(row) != k for row in self.gram):
            raise FormError("Gram matrix must be square")
        for i in range(k):
            for j in range(k):
                if self.gram[j][i] != -self.gram[i][j].dagger():
                    raise FormError(f"<b_{j}, b_{i}> != -<b_{i}, b_{j}>^dagger")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @classmethod
    def from_matrix(cls, group: FiniteGroup, rows, name: str = "") -> "SkewHermitianRModule":
        return cls(group, tuple(vector(group, row) for row in rows), name)

    def basis_vector(self, i: int) -> tuple:
        return tuple(AlgebraElement.one(self.group) if j == i else AlgebraElement.zero(self.group)
                     for j in range(self.rank))

    def basis(self) -> list:
        return [self.basis_vector(i) for i in range(self.rank)]

    def zero(self) -> tuple:
        return tuple(AlgebraElement.zero(self.group) for _ in range(self.rank))

    def form(self, x: Sequence, y: Sequence) -> AlgebraElement:
        out = AlgebraElement.zero(self.group)
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                g = self.gram[i][j]
                if g and yj:
                    out = out + xi * g * yj.dagger()
        return out

    def is_unimodular(self) -> bool:
        """Whether x -> <-, x> is a bijection onto the antilinear dual."""
        mat = RMatrix(self.group, np.array([[g for g in row] for row in self.gram], dtype=object))
        det = to_domain(mat.to_rational()).det()
        return abs(det) == 1


def hyperbolic_module(group: FiniteGroup) -> SkewHermitianRModule:
    """Basis (e, f) with <e, f> = 1 and both vectors isotropic."""
    return SkewHermitianRModule.from_matrix(group, [[0, 1], [-1, 0]], "H2")


def augmented_test_module(group: FiniteGroup) -> SkewHermitianRModule:
    """Hyperbolic plane (e, f) plus a radical vector c."""
    return SkewHermitianRModule.from_matrix(group, [[0, 1, 0], [-1, 0, 0], [0, 0, 0]], "H2+c")


def double_hyperbolic_module(group: FiniteGroup) -> SkewHermitianRModule:
    """Two orthogonal hyperbolic planes (e, f) and (c, d)."""
    return SkewHermitianRModule.from_matrix(
        group, [[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]], "H2+H2")


def add(x: Sequence, y: Sequence) -> tuple:
    return tuple(a + b for a, b in zip(x, y))


def scale(r: AlgebraElement, x: Sequence) -> tuple:
    """Left scalar multiplication r x."""
    return tuple(r * a for a in x)


@dataclass(frozen=True)
class RMatrix:
    """Square matrix over R acting on coordinates by right multiplication."""

    group: FiniteGroup
    entries: np.ndarray = field(repr=False)
    name: str = ""

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def identity(cls, group: FiniteGroup, k: int, name: str = "") -> "RMatrix":
        return cls.from_rows(group, [[1 if i == j else 0 for j in range(k)] for i in range(k)],
                             name)

    @classmethod
    def from_rows(cls, group: FiniteGroup, rows, name: str = "") -> "RMatrix":
        arr = np.empty((len(rows), len(rows)), dtype=object)
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                arr[i, j] = _elem(group, x)
        return cls(group, arr, name)

    def apply(self, x: Sequence) -> tuple:
        k = self.size
        out = []
        for i in range(k):
            acc = AlgebraElement.zero(self.group)
            for j in range(k):
                if x[j] and self.entries[i, j]:
                    acc = acc + x[j] * self.entries[i, j]
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "RMatrix") -> "RMatrix":
        k = self.size
        arr = np.empty((k, k), dtype=object)
        for i in range(k):
            for l in range(k):
                acc = AlgebraElement.zero(self.group)
                for j in range(k):
                    if other.entries[j, l] and self.entries[i, j]:
                        acc = acc + other.entries[j, l] * self.entries[i, j]
                arr[i, l] = acc
        return RMatrix(self.group, arr)

    def __eq__(self, other):
        if not isinstance(other, RMatrix):
            return NotImplemented
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def key(self) -> tuple:
        return tuple(e.coeffs for e in self.entries.flat)

    def to_rational(self) -> np.ndarray:
        """Expansion to a (k|G|) x (k|G|) matrix in the coordinates (i, g)."""
        n = self.group.order
        k = self.size
        out = zeros(k * n, k * n)
        for i in range(k):
            for j in range(k):
                if self.entries[i, j]:
                    out[i * n:(i + 1) * n, j * n:(j + 1) * n] = \
                        right_regular_matrix(self.entries[i, j])
        return out

    def to_integer(self) -> np.ndarray:
        out = self.to_rational()
        if not is_integral(out):
            raise ValueError("matrix is not defined over ZG")
        return out

    @classmethod
    def from_rational(cls, group: FiniteGroup, mat: np.ndarray, name: str = "") -> "RMatrix":
        """Inverse of ``to_rational`` for matrices commuting with the left G-action."""
        n = group.order
        k = mat.shape[0] // n
        arr = np.empty((k, k), dtype=object)
        for i in range(k):
            for j in range(k):
                # image of the j-th basis vector, read in block i
                arr[i, j] = AlgebraElement(group, list(mat[i * n:(i + 1) * n, j * n]))
        out = cls(group, arr, name)
        if matrix_key(out.to_rational()) != matrix_key(mat):
            raise ValueError("matrix is not R-linear")
        return out

    def inverse(self) -> "RMatrix":
        return RMatrix.from_rational(self.group, inverse(self.to_rational()))

    def preserves_form(self, module: SkewHermitianRModule) -> bool:
        basis = module.basis()
        images = [self.apply(b) for b in basis]
        return all(module.form(images[i], images[j]) == module.form(basis[i], basis[j])
                   for i in range(len(basis)) for j in range(len(basis)))

    def to_json(self) -> dict:
        return {"name": self.name,
                "entries": [[self.entries[i, j].to_json() for j in range(self.size)]
                            for i in range(self.size)]}


def commutator(a: RMatrix, b: RMatrix) -> RMatrix:
    return a @ b @ a.inverse() @ b.inverse()


def rank_one_map(module: SkewHermitianRModule, u: Sequence, s: AlgebraElement,
                 v: Sequence) -> RMatrix:
    """The R-linear map x -> <x, u> s v."""
    k = module.rank
    g = module.group
    arr = np.empty((k, k), dtype=object)
    for i in range(k):
        for j in range(k):
            acc = AlgebraElement.zero(g)
            # <e_j, u> = sum_l Gamma_jl u_l^dagger
            for l in range(k):
                if module.gram[j][l] and u[l]:
                    acc = acc + module.gram[j][l] * u[l].dagger()
            arr[i, j] = acc * s * v[i] if acc else acc
    return RMatrix(g, arr)


def _plus_identity(m: RMatrix) -> RMatrix:
    arr = m.entries.copy()
    for i in range(m.size):
        arr[i, i] = arr[i, i] + 1
    return RMatrix(m.group, arr)


def rank_one_transvection(module: SkewHermitianRModule, u: Sequence, s: AlgebraElement,
                          v: Sequence, name: str = "") -> RMatrix:
    """x -> x + <x, u> s v."""
    out = _plus_identity(rank_one_map(module, u, s, v))
    return RMatrix(out.group, out.entries, name)


def isotropic_transvection(module: SkewHermitianRModule, a: Sequence,
                           r: AlgebraElement, name: str = "") -> RMatrix:
    """T_a(r): x -> x + <x, a> r a for isotropic a and dagger-fixed r."""
    r = _elem(module.group, r)
    if module.form(a, a):
        raise FormError("<a, a> != 0")
    if r.dagger() != r:
        raise FormError("r^dagger != r")
    return rank_one_transvection(module, a, r, a, name)


def eichler(module: SkewHermitianRModule, c: Sequence, a: Sequence, lam=0,
            name: str = "") -> RMatrix:
    """E(c, a, lam): x -> x + <x, a> c + <x, c> a + <x, c> lam c."""
    g = module.group
    lam = _elem(g, lam)
    if module.form(c, c):
        raise FormError("<c, c> != 0")
    if module.form(a, c):
        raise FormError("<a, c> != 0")
    if lam - lam.dagger() != module.form(a, a):
        raise FormError("lam - lam^dagger != <a, a>")
    one = AlgebraElement.one(g)
    total = rank_one_map(module, a, one, c).entries + rank_one_map(module, c, one, a).entries \
        + rank_one_map(module, c, lam, c).entries
    return _plus_identity(RMatrix(g, total, name))


def eichler_default(module: SkewHermitianRModule, c: Sequence, a: Sequence) -> RMatrix:
    """E(c, a) with lam = <a, a>/2, available when that element is integral."""
    half = module.form(a, a) * Fraction(1, 2)
    if not half.is_integral():
        raise FormError("<a, a>/2 is not in ZG; supply lam explicitly")
    return eichler(module, c, a, half)


def commutator_identity_check(group: FiniteGroup, lam, module: str = "double") -> bool:
    """Check [E(c, b - lam a), E(c, b)] == T_c(2 lam) for a hyperbolic pair (a, b).

    ``module`` selects the two orthogonal hyperbolic planes (``"double"``) or
    the hyperbolic plane with a radical vector (``"augmented"``).
    """
    lam = _elem(group, lam)
    if lam.dagger() != lam:
        raise FormError("lam^dagger != lam")
    m = double_hyperbolic_module(group) if module == "double" else augmented_test_module(group)
    a, b, c = m.basis_vector(0), m.basis_vector(1), m.basis_vector(2)
    b_shift = add(b, scale(-lam, a))
    lhs = commutator(eichler(m, c, b_shift), eichler(m, c, b))
    rhs = rank_one_transvection(m, c, lam * 2, c)
    return lhs == rhs


# -- generators of Gamma(G) ---------------------------------------------------

def rho(module: SkewHermitianRModule, g: int, name: str = "") -> RMatrix:
    """Right multiplication of every coordinate by g^-1."""
    grp = module.group
    ginv = AlgebraElement.basis(grp, grp.inv(g))
    return RMatrix.from_rows(grp, [[ginv if i == j else 0 for j in range(module.rank)]
                                   for i in range(module.rank)], name or f"rho[{grp.labels[g]}]")


SL2_GENERATORS = {"S": [[0, -1], [1, 0]], "U": [[1, 1], [0, 1]]}


def gamma_generators(group: FiniteGroup) -> list[RMatrix]:
    """Transvections T_e(r) for r in the R++ basis, SL2(Z), and rho_g for generators g."""
    m = hyperbolic_module(group)
    e = m.basis_vector(0)
    out = []
    for k, r in enumerate(plus_cone_basis(group).plusplus_elements()):
        out.append(isotropic_transvection(m, e, r, f"T_e(r{k})"))
    for name, rows in SL2_GENERATORS.items():
        out.append(RMatrix.from_rows(group, rows, name))
    for g in group.generators:
        out.append(rho(m, g))
    return out
