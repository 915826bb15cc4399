"""Wedderburn blocks of QG through splitting of the center.

The center of QG is a commutative semisimple algebra with the class sums as
basis. A random central element whose minimal polynomial is squarefree of
full degree generates it, and the irreducible factors of that polynomial
give the primitive central idempotents by the Chinese remainder theorem.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from sympy import Poly, QQ, gcdex, symbols

from .groups import AlgebraElement, FiniteGroup, left_regular_matrix
from .linalg import (EchelonBasis, charpoly, column_space, identity, matrix_key, normalize,
                     restrict, zeros)
from .meataxe import minimal_submodule

_X = symbols("x")

LABELS = ("none", "I-trivial", "IIa-Gaussian", "IIb-Eisenstein", "IIIa-HurwitzQuaternion",
          "IIIb-Sqrt3Quaternion", "undetermined")


class DecompositionError(RuntimeError):
    """No separating central element was found within the retry budget."""


@dataclass(frozen=True)
class IsotypicalBlock:
    """A dagger-stable Wedderburn factor of QG with its invariants."""

    idempotent: AlgebraElement
    dim_Q: int
    min_ideal_dim: int
    center_degree: int
    indicator_sign: int
    g_image_order: int
    exceptional_label: str

    @property
    def group(self) -> FiniteGroup:
        return self.idempotent.group

    @property
    def is_trivial_character(self) -> bool:
        return all(c == Fraction(1, self.group.order) for c in self.idempotent.coeffs)

    def to_json(self) -> dict:
        return {
            "dim": self.dim_Q,
            "min_ideal_dim": self.min_ideal_dim,
            "center_degree": self.center_degree,
            "indicator": self.indicator_sign,
            "g_image_order": self.g_image_order,
            "label": self.exceptional_label,
            "idempotent": self.idempotent.to_json(),
        }


# -- center ------------------------------------------------------------------

def _class_structure(group: FiniteGroup):
    """Class sums as index sets and the structure constants of the center."""
    classes = group.conjugacy_classes
    where = {}
    for k, cls in enumerate(classes):
        for g in cls:
            where[g] = k
    k = len(classes)
    # K_i K_j = sum_l c[i][j][l] K_l; read off the coefficient at a representative
    consts = np.zeros((k, k, k), dtype=object)
    reps = [min(cls) for cls in classes]
    for i, ci in enumerate(classes):
        for j, cj in enumerate(classes):
            counts = [0] * k
            for a in ci:
                row = group.table[a]
                for b in cj:
                    p = row[b]
                    if p == reps[where[p]]:
                        counts[where[p]] += 1
            for l in range(k):
                consts[i, j, l] = counts[l]
    return classes, where, consts


def _multiplication_matrix(coords, consts) -> np.ndarray:
    """Matrix of multiplication by sum_i coords[i] K_i on the class-sum basis."""
    k = len(coords)
    out = zeros(k, k)
    for i, c in enumerate(coords):
        if c:
            out = out + consts[i].T * c
    return out


def _class_vector(coords, classes, n) -> list:
    out = [0] * n
    for c, cls in zip(coords, classes):
        for g in cls:
            out[g] = c
    return out


def _split_center(group: FiniteGroup, rng: random.Random, max_retries: int):
    classes, _, consts = _class_structure(group)
    k = len(classes)
    unit = [1 if 0 in cls else 0 for cls in classes]
    for _ in range(max_retries):
        coords = [rng.randint(-4, 4) for _ in range(k)]
        mz = _multiplication_matrix(coords, consts)
        poly = Poly(charpoly(mz), _X, domain=QQ)
        if poly.degree() != k or poly.gcd(poly.diff()).degree() > 0:
            continue
        _, factors = poly.factor_list()
        out = []
        for f, _ in factors:
            m = poly.quo(f)
            s, _, _ = gcdex(m, f)
            e_poly = (Poly(s, _X, domain=QQ) * m).rem(poly)
            coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in e_poly.all_coeffs()]
            vec = np.array(unit, dtype=object)
            acc = np.array([0] * k, dtype=object)
            for c in coeffs:
                acc = mz.dot(acc) + vec * c
            out.append((_class_vector([normalize(x) for x in acc], classes, group.order),
                        f.degree()))
        return out
    raise DecompositionError(f"no separating central element after {max_retries} attempts")


# -- block invariants --------------------------------------------------------

def block_basis(e: AlgebraElement) -> np.ndarray:
    """Columns spanning the two-sided ideal QG e."""
    return column_space(left_regular_matrix(e))


def block_generators(e: AlgebraElement) -> list:
    """Left multiplication by the group generators restricted to QG e."""
    basis = block_basis(e)
    g = e.group
    return [restrict(left_regular_matrix(AlgebraElement.basis(g, x)), basis)
            for x in g.generators]


def indicator_sign(block_or_idempotent) -> int:
    """Sign of the averaged trace of squares on the block.

    The trace of left multiplication by ``e e_h`` on QG equals ``n e[h^-1]``,
    so the sum reduces to coefficients of the idempotent.
    """
    e = getattr(block_or_idempotent, "idempotent", block_or_idempotent)
    g = e.group
    total = sum((Fraction(e.coeffs[g.inv(g.mul(x, x))]) for x in range(g.order)), Fraction(0))
    return (total > 0) - (total < 0)


def g_image_order(e: AlgebraElement) -> int:
    g = e.group
    kernel = sum(1 for x in range(g.order) if e * AlgebraElement.basis(g, x) == e)
    return g.order // kernel


def minimal_left_ideal_dim(block_or_idempotent, seed: int = 0, max_retries: int = 64) -> int:
    """Q-dimension of a minimal left ideal, via the randomized submodule search."""
    e = getattr(block_or_idempotent, "idempotent", block_or_idempotent)
    gens = block_generators(e)
    if gens and gens[0].shape[0] == 1:
        return 1
    if not gens:
        return block_basis(e).shape[1]
    return minimal_submodule(gens, random.Random(seed), max_retries).shape[1]


def classify_exceptional(block: IsotypicalBlock) -> str:
    """Exceptional label from dimension, center degree, minimal ideal and image order."""
    return _classify(block.dim_Q, block.min_ideal_dim, block.center_degree, block.g_image_order)


def _classify(dim, min_ideal, center_degree, image_order) -> str:
    if dim == 1:
        return "I-trivial"
    if min_ideal < dim:
        return "none"
    if dim == 2 and center_degree == 2:
        if image_order == 4:
            return "IIa-Gaussian"
        if image_order in (3, 6):
            return "IIb-Eisenstein"
    if dim == 4 and center_degree == 1:
        if image_order in (24, 8):
            return "IIIa-HurwitzQuaternion"
        if image_order == 12:
            return "IIIb-Sqrt3Quaternion"
    return "undetermined"


def _block_sort_key(block: IsotypicalBlock):
    return (block.dim_Q, block.center_degree, tuple(Fraction(c) for c in block.idempotent.coeffs))


def central_idempotents(group: FiniteGroup, seed: int = 0,
                        max_retries: int = 64) -> list[IsotypicalBlock]:
    """All primitive central idempotents of QG with populated block invariants."""
    rng = random.Random(seed)
    blocks = []
    for vec, degree in _split_center(group, rng, max_retries):
        e = AlgebraElement(group, vec)
        dim = int(group.order * Fraction(e.coeffs[0]))
        min_ideal = 1 if dim == 1 else minimal_left_ideal_dim(e, seed, max_retries)
        order = g_image_order(e)
        blocks.append(IsotypicalBlock(
            idempotent=e, dim_Q=dim, min_ideal_dim=min_ideal, center_degree=degree,
            indicator_sign=indicator_sign(e), g_image_order=order,
            exceptional_label=_classify(dim, min_ideal, degree, order)))
    blocks.sort(key=_block_sort_key)
    return blocks


# -- modules and isotypical components -----------------------------------------

@dataclass(frozen=True)
class GModule:
    """A finite-dimensional QG-module given by the matrices of every group element."""

    group: FiniteGroup
    matrices: tuple

    def __post_init__(self):
        n = self.group.order
        if len(self.matrices) != n:
            raise ValueError("need one action matrix per group element")
        d = self.dim
        if any(m.shape != (d, d) for m in self.matrices):
            raise ValueError("action matrices have inconsistent shapes")
        if matrix_key(self.matrices[0]) != matrix_key(identity(d)):
            raise ValueError("identity element does not act trivially")
        t = self.group.table
        for a in self.group.generators:
            for b in range(n):
                if matrix_key(self.matrices[a].dot(self.matrices[b])) != \
                        matrix_key(self.matrices[t[a][b]]):
                    raise ValueError(f"action is not a homomorphism at ({a}, {b})")

    @property
    def dim(self) -> int:
        return self.matrices[0].shape[0]

    def act(self, x: AlgebraElement) -> np.ndarray:
        out = zeros(self.dim, self.dim)
        for g, c in enumerate(x.coeffs):
            if c:
                out = out + self.matrices[g] * c
        return out

    @classmethod
    def from_generator_images(cls, group: FiniteGroup, images: dict) -> "GModule":
        """Extend matrices given on generators (element indices) to all of G."""
        if not images:
            raise ValueError("no generator images")
        d = next(iter(images.values())).shape[0]
        mats = {0: identity(d)}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g, m in images.items():
                    y = group.mul(g, x)
                    if y not in mats:
                        mats[y] = m.dot(mats[x])
                        nxt.append(y)
            frontier = nxt
        if len(mats) != group.order:
            raise ValueError("generator images do not reach every group element")
        return cls(group, tuple(mats[g] for g in range(group.order)))

    @classmethod
    def regular(cls, group: FiniteGroup) -> "GModule":
        return cls(group, tuple(left_regular_matrix(AlgebraElement.basis(group, g))
                                for g in range(group.order)))


@dataclass(frozen=True)
class IsotypicalComponent:
    """The image e W of a block idempotent acting on a module W."""

    block: IsotypicalBlock
    basis: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def restricted(self, mat: np.ndarray) -> np.ndarray:
        return restrict(mat, self.basis)


def isotypical_projection(block: IsotypicalBlock, module: GModule) -> IsotypicalComponent:
    """Basis of the image of the block idempotent on ``module``."""
    if module.group.table != block.group.table:
        raise ValueError("module and block live over different groups")
    return IsotypicalComponent(block, column_space(module.act(block.idempotent)))


def isotypical_decomposition(module: GModule, blocks=None) -> list[IsotypicalComponent]:
    blocks = blocks if blocks is not None else central_idempotents(module.group)
    return [isotypical_projection(b, module) for b in blocks]


def components_span(components, dim: int) -> int:
    eb = EchelonBasis(dim)
    for c in components:
        for j in range(c.dim):
            eb.add(c.basis[:, j])
    return len(eb)
