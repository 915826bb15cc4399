"""Equivariant symplectic actions on H_1 of a cover.

Everything here is an integer matrix on the homology basis of a
``HomologyModule``, checked to commute with the deck group and to preserve
the intersection matrix.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .cover import CoverError, HomologyModule, hermitian_form, lift_class, parse_word
from .groups import AlgebraElement, plus_cone_basis
from .hermitian import SL2_GENERATORS
from .linalg import identity, matrix_key, zeros


class TwistError(ValueError):
    """A precondition of a twist construction failed."""


@dataclass(frozen=True)
class EquivariantSymplecticMatrix:
    matrix: np.ndarray = field(repr=False)
    commutes_with_G: bool
    preserves_J: bool
    name: str = ""

    @property
    def ok(self) -> bool:
        return self.commutes_with_G and self.preserves_J

    def key(self) -> tuple:
        return matrix_key(self.matrix)

    def to_json(self) -> dict:
        return {"name": self.name, "commutes_with_G": self.commutes_with_G,
                "preserves_J": self.preserves_J,
                "matrix": [[int(x) for x in row] for row in self.matrix]}


def certify(H: HomologyModule, mat: np.ndarray, name: str = "") -> EquivariantSymplecticMatrix:
    commutes = all(matrix_key(mat.dot(A)) == matrix_key(A.dot(mat))
                   for A in (H.actions[g] for g in H.group.generators))
    preserves = matrix_key(mat.T.dot(H.J).dot(mat)) == matrix_key(H.J)
    return EquivariantSymplecticMatrix(mat, commutes, preserves, name)


def act(H: HomologyModule, r: AlgebraElement, x: np.ndarray) -> np.ndarray:
    """Scalar action r x = sum_g r_g (g x)."""
    out = zeros(H.rank, 1)[:, 0]
    for g, c in enumerate(r.coeffs):
        if c:
            out = out + H.actions[g].dot(x) * c
    return out


def _columns(H: HomologyModule, fn) -> np.ndarray:
    eye = identity(H.rank)
    out = zeros(H.rank, H.rank)
    for j in range(H.rank):
        out[:, j] = fn(eye[:, j])
    return out


def transvection(H: HomologyModule, a, r, name: str = "") -> EquivariantSymplecticMatrix:
    """T_a(r): x -> x + <x, a> r a on H_1."""
    a = np.asarray(a, dtype=object)
    if hermitian_form(H, a, a):
        raise TwistError("<a, a> != 0")
    if r.dagger() != r:
        raise TwistError("r^dagger != r")
    return certify(H, _columns(H, lambda x: x + act(H, hermitian_form(H, x, a) * r, a)), name)


def classical_transvection(H: HomologyModule, c) -> np.ndarray:
    """x -> x + (x . c) c, the homology action of a single Dehn twist."""
    c = np.asarray(c, dtype=object)
    return _columns(H, lambda x: x + c * H.intersect(x, c))


def multi_twist(H: HomologyModule, a) -> EquivariantSymplecticMatrix:
    """Simultaneous twist along all lifts g a: equals T_a(1)."""
    return transvection(H, a, AlgebraElement.one(H.group), "multi_twist")


def d_beta(H: HomologyModule, a, h) -> EquivariantSymplecticMatrix:
    """T_a(2 - e_h - e_h^dagger)."""
    grp = H.group
    h = grp.index(h)
    r = AlgebraElement.one(grp) * 2 - AlgebraElement.basis(grp, h) - \
        AlgebraElement.basis(grp, grp.inv(h))
    return transvection(H, a, r, f"D_beta[{grp.labels[h]}]")


def boundary_classes(H: HomologyModule, alpha, beta) -> list:
    """Lifts through every vertex of the loop alpha beta alpha^-1 beta^-1."""
    steps = parse_word(alpha) + parse_word(beta)
    steps += [(l, -s) for l, s in reversed(parse_word(alpha))]
    steps += [(l, -s) for l, s in reversed(parse_word(beta))]
    surface = H.surface
    out = []
    for g in range(H.group.order):
        chain, end = surface.lift_path(steps, g)
        if end != g:
            raise TwistError("commutator loop does not lift to a closed curve")
        out.append(H.coordinates(chain))
    return out


def d_beta_geometric(H: HomologyModule, alpha, beta) -> EquivariantSymplecticMatrix:
    """Product of classical twists along the lifted boundary curves."""
    classes = boundary_classes(H, alpha, beta)
    for i, c in enumerate(classes):
        for d in classes[i + 1:]:
            if H.intersect(c, d):
                raise TwistError("boundary lifts intersect; twists would not commute")
    mat = identity(H.rank)
    for c in classes:
        mat = classical_transvection(H, c).dot(mat)
    return certify(H, mat, "D_beta geometric")


def beta_words(H: HomologyModule, alpha: str = "x1", through: str = "y1") -> dict:
    """For each h, a shortest word ``through w`` with monodromy h, w avoiding ``alpha``."""
    spec = H.surface.spec
    grp = spec.group
    letters = [l for l in spec.letters if l != alpha]
    steps = [(l, 1) for l in letters] + [(l, -1) for l in letters]
    start = spec.monodromy[through]
    words = {start: [(through, 1)]}
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for l, s in steps:
            m = spec.monodromy[l]
            u = grp.mul(v, m if s > 0 else grp.inv(m))
            if u not in words:
                words[u] = words[v] + [(l, s)]
                queue.append(u)
    return {h: " ".join(l if s > 0 else f"{l}^-1" for l, s in w) for h, w in words.items()}


def d_beta_agreement(H: HomologyModule, alpha: str = "x1", through: str = "y1") -> dict:
    """Compare algebraic and geometric D_beta for every h; keys are group labels."""
    a = lift_class(H, alpha)
    out = {}
    for h, word in sorted(beta_words(H, alpha, through).items()):
        alg = d_beta(H, a, h)
        geo = d_beta_geometric(H, alpha, word)
        out[H.group.labels[h]] = {
            "beta": word,
            "agree": alg.key() == geo.key(),
            "identity": alg.key() == matrix_key(identity(H.rank)),
            "certified": alg.ok and geo.ok,
        }
    return out


# -- hyperbolic pairs -----------------------------------------------------------

@dataclass(frozen=True)
class HyperbolicPair:
    a: np.ndarray = field(repr=False)
    b: np.ndarray = field(repr=False)
    certificate: dict = field(default_factory=dict)
    lam: AlgebraElement | None = None

    def verify(self, H: HomologyModule) -> dict:
        one = AlgebraElement.one(H.group)
        return {"<a,a>=0": not hermitian_form(H, self.a, self.a),
                "<b,b>=0": not hermitian_form(H, self.b, self.b),
                "<a,b>=1": hermitian_form(H, self.a, self.b) == one}

    @property
    def certified(self) -> bool:
        return bool(self.certificate) and all(self.certificate.values())

    def to_json(self) -> dict:
        return {"a": [int(x) for x in self.a], "b": [int(x) for x in self.b],
                "lambda": self.lam.to_json() if self.lam is not None else {},
                "certificate": self.certificate}


def solve_lambda(s: AlgebraElement) -> AlgebraElement:
    """lam with lam - lam^dagger = -s, supported on the smaller index of each {g, g^-1}."""
    grp = s.group
    coeffs = [0] * grp.order
    for g in range(grp.order):
        gi = grp.inv(g)
        if gi == g:
            if s.coeffs[g]:
                raise TwistError(f"obstruction: <b0, b0> has coefficient {s.coeffs[g]} "
                                 f"at the involution or identity {grp.labels[g]}")
        elif g < gi:
            coeffs[g] = -s.coeffs[g]
    return AlgebraElement(grp, coeffs)


def complete_to_hyperbolic(H: HomologyModule, a, b0) -> HyperbolicPair:
    """Correct b0 by lam a so that (a, b0 + lam a) is a hyperbolic pair."""
    a = np.asarray(a, dtype=object)
    b0 = np.asarray(b0, dtype=object)
    if hermitian_form(H, a, a):
        raise TwistError("<a, a> != 0")
    if hermitian_form(H, a, b0) != AlgebraElement.one(H.group):
        raise TwistError("<a, b0> != 1")
    lam = solve_lambda(hermitian_form(H, b0, b0))
    b = b0 + act(H, lam, a)
    pair = HyperbolicPair(a, b, {}, lam)
    return HyperbolicPair(a, b, pair.verify(H), lam)


def pair_from_words(H: HomologyModule, alpha: str, beta: str) -> HyperbolicPair:
    """Hyperbolic pair from lifted curves, moving beta by a unit +-g when <a, b0> = +-e_g."""
    a = lift_class(H, alpha)
    b0 = lift_class(H, beta)
    u = hermitian_form(H, a, b0)
    support = [g for g, c in enumerate(u.coeffs) if c]
    if len(support) == 1 and abs(u.coeffs[support[0]]) == 1:
        # <a, r b0> = <a, b0> r^dagger, so r = u makes the pairing 1
        b0 = act(H, u, b0)
    return complete_to_hyperbolic(H, a, b0)


def _summand_map(H: HomologyModule, pair: HyperbolicPair, coeff_map, name: str):
    """x -> x - p(x) + (new coefficients on a, b), with p(x) = <x,b> a - <x,a> b."""
    if not pair.certified or not all(pair.verify(H).values()):
        raise TwistError("hyperbolic pair certificate is stale")

    def fn(x):
        r = hermitian_form(H, x, pair.b)
        s = -hermitian_form(H, x, pair.a)
        p = act(H, r, pair.a) + act(H, s, pair.b)
        r2, s2 = coeff_map(r, s)
        return x - p + act(H, r2, pair.a) + act(H, s2, pair.b)

    return certify(H, _columns(H, fn), name)


def projection(H: HomologyModule, pair: HyperbolicPair) -> np.ndarray:
    def fn(x):
        return act(H, hermitian_form(H, x, pair.b), pair.a) - \
            act(H, hermitian_form(H, x, pair.a), pair.b)
    return _columns(H, fn)


def realize_group_element(H: HomologyModule, pair: HyperbolicPair, g) -> EquivariantSymplecticMatrix:
    """rho_g on Ra + Rb (right multiplication by g^-1 on coefficients), identity elsewhere."""
    grp = H.group
    g = grp.index(g)
    ginv = AlgebraElement.basis(grp, grp.inv(g))
    return _summand_map(H, pair, lambda r, s: (r * ginv, s * ginv), f"rho[{grp.labels[g]}]")


def sl2_on_pair(H: HomologyModule, pair: HyperbolicPair, rows, name: str = ""):
    (p, q), (u, v) = rows
    return _summand_map(H, pair, lambda r, s: (r * p + s * q, r * u + s * v), name)


def gamma_ab_generators(H: HomologyModule, pair: HyperbolicPair) -> list:
    """Images of the generators of Gamma(G) under the embedding of H2(R) as Ra + Rb."""
    out = []
    for k, r in enumerate(plus_cone_basis(H.group).plusplus_elements()):
        out.append(transvection(H, pair.a, r, f"T_a(r{k})"))
    for name, rows in SL2_GENERATORS.items():
        out.append(sl2_on_pair(H, pair, rows, name))
    for g in H.group.generators:
        out.append(realize_group_element(H, pair, g))
    return out


def gamma_o_generators(H: HomologyModule, pair: HyperbolicPair) -> list:
    """Image of Gamma_o(G): transvections T_a(r), r in the R++ basis, and SL2(Z) on the pair."""
    return [m for m in gamma_ab_generators(H, pair) if not m.name.startswith("rho")]


__all__ = ["EquivariantSymplecticMatrix", "HyperbolicPair", "TwistError", "act", "certify",
           "classical_transvection", "complete_to_hyperbolic", "d_beta", "d_beta_geometric",
           "gamma_ab_generators", "gamma_o_generators", "d_beta_agreement", "multi_twist",
           "pair_from_words", "projection", "realize_group_element", "sl2_on_pair",
           "solve_lambda", "transvection", "CoverError"]
