"""Finite-level checks of spanning, fixed vectors and irreducibility.

All verdicts are computed exactly and carry a witness. Closure computations
are bounded by a word length; running into the bound yields an
``inconclusive`` verdict rather than a guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .cover import CoverSpec, HomologyModule, cover_homology, hermitian_form, lift_class
from .groups import AlgebraElement, FiniteGroup
from .hermitian import gamma_generators
from .linalg import (EchelonBasis, identity, inverse, matrix_key, nullspace, nullspace_mod_p,
                     restrict)
from .twists import (HyperbolicPair, TwistError, complete_to_hyperbolic, d_beta_agreement,
                     gamma_ab_generators, gamma_o_generators, pair_from_words)
from .wedderburn import (GModule, IsotypicalBlock, central_idempotents, isotypical_projection)

DEFAULT_MAX_WORD_LEN = 6

PASS, FAIL, INCONCLUSIVE = "pass", "fail", "inconclusive"


def _int_rows(mat) -> list:
    return [[int(Fraction(x)) if Fraction(x).denominator == 1 else str(Fraction(x)) for x in row]
            for row in np.asarray(mat).tolist()]


@dataclass
class GeneratedGroup:
    """Matrix group given by generators, with a bounded word closure."""

    generators: list
    names: list = field(default_factory=list)

    def __post_init__(self):
        self.generators = [np.asarray(getattr(g, "matrix", g), dtype=object)
                           for g in self.generators]
        if not self.names:
            self.names = [f"g{k}" for k in range(len(self.generators))]

    @classmethod
    def from_equivariant(cls, mats) -> "GeneratedGroup":
        return cls([m.matrix for m in mats], [m.name for m in mats])

    @property
    def dim(self) -> int:
        return self.generators[0].shape[0] if self.generators else 0

    def with_inverses(self) -> list:
        out = []
        for g in self.generators:
            out.append(g)
            out.append(inverse(g))
        return out

    def closure(self, max_len: int = DEFAULT_MAX_WORD_LEN) -> tuple[dict, bool]:
        """Elements reachable by words of length <= max_len; flag says whether it stabilized."""
        letters = self.with_inverses()
        e = identity(self.dim)
        seen = {matrix_key(e): e}
        frontier = [e]
        for _ in range(max_len):
            nxt = []
            for m in frontier:
                for g in letters:
                    p = g.dot(m)
                    k = matrix_key(p)
                    if k not in seen:
                        seen[k] = p
                        nxt.append(p)
            frontier = nxt
            if not frontier:
                return seen, True
        return seen, False

    def contains(self, mat, max_len: int = DEFAULT_MAX_WORD_LEN) -> str:
        seen, stable = self.closure(max_len)
        if matrix_key(mat) in seen:
            return PASS
        return FAIL if stable else INCONCLUSIVE


# -- spanning and fixed vectors -------------------------------------------------

def submodule_basis(H: HomologyModule, vectors) -> EchelonBasis:
    """Q-basis of the QG-submodule generated by ``vectors``."""
    eb = EchelonBasis(H.rank)
    for v in vectors:
        for g in range(H.group.order):
            eb.add(H.actions[g].dot(np.asarray(v, dtype=object)))
    return eb


def span_check(H: HomologyModule, a, pairs) -> dict:
    """Dimension of QG(a, b_1, ...) against 2g, cross-checked by the perp."""
    a = np.asarray(a, dtype=object)
    for p in pairs:
        if matrix_key(p.a) != matrix_key(a) or not all(p.verify(H).values()):
            raise TwistError("span_check needs pairs certified hyperbolic with the given a")
    eb = submodule_basis(H, [a] + [p.b for p in pairs])
    dim = len(eb)
    basis = eb.matrix()
    perp = nullspace(basis.T.dot(H.J)) if dim else identity(H.rank)
    perp_dim = perp.shape[1]
    return {"verdict": PASS if dim == H.rank else FAIL, "span_dim": dim, "rank": H.rank,
            "perp_dim": perp_dim, "perp_consistent": dim + perp_dim == H.rank,
            "witness": _int_rows(basis.T)}


def fixed_subspace(gamma: GeneratedGroup) -> np.ndarray:
    """Columns spanning the joint fixed space of the generators over Q."""
    n = gamma.dim
    if not gamma.generators:
        return identity(n)
    stacked = np.vstack([g - identity(n) for g in gamma.generators])
    return nullspace(stacked)


def mod_l_fixed_vectors(gamma: GeneratedGroup, ell: int) -> dict:
    n = gamma.dim
    if gamma.generators:
        stacked = np.vstack([g - identity(n) for g in gamma.generators])
        ns = nullspace_mod_p(stacked, ell)
    else:
        ns = identity(n)
    return {"prime": ell, "fixed_dim": ns.shape[1], "witness": _int_rows(ns.T),
            "verdict": PASS if ns.shape[1] == 0 else FAIL}


# -- irreducibility -----------------------------------------------------------

def generated_algebra_dim(mats, bound: int = DEFAULT_MAX_WORD_LEN * 8) -> tuple[int, bool]:
    """Dimension of the unital Q-algebra spanned by words in ``mats``."""
    if not mats:
        return 1, True
    n = mats[0].shape[0]
    eb = EchelonBasis(n * n)
    e = identity(n)
    eb.add(list(e.flat))
    frontier = [e]
    for _ in range(bound):
        nxt = []
        for m in frontier:
            for g in mats:
                p = g.dot(m)
                if eb.add(list(p.flat)):
                    nxt.append(p)
        frontier = nxt
        if not frontier:
            return len(eb), True
        if len(eb) == n * n:
            return len(eb), True
    return len(eb), False


def hyperbolic_gmodule(group: FiniteGroup) -> tuple[GModule, list]:
    """H2(QG) as a Q-vector space with its left G-action, and Gamma(G) on it."""
    from .groups import left_regular_matrix
    n = group.order
    mats = []
    for g in range(n):
        L = left_regular_matrix(AlgebraElement.basis(group, g))
        big = np.zeros((2 * n, 2 * n), dtype=object)
        big[:n, :n] = L
        big[n:, n:] = L
        mats.append(big + 0)
    gens = [m.to_rational() for m in gamma_generators(group)]
    return GModule(group, tuple(mats)), gens


def block_irreducibility(gens, block: IsotypicalBlock, module: GModule,
                         bound: int = DEFAULT_MAX_WORD_LEN * 8) -> dict:
    """Compare the algebra generated on e W with End over the block.

    Generators commute with the G-action, so their algebra lies in the
    commutant of the block on the component, of dimension dim(eW)^2 / dim(B).
    Reaching that dimension makes the component irreducible over the
    commutant, which is the sense of irreducibility used for blocks that are
    matrix algebras over a division algebra.
    """
    comp = isotypical_projection(block, module)
    d = comp.dim
    if d == 0:
        return {"verdict": PASS, "component_dim": 0, "algebra_dim": 0, "target_dim": 0}
    restricted = [restrict(np.asarray(getattr(g, "matrix", g), dtype=object), comp.basis)
                  for g in gens]
    block_action = [restrict(module.matrices[g], comp.basis) for g in module.group.generators]
    commutes = all(matrix_key(r.dot(b)) == matrix_key(b.dot(r))
                   for r in restricted for b in block_action)
    target = Fraction(d * d, block.dim_Q)
    k = block.dim_Q // block.min_ideal_dim
    alg_dim, stable = generated_algebra_dim(restricted, bound)
    if alg_dim == target and commutes:
        verdict = PASS
    elif stable or not commutes:
        verdict = FAIL
    else:
        verdict = INCONCLUSIVE
    return {"verdict": verdict, "component_dim": d, "algebra_dim": alg_dim,
            "target_dim": int(target) if target.denominator == 1 else str(target),
            "matrix_degree_k": k, "division_dim": block.min_ideal_dim ** 2 // block.dim_Q,
            "commutes_with_block": commutes, "label": block.exceptional_label}


# -- lattice and orthogonality hypotheses ---------------------------------------

def orbit_rank(H: HomologyModule, gens, a, max_len: int = DEFAULT_MAX_WORD_LEN) -> dict:
    """Rank of Z Gamma a, grown by word length until it reaches 2g or stops growing."""
    letters = GeneratedGroup(list(gens)).with_inverses()
    a = np.asarray(a, dtype=object)
    eb = EchelonBasis(H.rank)
    eb.add(a)
    seen = {matrix_key(a)}
    frontier = [a]
    history = [len(eb)]
    for length in range(1, max_len + 1):
        nxt = []
        for v in frontier:
            for g in letters:
                w = g.dot(v)
                key = matrix_key(w)
                if key not in seen:
                    seen.add(key)
                    nxt.append(w)
                    eb.add(w)
        history.append(len(eb))
        frontier = nxt
        if len(eb) == H.rank:
            return {"verdict": PASS, "rank": len(eb), "word_length": length,
                    "history": history}
        if not frontier:
            break
    return {"verdict": FAIL if not frontier else INCONCLUSIVE, "rank": len(eb),
            "word_length": max_len, "history": history}


def proviso_blocks(H: HomologyModule, blocks) -> list:
    """Blocks that are division algebras whose component has D-dimension above 2."""
    out = []
    module = H.gmodule()
    for b in blocks:
        comp = isotypical_projection(b, module)
        if b.dim_Q == b.min_ideal_dim and comp.dim // b.min_ideal_dim > 2:
            out.append(b)
    return out


def lattice_hypotheses(H: HomologyModule, a, pairs, blocks=None,
                       max_len: int = DEFAULT_MAX_WORD_LEN) -> dict:
    """Rank of Z Gamma a, and a search for pairs with <b_i, b_j> = 0 where blocks need one."""
    a = np.asarray(a, dtype=object)
    for p in pairs:
        if matrix_key(p.a) != matrix_key(a):
            raise TwistError("all pairs must share the same a")
    gens = [m.matrix for p in pairs for m in gamma_ab_generators(H, p)]
    lattice = orbit_rank(H, gens, a, max_len)
    orthogonal = None
    for i, p in enumerate(pairs):
        for j in range(i + 1, len(pairs)):
            if not hermitian_form(H, p.b, pairs[j].b):
                orthogonal = [i, j]
                break
        if orthogonal:
            break
    blocks = blocks if blocks is not None else central_idempotents(H.group)
    needing = proviso_blocks(H, blocks)
    labels = [blocks.index(b) for b in needing]
    if not needing:
        orthogonality = "vacuous"
    else:
        orthogonality = PASS if orthogonal else FAIL
    return {"lattice": lattice, "orthogonal_pair": orthogonal, "proviso_blocks": labels,
            "orthogonality": orthogonality}


# -- full pipeline -------------------------------------------------------------

@dataclass
class DiagnosticsReport:
    spec: CoverSpec
    alpha: str
    betas: list
    genus: int
    euler_characteristic: int
    blocks: list
    pairs: list
    span: dict
    fixed_dim: int
    fixed_witness: list
    mod_l: list
    irreducibility: list
    lattice: dict
    d_beta: dict

    @property
    def verdicts(self) -> list:
        out = [self.span["verdict"], PASS if self.fixed_dim == 0 else FAIL]
        out += [m["verdict"] for m in self.mod_l]
        out += [PASS if all(p.certificate.values()) else FAIL for p in self.pairs]
        out += [r["verdict"] for r in self.irreducibility]
        out += [self.lattice["lattice"]["verdict"]]
        if self.lattice["orthogonality"] != "vacuous":
            out.append(self.lattice["orthogonality"])
        out += [PASS if v["agree"] else FAIL for v in self.d_beta.values()]
        return out

    @property
    def status(self) -> str:
        v = self.verdicts
        if FAIL in v:
            return FAIL
        return INCONCLUSIVE if INCONCLUSIVE in v else PASS

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "cover": {"spec": self.spec.to_json(), "genus": self.genus,
                      "euler_characteristic": self.euler_characteristic},
            "alpha": self.alpha,
            "betas": list(self.betas),
            "blocks": self.blocks,
            "pairs": [p.to_json() for p in self.pairs],
            "span_check": self.span,
            "fixed_subspace": {"dim": self.fixed_dim, "witness": self.fixed_witness,
                               "verdict": PASS if self.fixed_dim == 0 else FAIL},
            "mod_l_fixed_vectors": self.mod_l,
            "block_irreducibility": self.irreducibility,
            "lattice_hypotheses": self.lattice,
            "d_beta_agreement": self.d_beta,
        }


def diagnose(spec: CoverSpec, alpha: str, betas, max_word_len: int = DEFAULT_MAX_WORD_LEN,
             primes=(2, 3, 5), seed: int = 0) -> DiagnosticsReport:
    """Run every finite-level check on a cover and a family of hyperbolic pairs."""
    H = cover_homology(spec)
    blocks = central_idempotents(spec.group, seed=seed)
    a = lift_class(H, alpha)
    pairs = [pair_from_words(H, alpha, b) for b in betas]
    span = span_check(H, a, pairs)
    gamma_o = GeneratedGroup.from_equivariant(
        [m for p in pairs for m in gamma_o_generators(H, p)])
    fixed = fixed_subspace(gamma_o)
    mod_l = [mod_l_fixed_vectors(gamma_o, ell) for ell in primes]
    gamma = [m.matrix for p in pairs for m in gamma_ab_generators(H, p)]
    module = H.gmodule()
    irreducibility = []
    for k, b in enumerate(blocks):
        r = block_irreducibility(gamma, b, module)
        r["block"] = k
        irreducibility.append(r)
    lattice = lattice_hypotheses(H, a, pairs, blocks, max_word_len)
    agreement = d_beta_agreement(H, alpha, through=_through_letter(alpha)) \
        if _through_letter(alpha) in spec.letters else {}
    return DiagnosticsReport(
        spec=spec, alpha=alpha, betas=list(betas), genus=H.genus,
        euler_characteristic=H.surface.euler_characteristic,
        blocks=[b.to_json() for b in blocks], pairs=pairs, span=span,
        fixed_dim=fixed.shape[1], fixed_witness=_int_rows(fixed.T), mod_l=mod_l,
        irreducibility=irreducibility, lattice=lattice, d_beta=agreement)


def _through_letter(alpha: str) -> str:
    """The dual handle letter of a single-letter alpha (x_i -> y_i)."""
    tok = alpha.strip()
    if tok.startswith("x") and tok[1:].isdigit():
        return "y" + tok[1:]
    if tok.startswith("y") and tok[1:].isdigit():
        return "x" + tok[1:]
    return ""


__all__ = ["GeneratedGroup", "DiagnosticsReport", "span_check", "fixed_subspace",
           "mod_l_fixed_vectors", "block_irreducibility", "lattice_hypotheses", "diagnose",
           "hyperbolic_gmodule", "generated_algebra_dim", "orbit_rank", "complete_to_hyperbolic"]
