"""Regular G-covers of surfaces as cell complexes, and their first homology.

The base surface has one vertex, loops x_i, y_i (handles) and z_j (around
branch points), one polygon with boundary prod [x_i, y_i] prod z_j, and a
disk along z_j^ord(c_j) in the cover. Lifts are labeled by G: the lift of the
letter s starting at vertex g ends at g phi(s), and G acts on the left.
"""

from __future__ import annotations

import json
import random
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from .groups import AlgebraElement, FiniteGroup, GroupError, named_group
from .linalg import inverse, matrix_key, smith, to_domain, zeros
from .wedderburn import GModule


class CoverError(ValueError):
    """Invalid cover data, or an inconsistency detected while building."""


@dataclass(frozen=True)
class CoverSpec:
    """Monodromy data of a regular G-cover of a genus-h surface with branch points."""

    group: FiniteGroup
    genus: int
    branch: tuple = ()
    handles: tuple = ()

    def __post_init__(self):
        g = self.group
        if self.genus < 0:
            raise CoverError("base genus must be nonnegative")
        if len(self.handles) != self.genus:
            raise CoverError(f"expected {self.genus} handle pairs, got {len(self.handles)}")
        rel = g.product([g.commutator(x, y) for x, y in self.handles] + list(self.branch))
        if rel != 0:
            raise CoverError("surface relation violated: "
                             f"prod [phi(x_i), phi(y_i)] prod c_j = {g.labels[rel]}")
        images = [x for pair in self.handles for x in pair] + list(self.branch)
        if len(g.subgroup(images)) != g.order:
            raise CoverError("cover is disconnected: monodromy images do not generate G")

    @property
    def letters(self) -> list[str]:
        out = []
        for i in range(1, self.genus + 1):
            out += [f"x{i}", f"y{i}"]
        return out + [f"z{j}" for j in range(1, len(self.branch) + 1)]

    @cached_property
    def monodromy(self) -> dict:
        out = {}
        for i, (x, y) in enumerate(self.handles, start=1):
            out[f"x{i}"] = x
            out[f"y{i}"] = y
        for j, c in enumerate(self.branch, start=1):
            out[f"z{j}"] = c
        return out

    def word_monodromy(self, word) -> int:
        g = self.group
        out = 0
        for letter, sign in parse_word(word):
            m = self.monodromy[letter]
            out = g.mul(out, m if sign > 0 else g.inv(m))
        return out

    @property
    def euler_characteristic(self) -> int:
        n = self.group.order
        return n * (2 - 2 * self.genus - len(self.branch)) + \
            sum(n // self.group.element_order(c) for c in self.branch)

    @property
    def cover_genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    @classmethod
    def from_json(cls, data: dict, base_dir=None) -> "CoverSpec":
        grp = data["group"]
        if isinstance(grp, str):
            group = named_group(grp)
        elif isinstance(grp, dict):
            group = FiniteGroup.from_json(grp)
        else:
            raise CoverError("group must be a name or a group object")
        try:
            branch = tuple(group.index(c) for c in data.get("branch", []))
            handles = tuple((group.index(x), group.index(y)) for x, y in data.get("handles", []))
        except (GroupError, KeyError) as exc:
            raise CoverError(exc.args[0] if exc.args else str(exc)) from None
        return cls(group, int(data["genus"]), branch, handles)

    def to_json(self) -> dict:
        lab = self.group.labels
        return {"group": self.group.to_json(), "genus": self.genus,
                "branch": [lab[c] for c in self.branch],
                "handles": [[lab[x], lab[y]] for x, y in self.handles]}


_TOKEN = re.compile(r"^([xyz])(\d+)(?:\^(-?\d+))?$")


def parse_word(word) -> list[tuple[str, int]]:
    """Parse ``"x1 y2^-1 x1^2"`` into (letter, +-1) steps."""
    if isinstance(word, (list, tuple)):
        return [tuple(t) for t in word]
    out = []
    for tok in word.split():
        m = _TOKEN.match(tok)
        if not m:
            raise CoverError(f"cannot parse word token {tok!r}")
        letter = m.group(1) + m.group(2)
        exp = int(m.group(3)) if m.group(3) is not None else 1
        out += [(letter, 1 if exp > 0 else -1)] * abs(exp)
    return out


def relator_word(spec: CoverSpec) -> list[tuple[str, int]]:
    out = []
    for i in range(1, spec.genus + 1):
        x, y = f"x{i}", f"y{i}"
        out += [(x, 1), (y, 1), (x, -1), (y, -1)]
    return out + [(f"z{j}", 1) for j in range(1, len(spec.branch) + 1)]


@dataclass(frozen=True)
class CWSurface:
    """Cell structure of the cover with its rotation system and G-action.

    Edge ``g * L + s`` is the lift of letter ``s`` starting at vertex ``g``.
    A dart is ``(edge, +1)`` (traversed forward) or ``(edge, -1)``; a dart
    also names the half-edge at the vertex it leaves.
    """

    spec: CoverSpec
    faces: tuple  # each face is a tuple of darts
    rotation: dict = field(repr=False)  # vertex -> cyclic tuple of outgoing darts

    @property
    def group(self) -> FiniteGroup:
        return self.spec.group

    @property
    def num_letters(self) -> int:
        return len(self.spec.letters)

    @property
    def num_vertices(self) -> int:
        return self.group.order

    @property
    def num_edges(self) -> int:
        return self.group.order * self.num_letters

    def edge(self, g: int, letter: str) -> int:
        return g * self.num_letters + self.spec.letters.index(letter)

    def tail(self, e: int) -> int:
        return e // self.num_letters

    def head(self, e: int) -> int:
        letter = self.spec.letters[e % self.num_letters]
        return self.group.mul(self.tail(e), self.spec.monodromy[letter])

    def dart_source(self, dart) -> int:
        e, s = dart
        return self.tail(e) if s > 0 else self.head(e)

    def dart_target(self, dart) -> int:
        e, s = dart
        return self.head(e) if s > 0 else self.tail(e)

    @property
    def euler_characteristic(self) -> int:
        return self.num_vertices - self.num_edges + len(self.faces)

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def act_edge(self, g: int, e: int) -> int:
        L = self.num_letters
        return self.group.mul(g, e // L) * L + e % L

    def boundary_1(self) -> np.ndarray:
        out = zeros(self.num_vertices, self.num_edges)
        for e in range(self.num_edges):
            out[self.head(e), e] += 1
            out[self.tail(e), e] -= 1
        return out

    def boundary_2(self) -> np.ndarray:
        out = zeros(self.num_edges, len(self.faces))
        for k, face in enumerate(self.faces):
            for e, s in face:
                out[e, k] += s
        return out

    def lift_path(self, word, start: int = 0) -> tuple[np.ndarray, int]:
        """Edge chain of the lift of ``word`` from ``start`` and its endpoint."""
        chain = zeros(self.num_edges, 1)[:, 0]
        v = start
        for letter, sign in parse_word(word):
            m = self.spec.monodromy[letter]
            if sign > 0:
                chain[self.edge(v, letter)] += 1
                v = self.group.mul(v, m)
            else:
                v = self.group.mul(v, self.group.inv(m))
                chain[self.edge(v, letter)] -= 1
        return chain, v


def _trace_word(spec: CoverSpec, word, start: int, L: int) -> tuple:
    g = spec.group
    letters = spec.letters
    darts = []
    v = start
    for letter, sign in word:
        m = spec.monodromy[letter]
        s = letters.index(letter)
        if sign > 0:
            darts.append((v * L + s, 1))
            v = g.mul(v, m)
        else:
            v = g.mul(v, g.inv(m))
            darts.append((v * L + s, -1))
    if v != start:
        raise CoverError("lifted face boundary does not close")
    return tuple(darts)


def build_cover(spec: CoverSpec) -> CWSurface:
    """Cell complex of the cover, with the rotation system read off the face corners."""
    g = spec.group
    L = len(spec.letters)
    rel = relator_word(spec)
    faces = [_trace_word(spec, rel, v, L) for v in range(g.order)]
    for j, c in enumerate(spec.branch, start=1):
        k = g.element_order(c)
        seen = set()
        for v in range(g.order):
            if v in seen:
                continue
            orbit = [v]
            while len(orbit) < k:
                orbit.append(g.mul(orbit[-1], c))
            seen.update(orbit)
            faces.append(_trace_word(spec, [(f"z{j}", -1)] * k, v, L))
    surface = CWSurface(spec, tuple(faces), {})
    _check_orientable(surface)
    rotation = _rotation_system(surface)
    surface = CWSurface(spec, tuple(faces), rotation)
    if surface.euler_characteristic != spec.euler_characteristic:
        raise CoverError("Euler characteristic disagrees with Riemann-Hurwitz")
    return surface


def _check_orientable(surface: CWSurface):
    uses = {}
    for face in surface.faces:
        for dart in face:
            uses[dart] = uses.get(dart, 0) + 1
    for e in range(surface.num_edges):
        if uses.get((e, 1)) != 1 or uses.get((e, -1)) != 1:
            raise CoverError(f"edge {e} is not traversed once in each direction by the faces")


def _rotation_system(surface: CWSurface) -> dict:
    sigma = {}
    for face in surface.faces:
        m = len(face)
        for k in range(m):
            prev, nxt = face[k], face[(k + 1) % m]
            # corner at the vertex where prev ends and nxt starts
            sigma[nxt] = (prev[0], -prev[1])
    rotation = {}
    for v in range(surface.num_vertices):
        darts = [d for d in sigma if surface.dart_source(d) == v]
        if not darts:
            raise CoverError(f"vertex {v} has no incident edges")
        start = min(darts)
        cycle = [start]
        while True:
            nxt = sigma[cycle[-1]]
            if nxt == start:
                break
            cycle.append(nxt)
        if len(cycle) != len(darts):
            raise CoverError(f"link of vertex {v} is not a single cycle")
        rotation[v] = tuple(cycle)
    return rotation


def intersection_number(surface: CWSurface, z: np.ndarray, w: np.ndarray) -> int:
    """Algebraic intersection of two edge cycles on the fat graph.

    ``w`` is pushed off to one side of every edge. At each vertex the
    half-edges are read in rotation order, each contributing a point of ``z``
    and a point of ``w``; with outgoing flows z_p, w_q the local count is
    the sum of z_p w_q over ordered pairs p < q. It does not depend on where
    the cyclic order is cut because both flows sum to zero at the vertex.
    """
    total = 0
    for v, darts in surface.rotation.items():
        seq = []
        for e, s in darts:
            zf, wf = s * z[e], s * w[e]
            seq += [(zf, 0), (0, wf)] if s > 0 else [(0, wf), (zf, 0)]
        acc = 0
        for zp, wq in seq:
            if wq:
                total += acc * wq
            acc += zp
    return int(total)


@dataclass(frozen=True)
class HomologyModule:
    """H_1 of the cover with a Z-basis, the G-action and the intersection matrix."""

    surface: CWSurface
    basis: np.ndarray = field(repr=False)  # columns: edge cycles
    projector: np.ndarray = field(repr=False)  # rows: nontree-coordinate functionals
    nontree: tuple = ()
    actions: tuple = field(default=(), repr=False)  # one integer matrix per group element
    J: np.ndarray = field(default=None, repr=False)

    @property
    def group(self) -> FiniteGroup:
        return self.surface.group

    @property
    def rank(self) -> int:
        return self.basis.shape[1]

    @property
    def genus(self) -> int:
        return self.rank // 2

    def coordinates(self, cycle: np.ndarray) -> np.ndarray:
        """Coordinates of an edge cycle in the homology basis."""
        if any(self.surface.boundary_1().dot(cycle)):
            raise CoverError("chain is not a cycle")
        return self.projector.dot(np.array([cycle[e] for e in self.nontree], dtype=object))

    def act(self, g, x: np.ndarray) -> np.ndarray:
        return self.actions[self.group.index(g)].dot(x)

    def intersect(self, x: np.ndarray, y: np.ndarray) -> int:
        return int(np.asarray(x).dot(self.J).dot(np.asarray(y)))

    def gmodule(self) -> GModule:
        return GModule(self.group, self.actions)

    def to_json(self) -> dict:
        lab = self.group.labels
        return {
            "genus": self.genus,
            "rank": self.rank,
            "euler_characteristic": self.surface.euler_characteristic,
            "J": [[int(x) for x in row] for row in self.J],
            "actions": {lab[g]: [[int(x) for x in row] for row in self.actions[g]]
                        for g in self.group.generators},
        }


def _spanning_tree(surface: CWSurface) -> set:
    tree = set()
    seen = {0}
    frontier = [0]
    adjacency = {}
    for e in range(surface.num_edges):
        adjacency.setdefault(surface.tail(e), []).append((e, surface.head(e)))
        adjacency.setdefault(surface.head(e), []).append((e, surface.tail(e)))
    while frontier:
        nxt = []
        for v in frontier:
            for e, u in adjacency.get(v, []):
                if u not in seen:
                    seen.add(u)
                    tree.add(e)
                    nxt.append(u)
        frontier = nxt
    if len(seen) != surface.num_vertices:
        raise CoverError("1-skeleton is disconnected")
    return tree


def _fundamental_cycle(surface: CWSurface, tree: set, e: int) -> np.ndarray:
    """The cycle e followed by the tree path from head(e) back to tail(e)."""
    parent = {0: None}
    frontier = [0]
    tree_adj = {}
    for t in tree:
        tree_adj.setdefault(surface.tail(t), []).append((t, surface.head(t), 1))
        tree_adj.setdefault(surface.head(t), []).append((t, surface.tail(t), -1))
    while frontier:
        nxt = []
        for v in frontier:
            for t, u, s in tree_adj.get(v, []):
                if u not in parent:
                    parent[u] = (t, v, s)
                    nxt.append(u)
        frontier = nxt

    def path_to_root(v):
        chain = {}
        while parent[v] is not None:
            t, p, s = parent[v]
            chain[t] = chain.get(t, 0) - s  # step v -> p reverses the p -> v step
            v = p
        return chain

    out = zeros(surface.num_edges, 1)[:, 0]
    out[e] += 1
    for t, c in path_to_root(surface.head(e)).items():
        out[t] += c
    for t, c in path_to_root(surface.tail(e)).items():
        out[t] -= c
    return out


def homology(surface: CWSurface) -> HomologyModule:
    """H_1 = ker d1 / im d2 with a Smith-normal-form basis, G-action and J."""
    tree = _spanning_tree(surface)
    nontree = tuple(e for e in range(surface.num_edges) if e not in tree)
    cycles = [_fundamental_cycle(surface, tree, e) for e in nontree]
    m = len(nontree)
    d2 = surface.boundary_2()
    C = np.array([[d2[e, k] for k in range(d2.shape[1])] for e in nontree], dtype=object)
    C = C.reshape((m, d2.shape[1]))
    if m == 0:
        basis = zeros(surface.num_edges, 0)
        projector = zeros(0, 0)
    else:
        D, U, _ = smith(C)
        diag = [D[i, i] for i in range(min(D.shape))]
        r = sum(1 for d in diag if d != 0)
        if any(abs(d) > 1 for d in diag[:r]):
            raise CoverError("torsion in H_1: the complex is not a closed orientable surface")
        Uinv = inverse(U)
        cyc = np.array(cycles, dtype=object).T.reshape((surface.num_edges, m))
        basis = cyc.dot(Uinv[:, r:])
        projector = U[r:, :]
    k = basis.shape[1]
    grp = surface.group
    def coords(cycle):
        return projector.dot(np.array([cycle[e] for e in nontree], dtype=object))

    actions = []
    for g in range(grp.order):
        mat = zeros(k, k)
        for j in range(k):
            moved = zeros(surface.num_edges, 1)[:, 0]
            for e in range(surface.num_edges):
                if basis[e, j]:
                    moved[surface.act_edge(g, e)] += basis[e, j]
            col = coords(moved)
            for i in range(k):
                mat[i, j] = col[i]
        actions.append(mat)
    J = zeros(k, k)
    for i in range(k):
        for j in range(k):
            J[i, j] = intersection_number(surface, basis[:, i], basis[:, j])
    module = HomologyModule(surface, basis, projector, nontree, tuple(actions), J)
    _check_homology(module)
    return module


def _check_homology(H: HomologyModule):
    J = H.J
    k = H.rank
    if k != 2 - H.surface.euler_characteristic:
        raise CoverError("rank of H_1 disagrees with 2 - chi")
    if matrix_key(J.T) != matrix_key(-J):
        raise CoverError("intersection matrix is not skew-symmetric")
    if k and abs(to_domain(J).det()) != 1:
        raise CoverError("intersection matrix is not unimodular")
    for M in H.actions:
        if matrix_key(M.T.dot(J).dot(M)) != matrix_key(J):
            raise CoverError("deck transformation does not preserve the intersection form")


def hermitian_form(H: HomologyModule, x: np.ndarray, y: np.ndarray) -> AlgebraElement:
    """<x, y> = sum_g ((g^-1 x) . y) e_g."""
    grp = H.group
    Jy = H.J.dot(np.asarray(y, dtype=object))
    coeffs = [int(H.actions[grp.inv(g)].dot(x).dot(Jy)) for g in range(grp.order)]
    return AlgebraElement(grp, coeffs)


def lift_class(surface_or_module, word, H: HomologyModule | None = None) -> np.ndarray:
    """Homology coordinates of the lift of ``word`` through the identity vertex."""
    if isinstance(surface_or_module, HomologyModule):
        H = surface_or_module
    surface = H.surface
    chain, end = surface.lift_path(word, 0)
    if end != 0:
        raise CoverError(f"word {word!r} has nontrivial monodromy "
                         f"{surface.group.labels[end]}")
    return H.coordinates(chain)


def cover_homology(spec: CoverSpec) -> HomologyModule:
    return homology(build_cover(spec))


# -- standard covers ----------------------------------------------------------

def _spec(group: FiniteGroup, genus: int, handles, branch=()) -> CoverSpec:
    return CoverSpec(group, genus, tuple(group.index(c) for c in branch),
                     tuple((group.index(x), group.index(y)) for x, y in handles))


def example_c2() -> CoverSpec:
    """Z/2 over genus 2 with x1 -> t and the other generators trivial."""
    g = named_group("Z2")
    return _spec(g, 2, [("t", "1"), ("1", "1")])


def hyperelliptic() -> CoverSpec:
    g = named_group("Z2")
    return _spec(g, 0, [], ["t"] * 6)


def standard_test_cover(name: str) -> CoverSpec:
    """Covers where x1 has trivial monodromy and its complement still generates G.

    Z/2 and Z/3 sit over genus 2 (cover genus 3 and 4); S3 sits over a torus
    with three branch points (cover genus 6).
    """
    g = named_group(name)
    if g.order == 1:
        return _spec(g, 2, [("1", "1"), ("1", "1")])
    if name in ("Z2", "Z3"):
        return _spec(g, 2, [("1", "t"), ("t", "1")])
    if name == "S3":
        s = next(i for i in range(g.order) if g.element_order(i) == 2)
        r = next(i for i in range(g.order) if g.element_order(i) == 3)
        return CoverSpec(g, 1, (s, r, g.inv(g.mul(s, r))), ((0, s),))
    raise CoverError(f"no standard test cover for {name}")


def random_cover_spec(group: FiniteGroup, rng: random.Random, max_genus: int = 2,
                      max_branch: int = 3, max_tries: int = 1000) -> CoverSpec:
    """A uniformly drawn valid spec; the last branch value closes the relation."""
    n = group.order
    for _ in range(max_tries):
        h = rng.randint(0, max_genus)
        b = rng.randint(0, max_branch)
        handles = tuple((rng.randrange(n), rng.randrange(n)) for _ in range(h))
        branch = [rng.randrange(n) for _ in range(max(b - 1, 0))]
        rel = group.product([group.commutator(x, y) for x, y in handles] + branch)
        if b:
            branch.append(group.inv(rel))
        elif rel != 0:
            continue
        try:
            return CoverSpec(group, h, tuple(branch), handles)
        except CoverError:
            continue
    raise CoverError("no valid cover spec found")


def load_spec(path) -> CoverSpec:
    with open(path) as fh:
        return CoverSpec.from_json(json.load(fh))


__all__ = ["CoverError", "CoverSpec", "CWSurface", "HomologyModule", "build_cover", "homology",
           "hermitian_form", "lift_class", "intersection_number", "parse_word", "example_c2",
           "standard_test_cover", "random_cover_spec", "cover_homology", "load_spec",
           "hyperelliptic"]
