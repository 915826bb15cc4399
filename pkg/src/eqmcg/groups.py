"""Finite groups, the group ring ZG / group algebra QG and its involution.

A group is stored as its multiplication table with the identity at index 0.
Group-ring elements carry exact coefficient vectors indexed by that table.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .linalg import EchelonBasis, normalize, to_domain


class GroupError(ValueError):
    """A table or generator set does not define a group."""


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """Multiplication-table presentation of a finite group.

    ``table[i][j]`` is the index of the product of element ``i`` with
    element ``j``; index 0 is the identity.
    """

    table: tuple
    labels: tuple
    name: str = ""

    def __post_init__(self):
        n = len(self.table)
        if n == 0:
            raise GroupError("empty group")
        if len(self.labels) != n or len(set(self.labels)) != n:
            raise GroupError("labels must be distinct, one per element")
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise GroupError("table rows must be permutations of the elements")
        for j in range(n):
            if sorted(self.table[i][j] for i in range(n)) != list(range(n)):
                raise GroupError("table columns must be permutations of the elements")
        if any(self.table[0][i] != i or self.table[i][0] != i for i in range(n)):
            raise GroupError("index 0 is not a two-sided identity")
        t = self.table
        for a, b, c in product(range(n), repeat=3):
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupError(f"associativity fails on ({a}, {b}, {c})")

    def __eq__(self, other):
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return self.table == other.table and self.labels == other.labels

    def __hash__(self):
        return hash((self.table, self.labels))

    @property
    def order(self) -> int:
        return len(self.table)

    def __len__(self) -> int:
        return len(self.table)

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @cached_property
    def inverse(self) -> tuple:
        return tuple(row.index(0) for row in self.table)

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def conj(self, g: int, x: int) -> int:
        """g x g^-1."""
        return self.table[self.table[g][x]][self.inverse[g]]

    def commutator(self, a: int, b: int) -> int:
        """a b a^-1 b^-1."""
        t, inv = self.table, self.inverse
        return t[t[t[a][b]][inv[a]]][inv[b]]

    def product(self, elements: Iterable[int]) -> int:
        out = 0
        for x in elements:
            out = self.table[out][x]
        return out

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        out = 0
        for _ in range(k):
            out = self.table[out][a]
        return out

    @cached_property
    def element_orders(self) -> tuple:
        orders = []
        for a in range(self.order):
            k, x = 1, a
            while x != 0:
                x = self.table[x][a]
                k += 1
            orders.append(k)
        return tuple(orders)

    def element_order(self, a: int) -> int:
        return self.element_orders[a]

    @cached_property
    def conjugacy_classes(self) -> tuple:
        seen: set[int] = set()
        classes = []
        for x in range(self.order):
            if x in seen:
                continue
            cls = sorted({self.conj(g, x) for g in range(self.order)})
            seen.update(cls)
            classes.append(tuple(cls))
        return tuple(classes)

    def index(self, element) -> int:
        """Resolve a label or an integer index to an element index."""
        if isinstance(element, (int, np.integer)) and not isinstance(element, bool):
            if not 0 <= element < self.order:
                raise KeyError(f"element index {element} out of range")
            return int(element)
        try:
            return self.labels.index(str(element))
        except ValueError:
            raise KeyError(f"unknown group element {element!r}") from None

    def subgroup(self, gens: Iterable[int]) -> frozenset:
        """Elements of the subgroup generated by ``gens``."""
        gens = list(gens)
        found = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.table[x][g]
                    if y not in found:
                        found.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(found)

    @cached_property
    def generators(self) -> tuple:
        """A small generating set, chosen greedily in index order."""
        gens: list[int] = []
        sub = frozenset({0})
        # prefer elements of large order so cyclic groups get one generator
        for x in sorted(range(1, self.order), key=lambda a: (-self.element_orders[a], a)):
            if x not in sub:
                gens.append(x)
                sub = self.subgroup(gens)
            if len(sub) == self.order:
                break
        return tuple(gens)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in range(self.order) for b in range(a))

    def relabel(self, perm: Sequence[int]) -> "FiniteGroup":
        """Same group with element ``i`` renamed to ``perm[i]`` (perm[0] must be 0)."""
        n = self.order
        if sorted(perm) != list(range(n)) or perm[0] != 0:
            raise GroupError("relabeling must be a permutation fixing the identity")
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        table = tuple(tuple(perm[self.table[inv[a]][inv[b]]] for b in range(n)) for a in range(n))
        labels = tuple(self.labels[inv[a]] for a in range(n))
        return FiniteGroup(table, labels, self.name)

    # -- serialization ---------------------------------------------------

    def to_json(self) -> dict:
        return {"order": self.order, "table": [list(r) for r in self.table],
                "labels": list(self.labels), "name": self.name}

    @classmethod
    def from_table(cls, table: Sequence[Sequence[int]], labels: Sequence[str] | None = None,
                   name: str = "") -> "FiniteGroup":
        """Build from a table; the identity is moved to index 0 if needed."""
        n = len(table)
        table = [list(map(int, row)) for row in table]
        if labels is None:
            labels = [str(i) for i in range(n)]
        labels = [str(x) for x in labels]
        ident = next((e for e in range(n) if all(table[e][i] == i and table[i][e] == i
                                                 for i in range(n))), None)
        if ident is None:
            raise GroupError("table has no identity element")
        if ident != 0:
            order = [ident] + [i for i in range(n) if i != ident]
            pos = {old: new for new, old in enumerate(order)}
            table = [[pos[table[a][b]] for b in order] for a in order]
            labels = [labels[a] for a in order]
        return cls(tuple(tuple(r) for r in table), tuple(labels), name)

    @classmethod
    def from_generators(cls, gens: Sequence[Hashable], mul: Callable, identity: Hashable,
                        label: Callable[[Hashable], str] = str, name: str = "") -> "FiniteGroup":
        """Close a set of elements of some ambient monoid under ``mul``."""
        elements = [identity]
        pos = {identity: 0}
        frontier = [identity]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = mul(x, g)
                    if y not in pos:
                        pos[y] = len(elements)
                        elements.append(y)
                        nxt.append(y)
                        if len(elements) > 4096:
                            raise GroupError("generated group is too large")
            frontier = nxt
        table = tuple(tuple(pos[mul(a, b)] for b in elements) for a in elements)
        return cls(table, tuple(label(x) for x in elements), name)

    @classmethod
    def from_permutations(cls, perms: Sequence[Sequence[int]], name: str = "") -> "FiniteGroup":
        """Group generated by permutations of {0..d-1}; (p*q)(i) = p(q(i))."""
        if not perms:
            return trivial()
        d = max(len(p) for p in perms)
        gens = []
        for p in perms:
            p = list(p) + list(range(len(p), d))
            if sorted(p) != list(range(d)):
                raise GroupError(f"not a permutation: {p}")
            gens.append(tuple(p))

        def mul(p, q):
            return tuple(p[q[i]] for i in range(d))

        return cls.from_generators(gens, mul, tuple(range(d)), _cycle_label, name)

    @classmethod
    def from_json(cls, data: dict) -> "FiniteGroup":
        if isinstance(data, str):
            return named_group(data)
        if "name" in data and "table" not in data and "permutations" not in data:
            return named_group(data["name"])
        if "permutations" in data:
            return cls.from_permutations(data["permutations"], data.get("name", ""))
        if "table" in data:
            table = data["table"]
            if "order" in data and data["order"] != len(table):
                raise GroupError("declared order does not match table size")
            return cls.from_table(table, data.get("labels"), data.get("name", ""))
        raise GroupError("group JSON needs 'table', 'permutations' or 'name'")


def _cycle_label(p: tuple) -> str:
    seen, cycles = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        cycles.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(cycles) or "()"


# -- catalog ---------------------------------------------------------------

def trivial() -> FiniteGroup:
    return FiniteGroup(((0,),), ("1",), "1")


def cyclic(n: int) -> FiniteGroup:
    labels = ["1", "t"] + [f"t^{k}" for k in range(2, n)]
    table = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    return FiniteGroup(table, tuple(labels[:n]), f"Z{n}")


def semidirect_cyclic(m: int, n: int, r: int, name: str = "") -> FiniteGroup:
    """C_m x| C_n with the generator of C_n acting on C_m as k -> r*k."""
    if pow(r, n, m) != 1 % m:
        raise GroupError("r^n must be 1 mod m")

    def mul(x, y):
        return ((x[0] + pow(r, x[1], m) * y[0]) % m, (x[1] + y[1]) % n)

    def label(x):
        a = "" if x[0] == 0 else ("a" if x[0] == 1 else f"a^{x[0]}")
        b = "" if x[1] == 0 else ("b" if x[1] == 1 else f"b^{x[1]}")
        return (a + b) or "1"

    return FiniteGroup.from_generators([(1, 0), (0, 1)], mul, (0, 0), label,
                                       name or f"C{m}:C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n."""
    return semidirect_cyclic(n, 2, n - 1, f"D{n}")


def dicyclic(n: int) -> FiniteGroup:
    """Binary dihedral group of order 4n."""
    if n == 2:
        return quaternion()
    if n % 2:
        return semidirect_cyclic(n, 4, n - 1, f"Dic{n}")
    # general case through quaternion-type matrices is not needed at desk scale
    raise GroupError("dicyclic(n) is only provided for n = 2 or odd n")


def _qmul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return (a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2)


def _qlabel(q) -> str:
    names = ["", "i", "j", "k"]
    parts = []
    for c, nm in zip(q, names):
        if c:
            c = Fraction(c)
            coef = "" if abs(c) == 1 and nm else str(abs(c))
            parts.append(("-" if c < 0 else "+") + coef + nm)
    s = "".join(parts)
    return s[1:] if s.startswith("+") else s


def quaternion() -> FiniteGroup:
    return FiniteGroup.from_generators([(0, 1, 0, 0), (0, 0, 1, 0)], _qmul, (1, 0, 0, 0),
                                       _qlabel, "Q8")


def binary_tetrahedral() -> FiniteGroup:
    h = Fraction(1, 2)
    one = (Fraction(1), Fraction(0), Fraction(0), Fraction(0))
    i = (Fraction(0), Fraction(1), Fraction(0), Fraction(0))
    return FiniteGroup.from_generators([i, (h, h, h, h)], _qmul, one, _qlabel, "SL(2,3)")


def symmetric(n: int) -> FiniteGroup:
    if n == 1:
        return trivial()
    if n == 2:
        return FiniteGroup.from_permutations([[1, 0]], "S2")
    return FiniteGroup.from_permutations([[1, 0] + list(range(2, n)),
                                          list(range(1, n)) + [0]], f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return trivial()
    gens = [[1, 2, 0] + list(range(3, n))]
    if n > 3:
        cyc = list(range(1, n)) + [0] if n % 2 else [0] + list(range(2, n)) + [1]
        gens.append(cyc)
    return FiniteGroup.from_permutations(gens, f"A{n}")


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    pairs = [(a, b) for a in range(g.order) for b in range(h.order)]
    pos = {p: i for i, p in enumerate(pairs)}
    table = tuple(tuple(pos[(g.mul(a, c), h.mul(b, d))] for (c, d) in pairs) for (a, b) in pairs)
    labels = tuple(f"({g.labels[a]},{h.labels[b]})" for a, b in pairs)
    return FiniteGroup(table, labels, f"{g.name}x{h.name}")


_NAMED = {
    "1": trivial, "trivial": trivial,
    "Z2xZ2": lambda: direct_product(cyclic(2), cyclic(2)),
    "V4": lambda: direct_product(cyclic(2), cyclic(2)),
    "Q8": quaternion, "SL(2,3)": binary_tetrahedral, "2T": binary_tetrahedral,
}


def named_group(name: str) -> FiniteGroup:
    """Catalog lookup: Z<n>, D<n> (order 2n), S<n>, A<n>, Dic<n>, Q8, SL(2,3).

    Names joined by ``x`` (``Z2xZ4``, ``Z2xZ2xZ2``) give direct products, and
    ``Z2^3`` abbreviates ``Z2xZ2xZ2``.
    """
    key = name.replace("/", "").replace("ℤ", "Z").replace(" ", "")
    if key in _NAMED:
        return _NAMED[key]()
    power = re.fullmatch(r"(\w+)\^(\d+)", key)
    if power and int(power.group(2)) >= 1:
        key = "x".join([power.group(1)] * int(power.group(2)))
    if "x" in key:
        factors = [named_group(part) for part in key.split("x")]
        out = factors[0]
        for f in factors[1:]:
            out = direct_product(out, f)
        return out
    for prefix, fn in (("Dic", dicyclic), ("Z", cyclic), ("C", cyclic), ("D", dihedral),
                       ("S", symmetric), ("A", alternating)):
        if key.startswith(prefix) and key[len(prefix):].isdigit():
            return fn(int(key[len(prefix):]))
    raise GroupError(f"unknown group name {name!r}")


def load_group(path) -> FiniteGroup:
    with open(path) as fh:
        return FiniteGroup.from_json(json.load(fh))


# -- group ring ------------------------------------------------------------

class AlgebraElement:
    """Element of QG as an exact coefficient vector; integral ones model ZG."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: FiniteGroup, coeffs: Sequence):
        if len(coeffs) != group.order:
            raise ValueError("coefficient vector has the wrong length")
        self.group = group
        self.coeffs = tuple(normalize(c) for c in coeffs)

    @classmethod
    def zero(cls, group: FiniteGroup) -> "AlgebraElement":
        return cls(group, [0] * group.order)

    @classmethod
    def one(cls, group: FiniteGroup) -> "AlgebraElement":
        return cls.basis(group, 0)

    @classmethod
    def basis(cls, group: FiniteGroup, g, coeff=1) -> "AlgebraElement":
        c = [0] * group.order
        c[group.index(g)] = coeff
        return cls(group, c)

    @classmethod
    def from_dict(cls, group: FiniteGroup, terms: dict) -> "AlgebraElement":
        c = [0] * group.order
        for g, v in terms.items():
            c[group.index(g)] += Fraction(v)
        return cls(group, c)

    def _check(self, other: "AlgebraElement"):
        if other.group is not self.group and other.group.table != self.group.table:
            raise ValueError("mismatched parent groups")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraElement.one(self.group) * other
        self._check(other)
        return AlgebraElement(self.group, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.group, [-a for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return AlgebraElement(self.group, [a * other for a in self.coeffs])
        self._check(other)
        t = self.group.table
        out = [0] * self.group.order
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            row = t[i]
            for j, b in enumerate(other.coeffs):
                if b:
                    out[row[j]] += a * b
        return AlgebraElement(self.group, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def __pow__(self, k: int):
        out = AlgebraElement.one(self.group)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = AlgebraElement.one(self.group) * other
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.group.table == other.group.table and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return any(self.coeffs)

    def __getitem__(self, g):
        return self.coeffs[self.group.index(g)]

    def coefficient(self, g):
        return self[g]

    def dagger(self) -> "AlgebraElement":
        inv = self.group.inverse
        out = [0] * self.group.order
        for i, a in enumerate(self.coeffs):
            out[inv[i]] = a
        return AlgebraElement(self.group, out)

    def is_integral(self) -> bool:
        return all(isinstance(c, int) for c in self.coeffs)

    def is_central(self) -> bool:
        return all(self * AlgebraElement.basis(self.group, g) ==
                   AlgebraElement.basis(self.group, g) * self for g in self.group.generators)

    def augmentation(self):
        return normalize(sum(self.coeffs, Fraction(0)))

    def to_json(self) -> dict:
        return {self.group.labels[i]: str(c) for i, c in enumerate(self.coeffs) if c}

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}*e[{self.group.labels[i]}]")
        return " + ".join(terms) if terms else "0"


def dagger(x: AlgebraElement) -> AlgebraElement:
    """The anti-involution e_g -> e_{g^-1}."""
    return x.dagger()


def trace_form(x: AlgebraElement, y: AlgebraElement):
    """Trace of left multiplication by x y^dagger on QG, i.e. |G| times its e_1 coefficient."""
    x._check(y)
    # coefficient of e_1 in x y^dagger is sum_g x_g y_g
    return normalize(x.group.order * sum((Fraction(a) * b for a, b in zip(x.coeffs, y.coeffs)),
                                         Fraction(0)))


def left_regular_matrix(x: AlgebraElement) -> np.ndarray:
    """Matrix of left multiplication by ``x`` on QG in the group basis."""
    n = x.group.order
    out = np.zeros((n, n), dtype=object)
    t = x.group.table
    for g in range(n):
        for h, c in enumerate(x.coeffs):
            if c:
                out[t[h][g], g] += c
    return out


def right_regular_matrix(x: AlgebraElement) -> np.ndarray:
    """Matrix of right multiplication by ``x`` on QG in the group basis."""
    n = x.group.order
    out = np.zeros((n, n), dtype=object)
    t = x.group.table
    for g in range(n):
        for h, c in enumerate(x.coeffs):
            if c:
                out[t[g][h], g] += c
    return out


def trace_gram_matrix(group: FiniteGroup) -> np.ndarray:
    basis = [AlgebraElement.basis(group, g) for g in range(group.order)]
    return np.array([[trace_form(a, b) for b in basis] for a in basis], dtype=object)


@dataclass(frozen=True)
class PlusCone:
    """Z-bases of R+ (dagger-fixed) and R++ = {r + r^dagger} inside ZG."""

    group: FiniteGroup
    plus_basis: tuple
    plusplus_basis: tuple

    def plus_elements(self) -> list:
        return [AlgebraElement(self.group, v) for v in self.plus_basis]

    def plusplus_elements(self) -> list:
        return [AlgebraElement(self.group, v) for v in self.plusplus_basis]

    @cached_property
    def index(self) -> int:
        """[R+ : R++], computed as |det| of R++ in R+ coordinates."""
        eb = EchelonBasis(self.group.order)
        for v in self.plus_basis:
            eb.add(v)
        coords = [eb.coordinates(v) for v in self.plusplus_basis]
        if not coords:
            return 1
        det = to_domain(np.array(coords, dtype=object)).det()
        return abs(int(det))


def plus_cone_basis(group: FiniteGroup) -> PlusCone:
    n = group.order
    inv = group.inverse
    plus, plusplus = [], []
    for g in range(n):
        h = inv[g]
        if h < g:
            continue
        v = [0] * n
        if h == g:
            v[g] = 1
            plus.append(tuple(v))
            w = [0] * n
            w[g] = 2
            plusplus.append(tuple(w))
        else:
            v[g] = v[h] = 1
            plus.append(tuple(v))
            plusplus.append(tuple(v))
    return PlusCone(group, tuple(plus), tuple(plusplus))
