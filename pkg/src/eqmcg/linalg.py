"""Exact linear algebra over Z, Q and prime fields.

Matrices are numpy arrays of dtype ``object`` holding Python ``int`` or
``fractions.Fraction`` entries; nothing here ever touches floating point.
Heavy elimination is delegated to sympy's ``DomainMatrix``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
from sympy import GF, QQ, ZZ, Matrix
from sympy.matrices.normalforms import smith_normal_decomp
from sympy.polys.matrices import DomainMatrix


def normalize(x):
    """Return ``x`` as an int when it is integral, else as a Fraction."""
    if isinstance(x, int):
        return x
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def qarray(rows) -> np.ndarray:
    """Build an object array with normalized exact entries."""
    arr = np.array(rows, dtype=object)
    if arr.size:
        arr = np.vectorize(normalize, otypes=[object])(arr)
    return arr


def zeros(m: int, n: int) -> np.ndarray:
    return np.zeros((m, n), dtype=object) + 0


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = 1
    return out


def is_integral(arr: np.ndarray) -> bool:
    return all(Fraction(x).denominator == 1 for x in np.asarray(arr).flat)


def to_int_array(arr: np.ndarray) -> np.ndarray:
    if not is_integral(arr):
        raise ValueError("matrix has non-integral entries")
    return np.array([[int(Fraction(x)) for x in row] for row in np.atleast_2d(arr)],
                    dtype=object).reshape(np.shape(arr))


def _to_qq(x):
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def _from_qq(q) -> int | Fraction:
    return normalize(Fraction(int(q.numerator), int(q.denominator)))


def to_domain(arr, domain=QQ) -> DomainMatrix:
    arr = np.asarray(arr, dtype=object)
    m, n = arr.shape
    if domain == QQ:
        rows = [[_to_qq(x) for x in row] for row in arr]
    else:
        rows = [[domain(int(x)) for x in row] for row in arr]
    return DomainMatrix(rows, (m, n), domain)


def from_domain(dm: DomainMatrix) -> np.ndarray:
    m, n = dm.shape
    rows = dm.to_list()
    if dm.domain == QQ:
        out = [[_from_qq(x) for x in row] for row in rows]
    elif dm.domain == ZZ:
        out = [[int(x) for x in row] for row in rows]
    else:
        p = dm.domain.characteristic()
        out = [[int(x) % p for x in row] for row in rows]
    arr = np.empty((m, n), dtype=object)
    for i in range(m):
        for j in range(n):
            arr[i, j] = out[i][j]
    return arr


def rank(arr) -> int:
    arr = np.asarray(arr, dtype=object)
    if arr.size == 0:
        return 0
    return to_domain(arr).rank()


def nullspace(arr) -> np.ndarray:
    """Columns spanning the right kernel ``{x : arr @ x = 0}`` over Q."""
    arr = np.asarray(arr, dtype=object)
    m, n = arr.shape
    if n == 0:
        return zeros(0, 0)
    if m == 0:
        return identity(n)
    ns = to_domain(arr).nullspace()
    if ns.shape[0] == 0:
        return zeros(n, 0)
    return from_domain(ns).T.copy()


def nullspace_mod_p(arr, p: int) -> np.ndarray:
    """Columns spanning the right kernel over the field with ``p`` elements."""
    arr = np.asarray(arr, dtype=object)
    m, n = arr.shape
    if n == 0:
        return zeros(0, 0)
    if m == 0:
        return identity(n)
    ns = to_domain(np.vectorize(lambda x: int(x) % p, otypes=[object])(arr), GF(p)).nullspace()
    if ns.shape[0] == 0:
        return zeros(n, 0)
    return from_domain(ns).T.copy()


def column_space(arr) -> np.ndarray:
    """A maximal independent subset of the columns, in order."""
    arr = np.asarray(arr, dtype=object)
    basis = EchelonBasis(arr.shape[0])
    cols = [arr[:, j] for j in range(arr.shape[1]) if basis.add(arr[:, j])]
    if not cols:
        return zeros(arr.shape[0], 0)
    return np.array(cols, dtype=object).T.copy()


def inverse(arr) -> np.ndarray:
    return from_domain(to_domain(arr).inv())


def smith(arr):
    """Smith normal decomposition ``D = U @ A @ V`` with U, V unimodular."""
    A = Matrix(np.asarray(arr, dtype=object).tolist())
    D, U, V = smith_normal_decomp(A, domain=ZZ)

    def conv(M):
        out = np.empty(M.shape, dtype=object)
        for i in range(M.shape[0]):
            for j in range(M.shape[1]):
                out[i, j] = int(M[i, j])
        return out

    return conv(D), conv(U), conv(V)


def charpoly(arr) -> list:
    """Characteristic polynomial coefficients, leading coefficient first."""
    return [_from_qq(c) for c in to_domain(arr).charpoly()]


def poly_eval_matrix(coeffs: Sequence, arr: np.ndarray) -> np.ndarray:
    """Evaluate a polynomial (leading coefficient first) at a square matrix."""
    n = arr.shape[0]
    out = zeros(n, n)
    eye = identity(n)
    for c in coeffs:
        out = out.dot(arr) + eye * c
    return out


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace of Q^n.

    ``add`` reports whether a vector enlarged the span; ``coordinates``
    expresses a member of the span in terms of the accepted vectors.
    """

    def __init__(self, n: int):
        self.n = n
        self.rows: list[tuple[int, list]] = []  # (pivot, row normalized at pivot)
        self.combos: list[list] = []  # row_i = sum_j combos[i][j] * vectors[j]
        self.vectors: list[list] = []

    def __len__(self) -> int:
        return len(self.rows)

    def _reduce(self, v):
        v = [Fraction(x) for x in v]
        coeffs = [Fraction(0)] * len(self.rows)
        for i, (p, row) in enumerate(self.rows):
            c = v[p]
            if c:
                coeffs[i] = c
                for k in range(p, self.n):
                    if row[k]:
                        v[k] -= c * row[k]
        return v, coeffs

    def contains(self, v) -> bool:
        r, _ = self._reduce(v)
        return not any(r)

    def add(self, v) -> bool:
        r, coeffs = self._reduce(v)
        pivot = next((k for k, x in enumerate(r) if x), None)
        if pivot is None:
            return False
        inv = 1 / r[pivot]
        row = [x * inv for x in r]
        m = len(self.vectors)
        # row = (v - sum coeffs_i row_i) / r[pivot]
        combo = [Fraction(0)] * (m + 1)
        combo[m] = inv
        for i, c in enumerate(coeffs):
            if c:
                for j, t in enumerate(self.combos[i]):
                    combo[j] -= inv * c * t
        for cmb in self.combos:
            cmb.append(Fraction(0))
        self.rows.append((pivot, row))
        self.combos.append(combo)
        self.vectors.append([normalize(x) for x in v])
        return True

    def coordinates(self, v) -> list:
        """Coefficients of ``v`` in the accepted vectors; ValueError if outside."""
        r, coeffs = self._reduce(v)
        if any(r):
            raise ValueError("vector not in span")
        m = len(self.vectors)
        out = [Fraction(0)] * m
        for i, c in enumerate(coeffs):
            if c:
                for j, t in enumerate(self.combos[i]):
                    out[j] += c * t
        return [normalize(x) for x in out]

    def matrix(self) -> np.ndarray:
        """Accepted vectors as columns."""
        if not self.vectors:
            return zeros(self.n, 0)
        return np.array(self.vectors, dtype=object).T.copy()


def restrict(mat: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Matrix of ``mat`` on the invariant subspace spanned by ``basis`` columns."""
    eb = EchelonBasis(basis.shape[0])
    for j in range(basis.shape[1]):
        if not eb.add(basis[:, j]):
            raise ValueError("basis columns are dependent")
    image = mat.dot(basis)
    cols = []
    for j in range(basis.shape[1]):
        try:
            cols.append(eb.coordinates(image[:, j]))
        except ValueError:
            raise ValueError("subspace is not invariant") from None
    k = basis.shape[1]
    out = zeros(k, k)
    for j, col in enumerate(cols):
        for i, x in enumerate(col):
            out[i, j] = x
    return out


def span_dimension(vectors: Iterable, n: int) -> int:
    eb = EchelonBasis(n)
    for v in vectors:
        eb.add(v)
    return len(eb)


def matrix_key(arr: np.ndarray) -> tuple:
    """Hashable exact key for a matrix."""
    return tuple(normalize(x) for x in np.asarray(arr).flat)
