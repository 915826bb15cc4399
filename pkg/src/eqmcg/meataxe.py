"""Randomized search for irreducible submodules of a rational matrix group.

Every submodule returned is verified exactly; irreducibility is certified
either by the Holt-Rees criterion or by showing that the endomorphism ring
is a division algebra (a number field, or a quaternion algebra over Q
detected through Hilbert symbols). When neither certificate is reached
within the retry budget, ``NonConvergence`` is raised instead of guessing.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
from sympy import Poly, QQ, factorint, symbols

from .linalg import (EchelonBasis, charpoly, identity, nullspace, poly_eval_matrix, restrict,
                     zeros)

_X = symbols("x")


class NonConvergence(RuntimeError):
    """The randomized search exhausted its retry budget."""


def spin(v, gens) -> EchelonBasis:
    """Span of the orbit of ``v`` under the algebra generated by ``gens``."""
    n = len(v)
    eb = EchelonBasis(n)
    if not eb.add(v):
        return eb
    queue = [np.array(eb.vectors[0], dtype=object)]
    while queue:
        w = queue.pop()
        for g in gens:
            u = g.dot(w)
            if eb.add(u):
                queue.append(np.array(eb.vectors[-1], dtype=object))
    return eb


def factor_charpoly(mat) -> list:
    """Irreducible factors of the characteristic polynomial as (coeffs, multiplicity)."""
    p = Poly(charpoly(mat), _X, domain=QQ)
    _, factors = p.factor_list()
    out = []
    for f, mult in factors:
        coeffs = [Fraction(int(c.numerator), int(c.denominator)) for c in f.monic().all_coeffs()]
        out.append((coeffs, mult))
    out.sort(key=lambda t: (len(t[0]), t[0]))
    return out


def random_algebra_element(gens, rng: random.Random):
    n = gens[0].shape[0]
    out = zeros(n, n)
    for _ in range(rng.randint(2, 4)):
        word = identity(n)
        for _ in range(rng.randint(0, 3)):
            word = word.dot(rng.choice(gens))
        out = out + word * rng.choice([-2, -1, 1, 2])
    return out


def _annihilator(eb: EchelonBasis) -> np.ndarray:
    return nullspace(eb.matrix().T)


def holt_rees_attempt(gens, rng):
    """One random probe: ('split', basis), ('irreducible', None) or (None, None)."""
    n = gens[0].shape[0]
    theta = random_algebra_element(gens, rng)
    gens_t = [g.T for g in gens]
    for coeffs, _ in factor_charpoly(theta):
        kf = poly_eval_matrix(coeffs, theta)
        ker = nullspace(kf)
        v = ker[:, 0]
        sub = spin(v, gens)
        if len(sub) < n:
            return "split", sub.matrix()
        ker_t = nullspace(kf.T)
        dual = spin(ker_t[:, 0], gens_t)
        if len(dual) < n:
            return "split", _annihilator(dual)
        if ker.shape[1] == len(coeffs) - 1:
            return "irreducible", None
    return None, None


def endomorphism_ring(gens) -> list:
    """Basis of the commutant {X : XM = MX for all generators M}."""
    n = gens[0].shape[0]
    eye = identity(n)
    # column-major vec(XM - MX) = (M^T kron I - I kron M) vec(X)
    blocks = [np.kron(g.T, eye) - np.kron(eye, g) for g in gens]
    system = np.vstack(blocks)
    ns = nullspace(system)
    return [ns[:, k].reshape((n, n), order="F") for k in range(ns.shape[1])]


def _is_scalar(m) -> bool:
    n = m.shape[0]
    return all(m[i, j] == 0 for i in range(n) for j in range(n) if i != j) and \
        len({m[i, i] for i in range(n)}) == 1


def _squarefree(q: Fraction) -> int:
    q = Fraction(q)
    m = q.numerator * q.denominator
    sign = -1 if m < 0 else 1
    out = 1
    for p, e in factorint(abs(m)).items():
        if e % 2:
            out *= p
    return sign * out


def _legendre(u: int, p: int) -> int:
    r = pow(u % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def hilbert_symbol(a, b, p) -> int:
    """Hilbert symbol (a, b)_p for nonzero rationals; p = 0 means the real place."""
    a, b = _squarefree(a), _squarefree(b)
    if p == 0:
        return -1 if a < 0 and b < 0 else 1
    alpha = 1 if a % p == 0 else 0
    beta = 1 if b % p == 0 else 0
    u = a // p if alpha else a
    v = b // p if beta else b
    if p == 2:
        eps = lambda x: ((x - 1) // 2) % 2
        omega = lambda x: ((x * x - 1) // 8) % 2
        e = eps(u) * eps(v) + alpha * omega(v) + beta * omega(u)
        return -1 if e % 2 else 1
    sign = (-1) ** (alpha * beta * ((p - 1) // 2))
    lu = _legendre(u, p) if beta else 1
    lv = _legendre(v, p) if alpha else 1
    return sign * lu * lv


def quaternion_is_division(a, b) -> bool:
    """Whether the quaternion algebra (a, b) over Q is a division algebra."""
    primes = {2} | set(factorint(abs(_squarefree(a)))) | set(factorint(abs(_squarefree(b))))
    places = [0] + sorted(primes)
    return any(hilbert_symbol(a, b, p) == -1 for p in places)


def _quaternion_parameters(basis, n):
    """Standard generators i, j of a central quaternion algebra given by matrices."""
    eye = identity(n)
    x = next((m for m in basis if not _is_scalar(m)), None)
    if x is None:
        return None
    t = Fraction(2 * sum(x[k, k] for k in range(n)), n)
    i = x - eye * (t / 2)
    sq = i.dot(i)
    if not _is_scalar(sq):
        return None
    a = Fraction(sq[0, 0])
    if a == 0:
        return None
    for y in basis:
        j = y - i.dot(y).dot(i) * (1 / a)
        if any(j.flat):
            sqj = j.dot(j)
            if not _is_scalar(sqj) or sqj[0, 0] == 0:
                return None
            return a, Fraction(sqj[0, 0])
    return None


def endomorphism_attempt(gens, rng):
    """Split through a zero divisor of the commutant, or certify it is a division algebra."""
    n = gens[0].shape[0]
    ends = endomorphism_ring(gens)
    if len(ends) == 1:
        return "irreducible", None
    # random zero divisor search
    for _ in range(4):
        phi = zeros(n, n)
        for m in ends:
            phi = phi + m * rng.randint(-3, 3)
        if _is_scalar(phi):
            continue
        factors = factor_charpoly(phi)
        if len(factors) > 1:
            coeffs, mult = factors[0]
            psi = identity(n)
            for _ in range(mult):
                psi = psi.dot(poly_eval_matrix(coeffs, phi))
            return "split", nullspace(psi)
        coeffs, _ = factors[0]
        psi = poly_eval_matrix(coeffs, phi)
        if any(psi.flat):
            return "split", nullspace(psi)
        if len(coeffs) - 1 == len(ends):
            # Q[phi] is a field filling the whole commutant
            return "irreducible", None
    if center_dimension(ends) == 1 and len(ends) == 4:
        params = _quaternion_parameters(ends, n)
        if params is not None and quaternion_is_division(*params):
            return "irreducible", None
    return None, None


def center_dimension(basis) -> int:
    """Dimension of the center of the algebra spanned by the matrices ``basis``."""
    # column k of the system holds the commutators [basis_k, o] for all o
    cols = [np.concatenate([(m.dot(o) - o.dot(m)).flatten() for o in basis]) for m in basis]
    return nullspace(np.array(cols, dtype=object).T).shape[1]


def minimal_submodule(gens, rng: random.Random | None = None, max_retries: int = 64) -> np.ndarray:
    """Basis (columns) of an irreducible submodule of Q^n under ``gens``."""
    rng = rng or random.Random(0)
    n = gens[0].shape[0]
    basis = identity(n)
    current = [g for g in gens]
    failures = 0
    while True:
        dim = basis.shape[1]
        if dim == 1:
            return basis
        outcome, sub = holt_rees_attempt(current, rng)
        if outcome is None:
            outcome, sub = endomorphism_attempt(current, rng)
        if outcome == "irreducible":
            return basis
        if outcome == "split":
            current = [restrict(g, sub) for g in current]
            basis = basis.dot(sub)
            continue
        failures += 1
        if failures >= max_retries:
            raise NonConvergence(
                f"no irreducibility certificate for a {dim}-dimensional module "
                f"after {max_retries} probes")
