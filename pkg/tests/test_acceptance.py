"""Acceptance criteria, one test each; every test records a PASS/FAIL line."""

import json
import random
import subprocess
import sys
import time
from pathlib import Path

import pytest

from eqmcg.cover import (CoverSpec, build_cover, cover_homology, example_c2, random_cover_spec,
                         standard_test_cover)
from eqmcg.diagnostics import GeneratedGroup, fixed_subspace, mod_l_fixed_vectors, span_check, \
    block_irreducibility, hyperbolic_gmodule
from eqmcg.groups import AlgebraElement, named_group, plus_cone_basis, trace_gram_matrix
from eqmcg.hermitian import commutator_identity_check
from eqmcg.linalg import matrix_key, to_domain
from eqmcg.twists import (complete_to_hyperbolic, d_beta_agreement, gamma_o_generators,
                          pair_from_words)
from eqmcg.wedderburn import central_idempotents

from conftest import ACCEPTANCE_LINES

INPUTS = Path(__file__).resolve().parent.parent / "inputs"
POSITIVITY_GROUPS = ["Z2", "Z3", "Z4", "Z2xZ2", "S3", "Q8", "D4", "A4"]
ORDER_AT_MOST_12 = ["1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4",
                    "Z2^3", "D4", "Q8", "Z9", "Z3xZ3", "Z10", "D5", "Z11", "Z12", "Z2xZ6", "D6",
                    "A4", "Dic3"]


def record(number, ok, detail):
    line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def leading_minors_positive(gram):
    dm = to_domain(gram)
    n = gram.shape[0]
    return all(dm.extract(list(range(k)), list(range(k))).det() > 0 for k in range(1, n + 1))


def test_criterion_1_positivity():
    slow, bad = [], []
    for name in POSITIVITY_GROUPS:
        start = time.perf_counter()
        if not leading_minors_positive(trace_gram_matrix(named_group(name))):
            bad.append(name)
        if time.perf_counter() - start >= 1:
            slow.append(name)
    record(1, not bad and not slow, f"trace form positive definite; failed={bad} slow={slow}")


def test_criterion_2_wedderburn():
    problems = []
    for name in POSITIVITY_GROUPS:
        g = named_group(name)
        start = time.perf_counter()
        blocks = central_idempotents(g)
        es = [b.idempotent for b in blocks]
        total = AlgebraElement.zero(g)
        for e in es:
            total = total + e
        ok = total == AlgebraElement.one(g)
        ok &= all(not (x * y) for i, x in enumerate(es) for y in es[i + 1:])
        ok &= all(e * e == e and e.dagger() == e for e in es)
        ok &= sum(b.dim_Q for b in blocks) == g.order
        if name == "S3":
            ok &= sorted(b.dim_Q for b in blocks) == [1, 1, 4]
        if name == "Q8":
            ok &= sorted(b.dim_Q for b in blocks) == [1, 1, 1, 1, 4]
            ok &= [b.indicator_sign for b in blocks if b.dim_Q == 4] == [-1]
        if not ok or time.perf_counter() - start >= 5:
            problems.append(name)
    record(2, not problems, f"central idempotents; problems={problems}")


def test_criterion_3_exceptional():
    def labels(name):
        return [(b.exceptional_label, b.g_image_order) for b in central_idempotents(named_group(name))]
    ok = ("IIa-Gaussian", 4) in labels("Z4")
    ok &= any(lab == "IIb-Eisenstein" for lab, _ in labels("Z3"))
    ok &= ("IIIa-HurwitzQuaternion", 8) in labels("Q8")
    record(3, ok, "Z4 -> IIa, Z3 -> IIb, Q8 -> IIIa with image order 8")


def test_criterion_4_commutator_identity():
    failures = []
    count = 0
    for name in ORDER_AT_MOST_12:
        g = named_group(name)
        for k, lam in enumerate(plus_cone_basis(g).plusplus_elements()):
            count += 1
            if not commutator_identity_check(g, lam, "double"):
                failures.append((name, k))
    record(4, not failures,
           f"{count} checks over {len(ORDER_AT_MOST_12)} groups; failures={failures}")


def test_criterion_5_d_beta():
    start = time.perf_counter()
    problems = []
    for name in ("Z2", "Z3", "S3"):
        H = cover_homology(standard_test_cover(name))
        table = d_beta_agreement(H, "x1", "y1")
        ident = H.group.labels[0]
        if set(table) != set(H.group.labels):
            problems.append((name, "missing h"))
        for h, row in table.items():
            if not (row["agree"] and row["certified"]) or row["identity"] != (h == ident):
                problems.append((name, h))
    elapsed = time.perf_counter() - start
    record(5, not problems and elapsed < 30,
           f"algebraic vs geometric D_beta; problems={problems} time={elapsed:.1f}s")


def test_criterion_6_cover_integrity():
    problems = []
    total = 0
    for name in POSITIVITY_GROUPS:
        g = named_group(name)
        rng = random.Random(name)
        for _ in range(10):
            spec = random_cover_spec(g, rng, max_genus=2, max_branch=3)
            total += 1
            H = cover_homology(spec)
            J = H.J
            ok = build_cover(spec).euler_characteristic == spec.euler_characteristic
            ok &= H.rank == 2 - spec.euler_characteristic
            ok &= matrix_key(J.T) == matrix_key(-J)
            ok &= H.rank == 0 or abs(to_domain(J).det()) == 1
            ok &= all(matrix_key(M.T.dot(J).dot(M)) == matrix_key(J) for M in H.actions)
            if not ok:
                problems.append((name, spec.to_json()["branch"]))
    record(6, not problems, f"{total} random covers; problems={len(problems)}")


def _word_inputs():
    out = []
    for path in sorted(INPUTS.glob("*.json")):
        data = json.loads(path.read_text())
        if "alpha" in data:
            out.append((data, cover_homology(CoverSpec.from_json(data))))
    return out


def test_criterion_7_hyperbolic_completion():
    problems = []
    count = 0
    for data, H in _word_inputs():
        for beta in data["betas"]:
            count += 1
            pair = pair_from_words(H, data["alpha"], beta)
            again = complete_to_hyperbolic(H, pair.a, pair.b)
            if not (pair.certified and again.certified and all(pair.verify(H).values())):
                problems.append((data["group"], beta))
    record(7, not problems and count > 0, f"{count} completions; problems={problems}")


def test_criterion_8_example_c2():
    start = time.perf_counter()
    data = json.loads((INPUTS / "example_c2.json").read_text())
    spec = CoverSpec.from_json(data)
    assert spec == example_c2()
    H = cover_homology(spec)
    pairs = [pair_from_words(H, data["alpha"], b) for b in data["betas"]]
    span = span_check(H, pairs[0].a, pairs)
    gamma_o = GeneratedGroup.from_equivariant([m for p in pairs for m in gamma_o_generators(H, p)])
    fixed = fixed_subspace(gamma_o).shape[1]
    mod_l = {ell: mod_l_fixed_vectors(gamma_o, ell)["fixed_dim"] for ell in (2, 3, 5)}
    elapsed = time.perf_counter() - start
    ok = span["verdict"] == "pass" and span["span_dim"] == 2 * H.genus and fixed == 0
    ok &= not any(mod_l.values()) and elapsed < 60
    record(8, ok, f"span {span['span_dim']}/{2 * H.genus}, fixed dim {fixed}, mod l {mod_l}, "
                  f"time={elapsed:.1f}s")


def test_criterion_9_irreducibility():
    results = {}
    for name in ("Z2", "Z3", "S3"):
        g = named_group(name)
        module, gens = hyperbolic_gmodule(g)
        results[name] = [block_irreducibility(gens, b, module)["verdict"]
                         for b in central_idempotents(g)]
    ok = all(v == "pass" for vs in results.values() for v in vs)
    record(9, ok, f"Gamma(G) on every block of H2(QG): {results}")


def test_criterion_10_determinism():
    args = [sys.executable, "-m", "eqmcg", "diagnose", "--spec",
            str(INPUTS / "example_c2.json"), "--json"]
    first = subprocess.run(args, capture_output=True)
    second = subprocess.run(args, capture_output=True)
    ok = first.returncode == 0 and first.stdout == second.stdout and len(first.stdout) > 0
    record(10, ok, f"diagnose JSON byte-identical across runs ({len(first.stdout)} bytes)")
