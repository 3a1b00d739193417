"""One test per acceptance criterion; each prints a [PASS]/[FAIL] line in the summary.

Run alone with `pytest tests/test_acceptance.py` or `python tests/test_acceptance.py`.
"""

import random
import sys
import time
from fractions import Fraction

import pytest

from binring import barcobar as bc
from binring import binomial as bn
from binring import spaces as sp
from binring import witt
from binring.binomial import NumPoly
from binring.cli import EXPECTED_SPACES
from binring.cosimplicial import (
    constant,
    dual,
    gamma_sphere,
    normalized_complex,
    normalized_inclusion,
    sphere_complex,
    validate,
    z1_simplicial,
)
from binring.exact_linalg import (
    acyclicity_certificate,
    cohomology,
    is_quasi_iso,
    random_complex,
    torsion_fixtures,
)




def verdict(log, tag, ok, detail):
    log.append(f"[{'PASS' if ok else 'FAIL'}] {tag}: {detail}")
    assert ok, detail


def nonzero(H):
    return {k: str(g) for k, g in sorted(H.items()) if not g.is_zero}


def test_ac01_cobar_of_num(acceptance_log):
    start = time.perf_counter()
    H = bc.cobar_cohomology(bc.num_coalgebra(8), 6, 8)
    elapsed = time.perf_counter() - start
    ok = len(H) == 7 * 9 and nonzero(H) == {(0, 0): "Z", (1, 1): "Z"} and elapsed < 60
    verdict(acceptance_log, "AC1 cobar of Num[x], n<=6 d<=8", ok, f"nonzero {nonzero(H)} in {elapsed:.2f} s")


def test_ac02_duality(acceptance_log):
    rep = bc.dual_compare(bc.num_coalgebra(8), 5, 8)
    ok = rep.equal and rep.compared == 45
    verdict(acceptance_log, "AC2 transposed cobar = bar", ok, f"{rep.compared} differentials, mismatches {rep.mismatches}")


def test_ac03_bar_of_polynomials(acceptance_log):
    H = bc.bar_homology(bc.polynomial_algebra(8), 6, 8)
    ok = len(H) == 7 * 9 and nonzero(H) == {(0, 0): "Z", (1, 1): "Z"}
    verdict(acceptance_log, "AC3 bar of Z[x], n<=6 d<=8", ok, f"nonzero {nonzero(H)}")


def test_ac04_vandermonde_coalgebra(acceptance_log):
    bad = []
    for d in range(13):
        f = NumPoly.basis(d)
        D = bn.diagonal(f)
        if bn.comultiply(D, 0) != bn.comultiply(D, 1):
            bad.append(f"coassociativity at {d}")
        if bn.swap_vars(D, 0, 1) != D:
            bad.append(f"cocommutativity at {d}")
        if bn.counit(D, 0) != f or bn.counit(D, 1) != f:
            bad.append(f"counit at {d}")
        if any(sum(alpha) != d for alpha, _ in D.terms()):
            bad.append(f"degree at {d}")
        # second route: evaluate the diagonal as f(a + b)
        if any(D(a, b) != bn.binom(a + b, d) for a in range(-4, 5) for b in range(-4, 5)):
            bad.append(f"translation formula at {d}")
    matrix_form = bc.num_coalgebra(12).coassociativity_defects()
    ok = not bad and not matrix_form
    verdict(acceptance_log, "AC4 Vandermonde coalgebra, d<=12", ok, f"defects {bad + matrix_form}")


def _random_numpoly(rng):
    terms = {(k,): rng.randint(-9, 9) for k in range(rng.randint(0, 6) + 1)}
    return NumPoly(1, terms)


def test_ac05_binomial_axioms(acceptance_log):
    rng = random.Random(5)
    bad, checks = [], 0
    for k in range(100):
        f = _random_numpoly(rng)
        for p in (2, 3, 5, 7):
            q = bn.frobenius_quotient(f, p)
            checks += 1
            if any(q(a) != Fraction(f(a) ** p - f(a), p) for a in range(-6, 7)):
                bad.append(f"Num[x] sample {k}, p={p}")
        for n in range(1, 6):
            g = bn.binomial_of(f, n)
            checks += 1
            if any(g(a) != bn.binom(f(a), n) for a in range(-6, 7)):
                bad.append(f"Num[x] sample {k}, binom(-, {n})")
    reports = {name: sp.binomiality_check(sp.FIXTURES[name](), T=3, samples=100) for name in ("circle", "sphere2", "torus", "rp2")}
    for name, rep in reports.items():
        checks += rep.checks
        if not rep.passed:
            bad.append(f"{name}: {rep.failures[:3]}")
    verdict(acceptance_log, "AC5 binomial axioms, Num[x] and cochain rings", not bad, f"{checks} checks, failures {bad}")


def test_ac06_dold_kan(acceptance_log):
    bad = []
    for n in range(4):
        for T in range(max(n, 1), 7):
            A = constant(T) if n == 0 else gamma_sphere(n, T)
            if validate(A) is not None or normalized_complex(A) != sphere_complex(n, T):
                bad.append(f"N(Gamma(Z[-{n}])) at T={T}")
    fixtures = {f"Gamma(Z[-{n}])": (gamma_sphere(n, 5), 5) for n in range(1, 4)}
    fixtures["dual K_1"] = (dual(z1_simplicial(5)), 5)
    for name, make in sp.FIXTURES.items():
        X = make()
        T = X.dim + 2
        fixtures[f"Z^{name}"] = (sp.cochain_ring(X, T).structure, T)
    for name, (A, T) in fixtures.items():
        if not is_quasi_iso(normalized_inclusion(A), below=T):
            bad.append(f"inclusion on {name}")
    verdict(acceptance_log, "AC6 Dold-Kan", not bad, f"{len(fixtures)} inclusions, failures {bad}")


def test_ac07_space_cohomology(acceptance_log):
    start = time.perf_counter()
    bad = []
    for name in ("circle", "sphere2", "torus", "rp2"):
        X = sp.FIXTURES[name]()
        H = sp.space_cohomology(X)
        T = X.dim + 1
        HN = cohomology(normalized_complex(sp.cochain_ring(X, T).structure))
        if H != EXPECTED_SPACES[name] or any(HN[n] != H[n] for n in range(T)):
            bad.append(f"{name}: {H}")
    # reduced cohomology of the circle against Z[-1], the additive cochains on K_1
    HK = cohomology(normalized_complex(dual(z1_simplicial(4))))
    HS = sp.space_cohomology(sp.circle(), 4)
    if [HK[n] for n in (1, 2, 3)] != [HS[n] for n in (1, 2, 3)] or not HK[0].is_zero:
        bad.append("circle versus Z^{K_1}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 30
    verdict(acceptance_log, "AC7 S^1, S^2, T^2, RP^2 cohomology", ok, f"failures {bad} in {elapsed:.2f} s")


def test_ac08_kunneth(acceptance_log):
    bad = []
    for a, b in (("circle", "circle"), ("circle", "sphere2")):
        rep = sp.kunneth_check(sp.FIXTURES[a](), sp.FIXTURES[b](), T=4)
        if not (rep.chain_map and rep.quasi_iso and rep.levelwise_iso and rep.formula_matches):
            bad.append(f"{a} x {b}: {rep.to_json()}")
    verdict(acceptance_log, "AC8 Kunneth below T=4", not bad, f"failures {bad}")


def test_ac09_alpha1(acceptance_log):
    rep = sp.alpha1_pointwise_check(max_internal_degree=6, samples=500, seed=0, max_level=3)
    ok = rep.passed and rep.samples >= 500
    verdict(
        acceptance_log,
        "AC9 alpha_1 pointwise",
        ok,
        f"{rep.samples} tuples, {rep.evaluations} evaluations, {len(rep.discrepancies)} discrepancies",
    )


def test_ac10_acyclicity(acceptance_log):
    rng = random.Random(10)
    families = [{}, {"orders": (1,), "free_share": 0.0}, {"orders": (1, 2, 3, 6), "free_share": 0.0}]
    bad, acyclic = [], 0
    for k in range(60):
        C, H = random_complex(rng, **families[k % 3])
        truth = all(g.is_zero for g in H.values())
        acyclic += truth
        rep = acyclicity_certificate(C)
        if not rep.consistent or rep.acyclic_over_Z != truth:
            bad.append(f"random {k}")
    for name, (C, witnesses) in torsion_fixtures().items():
        rep = acyclicity_certificate(C)
        if rep.acyclic_over_Z or not rep.acyclic_over_Q or rep.witness_primes != witnesses or not rep.consistent:
            bad.append(name)
    ok = not bad and 0 < acyclic < 60
    verdict(acceptance_log, "AC10 acyclicity detection", ok, f"60 random ({acyclic} acyclic) + torsion fixtures, failures {bad}")


def test_ac11_conservativity(acceptance_log):
    maps = bc.example_maps(5)
    reports = {name: bc.conservativity_demo(maps[name], 5) for name in ("identity", "double", "quotient", "koszul")}
    contradictions = [n for n, r in reports.items() if r.contradiction]
    # each example has to exercise the implication it is there for
    expected = {"identity": (True, True), "double": (False, False), "quotient": (False, False), "koszul": (True, True)}
    shape = {n: (r.f_is_qiso, r.bar_is_qiso) for n, r in reports.items()}
    ok = not contradictions and shape == expected
    verdict(acceptance_log, "AC11 bar conservativity", ok, f"(f qiso, B(f) qiso) = {shape}, contradictions {contradictions}")


def test_ac12_witt_fixed_points(acceptance_log):
    start = time.perf_counter()
    bad = []
    for p, k in ((2, 1), (2, 2), (2, 3), (3, 1), (3, 2)):
        rep = witt.frobenius_fixed_points(p, k)
        if not (rep.cyclic and rep.order == p**k and rep.unit_order == p**k and rep.closed_under_mul):
            bad.append(f"(p, k) = ({p}, {k}): {rep.to_json()}")
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 10
    verdict(acceptance_log, "AC12 Frobenius-fixed Witt vectors", ok, f"failures {bad} in {elapsed:.2f} s")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
