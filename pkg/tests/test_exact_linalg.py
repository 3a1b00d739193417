import random

import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from binring.exact_linalg import (
    CochainComplex,
    CohomologyGroup,
    ComplexMap,
    IntMatrix,
    NotAComplexError,
    acyclicity_certificate,
    base_change,
    cohomology,
    conjugate,
    cut_above,
    direct_sum,
    elementary_complex,
    hermite_columns,
    invariant_factors,
    is_quasi_iso,
    kernel_basis,
    left_inverse,
    mapping_cone,
    random_complex,
    rank_mod_p,
    rank_over_q,
    smith_normal_form,
    torsion_fixtures,
)


def arrow(k):
    return CochainComplex(0, [1, 1], [IntMatrix(1, 1, {(0, 0): k})])


matrices = st.integers(1, 6).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c), min_size=r, max_size=r).map(
            lambda rows: IntMatrix.from_dense(rows, c)
        )
    )
)


def is_unimodular(M):
    return M.rows == M.cols and smith_normal_form(M).diagonal == [1] * M.rows


def check_decomposition(A, snf):
    assert snf.U @ A @ snf.V == snf.D
    diag = snf.diagonal
    assert all(d > 0 for d in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    off = [(r, c) for (r, c), _ in snf.D.items() if r != c]
    assert not off
    assert is_unimodular(snf.U) and is_unimodular(snf.V)


class TestIntMatrix:
    def test_no_stored_zeros(self):
        M = IntMatrix(2, 2, {(0, 0): 0, (1, 1): 3})
        assert M.nnz == 1

    def test_bounds_checked(self):
        with pytest.raises(IndexError):
            IntMatrix(2, 2, {(2, 0): 1})

    def test_json_round_trip_keeps_big_integers(self):
        M = IntMatrix(2, 3, {(0, 1): 10**40, (1, 2): -7})
        assert IntMatrix.from_json(M.to_json()) == M

    def test_kron_index_convention(self):
        A = IntMatrix.from_dense([[1, 2], [3, 4]], 2)
        B = IntMatrix.from_dense([[0, 1]], 2)
        K = A.kron(B)
        assert K.shape == (2, 4)
        assert K.to_dense() == [[0, 1, 0, 2], [0, 3, 0, 4]]


class TestSmithForm:
    def test_zero_matrix(self):
        A = IntMatrix(2, 3)
        snf = smith_normal_form(A)
        assert snf.D == A and snf.U == IntMatrix.identity(2) and snf.V == IntMatrix.identity(3)

    def test_two_by_two(self):
        A = IntMatrix.from_dense([[2, 4], [6, 8]], 2)
        snf = smith_normal_form(A)
        assert snf.diagonal == [2, 4]
        check_decomposition(A, snf)

    def test_sorted_by_divisibility(self):
        A = IntMatrix.diagonal([6, 2])
        snf = smith_normal_form(A)
        assert snf.diagonal == [2, 6]
        check_decomposition(A, snf)

    @given(matrices)
    def test_decomposition_invariants(self, A):
        for dense in (True, False):
            check_decomposition(A, smith_normal_form(A, dense=dense))

    @given(matrices)
    def test_dense_and_sparse_agree(self, A):
        assert invariant_factors(A, dense=True) == invariant_factors(A, dense=False)

    @given(matrices)
    def test_matches_sympy(self, A):
        ours = invariant_factors(A)
        theirs = sympy_snf(Matrix(A.to_dense()), domain=ZZ)
        diag = [abs(int(theirs[i, i])) for i in range(min(theirs.shape))]
        assert ours == [d for d in diag if d]

    @given(matrices, st.sampled_from([2, 3, 5, 7]))
    def test_field_ranks_agree_with_smith_form(self, A, p):
        diag = invariant_factors(A)
        assert rank_over_q(A) == len(diag)
        assert rank_mod_p(A, p) == sum(1 for d in diag if d % p)

    def test_large_sparse_matrix(self):
        rng = random.Random(3)
        n = 90
        ent = {(i, i): 1 for i in range(n)}
        for _ in range(150):
            ent[(rng.randrange(n), rng.randrange(n))] = rng.choice([-2, -1, 1, 2])
        A = IntMatrix(n, n, ent)
        check_decomposition(A, smith_normal_form(A))


class TestLattices:
    @given(matrices)
    def test_kernel_basis(self, A):
        K = kernel_basis(A)
        assert (A @ K).is_zero()
        assert K.cols == A.cols - rank_over_q(A)

    def test_hermite_columns_canonical(self):
        B = IntMatrix.from_dense([[1, 2], [1, 0], [0, 1]], 2)
        g = IntMatrix.from_dense([[2, 1], [1, 1]], 2)
        assert hermite_columns(B) == hermite_columns(B @ g)

    def test_left_inverse(self):
        B = IntMatrix.from_dense([[1, 0], [2, 1], [3, 5]], 2)
        assert left_inverse(B) @ B == IntMatrix.identity(2)


class TestCohomology:
    def test_multiplication_by_two(self):
        H = cohomology(arrow(2))
        assert H[0] == CohomologyGroup() and H[1] == CohomologyGroup(0, (2,))

    def test_rejects_non_complex(self):
        d = IntMatrix(1, 1, {(0, 0): 1})
        with pytest.raises(NotAComplexError):
            cohomology(CochainComplex(0, [1, 1, 1], [d, d]))

    def test_group_formatting_and_chain(self):
        assert str(CohomologyGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
        with pytest.raises(ValueError):
            CohomologyGroup(0, (3, 4))
        assert CohomologyGroup.from_cyclic(1, [2, 3, 4]) == CohomologyGroup(1, (2, 12))

    def test_json_round_trip(self):
        C, _ = elementary_complex(-1, 2, {0: 1}, [(-1, 3), (1, 2)])
        assert CochainComplex.from_json(C.to_json()) == C

    def test_elementary_complexes_conjugated(self):
        rng = random.Random(11)
        for _ in range(60):
            C, H = random_complex(rng)
            got = cohomology(C)
            assert {n: got.get(n, CohomologyGroup()) for n in H} == H

    def test_cut_above_keeps_lower_cohomology(self):
        rng = random.Random(5)
        for _ in range(20):
            C, H = random_complex(rng, length=5)
            cut = cohomology(cut_above(C, 3))
            assert all(cut.get(n, CohomologyGroup()) == H[n] for n in range(3))


class TestBaseChange:
    def test_over_q(self):
        assert base_change(arrow(2), "Q") == {0: 0, 1: 0}

    def test_over_f2(self):
        assert base_change(arrow(2), 2) == {0: 1, 1: 1}

    def test_over_f3(self):
        assert base_change(arrow(2), "F3") == {0: 0, 1: 0}

    def test_rejects_non_prime(self):
        with pytest.raises(ValueError):
            base_change(arrow(2), 4)

    @given(st.integers(0, 10**6), st.sampled_from([2, 3, 5, 7]))
    def test_universal_coefficients(self, seed, p):
        C, H = random_complex(random.Random(seed))
        dims = base_change(C, p)
        for n in C.degrees():
            below = H[n].torsion
            above = H.get(n + 1, CohomologyGroup()).torsion
            expected = H[n].free_rank + sum(t % p == 0 for t in below) + sum(t % p == 0 for t in above)
            assert dims[n] == expected
            assert base_change(C, "Q")[n] == H[n].free_rank


class TestAcyclicity:
    def test_identity_arrow(self):
        rep = acyclicity_certificate(arrow(1))
        assert rep.acyclic_over_Z and rep.witness_primes == frozenset() and rep.consistent

    def test_two(self):
        rep = acyclicity_certificate(arrow(2))
        assert not rep.acyclic_over_Z and rep.witness_primes == {2} and rep.consistent

    def test_two_plus_three(self):
        rep = acyclicity_certificate(direct_sum(arrow(2), arrow(3)))
        assert rep.witness_primes == {2, 3} and rep.consistent

    def test_crafted_fixtures(self):
        for C, witnesses in torsion_fixtures().values():
            rep = acyclicity_certificate(C)
            assert rep.consistent and rep.witness_primes == witnesses and not rep.acyclic_over_Z
            assert rep.acyclic_over_Q

    @given(st.integers(0, 10**6))
    def test_random_agreement(self, seed):
        C, H = random_complex(random.Random(seed))
        rep = acyclicity_certificate(C)
        assert rep.consistent
        assert rep.acyclic_over_Z == all(g.is_zero for g in H.values())


class TestQuasiIso:
    def test_identity(self):
        C = conjugate(elementary_complex(0, 3, {1: 2}, [(0, 4), (2, 1)])[0], random.Random(1))
        assert is_quasi_iso(ComplexMap.identity(C))

    def test_times_two(self):
        Z = CochainComplex(0, [1])
        assert not is_quasi_iso(ComplexMap(Z, Z, {0: IntMatrix(1, 1, {(0, 0): 2})}))

    def test_mismatched_ranges(self):
        with pytest.raises(ValueError):
            ComplexMap(CochainComplex(0, [1]), CochainComplex(0, [1, 1]), {})

    def test_non_chain_map_rejected(self):
        C = arrow(1)
        with pytest.raises(ValueError):
            is_quasi_iso(ComplexMap(C, C, {0: IntMatrix(1, 1, {(0, 0): 1})}))

    def test_cone_shape(self):
        C = arrow(2)
        cone = mapping_cone(ComplexMap.identity(C))
        assert cone.ranks == (1, 2, 1) and cone.lo == -1
