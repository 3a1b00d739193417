import random
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from binring import barcobar as bc
from binring.cosimplicial import unnormalized_complex
from binring.exact_linalg import CohomologyGroup, IntMatrix, cohomology

Z = CohomologyGroup(1)
ZERO = CohomologyGroup()

# Cobar cohomology of the coalgebra dual to the divided power algebra, window n <= 5, d <= 6.
# Computed twice: from the reduced cobar complex and from the unnormalized
# cosimplicial object [n] -> C^{(x)n} (different bases, different code path).
DIVIDED_POWER_TABLE = {
    (0, 0): (1, ()),
    (1, 1): (1, ()),
    (2, 2): (0, (2,)),
    (2, 3): (0, (3,)),
    (3, 3): (0, (2,)),
    (2, 4): (0, (2,)),
    (3, 4): (0, (3,)),
    (4, 4): (0, (2,)),
    (2, 5): (0, (5,)),
    (3, 5): (0, (2,)),
    (5, 5): (0, (2,)),
    (3, 6): (0, (10,)),
    (4, 6): (0, (6,)),
}


def nonzero(H):
    return {k: (g.free_rank, g.torsion) for k, g in H.items() if not g.is_zero}


class TestCoalgebras:
    def test_num_is_coassociative(self):
        assert bc.num_coalgebra(12).is_coassociative()

    def test_num_diagonal_from_vandermonde(self):
        C = bc.num_coalgebra(6)
        assert all(M.to_dense() == [[1]] for M in C.reduced_diagonal.values())

    def test_others_are_coassociative(self):
        for C in (bc.divided_power_dual(8), bc.num_coalgebra_multi(2, 5), bc.deconcatenation_coalgebra([1, 2], 6)):
            assert C.is_coassociative()

    def test_defect_detected(self):
        C = bc.num_coalgebra(4)
        diag = dict(C.reduced_diagonal)
        diag[(1, 2)] = IntMatrix(1, 1, {(0, 0): 2})
        assert bc.GradedCoalgebra(C.ranks, diag).coassociativity_defects()

    def test_weight_zero_rejected(self):
        with pytest.raises(ValueError):
            bc.GradedCoalgebra((1, 1), {})

    def test_json_round_trip(self):
        C = bc.num_coalgebra_multi(2, 4)
        D = bc.GradedCoalgebra.from_json(C.to_json())
        assert D.ranks == C.ranks and D.reduced_diagonal == C.reduced_diagonal


class TestCobar:
    def test_ranks_are_composition_counts(self):
        Om = bc.cobar_complex(bc.num_coalgebra(8), 6, 8)
        for d in range(1, 9):
            assert Om.rank(0, d) == 0
            for n in range(1, min(d, 6) + 1):
                assert Om.rank(n, d) == comb(d - 1, n - 1)
        assert Om.rank(2, 4) == 3

    def test_first_differential(self):
        Om = bc.cobar_complex(bc.num_coalgebra(2), 2, 2)
        M = Om.differential(1, 2)
        assert M.shape == (1, 1) and abs(M[0, 0]) == 1

    def test_num(self):
        H = bc.cobar_cohomology(bc.num_coalgebra(8), 6, 8)
        assert nonzero(H) == {(0, 0): (1, ()), (1, 1): (1, ())}
        assert len(H) == 7 * 9

    def test_trivial(self):
        assert nonzero(bc.cobar_cohomology(bc.trivial_coalgebra(4), 4, 4)) == {(0, 0): (1, ())}

    def test_divided_power(self):
        H = bc.cobar_cohomology(bc.divided_power_dual(6), 5, 6)
        assert nonzero(H) == DIVIDED_POWER_TABLE

    def test_divided_power_by_cosimplicial_route(self):
        C = bc.divided_power_dual(6)
        found = {}
        for d in range(7):
            H = cohomology(unnormalized_complex(bc.cobar_cosimplicial(C, d, d + 1)))
            for n in range(min(5, d) + 1):
                g = H.get(n, ZERO)
                if not g.is_zero:
                    found[(n, d)] = (g.free_rank, g.torsion)
        assert found == DIVIDED_POWER_TABLE

    def test_euler_characteristic(self):
        Om = bc.cobar_complex(bc.num_coalgebra(8), 8, 8)
        for d in range(2, 9):
            assert sum((-1) ** n * Om.rank(n, d) for n in range(d + 1)) == 0

    def test_window_errors(self):
        with pytest.raises(ValueError):
            bc.cobar_complex(bc.num_coalgebra(8), 9, 8)
        with pytest.raises(ValueError):
            bc.cobar_complex(bc.num_coalgebra(4), 3, 6)

    def test_results_final_in_window(self):
        small = bc.cobar_cohomology(bc.divided_power_dual(6), 3, 6)
        big = bc.cobar_cohomology(bc.divided_power_dual(6), 6, 6)
        assert all(big[k] == g for k, g in small.items())

    @given(st.integers(0, 10**6))
    def test_basis_change_invariance(self, seed):
        C = bc.num_coalgebra_multi(2, 4)
        R = bc.change_basis(C, random.Random(seed))
        assert R.is_coassociative()
        assert bc.cobar_cohomology(R, 4, 4) == bc.cobar_cohomology(C, 4, 4)

    def test_two_variables(self):
        H = bc.cobar_cohomology(bc.num_coalgebra_multi(2, 5), 4, 5)
        assert nonzero(H) == {(0, 0): (1, ()), (1, 1): (2, ()), (2, 2): (1, ())}


class TestBar:
    def test_polynomial(self):
        H = bc.bar_homology(bc.polynomial_algebra(8), 6, 8)
        assert nonzero(H) == {(0, 0): (1, ()), (1, 1): (1, ())}

    def test_trivial_multiplication(self):
        A = bc.GradedAlgebra((0, 1, 1, 1, 1), {})
        B = bc.bar_complex(A, 4, 4)
        assert all(B.differential(n, d).is_zero() for d in range(5) for n in range(5))
        H = B.cohomology()
        for (n, d), g in H.items():
            expected = comb(d - 1, n - 1) if n and d else int(n == d == 0)
            assert g.free_rank == expected and not g.torsion

    def test_dual_numbers(self):
        H = bc.bar_homology(bc.truncated_polynomial_algebra(2, 5), 5, 5)
        assert nonzero(H) == {(n, n): (1, ()) for n in range(6)}

    def test_weight_zero_rejected(self):
        with pytest.raises(ValueError):
            bc.GradedAlgebra((1, 1), {})

    def test_algebra_axioms(self):
        for A in (bc.polynomial_algebra(5), bc.truncated_polynomial_algebra(3, 5), bc.koszul_dg_algebra(5)):
            assert A.defects() == []

    def test_broken_leibniz_detected(self):
        K = bc.koszul_dg_algebra(3)
        diff = dict(K.differential)
        diff[2] = IntMatrix(2, 2, {(0, 1): 2})
        bad = bc.GradedAlgebra(K.ranks, K.products, K.degrees, diff)
        assert any("Leibniz" in d for d in bad.defects())

    def test_koszul_dg_bar(self):
        B = bc.bar_complex(bc.koszul_dg_algebra(4), 2, 4)
        B.check()
        assert nonzero(B.cohomology()) == {(0, 0): (1, ())}


class TestDuality:
    def test_num(self):
        rep = bc.dual_compare(bc.num_coalgebra(8), 5, 8)
        assert rep.equal and rep.compared == 45

    def test_trivial(self):
        rep = bc.dual_compare(bc.trivial_coalgebra(3), 3, 3)
        assert rep.equal
        assert nonzero(bc.bar_homology(bc.trivial_coalgebra(3).dual_algebra(), 3, 3)) == {(0, 0): (1, ())}

    @given(st.integers(0, 10**6), st.lists(st.integers(1, 3), min_size=2, max_size=2))
    def test_random_coassociative(self, seed, weights):
        C = bc.change_basis(bc.deconcatenation_coalgebra(weights, 5), random.Random(seed))
        assert bc.dual_compare(C, 4, 5).equal

    def test_dual_algebra_is_polynomial(self):
        A = bc.num_coalgebra(6).dual_algebra()
        assert A.products == bc.polynomial_algebra(6).products


class TestFiltration:
    def test_first_quotient(self):
        F = bc.filtration_quotients(bc.num_coalgebra(6), 1, 6)
        assert nonzero(F.quotient.cohomology()) == {(0, 0): (1, ())}

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_slice_ranks(self, n):
        F = bc.filtration_quotients(bc.num_coalgebra(7), n, 7)
        for d in range(8):
            assert F.slice.rank(n - 1, d) == sum(1 for _ in bc.compositions(d, n - 1))
            assert F.slice.slices[d].d(n - 1).is_zero()

    def test_tower_stabilizes(self):
        C = bc.num_coalgebra(6)
        full = bc.cobar_complex(C, 6, 6, full=True).cohomology()
        for d in range(7):
            F = bc.filtration_quotients(C, d + 2, 6)
            H = F.quotient.cohomology()
            assert all(H[(k, d)] == full[(k, d)] for k in range(d + 1))


class TestConservativity:
    def test_identity(self):
        rep = bc.conservativity_demo(bc.example_maps(5)["identity"], 5)
        assert rep.f_is_qiso and rep.bar_is_qiso and not rep.contradiction

    def test_doubling(self):
        rep = bc.conservativity_demo(bc.example_maps(5)["double"], 5)
        assert not rep.f_qiso[1] and not rep.bar_qiso[1] and not rep.contradiction

    def test_quotient(self):
        rep = bc.conservativity_demo(bc.example_maps(5)["quotient"], 5)
        assert not rep.f_is_qiso and not rep.bar_qiso[2] and rep.bar_qiso[1] and not rep.contradiction

    def test_koszul(self):
        rep = bc.conservativity_demo(bc.example_maps(4)["koszul"], 4)
        assert rep.f_is_qiso and rep.bar_is_qiso

    def test_not_an_algebra_map(self):
        zx = bc.polynomial_algebra(3)
        f = bc.AlgebraMap(zx, zx, {1: IntMatrix(1, 1, {(0, 0): 1}), 2: IntMatrix(1, 1, {(0, 0): 3})})
        with pytest.raises(ValueError):
            bc.conservativity_demo(f, 3)
