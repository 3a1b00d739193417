import json

import pytest

from binring import spaces as sp
from binring.cli import EXPECTED_SPACES
from binring.cosimplicial import normalized_complex, normalized_inclusion, validate
from binring.exact_linalg import CohomologyGroup, cohomology, is_quasi_iso

Z = CohomologyGroup(1)
Z2 = CohomologyGroup(0, (2,))
ZERO = CohomologyGroup()


@pytest.mark.parametrize("name", sorted(sp.FIXTURES))
def test_fixture_cohomology(name):
    X = sp.FIXTURES[name]()
    H = sp.space_cohomology(X)
    assert H == EXPECTED_SPACES[name]


@pytest.mark.parametrize("name", ["circle", "sphere2", "torus", "rp2", "boundary2"])
def test_cochain_ring_agrees_with_nondegenerate_cochains(name):
    X = sp.FIXTURES[name]()
    T = X.dim + 2
    R = sp.cochain_ring(X, T)
    assert validate(R.structure) is None
    H = cohomology(normalized_complex(R.structure))
    Hnd = sp.space_cohomology(X)
    assert all(H[n] == Hnd[n] for n in range(X.dim + 1))
    assert is_quasi_iso(normalized_inclusion(R.structure), below=T)


class TestSimplicialSets:
    def test_counts(self):
        assert sp.circle().count(3) == 4
        assert sp.simplex(2).count(1) == 6
        assert sp.torus().count(2) == len(sp.torus().simplices(2))
        assert len(sp.torus().nondegenerate(2)) == 2
        assert sp.sphere(2).count(3) == 1 + 3

    def test_face_of_degeneracy(self):
        X = sp.circle()
        s = ("s", (0, 1))
        assert X.face(X.degeneracy(s, 0), 0) == s
        assert X.face(X.degeneracy(s, 0), 1) == s

    def test_rp2_faces(self):
        X = sp.rp2()
        assert X.identity_defects() == []
        assert [len(X.nondegenerate(k)) for k in range(3)] == [6, 15, 10]

    def test_json_round_trip(self, tmp_path):
        X = sp.torus()
        path = tmp_path / "t.json"
        path.write_text(json.dumps(X.to_json()))
        Y = sp.load_simplicial_set(path)
        assert sp.space_cohomology(Y) == sp.space_cohomology(X)

    def test_facets_form(self):
        X = sp.load_simplicial_set({"facets": [[0, 1], [1, 2], [0, 2]]})
        assert sp.space_cohomology(X) == {0: Z, 1: Z}

    def test_unknown_face_target(self):
        with pytest.raises(ValueError):
            sp.FiniteSimplicialSet({0: ("v",), 1: ("e",)}, {("e", 0): ("w", (0,)), ("e", 1): ("v", (0,))})

    def test_missing_face(self):
        with pytest.raises(ValueError):
            sp.FiniteSimplicialSet({0: ("v",), 1: ("e",)}, {("e", 0): ("v", (0,))})

    def test_identity_violation(self):
        cells = {0: ("a", "b"), 1: ("e",), 2: ("t",)}
        faces = {("e", 0): ("b", (0,)), ("e", 1): ("a", (0,))}
        faces.update({("t", i): ("e", (0, 1)) for i in range(3)})
        with pytest.raises(sp.SimplicialIdentityError):
            sp.FiniteSimplicialSet(cells, faces)

    def test_low_truncation_warns(self):
        with pytest.warns(UserWarning):
            H = sp.space_cohomology(sp.sphere(3), T=2)
        assert set(H) == {0, 1}


class TestKunneth:
    @pytest.mark.parametrize("pair", [("circle", "circle"), ("circle", "sphere2"), ("point", "point"), ("rp2", "circle")])
    def test_pairs(self, pair):
        X, Y = (sp.FIXTURES[n]() for n in pair)
        rep = sp.kunneth_check(X, Y, T=4)
        assert rep.levelwise_iso and rep.cosimplicial_map and rep.chain_map and rep.quasi_iso
        assert rep.formula_matches and rep.passed

    def test_torsion_formula(self):
        H = sp.space_cohomology(sp.rp2())
        assert sp.kunneth_formula(H, H, 3) == Z2
        assert sp.kunneth_formula(H, H, 4) == Z2
        assert sp.kunneth_formula(H, H, 2) == CohomologyGroup(0, (2, 2))

    @pytest.mark.slow
    def test_rp2_squared(self):
        rep = sp.kunneth_check(sp.rp2(), sp.rp2(), T=4)
        assert rep.passed
        assert [rep.product_cohomology[n] for n in range(5)] == [Z, ZERO, CohomologyGroup(0, (2, 2)), Z2, Z2]


class TestBinomiality:
    @pytest.mark.parametrize("name", ["circle", "torus", "rp2"])
    def test_fixtures(self, name):
        rep = sp.binomiality_check(sp.FIXTURES[name](), T=3, samples=40)
        assert rep.passed and rep.structure_maps_are_ring_maps
        assert rep.checks == 40 * (4 + 5)

    def test_ring_operations(self):
        R = sp.cochain_ring(sp.circle(), 2)
        f = list(range(len(R.levels[2])))
        assert R.multiply(2, R.unit(2), f) == f


class TestAlpha1:
    def test_pointwise(self):
        rep = sp.alpha1_pointwise_check(max_internal_degree=5, samples=100, seed=1)
        assert rep.passed and rep.evaluations > 10_000

    def test_report_json(self):
        rep = sp.alpha1_pointwise_check(max_internal_degree=3, samples=5)
        js = rep.to_json()
        assert js["discrepancy_count"] == 0 and js["passed"]
