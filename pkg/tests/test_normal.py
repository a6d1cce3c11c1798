import cmath
import math
import random

import pytest

from htspec import Hypergraph, WeightedGraph, Weighting
from htspec.errors import (
    DomainError,
    NotARootError,
    PoleError,
    SingularConstructionError,
)
from htspec.matching import matching_polynomial_dp
from htspec.normal import (
    WeightedIncidenceMatrix,
    build_normal_matrix,
    check_consistent,
    check_normal,
    eigenvector_from_normal,
    normal_from_eigenpair,
)
from htspec.poly import find_roots
from htspec.randomgen import random_weighted_tree
from htspec.scalars import to_complex
from htspec.tensor import residual

from conftest import build_tree


def _all_ones_matrix(graph):
    return WeightedIncidenceMatrix(
        {(v, j): complex(1) for j, edge in enumerate(graph.edges) for v in edge}
    )


class TestCheckNormal:
    def test_single_edge_unit_at_one(self, single_edge):
        report = check_normal(single_edge, _all_ones_matrix(single_edge.graph), 1.0)
        assert report.c1_ok and report.c2_ok and report.ok
        assert report.c3_ok is None

    def test_single_edge_unit_at_two_fails_c2(self, single_edge):
        report = check_normal(single_edge, _all_ones_matrix(single_edge.graph), 2.0)
        assert report.c1_ok
        assert not report.c2_ok
        assert report.c2_residuals[0] == pytest.approx(7 / 8, abs=1e-12)

    def test_degree_one_rows_are_units(self):
        rng = random.Random(21)
        for _ in range(5):
            tree = random_weighted_tree(rng, 3, rng.randint(1, 5), nonnegative=True)
            mu = matching_polynomial_dp(tree)
            lam = max(z.real for z in find_roots(mu) if abs(z.imag) < 1e-9)
            matrix = build_normal_matrix(tree, lam)
            deg = [0] * tree.n
            for edge in tree.graph.edges:
                for v in edge:
                    deg[v] += 1
            for (v, e), value in matrix.items():
                if deg[v] == 1:
                    assert abs(value - 1) <= 1e-9

    def test_rejects_entry_off_support(self, single_edge):
        matrix = WeightedIncidenceMatrix({(0, 0): 1.0, (3, 0): 1.0})
        with pytest.raises(Exception):
            check_normal(single_edge, matrix, 1.0)

    def test_pole_guard(self, single_edge):
        with pytest.raises(PoleError):
            check_normal(single_edge, _all_ones_matrix(single_edge.graph), 0.0)


class TestCheckConsistent:
    def test_tree_is_vacuous(self, loose_path2):
        lam = 2 ** (1 / 3)
        matrix = build_normal_matrix(loose_path2, lam)
        report = check_consistent(loose_path2, matrix, lam)
        assert report.c3_residuals == ()
        assert report.c3_ok is True
        assert report.ok

    def test_triangle_passes(self):
        graph = Hypergraph(2, 3, [[0, 1], [1, 2], [0, 2]])
        weighted = WeightedGraph(graph, Weighting([0, 0, 0], [1, 1, 1]))
        matrix = WeightedIncidenceMatrix(
            {(v, j): complex(0.5) for j, edge in enumerate(graph.edges) for v in edge}
        )
        report = check_consistent(weighted, matrix, 2.0)
        assert len(report.c3_residuals) == 1
        assert report.c3_residuals[0] == pytest.approx(0.0, abs=1e-12)
        assert report.ok

    def test_triangle_perturbed_fails(self):
        graph = Hypergraph(2, 3, [[0, 1], [1, 2], [0, 2]])
        weighted = WeightedGraph(graph, Weighting([0, 0, 0], [1, 1, 1]))
        entries = {(v, j): complex(0.5) for j, edge in enumerate(graph.edges) for v in edge}
        entries[(1, 0)] = complex(0.6)
        report = check_consistent(weighted, WeightedIncidenceMatrix(entries), 2.0)
        assert report.c3_ok is False


class TestBuildNormalMatrix:
    def test_single_edge_all_units(self, single_edge):
        matrix = build_normal_matrix(single_edge, 1.0)
        assert all(abs(v - 1) < 1e-12 for _, v in matrix.items())

    def test_loose_path_shared_vertex_halves(self, loose_path2):
        lam = 2 ** (1 / 3)
        matrix = build_normal_matrix(loose_path2, lam)
        assert abs(matrix.get(2, 0) - 0.5) < 1e-12
        assert abs(matrix.get(2, 1) - 0.5) < 1e-12
        report = check_normal(loose_path2, matrix, lam)
        assert report.ok

    def test_subtree_root_makes_it_singular(self, loose_path2):
        # 1 solves the single-edge balance, so the shared row hits zero.
        with pytest.warns(UserWarning):
            with pytest.raises(SingularConstructionError):
                build_normal_matrix(loose_path2, 1.0)

    def test_non_root_raises_not_a_root(self, loose_path2):
        with pytest.warns(UserWarning):
            with pytest.raises(NotARootError) as info:
                build_normal_matrix(loose_path2, 3.0)
        assert info.value.residual > 0

    def test_pole_rejected(self, single_edge):
        with pytest.raises(PoleError):
            build_normal_matrix(single_edge, 0.0)

    def test_singleton_rejected(self):
        graph = Hypergraph(3, 1, [])
        tree = WeightedGraph(graph, Weighting([0], []))
        from htspec.hypertree import WeightedHypertree

        lifted = WeightedHypertree.build(graph, Weighting([0], []))
        with pytest.raises(DomainError):
            build_normal_matrix(lifted, 1.0)


class TestEigenvectorFromNormal:
    def test_single_edge_ones(self, single_edge):
        matrix = build_normal_matrix(single_edge, 1.0)
        pair = eigenvector_from_normal(single_edge, matrix, 1.0)
        assert pair.vector == (1, 1, 1)
        assert pair.residual == 0.0

    def test_loose_path_positive_vector(self, loose_path2):
        lam = 2 ** (1 / 3)
        matrix = build_normal_matrix(loose_path2, lam)
        pair = eigenvector_from_normal(loose_path2, matrix, lam)
        assert pair.residual <= 1e-10
        assert all(z.real > 0 and abs(z.imag) < 1e-12 for z in pair.vector)
        assert abs(pair.vector[2] / pair.vector[0] - lam) < 1e-10

    def test_complex_root_certifies(self, loose_path2):
        lam = 2 ** (1 / 3) * cmath.exp(2j * math.pi / 3)
        matrix = build_normal_matrix(loose_path2, lam)
        pair = eigenvector_from_normal(loose_path2, matrix, lam)
        assert pair.residual <= 1e-10
        assert residual(loose_path2, lam, pair.vector) <= 1e-10

    @pytest.mark.parametrize("seed", list(range(5)))
    def test_perron_root_gives_positive_matrix_and_vector(self, seed):
        rng = random.Random(700 + seed)
        tree = random_weighted_tree(rng, rng.choice([3, 4]), rng.randint(1, 5), nonnegative=True)
        mu = matching_polynomial_dp(tree)
        lam = max(z.real for z in find_roots(mu) if abs(z.imag) < 1e-9)
        matrix = build_normal_matrix(tree, lam)
        for _, value in matrix.items():
            assert value.real > 0 and abs(value.imag) <= 1e-10
        pair = eigenvector_from_normal(tree, matrix, lam)
        for coord in pair.vector:
            assert coord.real > 0 and abs(coord.imag) <= 1e-9 * (1 + abs(coord))


class TestNormalFromEigenpair:
    def test_single_edge_recovers_units(self, single_edge):
        matrix = build_normal_matrix(single_edge, 1.0)
        pair = eigenvector_from_normal(single_edge, matrix, 1.0)
        recovered = normal_from_eigenpair(single_edge, pair)
        assert all(abs(v - 1) < 1e-12 for _, v in recovered.items())

    def test_loose_path_round_trip(self, loose_path2):
        lam = 2 ** (1 / 3)
        matrix = build_normal_matrix(loose_path2, lam)
        pair = eigenvector_from_normal(loose_path2, matrix, lam)
        recovered = normal_from_eigenpair(loose_path2, pair)
        for key, value in matrix.items():
            assert abs(recovered.get(*key) - value) < 1e-10

    def test_rejects_non_eigenpair(self, loose_path2):
        from htspec.tensor import Eigenpair

        bogus = Eigenpair(0.5 + 0j, (1 + 0j,) * 5, 0.0)
        with pytest.raises(DomainError):
            normal_from_eigenpair(loose_path2, bogus)

    @pytest.mark.parametrize("seed", list(range(8)))
    def test_full_round_trip_random_trees(self, seed):
        rng = random.Random(900 + seed)
        tree = random_weighted_tree(rng, 3, rng.randint(1, 4))
        mu = matching_polynomial_dp(tree)
        weights = [to_complex(w) for w in tree.weights.vertex_weights]
        for lam in find_roots(mu):
            if any(abs(lam - w) < 1e-7 for w in weights):
                continue
            try:
                matrix = build_normal_matrix(tree, lam)
                pair = eigenvector_from_normal(tree, matrix, lam)
            except SingularConstructionError:
                continue
            recovered = normal_from_eigenpair(tree, pair)
            for key, value in matrix.items():
                assert abs(recovered.get(*key) - value) <= 1e-8 * (1 + abs(value))
            vacuous = check_consistent(tree, recovered, lam)
            assert vacuous.ok and vacuous.c3_residuals == ()
