"""Acceptance suite: one test per criterion, each printing a PASS line.

Run `pytest tests/test_acceptance.py -v -s` to see the checklist. All
tolerances are pinned here; nothing is deferred to calibration.
"""

import cmath
import math
import random

import pytest

from htspec import (
    WeightedHypertree,
    check_consistent,
    corollary_weighting,
    degrees,
    enumerate_subtrees,
    extract_subgraph,
    peel_sequence,
    subtree_graph,
)
from htspec.errors import SingularConstructionError
from htspec.matching import (
    matching_polynomial,
    matching_polynomial_dp,
    eval_mu_tilde,
    phi_polynomial,
)
from htspec.normal import build_normal_matrix, eigenvector_from_normal
from htspec.poly import Polynomial, find_roots
from htspec.randomgen import (
    random_hypertree,
    random_weighted_tree,
)
from htspec.scalars import to_complex
from htspec.spectra import corollary_spectrum, eigenvalues, spectral_radius
from htspec.tensor import (
    lift_eigenpair,
    power_spectral_radius,
    restrict_eigenpair,
    unit_eigenpair,
)
from htspec.documents import parse_hypertree

from conftest import build_tree, fixture_names, load_fixture


def _contains(values, target, tol=1e-9):
    return min(abs(v - target) for v in values) <= tol


@pytest.fixture(scope="module")
def nonnegative_suite():
    """100 random nonnegative-weight trees with their spectrum reports."""
    rng = random.Random(56)
    suite = []
    for _ in range(100):
        tree = random_weighted_tree(rng, rng.choice([3, 4]), rng.randint(1, 5), nonnegative=True)
        suite.append((tree, eigenvalues(tree, tol=1e-8)))
    return suite


def test_criterion_1_single_edge_complete_certified_spectrum():
    tree = build_tree(3, [[0, 1, 2]])
    report = eigenvalues(tree, tol=1e-8, dedup_tol=1e-9)
    values = report.eigenvalues()
    omega = cmath.exp(2j * math.pi / 3)
    assert len(values) == 4
    for target in (0, 1, omega, omega.conjugate()):
        assert _contains(values, target)
    assert all(r.status == "certified" and r.residual <= 1e-8 for r in report.roots)
    assert all(t.residual <= 1e-8 for t in report.trivial)
    radius = spectral_radius(tree)
    assert abs(radius.radius - 1.0) <= 1e-9
    print("ACCEPTANCE 1 PASS: single unit edge spectrum {0, 1, w, w^2}, radius 1, all certified <= 1e-8")


def test_criterion_2_loose_path_exact_polynomial_and_spectrum():
    tree = build_tree(3, [[0, 1, 2], [2, 3, 4]])
    mu = matching_polynomial(tree)
    assert mu.backend == "rational"
    assert mu.coeffs == (0, 0, -2, 0, 0, 1)

    report = eigenvalues(tree, tol=1e-8, dedup_tol=1e-9)
    values = report.eigenvalues()
    assert len(values) == 7
    cube2 = 2 ** (1 / 3)
    targets = [0]
    for j in range(3):
        unit = cmath.exp(2j * math.pi * j / 3)
        targets.extend([unit, cube2 * unit])
    for target in targets:
        assert _contains(values, target)

    assert abs(report.spectral_radius - cube2) <= 1e-9
    power = power_spectral_radius(tree, tol=1e-9)
    assert abs(power.radius - cube2) <= 1e-6
    print("ACCEPTANCE 2 PASS: loose path mu = x^5 - 2x^2 exactly; 7 eigenvalues; radius 2^(1/3) (roots 1e-9, power 1e-6)")


def test_criterion_3_unit_weight_identity_suite():
    rng = random.Random(3)
    for _ in range(50):
        k = rng.choice([3, 4, 5])
        m = rng.randint(1, 8)
        graph = random_hypertree(rng, k, m)
        tree = build_tree(k, [list(e) for e in graph.edges])
        mu = matching_polynomial_dp(tree)
        phi = phi_polynomial(graph)
        shift = graph.n - phi.degree
        assert shift == graph.n - k * (phi.degree // k)
        x_power = Polynomial([0] * shift + [1])
        assert x_power * phi == mu
    print("ACCEPTANCE 3 PASS: mu(T,x) = x^(n-km) phi(T,x) exactly on 50 random unit trees (k in {3,4,5}, m <= 8)")


def test_criterion_4_oracle_equivalence_suite():
    rng = random.Random(4)
    for _ in range(100):
        tree = random_weighted_tree(rng, rng.choice([3, 4]), rng.randint(1, 6))
        mu_dp = matching_polynomial_dp(tree)
        assert mu_dp == matching_polynomial(tree)
        weights = [to_complex(w) for w in tree.weights.vertex_weights]
        checked = 0
        while checked < 20:
            lam = complex(rng.uniform(-3, 3), rng.uniform(-3, 3))
            if min(abs(lam - w) for w in weights) < 0.05:
                continue
            prefactor = complex(1)
            for w in weights:
                prefactor *= lam - w
            lhs = prefactor * eval_mu_tilde(tree, lam)
            rhs = complex(mu_dp.evaluate(lam))
            assert abs(lhs - rhs) <= 1e-10 * max(1.0, abs(lhs), abs(rhs))
            checked += 1
    print("ACCEPTANCE 4 PASS: DP = definitional mu exactly and the product identity holds to 1e-10 on 100 random rational trees")


def test_criterion_5_certification_suite(nonnegative_suite):
    total = 0
    flagged = 0
    for tree, report in nonnegative_suite:
        for entry in report.roots:
            total += 1
            if entry.status == "certified":
                assert entry.residual <= 1e-8
            else:
                assert entry.status == "singular"
                flagged += 1
    rate = flagged / max(1, total)
    assert rate < 0.05
    print(
        f"ACCEPTANCE 5 PASS: {total} root eigenvalues on 100 random nonnegative trees; "
        f"singular rate {rate:.4f} (< 0.05), certified residuals <= 1e-8"
    )


def test_criterion_6_radius_cross_check(nonnegative_suite):
    worst = 0.0
    for tree, report in nonnegative_suite:
        power = power_spectral_radius(tree, tol=1e-9)
        gap = abs(report.spectral_radius - power.radius)
        worst = max(worst, gap)
        assert gap <= 1e-6
    print(f"ACCEPTANCE 6 PASS: |largest root - power iteration| <= 1e-6 on all 100 trees (worst {worst:.2e})")


def test_criterion_7_corollary_suite():
    single = build_tree(3, [[0, 1, 2]]).graph
    signless = corollary_spectrum(single, "signless")
    assert abs(signless.spectral_radius - 2.0) <= 1e-9
    laplacian = corollary_spectrum(single, "laplacian")
    assert _contains(laplacian.eigenvalues(), 0)

    rng = random.Random(7)
    for _ in range(20):
        graph = random_hypertree(rng, rng.choice([3, 4]), rng.randint(1, 5))
        report = corollary_spectrum(graph, "signless")
        weighted = WeightedHypertree.build(graph, corollary_weighting(graph, "signless"))
        power = power_spectral_radius(weighted, tol=1e-9)
        assert abs(report.spectral_radius - power.radius) <= 1e-6
    print("ACCEPTANCE 7 PASS: signless single-edge radius 2; Laplacian single edge contains 0; 20 random signless radii match power iteration to 1e-6")


def test_criterion_8_structural_suites():
    rng = random.Random(88)
    completed = 0
    while completed < 50:
        tree = random_weighted_tree(rng, rng.choice([3, 4]), rng.randint(2, 5), nonnegative=True)
        candidates = [s for s in enumerate_subtrees(tree) if not s.is_singleton]
        sub = candidates[rng.randrange(len(candidates))]
        extracted = subtree_graph(tree, sub)
        vertex_values = [to_complex(w) for w in tree.weights.vertex_weights]
        roots = [
            z
            for z in find_roots(matching_polynomial_dp(extracted.weighted))
            if min(abs(z - w) for w in vertex_values) > 1e-6
        ]
        if not roots:
            continue
        lam = roots[rng.randrange(len(roots))]
        try:
            matrix = build_normal_matrix(extracted.weighted, lam)
            pair = eigenvector_from_normal(extracted.weighted, matrix, lam, tol=1e-8)
        except SingularConstructionError:
            continue

        # Degree-one rows of every constructed matrix equal 1.
        deg = degrees(extracted.weighted.graph)
        for (v, _), value in matrix.items():
            if deg[v] == 1:
                assert abs(value - 1) <= 1e-9

        # The cycle condition holds vacuously on trees.
        consistency = check_consistent(extracted.weighted, matrix, lam)
        assert consistency.c3_ok is True and consistency.c3_residuals == ()

        # Pendant lifting up the peel sequence, then support restriction,
        # is the identity on the original subtree.
        sequence = peel_sequence(tree, sub)
        lifted = pair
        for i in range(len(sequence), 0, -1):
            kept = [e for e in range(tree.graph.m) if e not in sequence[: i - 1]]
            parent = extract_subgraph(tree, kept)
            lifted = lift_eigenpair(parent.weighted, parent.edge_ids.index(sequence[i - 1]), lifted, tol=1e-8)
        parts = restrict_eigenpair(tree, lifted, tol=1e-8)
        assert len(parts) == 1
        part = parts[0]
        assert part.vertex_ids == extracted.vertex_ids
        assert part.component.edge_ids == sub.edge_indices
        assert part.pair.vector == pair.vector
        completed += 1
    print("ACCEPTANCE 8 PASS: 50 lift/restrict round trips are identities; degree-one entries equal 1; cycle condition vacuous on trees")


def test_criterion_9_trivial_completeness_on_fixtures():
    checked = 0
    for name in fixture_names():
        tree = parse_hypertree(load_fixture(name))
        report = eigenvalues(tree, tol=1e-8)
        for v in range(tree.n):
            wv = to_complex(tree.vertex_weight(v))
            assert any(
                v in entry.vertices and abs(entry.value - wv) <= 1e-9 * (1 + abs(wv))
                for entry in report.trivial
            )
            pair = unit_eigenpair(tree, v)
            assert pair.residual == 0.0
            checked += 1
    print(f"ACCEPTANCE 9 PASS: every vertex weight appears with a residual-0 unit eigenpair ({checked} vertices across fixtures)")
