"""Matchings and matching polynomials of weighted uniform hypergraphs.

The signed sum over matchings weights each matched edge by w(e)^k and
each exposed vertex by (x - w(v)). Two routes compute it: a definitional
enumerator that works on any uniform hypergraph, and a rooted dynamic
program for forests that is polynomial-time per coefficient. The two
must agree exactly; the tests enforce it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from . import scalars
from .errors import DomainError, PoleError
from .hypertree import Hypergraph, WeightedGraph, extract_subgraph, rooted_structure, validate
from .poly import COMPLEX, RATIONAL, Polynomial
from .scalars import Scalar


@dataclass(frozen=True)
class Matching:
    """Pairwise vertex-disjoint edge indices; the empty matching is allowed."""

    edge_indices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edge_indices)


def enumerate_matchings(graph: Hypergraph) -> Iterator[Matching]:
    """Every matching exactly once, in lexicographic subset-tree order."""
    edges = graph.edges

    def rec(start: int, chosen: tuple[int, ...], used: frozenset[int]) -> Iterator[Matching]:
        yield Matching(chosen)
        for j in range(start, len(edges)):
            verts = edges[j]
            if used.isdisjoint(verts):
                yield from rec(j + 1, chosen + (j,), used | frozenset(verts))

    yield from rec(0, (), frozenset())


def _backend_for(weighted: WeightedGraph) -> str:
    return RATIONAL if weighted.weights.is_exact else COMPLEX


def _as_coeff(value: Scalar, backend: str) -> Scalar:
    return Fraction(value) if backend == RATIONAL else scalars.to_complex(value)


def _linear(w: Scalar, backend: str) -> Polynomial:
    """The exposure factor (x - w)."""
    return Polynomial((-_as_coeff(w, backend), _as_coeff(1, backend)), backend)


def matching_polynomial(weighted: WeightedGraph) -> Polynomial:
    """Definitional enumerator; accepts forests and general uniform graphs."""
    graph = weighted.graph
    backend = _backend_for(weighted)
    k = graph.k
    factors = [_linear(w, backend) for w in weighted.weights.vertex_weights]
    total = Polynomial.zero(backend)
    for matching in enumerate_matchings(graph):
        covered: set[int] = set()
        weight = _as_coeff(-1 if len(matching) % 2 else 1, backend)
        for j in matching.edge_indices:
            covered.update(graph.edges[j])
            weight = weight * _as_coeff(weighted.edge_weight(j), backend) ** k
        term = Polynomial.constant(weight)
        for v in range(graph.n):
            if v not in covered:
                term = term * factors[v]
        total = total + term
    return total


def _forest_components(graph: Hypergraph) -> list[tuple[list[int], list[int]]]:
    incident = graph.incident_edges()
    seen = [False] * graph.n
    out = []
    for start in range(graph.n):
        if seen[start]:
            continue
        seen[start] = True
        verts = [start]
        edges: set[int] = set()
        stack = [start]
        while stack:
            v = stack.pop()
            for j in incident[v]:
                edges.add(j)
                for u in graph.edges[j]:
                    if not seen[u]:
                        seen[u] = True
                        verts.append(u)
                        stack.append(u)
        out.append((sorted(verts), sorted(edges)))
    return out


def _component_dp(weighted: WeightedGraph, backend: str) -> Polynomial:
    """DP over one connected hypertree, rooted at local vertex 0.

    `free[v]` sums matchings of v's rooted subtree leaving v exposed,
    without v's own (x - w(v)) factor; `covered[v]` sums those matching
    v through a child edge. Taking an edge needs every lower vertex
    free, drops their exposure factors, and flips the sign.
    """
    graph = weighted.graph
    k = graph.k
    structure = rooted_structure(graph, 0)
    order = [0]
    for j in structure.edge_order:
        order.extend(structure.edge_children[j])

    one = Polynomial.one(backend)
    zero = Polynomial.zero(backend)
    free = [one] * graph.n
    covered = [zero] * graph.n
    for v in reversed(order):
        child_edges = structure.vertex_child_edges[v]
        if not child_edges:
            continue
        unused: list[Polynomial] = []
        used: list[Polynomial] = []
        for g in child_edges:
            n_g = one
            u_g = Polynomial.constant(-(_as_coeff(weighted.edge_weight(g), backend) ** k))
            for c in structure.edge_children[g]:
                n_g = n_g * (_linear(weighted.vertex_weight(c), backend) * free[c] + covered[c])
                u_g = u_g * free[c]
            unused.append(n_g)
            used.append(u_g)
        prod_all = one
        for n_g in unused:
            prod_all = prod_all * n_g
        free[v] = prod_all
        q = zero
        for i, u_g in enumerate(used):
            term = u_g
            for idx, n_g in enumerate(unused):
                if idx != i:
                    term = term * n_g
            q = q + term
        covered[v] = q
    return _linear(weighted.vertex_weight(0), backend) * free[0] + covered[0]


def matching_polynomial_dp(weighted: WeightedGraph) -> Polynomial:
    """Fast path; identical output to matching_polynomial on forests."""
    graph = weighted.graph
    if not validate(graph).acyclic:
        raise DomainError("dynamic program requires an acyclic graph")
    backend = _backend_for(weighted)
    result = Polynomial.one(backend)
    for verts, edges in _forest_components(graph):
        if not edges:
            result = result * _linear(weighted.vertex_weight(verts[0]), backend)
            continue
        component = extract_subgraph(weighted, edges, verts)
        result = result * _component_dp(component.weighted, backend)
    return result


def phi_polynomial(graph: Hypergraph) -> Polynomial:
    """Signed matching-count polynomial of a hypertree.

    Coefficient of x^((m(T)-i)*k) is (-1)^i times the number of
    i-matchings; the degree is k times the matching number.
    """
    if not validate(graph).is_tree:
        raise DomainError("structural matching polynomial requires a hypertree")
    counts: dict[int, int] = {}
    for matching in enumerate_matchings(graph):
        counts[len(matching)] = counts.get(len(matching), 0) + 1
    match_number = max(counts)
    coeffs = [Fraction(0)] * (graph.k * match_number + 1)
    for i, count in counts.items():
        coeffs[(match_number - i) * graph.k] = Fraction(-count if i % 2 else count)
    return Polynomial(coeffs, RATIONAL)


def eval_mu_tilde(weighted: WeightedGraph, lambdas: Sequence[complex] | complex) -> complex:
    """Evaluate the per-edge-variable matching sum at one assignment.

    Each matched edge contributes the product over its vertices of
    w(e) / (lambda_e - w(v)); the assignment must avoid every incident
    vertex weight.
    """
    graph = weighted.graph
    if isinstance(lambdas, (int, float, complex)):
        lams = [complex(lambdas)] * graph.m
    else:
        lams = [complex(l) for l in lambdas]
        if len(lams) != graph.m:
            raise DomainError(f"expected {graph.m} edge values, got {len(lams)}")
    for j, edge in enumerate(graph.edges):
        for v in edge:
            if lams[j] == scalars.to_complex(weighted.vertex_weight(v)):
                raise PoleError(f"assignment for edge {j} equals the weight of vertex {v}")
    total = 0j
    for matching in enumerate_matchings(graph):
        term = complex(-1 if len(matching) % 2 else 1)
        for j in matching.edge_indices:
            we = scalars.to_complex(weighted.edge_weight(j))
            for v in graph.edges[j]:
                term *= we / (lams[j] - scalars.to_complex(weighted.vertex_weight(v)))
        total += term
    return total
