"""Calibrated weighted incidence matrices and eigenvector synthesis.

A weighted incidence matrix B assigns a complex number to each incident
(vertex, edge) pair. For an eigenvalue candidate lam it must balance two
ways: every vertex row sums to 1 (C1), and for every edge the entry
product equals the product over its vertices of w(e) / (lam - w(v))
(C2). On graphs with cycles a third condition (C3) makes path products
consistent. Trees admit a leaf-to-root construction of B from lam and a
path-product synthesis of an eigenvector from B.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import scalars, tensor
from .errors import (
    DomainError,
    NotARootError,
    NumericError,
    PoleError,
    SingularConstructionError,
    StructuralError,
)
from .hypertree import WeightedGraph, WeightedHypertree, rooted_structure
from .matching import matching_polynomial_dp
from .tensor import Eigenpair

CHECK_TOL = 1e-9
RESIDUAL_TOL = 1e-8


@dataclass(frozen=True)
class WeightedIncidenceMatrix:
    """Sparse (vertex, edge) -> complex map supported on incidences."""

    entries: Mapping[tuple[int, int], complex]

    def __init__(self, entries: Mapping[tuple[int, int], complex]):
        object.__setattr__(self, "entries", dict(entries))

    def get(self, v: int, e: int) -> complex:
        return self.entries.get((v, e), complex(0))

    def items(self):
        return sorted(self.entries.items())

    def validate_support(self, weighted: WeightedGraph) -> None:
        edges = weighted.graph.edges
        for (v, e) in self.entries:
            if e < 0 or e >= len(edges) or v not in edges[e]:
                raise StructuralError(f"entry ({v}, {e}) is not an incidence of the graph")

    def to_json(self) -> list[dict]:
        return [
            {"v": v, "e": e, "value": [val.real, val.imag]}
            for (v, e), val in self.items()
        ]

    @classmethod
    def from_json(cls, rows: Sequence[dict]) -> "WeightedIncidenceMatrix":
        entries = {}
        for row in rows:
            val = row["value"]
            entries[(int(row["v"]), int(row["e"]))] = (
                complex(val[0], val[1]) if isinstance(val, (list, tuple)) else complex(val)
            )
        return cls(entries)


@dataclass(frozen=True)
class NormalReport:
    c1_residuals: tuple[float, ...]
    c2_residuals: tuple[float, ...]
    c3_residuals: tuple[float, ...]
    c1_ok: bool
    c2_ok: bool
    c3_ok: bool | None
    tol: float

    @property
    def ok(self) -> bool:
        return self.c1_ok and self.c2_ok and self.c3_ok is not False

    def to_json(self) -> dict:
        return {
            "c1_residuals": list(self.c1_residuals),
            "c2_residuals": list(self.c2_residuals),
            "c3_residuals": list(self.c3_residuals),
            "c1_ok": self.c1_ok,
            "c2_ok": self.c2_ok,
            "c3_ok": self.c3_ok,
            "ok": self.ok,
            "tol": self.tol,
        }


def _edge_lambdas(weighted: WeightedGraph, lambdas) -> list[complex]:
    m = weighted.graph.m
    if isinstance(lambdas, (int, float, complex)):
        lams = [complex(lambdas)] * m
    else:
        lams = [complex(l) for l in lambdas]
        if len(lams) != m:
            raise DomainError(f"expected {m} edge values, got {len(lams)}")
    for j, edge in enumerate(weighted.graph.edges):
        for v in edge:
            if lams[j] == scalars.to_complex(weighted.vertex_weight(v)):
                raise PoleError(f"value for edge {j} equals the weight of vertex {v}")
    return lams


def _c2_target(weighted: WeightedGraph, j: int, lam: complex) -> complex:
    out = complex(1)
    we = scalars.to_complex(weighted.edge_weight(j))
    for v in weighted.graph.edges[j]:
        out *= we / (lam - scalars.to_complex(weighted.vertex_weight(v)))
    return out


def check_normal(
    weighted: WeightedGraph,
    matrix: WeightedIncidenceMatrix,
    lambdas,
    tol: float = CHECK_TOL,
) -> NormalReport:
    """Evaluate C1 per vertex and C2 per edge against the given values."""
    matrix.validate_support(weighted)
    lams = _edge_lambdas(weighted, lambdas)
    graph = weighted.graph
    incident = graph.incident_edges()
    c1 = tuple(
        abs(sum((matrix.get(v, j) for j in incident[v]), complex(0)) - 1.0)
        for v in range(graph.n)
    )
    c2 = []
    for j, edge in enumerate(graph.edges):
        prod = complex(1)
        for v in edge:
            prod *= matrix.get(v, j)
        c2.append(abs(prod - _c2_target(weighted, j, lams[j])))
    return NormalReport(
        c1_residuals=c1,
        c2_residuals=tuple(c2),
        c3_residuals=(),
        c1_ok=all(r <= tol for r in c1),
        c2_ok=all(r <= tol for r in c2),
        c3_ok=None,
        tol=tol,
    )


def _fundamental_cycles(graph) -> list[list[tuple[int, int, int]]]:
    """Cycles as (vertex_in, edge, vertex_out) triples over a BFS cycle basis.

    Works on the bipartite incidence graph, where hypergraph cycles are
    exactly the cycles alternating vertex and edge nodes.
    """
    n, edges = graph.n, graph.edges
    # Node encoding: vertices 0..n-1, edge j -> n + j.
    adj: list[list[int]] = [[] for _ in range(n + len(edges))]
    for j, edge in enumerate(edges):
        for v in edge:
            adj[v].append(n + j)
            adj[n + j].append(v)

    parent = [-2] * (n + len(edges))
    depth = [0] * (n + len(edges))
    tree_links: set[tuple[int, int]] = set()
    order: list[tuple[int, int]] = []
    for start in range(n):
        if parent[start] != -2:
            continue
        parent[start] = -1
        queue = [start]
        head = 0
        while head < len(queue):
            a = queue[head]
            head += 1
            for b in adj[a]:
                link = (min(a, b), max(a, b))
                if parent[b] == -2:
                    parent[b] = a
                    depth[b] = depth[a] + 1
                    tree_links.add(link)
                    queue.append(b)
                elif link not in tree_links and link not in order:
                    order.append(link)

    cycles = []
    for a, b in sorted(set(order)):
        pa, pb = [a], [b]
        x, y = a, b
        while depth[x] > depth[y]:
            x = parent[x]
            pa.append(x)
        while depth[y] > depth[x]:
            y = parent[y]
            pb.append(y)
        while x != y:
            x = parent[x]
            y = parent[y]
            pa.append(x)
            pb.append(y)
        loop = pa + pb[:-1][::-1]  # closed node cycle, first node repeats implicitly
        # Rotate so the walk starts on a vertex node.
        if loop[0] >= n:
            loop = loop[1:] + loop[:1]
        triples = []
        size = len(loop)
        for i in range(0, size, 2):
            v_prev = loop[i]
            e_node = loop[(i + 1) % size]
            v_next = loop[(i + 2) % size]
            triples.append((v_prev, e_node - n, v_next))
        cycles.append(triples)
    return cycles


def check_consistent(
    weighted: WeightedGraph,
    matrix: WeightedIncidenceMatrix,
    lam: complex,
    tol: float = CHECK_TOL,
) -> NormalReport:
    """C1, C2 and the cycle condition C3 for a constant eigenvalue candidate.

    On acyclic graphs C3 holds vacuously.
    """
    base = check_normal(weighted, matrix, lam, tol)
    lamc = complex(lam)
    c3 = []
    for cycle in _fundamental_cycles(weighted.graph):
        prod = complex(1)
        degenerate = False
        for v_prev, j, v_next in cycle:
            num = matrix.get(v_next, j) * (lamc - scalars.to_complex(weighted.vertex_weight(v_next)))
            den = matrix.get(v_prev, j) * (lamc - scalars.to_complex(weighted.vertex_weight(v_prev)))
            if den == 0:
                degenerate = True
                break
            prod *= num / den
        c3.append(float("inf") if degenerate else abs(prod - 1.0))
    return NormalReport(
        c1_residuals=base.c1_residuals,
        c2_residuals=base.c2_residuals,
        c3_residuals=tuple(c3),
        c1_ok=base.c1_ok,
        c2_ok=base.c2_ok,
        c3_ok=all(r <= tol for r in c3),
        tol=tol,
    )


def _guard_construction(weighted: WeightedGraph, lamc: complex) -> None:
    graph = weighted.graph
    for v in range(graph.n):
        if lamc == scalars.to_complex(weighted.vertex_weight(v)):
            raise PoleError(f"candidate equals the weight of vertex {v}")
    if graph.m == 0:
        raise DomainError("a single vertex admits no incidence matrix")
    for j in range(graph.m):
        if scalars.to_complex(weighted.edge_weight(j)) == 0:
            raise DomainError(f"edge {j} has zero weight; prune it first")


def _run_construction(
    weighted: WeightedHypertree, lamc: complex, zero_tol: float
) -> tuple[dict[tuple[int, int], complex], complex]:
    """Shared leaf-to-root recursion; returns the entries and the root row sum."""
    graph = weighted.graph
    _guard_construction(weighted, lamc)

    structure = rooted_structure(graph, 0)
    entries: dict[tuple[int, int], complex] = {}
    for j in reversed(structure.edge_order):
        prod_children = complex(1)
        for c in structure.edge_children[j]:
            val = complex(1)
            for g in structure.vertex_child_edges[c]:
                val -= entries[(c, g)]
            entries[(c, j)] = val
            if abs(val) <= zero_tol:
                raise SingularConstructionError(
                    f"entry for vertex {c} on edge {j} vanished", vertex=c, edge=j
                )
            prod_children *= val
        u = structure.parent_vertex[j]
        entries[(u, j)] = _c2_target(weighted, j, lamc) / prod_children

    root_sum = sum(
        (entries[(structure.root, g)] for g in structure.vertex_child_edges[structure.root]),
        complex(0),
    )
    return entries, root_sum


def root_balance_defect(weighted: WeightedHypertree, lam: complex, zero_tol: float = CHECK_TOL) -> complex:
    """Root row sum minus 1 for the constructed matrix.

    Vanishes exactly at the eigenvalues this tree witnesses, so it doubles
    as a refinement target for approximate polynomial roots.
    """
    _, root_sum = _run_construction(weighted, complex(lam), zero_tol)
    return root_sum - 1.0


def build_normal_matrix(
    weighted: WeightedHypertree,
    lam: complex,
    tol: float = CHECK_TOL,
    consistency_tol: float | None = None,
) -> WeightedIncidenceMatrix:
    """Leaf-to-root construction of a calibrated incidence matrix.

    Child rows are completed first (each child's entry on its parent edge
    is 1 minus its child-edge entries), then the parent entry is forced by
    the edge product C2. The row sum at the root must come out 1; its
    residual certifies that lam solves the tree's one-variable balance
    equation. `consistency_tol` loosens that final gate alone, for callers
    that follow up with a stricter eigenvector-residual check.
    """
    lamc = complex(lam)
    _guard_construction(weighted, lamc)
    mu = matching_polynomial_dp(weighted).to_complex()
    scale = max(abs(c) for c in mu.coeffs)
    value = abs(complex(mu.evaluate(lamc)))
    if value > max(tol, 1e-7) * scale * max(1.0, abs(lamc)) ** mu.degree:
        warnings.warn(
            f"candidate {lamc} is not a root of the matching polynomial "
            f"(|mu| = {value:.3e}); construction will likely fail",
            stacklevel=2,
        )

    entries, root_sum = _run_construction(weighted, lamc, tol)
    root_residual = abs(root_sum - 1.0)
    if root_residual > (tol if consistency_tol is None else consistency_tol):
        raise NotARootError(
            f"root row sum misses 1 by {root_residual:.3e}; "
            "the candidate is not an eigenvalue witnessed by this tree",
            residual=root_residual,
        )
    return WeightedIncidenceMatrix(entries)


def eigenvector_from_normal(
    weighted: WeightedHypertree,
    matrix: WeightedIncidenceMatrix,
    lam: complex,
    tol: float = RESIDUAL_TOL,
) -> Eigenpair:
    """Path-product eigenvector synthesis with k-th root branch correction.

    For each incidence let t = B(v,e) (lam - w(v)) and s its principal
    k-th root. The per-edge product of the s values is w(e) times a k-th
    root of unity; dividing one non-parent root by that unit makes every
    cross-edge identity exact, after which coordinates propagate down the
    tree as x_child = x_parent * s_parent / s_child.
    """
    graph = weighted.graph
    k = graph.k
    lamc = complex(lam)
    for v in range(graph.n):
        if lamc == scalars.to_complex(weighted.vertex_weight(v)):
            raise PoleError(f"candidate equals the weight of vertex {v}")
    if graph.m == 0:
        raise DomainError("a single vertex needs no synthesis; use a unit eigenpair")

    structure = rooted_structure(graph, 0)
    roots: dict[tuple[int, int], complex] = {}
    for j, edge in enumerate(graph.edges):
        for v in edge:
            t = matrix.get(v, j) * (lamc - scalars.to_complex(weighted.vertex_weight(v)))
            if t == 0:
                raise SingularConstructionError(
                    f"zero incidence product at vertex {v}, edge {j}", vertex=v, edge=j
                )
            roots[(v, j)] = t ** (1.0 / k)

    for j, edge in enumerate(graph.edges):
        we = scalars.to_complex(weighted.edge_weight(j))
        if we == 0:
            raise DomainError(f"edge {j} has zero weight; prune it first")
        prod = complex(1)
        for v in edge:
            prod *= roots[(v, j)]
        unit = prod / we
        chosen = min(structure.edge_children[j])
        roots[(chosen, j)] /= unit

    x = [complex(0)] * graph.n
    x[structure.root] = complex(1)
    for j in structure.edge_order:
        p = structure.parent_vertex[j]
        for c in structure.edge_children[j]:
            x[c] = x[p] * roots[(p, j)] / roots[(c, j)]

    res = tensor.residual(weighted, lamc, x)
    if res > tol:
        raise NumericError(
            f"synthesized vector has residual {res:.3e} above tolerance {tol:.1e}"
        )
    return Eigenpair(lamc, tuple(x), res)


def normal_from_eigenpair(
    weighted: WeightedGraph, pair: Eigenpair, tol: float = RESIDUAL_TOL
) -> WeightedIncidenceMatrix:
    """Recover the incidence matrix B(v,e) = w(e) x^e / ((lam - w(v)) x_v^k)."""
    graph = weighted.graph
    k = graph.k
    lamc = complex(pair.value)
    if len(pair.vector) != graph.n:
        raise DomainError("eigenvector length does not match the graph")
    for v in range(graph.n):
        if pair.vector[v] == 0:
            raise DomainError(f"vertex {v} has a zero coordinate")
        if lamc == scalars.to_complex(weighted.vertex_weight(v)):
            raise PoleError(f"eigenvalue equals the weight of vertex {v}")
    res = tensor.residual(weighted, lamc, pair.vector)
    if res > tol:
        raise DomainError(f"pair residual {res:.3e} exceeds tolerance {tol:.1e}")

    entries: dict[tuple[int, int], complex] = {}
    for j, edge in enumerate(graph.edges):
        we = scalars.to_complex(weighted.edge_weight(j))
        xe = complex(1)
        for v in edge:
            xe *= pair.vector[v]
        for v in edge:
            wv = scalars.to_complex(weighted.vertex_weight(v))
            entries[(v, j)] = we * xe / ((lamc - wv) * pair.vector[v] ** k)
    return WeightedIncidenceMatrix(entries)
