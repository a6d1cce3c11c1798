"""Adjacency-tensor action, residuals, and eigenpair surgery.

The order-k tensor is never materialized: its action on a vector is
evaluated edge-wise as (A x^{k-1})_v = w(v) x_v^{k-1} + sum over edges
containing v of w(e) times the product of the other k-1 coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import scalars
from .errors import DomainError, NonConvergenceError
from .hypertree import (
    ExtractedGraph,
    WeightedGraph,
    degrees,
    delete_edge,
    extract_subgraph,
    validate,
)


@dataclass(frozen=True)
class Eigenpair:
    value: complex
    vector: tuple[complex, ...]
    residual: float

    def __post_init__(self):
        if not any(x != 0 for x in self.vector):
            raise DomainError("eigenvector must be nonzero")

    def to_json(self) -> dict:
        return {
            "lambda": [self.value.real, self.value.imag],
            "x": [[x.real, x.imag] for x in self.vector],
            "residual": self.residual,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Eigenpair":
        lam = complex(obj["lambda"][0], obj["lambda"][1])
        vec = tuple(complex(p[0], p[1]) for p in obj["x"])
        return cls(lam, vec, float(obj["residual"]))


def apply(weighted: WeightedGraph, x: Sequence[complex]) -> list[complex]:
    """y = A x^{k-1}, evaluated edge-wise."""
    graph = weighted.graph
    if len(x) != graph.n:
        raise DomainError(f"vector length {len(x)} does not match {graph.n} vertices")
    xs = [complex(v) for v in x]
    k = graph.k
    out = [scalars.to_complex(weighted.vertex_weight(v)) * xs[v] ** (k - 1) for v in range(graph.n)]
    for j, edge in enumerate(graph.edges):
        we = scalars.to_complex(weighted.edge_weight(j))
        for v in edge:
            prod = we
            for u in edge:
                if u != v:
                    prod *= xs[u]
            out[v] += prod
    return out


def residual(weighted: WeightedGraph, lam: complex, x: Sequence[complex]) -> float:
    """Infinity norm of A x^{k-1} - lam * x^{[k-1]}, scaled by max(1, |x|_inf)^{k-1}."""
    xs = [complex(v) for v in x]
    if not any(v != 0 for v in xs):
        raise DomainError("residual of the zero vector is undefined")
    k = weighted.graph.k
    y = apply(weighted, xs)
    lamc = complex(lam)
    err = max(abs(y[v] - lamc * xs[v] ** (k - 1)) for v in range(len(xs)))
    scale = max(1.0, max(abs(v) for v in xs)) ** (k - 1)
    return err / scale


def unit_eigenpair(weighted: WeightedGraph, v: int) -> Eigenpair:
    """(w(v), e_v): every edge term vanishes when k >= 3."""
    graph = weighted.graph
    if graph.k < 3:
        raise DomainError("unit eigenpairs need k >= 3; for k = 2 use ordinary matrix spectra")
    if v < 0 or v >= graph.n:
        raise DomainError(f"vertex {v} out of range")
    x = tuple(complex(1) if u == v else complex(0) for u in range(graph.n))
    lam = scalars.to_complex(weighted.vertex_weight(v))
    return Eigenpair(lam, x, residual(weighted, lam, x))


def lift_eigenpair(
    weighted: WeightedGraph, edge_index: int, pair: Eigenpair, tol: float = 1e-8
) -> Eigenpair:
    """Extend an eigenpair across a deleted edge with >= 2 degree-one vertices.

    The deleted vertices get zero coordinates; the eigenvalue is kept.
    """
    graph = weighted.graph
    if graph.k < 3:
        raise DomainError("eigenpair lifting needs k >= 3")
    deg = degrees(graph)
    loose = [v for v in graph.edges[edge_index] if deg[v] == 1]
    if len(loose) < 2:
        raise DomainError(f"edge {edge_index} has {len(loose)} degree-one vertices; need at least 2")
    child = delete_edge(weighted, edge_index)
    if len(pair.vector) != child.weighted.n:
        raise DomainError("eigenpair does not match the graph left by deleting the edge")
    sub_res = residual(child.weighted, pair.value, pair.vector)
    if sub_res > tol:
        raise DomainError(f"input pair residual {sub_res:.3e} exceeds tolerance {tol:.1e}")
    x = [complex(0)] * graph.n
    for local, original in enumerate(child.vertex_ids):
        x[original] = pair.vector[local]
    return Eigenpair(pair.value, tuple(x), residual(weighted, pair.value, x))


@dataclass(frozen=True)
class RestrictedComponent:
    """One support component of an eigenvector, as its own weighted graph."""

    component: ExtractedGraph
    pair: Eigenpair

    @property
    def vertex_ids(self) -> tuple[int, ...]:
        return self.component.vertex_ids


def restrict_eigenpair(
    weighted: WeightedGraph,
    pair: Eigenpair,
    tol: float = 1e-8,
    support_tol: float = 1e-12,
) -> list[RestrictedComponent]:
    """Split an eigenpair along the components induced on its support.

    Each restricted vector has all entries nonzero and is an eigenpair
    of its component for the same eigenvalue.
    """
    graph = weighted.graph
    if len(pair.vector) != graph.n:
        raise DomainError("eigenvector length does not match the graph")
    full_res = residual(weighted, pair.value, pair.vector)
    if full_res > tol:
        raise DomainError(f"input pair residual {full_res:.3e} exceeds tolerance {tol:.1e}")
    scale = max(abs(v) for v in pair.vector)
    support = {v for v in range(graph.n) if abs(pair.vector[v]) > support_tol * scale}

    kept_edges = [j for j, edge in enumerate(graph.edges) if all(v in support for v in edge)]
    incident: dict[int, list[int]] = {v: [] for v in support}
    for j in kept_edges:
        for v in graph.edges[j]:
            incident[v].append(j)

    seen: set[int] = set()
    out: list[RestrictedComponent] = []
    for start in sorted(support):
        if start in seen:
            continue
        seen.add(start)
        verts = {start}
        edges: set[int] = set()
        stack = [start]
        while stack:
            v = stack.pop()
            for j in incident[v]:
                edges.add(j)
                for u in graph.edges[j]:
                    if u not in seen:
                        seen.add(u)
                        verts.add(u)
                        stack.append(u)
        component = extract_subgraph(weighted, sorted(edges), sorted(verts))
        vec = tuple(pair.vector[v] for v in component.vertex_ids)
        sub_res = residual(component.weighted, pair.value, vec)
        out.append(RestrictedComponent(component, Eigenpair(pair.value, vec, sub_res)))
    return out


@dataclass(frozen=True)
class PowerIterationResult:
    radius: float
    lower: float
    upper: float
    iterations: int
    history: tuple[tuple[float, float], ...]

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "lower": self.lower,
            "upper": self.upper,
            "iterations": self.iterations,
        }


def power_spectral_radius(
    weighted: WeightedGraph,
    tol: float = 1e-10,
    max_iters: int = 100000,
    start: Sequence[float] | None = None,
) -> PowerIterationResult:
    """Shifted power iteration for the spectral radius of a nonnegative graph.

    Iterates x <- normalize((A x^{k-1} + x^{[k-1]})^{[1/(k-1)]}) from the
    all-ones vector; the +1 diagonal shift keeps the iteration primitive.
    Min/max coordinate ratios bracket the shifted radius; the shift is
    removed on output.
    """
    graph = weighted.graph
    if not weighted.weights.is_nonnegative:
        raise DomainError("power iteration requires nonnegative weights")
    if not validate(graph).connected:
        raise DomainError("power iteration requires a connected graph")
    k = graph.k
    wv = [scalars.real_part(w) for w in weighted.weights.vertex_weights]
    we = [scalars.real_part(w) for w in weighted.weights.edge_weights]

    if start is None:
        x = [1.0] * graph.n
    else:
        x = [float(v) for v in start]
        if len(x) != graph.n or any(v <= 0 for v in x):
            raise DomainError("start vector must be positive with one entry per vertex")
        top = max(x)
        x = [v / top for v in x]

    history: list[tuple[float, float]] = []
    for it in range(max_iters):
        y = [wv[v] * x[v] ** (k - 1) + x[v] ** (k - 1) for v in range(graph.n)]
        for j, edge in enumerate(graph.edges):
            for v in edge:
                prod = we[j]
                for u in edge:
                    if u != v:
                        prod *= x[u]
                y[v] += prod
        ratios = [y[v] / x[v] ** (k - 1) for v in range(graph.n)]
        lo, hi = min(ratios), max(ratios)
        history.append((lo - 1.0, hi - 1.0))
        if hi - lo <= tol * max(1.0, hi):
            return PowerIterationResult(
                radius=(lo + hi) / 2.0 - 1.0,
                lower=lo - 1.0,
                upper=hi - 1.0,
                iterations=it + 1,
                history=tuple(history),
            )
        z = [y[v] ** (1.0 / (k - 1)) for v in range(graph.n)]
        top = max(z)
        x = [v / top for v in z]
    raise NonConvergenceError(
        f"power iteration did not bracket the radius within {max_iters} iterations",
        state={"history": history[-50:]},
    )
