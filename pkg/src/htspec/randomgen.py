"""Seeded random hypertrees and weightings for self-tests and suites."""

from __future__ import annotations

import random
from fractions import Fraction

from .hypertree import Hypergraph, WeightedHypertree, Weighting


def random_hypertree(rng: random.Random, k: int, m: int) -> Hypergraph:
    """Grow a k-uniform hypertree with m edges by random attachment.

    Each new edge reuses one existing vertex and adds k-1 fresh ones, so
    n = m*(k-1) + 1 holds by construction.
    """
    if m < 1:
        raise ValueError("need at least one edge")
    edges = [list(range(k))]
    n = k
    for _ in range(m - 1):
        anchor = rng.randrange(n)
        edges.append([anchor] + list(range(n, n + k - 1)))
        n += k - 1
    return Hypergraph(k, n, edges)


def _random_fraction(rng: random.Random, lo: int, hi: int, max_den: int = 4) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_rational_weighting(rng: random.Random, graph: Hypergraph) -> Weighting:
    """Exact weights; edge weights avoid zero."""
    vertex = [_random_fraction(rng, -4, 4) for _ in range(graph.n)]
    edge = []
    for _ in range(graph.m):
        w = _random_fraction(rng, -4, 4)
        while w == 0:
            w = _random_fraction(rng, -4, 4)
        edge.append(w)
    return Weighting(vertex, edge)


def random_nonnegative_weighting(rng: random.Random, graph: Hypergraph) -> Weighting:
    vertex = [_random_fraction(rng, 0, 4) for _ in range(graph.n)]
    edge = [_random_fraction(rng, 1, 5) for _ in range(graph.m)]
    return Weighting(vertex, edge)


def random_weighted_tree(
    rng: random.Random, k: int, m: int, nonnegative: bool = False
) -> WeightedHypertree:
    graph = random_hypertree(rng, k, m)
    weights = (
        random_nonnegative_weighting(rng, graph)
        if nonnegative
        else random_rational_weighting(rng, graph)
    )
    return WeightedHypertree.build(graph, weights)
