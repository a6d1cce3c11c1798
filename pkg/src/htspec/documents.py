"""The JSON input document shared by the CLI and the service.

Schema: {"k": int, "n": int, "edges": [[int, ...], ...],
"vertex_weights": [scalar, ...], "edge_weights": [scalar, ...],
"weighting": "explicit" | "adjacency-unit" | "laplacian" | "signless"}
where a scalar is a number, a "p/q" string, or an [re, im] pair. A named
weighting overrides the explicit arrays.
"""

from __future__ import annotations

from typing import Mapping

from .errors import StructuralError
from .hypertree import (
    Hypergraph,
    WeightedGraph,
    WeightedHypertree,
    Weighting,
    corollary_weighting,
)
from .scalars import format_scalar, parse_scalar

WEIGHTING_NAMES = ("explicit", "adjacency-unit", "laplacian", "signless")


def parse_document(obj: Mapping) -> WeightedGraph:
    """Parse and validate a document; the result need not be a tree."""
    if not isinstance(obj, Mapping):
        raise StructuralError("input document must be a JSON object")
    for key in ("k", "n", "edges"):
        if key not in obj:
            raise StructuralError(f"missing required field {key!r}")
    if not isinstance(obj["edges"], (list, tuple)):
        raise StructuralError("edges must be an array of vertex arrays")
    graph = Hypergraph(obj["k"], obj["n"], obj["edges"])

    name = obj.get("weighting", "explicit")
    if name not in WEIGHTING_NAMES:
        raise StructuralError(f"unknown weighting {name!r}; expected one of {WEIGHTING_NAMES}")
    if name == "adjacency-unit":
        weights = Weighting.unit(graph)
    elif name in ("laplacian", "signless"):
        weights = corollary_weighting(graph, name)
    else:
        for key in ("vertex_weights", "edge_weights"):
            if key not in obj:
                raise StructuralError(f"explicit weighting requires {key!r}")
        weights = Weighting(
            [parse_scalar(w) for w in obj["vertex_weights"]],
            [parse_scalar(w) for w in obj["edge_weights"]],
        )
    return WeightedGraph(graph, weights)


def require_hypertree(weighted: WeightedGraph) -> WeightedHypertree:
    """Upgrade to a hypertree or raise with the failing certificate."""
    if isinstance(weighted, WeightedHypertree):
        return weighted
    return WeightedHypertree.build(weighted.graph, weighted.weights)


def parse_hypertree(obj: Mapping) -> WeightedHypertree:
    return require_hypertree(parse_document(obj))


def document_from(weighted: WeightedGraph, weighting: str | None = None) -> dict:
    """Serialize back to the wire schema."""
    out = {
        "k": weighted.graph.k,
        "n": weighted.graph.n,
        "edges": [list(edge) for edge in weighted.graph.edges],
        "vertex_weights": [format_scalar(w) for w in weighted.weights.vertex_weights],
        "edge_weights": [format_scalar(w) for w in weighted.weights.edge_weights],
    }
    if weighting is not None:
        out["weighting"] = weighting
    return out
