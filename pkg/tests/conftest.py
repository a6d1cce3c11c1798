import json
import pathlib

import pytest

from htspec import Hypergraph, WeightedHypertree, Weighting
from htspec.scalars import parse_scalar

FIXTURES = pathlib.Path(__file__).resolve().parents[1] / "fixtures"


def load_fixture(name: str) -> dict:
    with open(FIXTURES / name, "r", encoding="utf-8") as handle:
        return json.load(handle)


def fixture_names(valid_only: bool = True) -> list[str]:
    names = sorted(p.name for p in FIXTURES.glob("*.json"))
    if valid_only:
        names = [n for n in names if not n.startswith("invalid_")]
    return names


def build_tree(k, edges, vertex_weights=None, edge_weights=None) -> WeightedHypertree:
    n = max(v for edge in edges for v in edge) + 1
    graph = Hypergraph(k, n, edges)
    if vertex_weights is None and edge_weights is None:
        weights = Weighting.unit(graph)
    else:
        weights = Weighting(
            [parse_scalar(w) for w in vertex_weights],
            [parse_scalar(w) for w in edge_weights],
        )
    return WeightedHypertree.build(graph, weights)


@pytest.fixture
def single_edge():
    return build_tree(3, [[0, 1, 2]])


@pytest.fixture
def loose_path2():
    return build_tree(3, [[0, 1, 2], [2, 3, 4]])


@pytest.fixture
def loose_path3():
    return build_tree(3, [[0, 1, 2], [2, 3, 4], [4, 5, 6]])


@pytest.fixture
def star3():
    return build_tree(3, [[0, 1, 2], [0, 3, 4], [0, 5, 6]])
