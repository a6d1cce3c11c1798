"""Weighted uniform hypergraphs and hypertree machinery.

Vertices are 0..n-1; each edge is a sorted tuple of k distinct vertex ids.
A hypertree is a connected acyclic uniform hypergraph, which for a
connected k-graph is equivalent to n = m*(k-1) + 1. All containers are
immutable and all operations are pure, so values can be shared freely.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import scalars
from .errors import DomainError, NotATreeError, StructuralError
from .scalars import Scalar


@dataclass(frozen=True)
class Hypergraph:
    k: int
    n: int
    edges: tuple[tuple[int, ...], ...]

    def __init__(self, k: int, n: int, edges: Iterable[Iterable[int]]):
        if not isinstance(k, int) or k < 2:
            raise StructuralError(f"uniformity must be an integer >= 2, got {k!r}")
        if not isinstance(n, int) or n < 1:
            raise StructuralError(f"vertex count must be a positive integer, got {n!r}")
        canon = []
        seen = set()
        for raw in edges:
            edge = tuple(sorted(raw))
            if len(edge) != k or len(set(edge)) != k:
                raise StructuralError(f"edge {tuple(raw)!r} must have exactly {k} distinct vertices")
            if edge[0] < 0 or edge[-1] >= n:
                raise StructuralError(f"edge {edge!r} references a vertex outside 0..{n - 1}")
            if edge in seen:
                raise StructuralError(f"duplicate edge {edge!r}")
            seen.add(edge)
            canon.append(edge)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "edges", tuple(canon))

    @property
    def m(self) -> int:
        return len(self.edges)

    def incident_edges(self) -> tuple[tuple[int, ...], ...]:
        """Edge indices per vertex, ascending."""
        table: list[list[int]] = [[] for _ in range(self.n)]
        for j, edge in enumerate(self.edges):
            for v in edge:
                table[v].append(j)
        return tuple(tuple(row) for row in table)


@dataclass(frozen=True)
class Weighting:
    vertex_weights: tuple[Scalar, ...]
    edge_weights: tuple[Scalar, ...]

    def __init__(self, vertex_weights: Iterable[Scalar], edge_weights: Iterable[Scalar]):
        object.__setattr__(self, "vertex_weights", tuple(vertex_weights))
        object.__setattr__(self, "edge_weights", tuple(edge_weights))

    @property
    def is_exact(self) -> bool:
        return scalars.all_exact(self.vertex_weights) and scalars.all_exact(self.edge_weights)

    @property
    def is_nonnegative(self) -> bool:
        """Real weights with w(v) >= 0 everywhere and w(e) > 0 everywhere."""
        for w in self.vertex_weights:
            if not scalars.is_real(w) or scalars.real_part(w) < 0:
                return False
        for w in self.edge_weights:
            if not scalars.is_real(w) or scalars.real_part(w) <= 0:
                return False
        return True

    @classmethod
    def unit(cls, graph: Hypergraph) -> "Weighting":
        """w(v) = 0, w(e) = 1: the plain adjacency weighting."""
        return cls([Fraction(0)] * graph.n, [Fraction(1)] * graph.m)


@dataclass(frozen=True)
class TreeCertificate:
    connected: bool
    acyclic: bool
    component_count: int

    @property
    def is_tree(self) -> bool:
        return self.connected and self.acyclic

    def to_json(self) -> dict:
        return {
            "connected": self.connected,
            "acyclic": self.acyclic,
            "component_count": self.component_count,
        }


@dataclass(frozen=True)
class WeightedGraph:
    """A uniform hypergraph with complex vertex and edge weights."""

    graph: Hypergraph
    weights: Weighting

    def __post_init__(self):
        if len(self.weights.vertex_weights) != self.graph.n:
            raise StructuralError("vertex weight count does not match vertex count")
        if len(self.weights.edge_weights) != self.graph.m:
            raise StructuralError("edge weight count does not match edge count")

    @property
    def k(self) -> int:
        return self.graph.k

    @property
    def n(self) -> int:
        return self.graph.n

    def vertex_weight(self, v: int) -> Scalar:
        return self.weights.vertex_weights[v]

    def edge_weight(self, e: int) -> Scalar:
        return self.weights.edge_weights[e]


@dataclass(frozen=True)
class WeightedHypertree(WeightedGraph):
    certificate: TreeCertificate = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        super().__post_init__()
        if self.certificate is None or not self.certificate.is_tree:
            raise StructuralError("WeightedHypertree requires a passing tree certificate")

    @classmethod
    def build(cls, graph: Hypergraph, weights: Weighting) -> "WeightedHypertree":
        cert = validate(graph)
        if not cert.is_tree:
            raise NotATreeError(
                "graph is not a hypertree: "
                f"connected={cert.connected}, acyclic={cert.acyclic}, "
                f"components={cert.component_count}",
                certificate=cert,
            )
        return cls(graph, weights, cert)


@dataclass(frozen=True)
class Subtree:
    """A connected acyclic edge subset, or a single vertex when empty."""

    edge_indices: tuple[int, ...]
    vertices: tuple[int, ...]

    @classmethod
    def singleton(cls, v: int) -> "Subtree":
        return cls((), (v,))

    @classmethod
    def from_edges(cls, graph: Hypergraph, edge_indices: Iterable[int]) -> "Subtree":
        idxs = tuple(sorted(set(edge_indices)))
        if not idxs:
            raise DomainError("use Subtree.singleton for the empty edge set")
        verts: set[int] = set()
        for j in idxs:
            if j < 0 or j >= graph.m:
                raise DomainError(f"edge index {j} out of range")
            verts.update(graph.edges[j])
        return cls(idxs, tuple(sorted(verts)))

    @property
    def is_singleton(self) -> bool:
        return not self.edge_indices


def validate(graph: Hypergraph) -> TreeCertificate:
    """Connectivity via walk reachability, acyclicity via the edge count bound."""
    incident = graph.incident_edges()
    component = [-1] * graph.n
    count = 0
    for start in range(graph.n):
        if component[start] >= 0:
            continue
        queue = [start]
        component[start] = count
        while queue:
            v = queue.pop()
            for j in incident[v]:
                for u in graph.edges[j]:
                    if component[u] < 0:
                        component[u] = count
                        queue.append(u)
        count += 1

    vertex_tally = [0] * count
    edge_tally = [0] * count
    for v in range(graph.n):
        vertex_tally[component[v]] += 1
    for edge in graph.edges:
        edge_tally[component[edge[0]]] += 1
    acyclic = all(
        vertex_tally[c] == edge_tally[c] * (graph.k - 1) + 1 for c in range(count)
    )
    return TreeCertificate(connected=count == 1, acyclic=acyclic, component_count=count)


def degrees(graph: Hypergraph) -> tuple[int, ...]:
    out = [0] * graph.n
    for edge in graph.edges:
        for v in edge:
            out[v] += 1
    return tuple(out)


def pendant_edges(graph: Hypergraph) -> list[int]:
    """Edges with exactly k-1 degree-one endpoints.

    Read literally, an isolated edge (k degree-one endpoints) is not
    pendant.
    """
    deg = degrees(graph)
    out = []
    for j, edge in enumerate(graph.edges):
        if sum(1 for v in edge if deg[v] == 1) == graph.k - 1:
            out.append(j)
    return out


def corollary_weighting(graph: Hypergraph, sign: str) -> Weighting:
    """Degree vertex weights with -1 (laplacian) or +1 (signless) edge weights."""
    if sign not in ("laplacian", "signless"):
        raise DomainError(f"sign must be 'laplacian' or 'signless', got {sign!r}")
    edge_w = Fraction(-1) if sign == "laplacian" else Fraction(1)
    return Weighting([Fraction(d) for d in degrees(graph)], [edge_w] * graph.m)


def _edge_adjacency(graph: Hypergraph) -> list[set[int]]:
    incident = graph.incident_edges()
    adj: list[set[int]] = [set() for _ in range(graph.m)]
    for row in incident:
        for a in row:
            for b in row:
                if a != b:
                    adj[a].add(b)
    return adj


def _connected_edge_subsets(graph: Hypergraph) -> list[tuple[int, ...]]:
    """Every connected edge subset exactly once, anchored at its smallest index."""
    adj = _edge_adjacency(graph)
    out: list[tuple[int, ...]] = []

    def grow(anchor: int, current: tuple[int, ...], members: set[int], cand: list[int], banned: set[int]):
        out.append(current)
        for i, c in enumerate(cand):
            new_banned = banned | set(cand[:i])
            tail = cand[i + 1 :]
            fresh = sorted(
                x
                for x in adj[c]
                if x > anchor and x not in members and x not in new_banned and x not in tail and x != c
            )
            grow(anchor, tuple(sorted(current + (c,))), members | {c}, tail + fresh, new_banned)

    for anchor in range(graph.m):
        cand = sorted(x for x in adj[anchor] if x > anchor)
        grow(anchor, (anchor,), {anchor}, cand, set())
    return sorted(out)


def enumerate_subtrees(tree: WeightedHypertree) -> Iterator[Subtree]:
    """Singleton subtrees first, then connected edge subsets in lex order."""
    graph = tree.graph
    for v in range(graph.n):
        yield Subtree.singleton(v)
    for subset in _connected_edge_subsets(graph):
        yield Subtree.from_edges(graph, subset)


def is_subtree(tree: WeightedHypertree, candidate: Subtree) -> bool:
    graph = tree.graph
    if candidate.is_singleton:
        return len(candidate.vertices) == 1 and 0 <= candidate.vertices[0] < graph.n
    if any(j < 0 or j >= graph.m for j in candidate.edge_indices):
        return False
    # Connectivity of the edge subset in the edge-intersection graph.
    adj = _edge_adjacency(graph)
    todo = set(candidate.edge_indices)
    stack = [candidate.edge_indices[0]]
    todo.discard(candidate.edge_indices[0])
    while stack:
        j = stack.pop()
        for nb in adj[j]:
            if nb in todo:
                todo.discard(nb)
                stack.append(nb)
    return not todo


def peel_sequence(tree: WeightedHypertree, target: Subtree) -> list[int]:
    """Pendant deletions taking the whole tree down to the target subtree.

    Each returned edge is pendant in the graph left by deleting its
    predecessors; ties are broken by ascending edge index.
    """
    if target.is_singleton:
        raise DomainError("peel target must contain at least one edge")
    if not is_subtree(tree, target):
        raise DomainError(f"{target!r} is not a subtree of this tree")
    graph = tree.graph
    wanted = set(target.edge_indices)
    current = set(range(graph.m))
    sequence: list[int] = []
    while current != wanted:
        deg: dict[int, int] = {}
        for j in current:
            for v in graph.edges[j]:
                deg[v] = deg.get(v, 0) + 1
        removable = [
            j
            for j in sorted(current - wanted)
            if sum(1 for v in graph.edges[j] if deg[v] == 1) == graph.k - 1
        ]
        if not removable:
            raise DomainError("no pendant edge available outside the target")
        sequence.append(removable[0])
        current.discard(removable[0])
    return sequence


@dataclass(frozen=True)
class ExtractedGraph:
    """A sub-hypergraph re-indexed to 0..n'-1 plus the id maps back."""

    weighted: WeightedGraph
    vertex_ids: tuple[int, ...]
    edge_ids: tuple[int, ...]


def extract_subgraph(
    source: WeightedGraph, edge_ids: Sequence[int], extra_vertices: Sequence[int] = ()
) -> ExtractedGraph:
    graph = source.graph
    edge_ids = tuple(sorted(set(edge_ids)))
    verts: set[int] = set(extra_vertices)
    for j in edge_ids:
        verts.update(graph.edges[j])
    vertex_ids = tuple(sorted(verts))
    index = {v: i for i, v in enumerate(vertex_ids)}
    sub_edges = [tuple(index[v] for v in graph.edges[j]) for j in edge_ids]
    sub_graph = Hypergraph(graph.k, len(vertex_ids), sub_edges)
    sub_weights = Weighting(
        [source.weights.vertex_weights[v] for v in vertex_ids],
        [source.weights.edge_weights[j] for j in edge_ids],
    )
    return ExtractedGraph(WeightedGraph(sub_graph, sub_weights), vertex_ids, edge_ids)


def subtree_graph(tree: WeightedHypertree, sub: Subtree) -> ExtractedGraph:
    """Materialize a subtree as its own weighted hypertree."""
    if sub.is_singleton:
        extracted = extract_subgraph(tree, (), sub.vertices)
    else:
        extracted = extract_subgraph(tree, sub.edge_indices)
    lifted = WeightedHypertree.build(extracted.weighted.graph, extracted.weighted.weights)
    return ExtractedGraph(lifted, extracted.vertex_ids, extracted.edge_ids)


def delete_edge(source: WeightedGraph, edge_index: int) -> ExtractedGraph:
    """Remove one edge along with the vertices it leaves isolated."""
    graph = source.graph
    if edge_index < 0 or edge_index >= graph.m:
        raise DomainError(f"edge index {edge_index} out of range")
    deg = degrees(graph)
    dropped = {v for v in graph.edges[edge_index] if deg[v] == 1}
    kept_edges = [j for j in range(graph.m) if j != edge_index]
    kept_vertices = [v for v in range(graph.n) if v not in dropped]
    if not kept_vertices:
        raise DomainError("deleting the only edge would leave an empty graph")
    return extract_subgraph(source, kept_edges, kept_vertices)


@dataclass(frozen=True)
class PrunedComponent:
    tree: WeightedHypertree
    vertex_ids: tuple[int, ...]
    edge_ids: tuple[int, ...]


def prune_zero_edges(tree: WeightedHypertree) -> list[PrunedComponent]:
    """Drop zero-weight edges and split what remains into hypertree components."""
    graph = tree.graph
    kept_edges = [j for j in range(graph.m) if tree.edge_weight(j) != 0]
    incident: list[list[int]] = [[] for _ in range(graph.n)]
    for j in kept_edges:
        for v in graph.edges[j]:
            incident[v].append(j)

    seen = [False] * graph.n
    components: list[PrunedComponent] = []
    for start in range(graph.n):
        if seen[start]:
            continue
        seen[start] = True
        verts = {start}
        edges: set[int] = set()
        stack = [start]
        while stack:
            v = stack.pop()
            for j in incident[v]:
                edges.add(j)
                for u in graph.edges[j]:
                    if not seen[u]:
                        seen[u] = True
                        verts.add(u)
                        stack.append(u)
        extracted = extract_subgraph(tree, sorted(edges), sorted(verts))
        lifted = WeightedHypertree.build(extracted.weighted.graph, extracted.weighted.weights)
        components.append(PrunedComponent(lifted, extracted.vertex_ids, extracted.edge_ids))
    return components


@dataclass(frozen=True)
class RootedStructure:
    """Parent/child orientation of a hypertree from a fixed root vertex."""

    root: int
    parent_edge: tuple[int | None, ...]
    parent_vertex: tuple[int, ...]
    edge_children: tuple[tuple[int, ...], ...]
    vertex_child_edges: tuple[tuple[int, ...], ...]
    edge_order: tuple[int, ...]


def rooted_structure(graph: Hypergraph, root: int = 0) -> RootedStructure:
    incident = graph.incident_edges()
    parent_edge: list[int | None] = [None] * graph.n
    parent_vertex = [-1] * graph.m
    edge_children: list[tuple[int, ...]] = [()] * graph.m
    vertex_child_edges: list[list[int]] = [[] for _ in range(graph.n)]
    edge_order: list[int] = []

    visited_v = [False] * graph.n
    visited_e = [False] * graph.m
    visited_v[root] = True
    queue = [root]
    head = 0
    while head < len(queue):
        v = queue[head]
        head += 1
        for j in incident[v]:
            if visited_e[j]:
                continue
            visited_e[j] = True
            parent_vertex[j] = v
            vertex_child_edges[v].append(j)
            edge_order.append(j)
            children = tuple(u for u in graph.edges[j] if u != v)
            edge_children[j] = children
            for u in children:
                if visited_v[u]:
                    raise DomainError("rooted traversal revisited a vertex; graph is not a tree")
                visited_v[u] = True
                parent_edge[u] = j
                queue.append(u)
    if not all(visited_v) or not all(visited_e):
        raise DomainError("graph is not connected; cannot root it")
    return RootedStructure(
        root=root,
        parent_edge=tuple(parent_edge),
        parent_vertex=tuple(parent_vertex),
        edge_children=tuple(edge_children),
        vertex_child_edges=tuple(tuple(r) for r in vertex_child_edges),
        edge_order=tuple(edge_order),
    )
