"""End-to-end eigenvalue pipeline for weighted hypertrees.

Every vertex weight is an eigenvalue outright; every other eigenvalue is
a root of the matching polynomial of some subtree. The pipeline prunes
zero-weight edges, enumerates subtrees per remaining component, collects
and deduplicates polynomial roots, and certifies each survivor by
constructing an explicit eigenvector and measuring its tensor residual
on the original graph. Roots that coincide with a vertex weight are
folded into the trivial list with an annotation, since the incidence
construction has a pole there.
"""

from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import scalars, tensor
from .errors import (
    DomainError,
    NotARootError,
    NumericError,
    PoleError,
    SingularConstructionError,
)
from .hypertree import (
    Hypergraph,
    PrunedComponent,
    Subtree,
    WeightedHypertree,
    corollary_weighting,
    enumerate_subtrees,
    is_subtree,
    peel_sequence,
    prune_zero_edges,
    extract_subgraph,
    subtree_graph,
)
from .matching import matching_polynomial_dp
from .normal import build_normal_matrix, eigenvector_from_normal, root_balance_defect
from .poly import deflate_exact_root, find_roots, largest_real_root
from .tensor import Eigenpair, power_spectral_radius

DEFAULT_TOL = 1e-8
DEDUP_TOL = 1e-9
RADIUS_AGREEMENT = 1e-6
# A candidate whose certification failed and that sits this close to a vertex
# weight is treated as that weight: near a pole the polynomial root itself is
# only accurate to about sqrt(machine epsilon).
COLLISION_RESCUE_TOL = 1e-6
# The construction may overshoot the 1e-9 row-sum gate on an honest root; the
# synthesized eigenvector's tensor residual is the binding certificate.
CONSTRUCTION_GATE = 1e-6

STATUS_CERTIFIED = "certified"
STATUS_SINGULAR = "singular"
STATUS_COLLISION = "collision"
STATUS_UNCERTIFIED = "uncertified"


@dataclass(frozen=True)
class TrivialEntry:
    value: complex
    vertices: tuple[int, ...]
    residual: float = 0.0
    also_subtree_root: bool = False
    witness_edges: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        return {
            "lambda": [self.value.real, self.value.imag],
            "vertices": list(self.vertices),
            "residual": self.residual,
            "also_subtree_root": self.also_subtree_root,
            "witness_edges": None if self.witness_edges is None else list(self.witness_edges),
        }


@dataclass(frozen=True)
class RootEntry:
    value: complex
    witness_edges: tuple[int, ...]
    status: str
    residual: float | None
    eigenpair: Eigenpair | None = field(default=None, compare=False)

    def to_json(self) -> dict:
        return {
            "lambda": [self.value.real, self.value.imag],
            "witness_edges": list(self.witness_edges),
            "status": self.status,
            "residual": self.residual,
        }


@dataclass(frozen=True)
class SpectrumReport:
    trivial: tuple[TrivialEntry, ...]
    roots: tuple[RootEntry, ...]
    dedup_tol: float
    spectral_radius: float | None

    def eigenvalues(self) -> list[complex]:
        vals = [t.value for t in self.trivial] + [r.value for r in self.roots]
        return sorted(vals, key=lambda z: (z.real, z.imag))

    def to_json(self) -> dict:
        return {
            "trivial": [t.to_json() for t in self.trivial],
            "roots": [r.to_json() for r in self.roots],
            "dedup_tol": self.dedup_tol,
            "spectral_radius": self.spectral_radius,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "SpectrumReport":
        trivial = tuple(
            TrivialEntry(
                value=complex(t["lambda"][0], t["lambda"][1]),
                vertices=tuple(t["vertices"]),
                residual=float(t.get("residual", 0.0)),
                also_subtree_root=bool(t.get("also_subtree_root", False)),
                witness_edges=None
                if t.get("witness_edges") is None
                else tuple(t["witness_edges"]),
            )
            for t in obj["trivial"]
        )
        roots = tuple(
            RootEntry(
                value=complex(r["lambda"][0], r["lambda"][1]),
                witness_edges=tuple(r["witness_edges"]),
                status=r["status"],
                residual=None if r.get("residual") is None else float(r["residual"]),
            )
            for r in obj["roots"]
        )
        return cls(
            trivial=trivial,
            roots=roots,
            dedup_tol=float(obj.get("dedup_tol", DEDUP_TOL)),
            spectral_radius=obj.get("spectral_radius"),
        )


def _parallel_map(fn, items: Sequence):
    """Map preserving order; HTSPEC_THREADS > 1 enables a thread pool."""
    try:
        workers = int(os.environ.get("HTSPEC_THREADS", "1") or "1")
    except ValueError:
        workers = 1
    if workers > 1 and len(items) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, items))
    return [fn(item) for item in items]


@dataclass(frozen=True)
class _Witness:
    original_edges: tuple[int, ...]
    component: int
    subtree: Subtree
    value: complex

    @property
    def sort_key(self):
        return (len(self.original_edges), self.original_edges, self.value.real, self.value.imag)


class _Cluster:
    __slots__ = ("rep", "witnesses")

    def __init__(self, first: _Witness):
        self.rep = first.value
        self.witnesses = [first]


def _close(a: complex, b: complex, tol: float) -> bool:
    return abs(a - b) <= tol * (1.0 + abs(b))


def _subtree_witnesses(comps: list[PrunedComponent], exact_weights, task):
    """Root witnesses of one subtree polynomial, plus its exact pole overlaps.

    On the rational backend, any vertex weight that divides the polynomial
    is deflated out exactly: such roots are already eigenvalues by the
    trivial route, and near a pole the numerical roots of a possibly
    multiple factor would scatter far beyond every tolerance.
    """
    ci, sub = task
    comp = comps[ci]
    extracted = subtree_graph(comp.tree, sub)
    poly = matching_polynomial_dp(extracted.weighted)
    original = tuple(comp.edge_ids[j] for j in sub.edge_indices)
    collisions = []
    for w in exact_weights:
        quotient = deflate_exact_root(poly, w)
        if quotient is None:
            continue
        while quotient is not None:
            poly = quotient
            quotient = deflate_exact_root(poly, w)
        collisions.append((w, original))
    roots = find_roots(poly) if poly.degree >= 1 else []
    return [_Witness(original, ci, sub, z) for z in roots], collisions


def _cluster_witnesses(witnesses: list[_Witness], dedup_tol: float) -> list[_Cluster]:
    clusters: list[_Cluster] = []
    for w in sorted(witnesses, key=lambda w: w.sort_key):
        for cluster in clusters:
            if _close(w.value, cluster.rep, dedup_tol):
                cluster.witnesses.append(w)
                break
        else:
            clusters.append(_Cluster(w))
    return clusters


def _polish_candidate(weighted: WeightedHypertree, lam: complex) -> complex:
    """Secant refinement of a polynomial root against the root balance defect.

    The leaf-to-root recursion can amplify an already-polished root's error
    past the consistency gate; a couple of secant steps on the defect
    restore it. Iterates are confined to a small trust region around the
    input, and any construction breakdown falls back to the input.
    """
    radius = 1e-4 * (1.0 + abs(lam))
    try:
        f0 = root_balance_defect(weighted, lam)
    except (SingularConstructionError, PoleError, DomainError):
        return lam
    best, best_defect = lam, abs(f0)
    if best_defect < 1e-13:
        return lam
    z0, z1 = lam, lam + 1e-8 * (1.0 + abs(lam))
    try:
        for _ in range(8):
            f1 = root_balance_defect(weighted, z1)
            if abs(f1) < best_defect:
                best, best_defect = z1, abs(f1)
            if abs(f1) < 1e-14 or f1 == f0:
                break
            step = -f1 * (z1 - z0) / (f1 - f0)
            z0, f0 = z1, f1
            z1 = z1 + step
            if abs(z1 - lam) > radius:
                break
    except (SingularConstructionError, PoleError, DomainError):
        pass
    return best


def _certify_witness(
    tree: WeightedHypertree, comp: PrunedComponent, sub: Subtree, lam: complex, tol: float
) -> Eigenpair:
    """Construct, synthesize, zero-extend, and measure against the full graph."""
    extracted = subtree_graph(comp.tree, sub)
    lam = _polish_candidate(extracted.weighted, lam)
    matrix = build_normal_matrix(
        extracted.weighted, lam, consistency_tol=CONSTRUCTION_GATE
    )
    pair = eigenvector_from_normal(extracted.weighted, matrix, lam, tol)
    x = [complex(0)] * tree.n
    for local, comp_vertex in enumerate(extracted.vertex_ids):
        x[comp.vertex_ids[comp_vertex]] = pair.vector[local]
    res = tensor.residual(tree, complex(lam), x)
    if res > tol:
        raise NumericError(f"extended eigenvector residual {res:.3e} exceeds {tol:.1e}")
    return Eigenpair(complex(lam), tuple(x), res)


def _certify_cluster(
    tree: WeightedHypertree, comps: list[PrunedComponent], cluster: _Cluster, tol: float
) -> RootEntry:
    """Try every witness, smallest first; keep the eigenvalue either way."""
    for w in cluster.witnesses:
        try:
            pair = _certify_witness(tree, comps[w.component], w.subtree, w.value, tol)
        except (SingularConstructionError, NotARootError, NumericError, PoleError):
            continue
        return RootEntry(
            value=pair.value,
            witness_edges=w.original_edges,
            status=STATUS_CERTIFIED,
            residual=pair.residual,
            eigenpair=pair,
        )
    first = cluster.witnesses[0]
    return RootEntry(
        value=first.value,
        witness_edges=first.original_edges,
        status=STATUS_SINGULAR,
        residual=None,
    )


def eigenvalues(
    tree: WeightedHypertree, tol: float = DEFAULT_TOL, dedup_tol: float = DEDUP_TOL
) -> SpectrumReport:
    """The complete eigenvalue set with per-eigenvalue certification."""
    if tree.k < 3:
        raise DomainError(
            "the subtree-root characterization needs k >= 3; for k = 2 the matching "
            "polynomial already is the characteristic polynomial of the ordinary "
            "adjacency matrix"
        )
    comps = prune_zero_edges(tree)

    trivial_clusters: list[dict] = []
    for v in range(tree.n):
        val = scalars.to_complex(tree.vertex_weight(v))
        for cluster in trivial_clusters:
            if _close(val, cluster["rep"], dedup_tol):
                cluster["vertices"].append(v)
                break
        else:
            trivial_clusters.append(
                {"rep": val, "vertices": [v], "collision": False, "witness": None}
            )

    tasks = [
        (ci, sub)
        for ci, comp in enumerate(comps)
        for sub in enumerate_subtrees(comp.tree)
        if not sub.is_singleton
    ]
    exact_weights = sorted(
        {w for w in tree.weights.vertex_weights if isinstance(w, Fraction)}
    )
    scans = _parallel_map(lambda t: _subtree_witnesses(comps, exact_weights, t), tasks)
    witnesses = [w for found, _ in scans for w in found]
    clusters = _cluster_witnesses(witnesses, dedup_tol)

    exact_collisions = sorted(
        ((w, edges) for _, hits in scans for w, edges in hits),
        key=lambda item: (len(item[1]), item[1]),
    )
    for w, edges in exact_collisions:
        val = scalars.to_complex(w)
        for tc in trivial_clusters:
            if _close(val, tc["rep"], dedup_tol):
                tc["collision"] = True
                if tc["witness"] is None:
                    tc["witness"] = edges
                break

    roots: list[RootEntry] = []
    for cluster in clusters:
        collided = False
        for tc in trivial_clusters:
            if _close(cluster.rep, tc["rep"], dedup_tol):
                tc["collision"] = True
                if tc["witness"] is None:
                    tc["witness"] = cluster.witnesses[0].original_edges
                collided = True
                break
        if collided:
            continue
        entry = _certify_cluster(tree, comps, cluster, tol)
        if entry.status == STATUS_SINGULAR:
            # An uncertifiable candidate hugging a vertex weight is a pole
            # overlap: near-multiple roots only resolve to ~1e-8, so the
            # tight dedup test above can miss the coincidence.
            for tc in trivial_clusters:
                if _close(entry.value, tc["rep"], COLLISION_RESCUE_TOL):
                    tc["collision"] = True
                    if tc["witness"] is None:
                        tc["witness"] = entry.witness_edges
                    collided = True
                    break
            if collided:
                continue
        roots.append(entry)

    trivial = tuple(
        sorted(
            (
                TrivialEntry(
                    value=tc["rep"],
                    vertices=tuple(tc["vertices"]),
                    residual=max(
                        tensor.unit_eigenpair(tree, v).residual for v in tc["vertices"]
                    ),
                    also_subtree_root=tc["collision"],
                    witness_edges=tc["witness"],
                )
                for tc in trivial_clusters
            ),
            key=lambda t: (t.value.real, t.value.imag),
        )
    )
    roots_sorted = tuple(sorted(roots, key=lambda r: (r.value.real, r.value.imag)))

    radius = None
    if tree.weights.is_nonnegative:
        radius = spectral_radius(tree, tol).radius

    return SpectrumReport(
        trivial=trivial,
        roots=roots_sorted,
        dedup_tol=dedup_tol,
        spectral_radius=radius,
    )


@dataclass(frozen=True)
class RadiusResult:
    radius: float
    power_estimate: float
    gap: float
    power_iterations: int

    def to_json(self) -> dict:
        return {
            "radius": self.radius,
            "power_estimate": self.power_estimate,
            "gap": self.gap,
            "power_iterations": self.power_iterations,
        }


def spectral_radius(
    tree: WeightedHypertree,
    tol: float = DEFAULT_TOL,
    power_tol: float = 1e-9,
    max_iters: int = 100000,
    start: Sequence[float] | None = None,
) -> RadiusResult:
    """Largest real matching-polynomial root, cross-checked by power iteration."""
    if not tree.weights.is_nonnegative:
        raise DomainError("spectral radius via the largest root requires nonnegative weights")
    root = largest_real_root(matching_polynomial_dp(tree), tol)
    power = power_spectral_radius(tree, power_tol, max_iters, start)
    gap = abs(root - power.radius)
    if gap > RADIUS_AGREEMENT:
        raise NumericError(
            f"largest-root radius {root!r} and power-iteration radius "
            f"{power.radius!r} disagree by {gap:.3e}"
        )
    return RadiusResult(
        radius=root,
        power_estimate=power.radius,
        gap=gap,
        power_iterations=power.iterations,
    )


def corollary_spectrum(
    graph: Hypergraph, sign: str, tol: float = DEFAULT_TOL, dedup_tol: float = DEDUP_TOL
) -> SpectrumReport:
    """Spectrum under the degree weighting with +/-1 edge weights."""
    weighted = WeightedHypertree.build(graph, corollary_weighting(graph, sign))
    return eigenvalues(weighted, tol, dedup_tol)


@dataclass(frozen=True)
class VerifyEntry:
    kind: str
    value: complex
    status: str
    residual: float | None
    witness_edges: tuple[int, ...] | None

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "lambda": [self.value.real, self.value.imag],
            "status": self.status,
            "residual": self.residual,
            "witness_edges": None if self.witness_edges is None else list(self.witness_edges),
        }


@dataclass(frozen=True)
class VerificationSummary:
    entries: tuple[VerifyEntry, ...]
    certified: int
    singular: int
    uncertified: int

    @property
    def ok(self) -> bool:
        return self.uncertified == 0

    def to_json(self) -> dict:
        return {
            "entries": [e.to_json() for e in self.entries],
            "counts": {
                "certified": self.certified,
                "singular": self.singular,
                "uncertified": self.uncertified,
            },
            "ok": self.ok,
        }


def _verify_root_entry(
    tree: WeightedHypertree,
    comps: list[PrunedComponent],
    edge_location: dict[int, tuple[int, int]],
    entry: RootEntry,
    tol: float,
) -> VerifyEntry:
    """Re-certify on the recorded witness, lifting pendant edges back one at a time."""
    locs = [edge_location.get(e) for e in entry.witness_edges]
    if not locs or any(loc is None for loc in locs):
        return VerifyEntry("root", entry.value, STATUS_UNCERTIFIED, None, entry.witness_edges)
    comp_ids = {loc[0] for loc in locs}
    if len(comp_ids) != 1:
        return VerifyEntry("root", entry.value, STATUS_UNCERTIFIED, None, entry.witness_edges)
    comp = comps[comp_ids.pop()]
    local_edges = sorted(loc[1] for loc in locs)
    try:
        sub = Subtree.from_edges(comp.tree.graph, local_edges)
        if not is_subtree(comp.tree, sub):
            raise DomainError("witness edges are not a connected subtree")
        extracted = subtree_graph(comp.tree, sub)
        lam = _polish_candidate(extracted.weighted, complex(entry.value))
        with warnings.catch_warnings():
            # Probing a bogus candidate is exactly what this routine is for.
            warnings.simplefilter("ignore")
            matrix = build_normal_matrix(
                extracted.weighted, lam, consistency_tol=CONSTRUCTION_GATE
            )
        pair = eigenvector_from_normal(extracted.weighted, matrix, lam, tol)
        sequence = peel_sequence(comp.tree, sub)
        all_edges = list(range(comp.tree.graph.m))
        for i in range(len(sequence), 0, -1):
            parent_edges = [e for e in all_edges if e not in sequence[: i - 1]]
            parent = extract_subgraph(comp.tree, parent_edges)
            local = parent.edge_ids.index(sequence[i - 1])
            pair = tensor.lift_eigenpair(parent.weighted, local, pair, tol)
        # After the lift chain the pair lives on the whole component, whose
        # local ids coincide with the component extraction order.
        x = [complex(0)] * tree.n
        for local_v, value in enumerate(pair.vector):
            x[comp.vertex_ids[local_v]] = value
        res = tensor.residual(tree, complex(entry.value), x)
        if res > tol:
            return VerifyEntry("root", entry.value, STATUS_UNCERTIFIED, res, entry.witness_edges)
        return VerifyEntry("root", entry.value, STATUS_CERTIFIED, res, entry.witness_edges)
    except SingularConstructionError:
        return VerifyEntry("root", entry.value, STATUS_SINGULAR, None, entry.witness_edges)
    except (NotARootError, NumericError, PoleError, DomainError):
        return VerifyEntry("root", entry.value, STATUS_UNCERTIFIED, None, entry.witness_edges)


def verify_report(
    tree: WeightedHypertree, report: SpectrumReport, tol: float = DEFAULT_TOL
) -> VerificationSummary:
    """Independently re-certify every entry of a spectrum report.

    Failures are recorded per entry, never raised.
    """
    comps = prune_zero_edges(tree)
    edge_location: dict[int, tuple[int, int]] = {}
    for ci, comp in enumerate(comps):
        for local, original in enumerate(comp.edge_ids):
            edge_location[original] = (ci, local)

    entries: list[VerifyEntry] = []
    for t in report.trivial:
        ok = bool(t.vertices)
        residual = None
        if ok:
            try:
                residual = 0.0
                for v in t.vertices:
                    pair = tensor.unit_eigenpair(tree, v)
                    if abs(pair.value - t.value) > tol * (1.0 + abs(t.value)):
                        ok = False
                        break
                    residual = max(residual, pair.residual)
                if residual is not None and residual > tol:
                    ok = False
            except DomainError:
                ok = False
        entries.append(
            VerifyEntry(
                "trivial",
                t.value,
                STATUS_CERTIFIED if ok else STATUS_UNCERTIFIED,
                residual if ok else None,
                t.witness_edges,
            )
        )
    for r in report.roots:
        entries.append(_verify_root_entry(tree, comps, edge_location, r, tol))

    certified = sum(1 for e in entries if e.status == STATUS_CERTIFIED)
    singular = sum(1 for e in entries if e.status == STATUS_SINGULAR)
    uncertified = sum(1 for e in entries if e.status == STATUS_UNCERTIFIED)
    return VerificationSummary(tuple(entries), certified, singular, uncertified)
