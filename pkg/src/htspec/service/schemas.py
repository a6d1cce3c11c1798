"""Pydantic request/response schemas for the service endpoints."""

from __future__ import annotations

from typing import Literal, Union

from pydantic import BaseModel, ConfigDict, Field

ScalarIn = Union[int, float, str, list[float]]


class DocumentModel(BaseModel):
    """The shared weighted-hypergraph input document."""

    k: int
    n: int
    edges: list[list[int]]
    vertex_weights: list[ScalarIn] | None = None
    edge_weights: list[ScalarIn] | None = None
    weighting: Literal["explicit", "adjacency-unit", "laplacian", "signless"] | None = None

    def as_wire(self) -> dict:
        out: dict = {"k": self.k, "n": self.n, "edges": self.edges}
        if self.vertex_weights is not None:
            out["vertex_weights"] = self.vertex_weights
        if self.edge_weights is not None:
            out["edge_weights"] = self.edge_weights
        if self.weighting is not None:
            out["weighting"] = self.weighting
        return out


class DocumentRequest(BaseModel):
    document: DocumentModel


class SpectrumRequest(DocumentRequest):
    tol: float = 1e-8
    dedup_tol: float = 1e-9


class RadiusRequest(DocumentRequest):
    tol: float = 1e-8
    cross_check: bool = False
    seed: int | None = None


class CorollaryRequest(DocumentRequest):
    sign: Literal["laplacian", "signless"]
    tol: float = 1e-8
    dedup_tol: float = 1e-9


class MuTildeRequest(DocumentRequest):
    lambdas: ScalarIn | list[ScalarIn]


class IncidenceEntryModel(BaseModel):
    v: int
    e: int
    value: float | list[float]


class NormalCheckRequest(DocumentRequest):
    matrix: list[IncidenceEntryModel]
    lambdas: ScalarIn | list[ScalarIn]
    tol: float = 1e-9


class VerifyRequest(DocumentRequest):
    report: dict
    tol: float = 1e-8


class CertificateModel(BaseModel):
    connected: bool
    acyclic: bool
    component_count: int


class ValidateResponse(BaseModel):
    k: int
    n: int
    m: int
    is_tree: bool
    certificate: CertificateModel


class PolynomialResponse(BaseModel):
    backend: Literal["rational", "complex"]
    coeffs: list[ScalarIn]


class SubtreeModel(BaseModel):
    edges: list[int]
    vertices: list[int]


class SubtreesResponse(BaseModel):
    count: int
    subtrees: list[SubtreeModel]


class TrivialEntryModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    value: list[float] = Field(alias="lambda")
    vertices: list[int]
    residual: float
    also_subtree_root: bool
    witness_edges: list[int] | None


class RootEntryModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    value: list[float] = Field(alias="lambda")
    witness_edges: list[int]
    status: Literal["certified", "singular", "collision", "uncertified"]
    residual: float | None


class SpectrumResponse(BaseModel):
    trivial: list[TrivialEntryModel]
    roots: list[RootEntryModel]
    dedup_tol: float
    spectral_radius: float | None


class RadiusResponse(BaseModel):
    radius: float
    power_estimate: float | None = None
    gap: float | None = None
    power_iterations: int | None = None


class MuTildeResponse(BaseModel):
    value: list[float]


class NormalCheckResponse(BaseModel):
    c1_residuals: list[float]
    c2_residuals: list[float]
    c3_residuals: list[float]
    c1_ok: bool
    c2_ok: bool
    c3_ok: bool | None
    ok: bool
    tol: float


class VerifyEntryModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    kind: Literal["trivial", "root"]
    value: list[float] = Field(alias="lambda")
    status: Literal["certified", "singular", "uncertified"]
    residual: float | None
    witness_edges: list[int] | None


class VerifyCountsModel(BaseModel):
    certified: int
    singular: int
    uncertified: int


class VerifyResponse(BaseModel):
    entries: list[VerifyEntryModel]
    counts: VerifyCountsModel
    ok: bool


class HealthResponse(BaseModel):
    status: str
    version: str
