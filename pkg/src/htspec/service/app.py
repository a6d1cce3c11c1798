"""FastAPI service wrapping the core pipeline.

Every endpoint is a stateless POST taking the shared input document.
Domain errors map to HTTP 422 and numeric failures to HTTP 500, both
with a structured {"error": {"category", "message"}} body so thin
clients can translate them into exit codes.
"""

from __future__ import annotations

import random

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__, documents, matching, normal, spectra
from ..errors import DomainError, NotATreeError, NumericError, SingularConstructionError
from ..hypertree import enumerate_subtrees
from ..scalars import parse_scalar, to_complex
from . import schemas


def _domain_payload(exc: Exception) -> dict:
    payload = {"category": "domain", "message": str(exc)}
    certificate = getattr(exc, "certificate", None)
    if certificate is not None:
        payload["certificate"] = certificate.to_json()
    return payload


def create_app() -> FastAPI:
    app = FastAPI(title="htspec", version=__version__)

    @app.exception_handler(DomainError)
    async def domain_error(request: Request, exc: DomainError):
        return JSONResponse(status_code=422, content={"error": _domain_payload(exc)})

    @app.exception_handler(SingularConstructionError)
    async def singular_error(request: Request, exc: SingularConstructionError):
        return JSONResponse(
            status_code=422,
            content={"error": {"category": "domain", "message": str(exc)}},
        )

    @app.exception_handler(NumericError)
    async def numeric_error(request: Request, exc: NumericError):
        return JSONResponse(
            status_code=500,
            content={"error": {"category": "numeric", "message": str(exc)}},
        )

    @app.get("/health", response_model=schemas.HealthResponse)
    def health():
        return schemas.HealthResponse(status="ok", version=__version__)

    @app.post("/validate", response_model=schemas.ValidateResponse)
    def validate_document(req: schemas.DocumentRequest):
        weighted = documents.parse_document(req.document.as_wire())
        from ..hypertree import validate as validate_graph

        cert = validate_graph(weighted.graph)
        return schemas.ValidateResponse(
            k=weighted.graph.k,
            n=weighted.graph.n,
            m=weighted.graph.m,
            is_tree=cert.is_tree,
            certificate=schemas.CertificateModel(**cert.to_json()),
        )

    @app.post("/matching-poly", response_model=schemas.PolynomialResponse)
    def matching_poly(req: schemas.DocumentRequest):
        weighted = documents.parse_document(req.document.as_wire())
        poly = matching.matching_polynomial_dp(weighted)
        return schemas.PolynomialResponse(**poly.to_json())

    @app.post("/phi", response_model=schemas.PolynomialResponse)
    def phi(req: schemas.DocumentRequest):
        weighted = documents.parse_document(req.document.as_wire())
        poly = matching.phi_polynomial(weighted.graph)
        return schemas.PolynomialResponse(**poly.to_json())

    @app.post("/subtrees", response_model=schemas.SubtreesResponse)
    def subtrees(req: schemas.DocumentRequest):
        tree = documents.parse_hypertree(req.document.as_wire())
        items = [
            schemas.SubtreeModel(edges=list(sub.edge_indices), vertices=list(sub.vertices))
            for sub in enumerate_subtrees(tree)
        ]
        return schemas.SubtreesResponse(count=len(items), subtrees=items)

    @app.post("/spectrum", response_model=schemas.SpectrumResponse)
    def spectrum(req: schemas.SpectrumRequest):
        tree = documents.parse_hypertree(req.document.as_wire())
        report = spectra.eigenvalues(tree, req.tol, req.dedup_tol)
        return schemas.SpectrumResponse(**report.to_json())

    @app.post("/radius", response_model=schemas.RadiusResponse, response_model_exclude_none=True)
    def radius(req: schemas.RadiusRequest):
        tree = documents.parse_hypertree(req.document.as_wire())
        start = None
        if req.seed is not None:
            rng = random.Random(req.seed)
            start = [1.0 + 0.1 * rng.random() for _ in range(tree.n)]
        result = spectra.spectral_radius(tree, req.tol, start=start)
        if not req.cross_check:
            return schemas.RadiusResponse(radius=result.radius)
        return schemas.RadiusResponse(**result.to_json())

    @app.post("/corollary", response_model=schemas.SpectrumResponse)
    def corollary(req: schemas.CorollaryRequest):
        weighted = documents.parse_document(req.document.as_wire())
        report = spectra.corollary_spectrum(weighted.graph, req.sign, req.tol, req.dedup_tol)
        return schemas.SpectrumResponse(**report.to_json())

    @app.post("/mu-tilde", response_model=schemas.MuTildeResponse)
    def mu_tilde(req: schemas.MuTildeRequest):
        weighted = documents.parse_document(req.document.as_wire())
        value = matching.eval_mu_tilde(weighted, _parse_lambdas(req.lambdas))
        return schemas.MuTildeResponse(value=[value.real, value.imag])

    @app.post("/normal-check", response_model=schemas.NormalCheckResponse)
    def normal_check(req: schemas.NormalCheckRequest):
        weighted = documents.parse_document(req.document.as_wire())
        matrix = normal.WeightedIncidenceMatrix.from_json([row.model_dump() for row in req.matrix])
        lams = _parse_lambdas(req.lambdas)
        if isinstance(lams, complex):
            report = normal.check_consistent(weighted, matrix, lams, req.tol)
        else:
            report = normal.check_normal(weighted, matrix, lams, req.tol)
        return schemas.NormalCheckResponse(**report.to_json())

    @app.post("/verify", response_model=schemas.VerifyResponse)
    def verify(req: schemas.VerifyRequest):
        tree = documents.parse_hypertree(req.document.as_wire())
        try:
            report = spectra.SpectrumReport.from_json(req.report)
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed spectrum report: {exc}") from None
        summary = spectra.verify_report(tree, report, req.tol)
        return schemas.VerifyResponse(**summary.to_json())

    return app


def _parse_lambdas(raw):
    """A top-level list holds one wire scalar per edge; a bare number or
    "p/q" string broadcasts to every edge."""
    if isinstance(raw, list):
        return [to_complex(parse_scalar(item)) for item in raw]
    return to_complex(parse_scalar(raw))


app = create_app()
