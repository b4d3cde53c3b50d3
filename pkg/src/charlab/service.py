"""FastAPI service exposing the laboratory as JSON endpoints.

Each endpoint wraps one report builder; numeric failures come back as a
normal report with status "numeric_failure" (the computation ran, the
mathematics said no), while malformed requests are HTTP 422.
"""

from __future__ import annotations

import datetime

from fastapi import FastAPI, HTTPException

from . import __version__, reports
from .schemas import (AbelianRequest, ClosednessRequest, CohomRequest,
                      GoldmanRequest, HealthResponse, OracleCheckRequest,
                      RepRequest, ReportEnvelope, ReportRequest)


def _wrap(report: dict) -> ReportEnvelope:
    stamp = datetime.datetime.now(datetime.timezone.utc).isoformat()
    return ReportEnvelope(generated_at=stamp, report=report)


def create_app() -> FastAPI:
    app = FastAPI(
        title="charlab",
        description="Surface-group character varieties, the Goldman "
                    "symplectic pairing, and abelian period geometry.",
        version=__version__,
    )

    def run(builder) -> ReportEnvelope:
        try:
            return _wrap(builder())
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc))

    @app.get("/health", response_model=HealthResponse)
    def health():
        return HealthResponse(status="ok", schema_version=reports.SCHEMA_VERSION,
                              package="charlab", version=__version__)

    @app.post("/v1/gen", response_model=ReportEnvelope)
    def gen(req: RepRequest):
        return run(lambda: reports.gen_report(
            req.group, req.n, req.genus, req.seed, req.scale, req.flat_tol))

    @app.post("/v1/cohom", response_model=ReportEnvelope)
    def cohom(req: CohomRequest):
        return run(lambda: reports.cohom_report(
            req.group, req.n, req.genus, req.seed, req.scale, req.flat_tol,
            req.rank_tol))

    @app.post("/v1/goldman", response_model=ReportEnvelope)
    def goldman(req: GoldmanRequest):
        return run(lambda: reports.goldman_report(
            req.group, req.n, req.genus, req.seed, req.scale, req.flat_tol,
            req.rank_tol, req.pairing_tol, req.samples))

    @app.post("/v1/oracle-check", response_model=ReportEnvelope)
    def oracle_check(req: OracleCheckRequest):
        return run(lambda: reports.oracle_check_report(
            req.group, req.n, req.genus, req.seed, req.scale, req.flat_tol,
            req.rank_tol, req.pairing_tol, req.pairs, req.refinement))

    @app.post("/v1/closedness", response_model=ReportEnvelope)
    def closedness(req: ClosednessRequest):
        return run(lambda: reports.closedness_report(
            req.group, req.n, req.genus, req.seed, req.scale, req.flat_tol,
            req.rank_tol, req.step, req.closedness_tol))

    @app.post("/v1/abelian", response_model=ReportEnvelope)
    def abelian(req: AbelianRequest):
        return run(lambda: reports.abelian_report(
            tuple(req.branch_points), req.quadrature_order, req.seed,
            req.pairs, req.pullback_tol, req.relation1_tol, req.drift_tol))

    @app.post("/v1/report", response_model=ReportEnvelope)
    def report(req: ReportRequest):
        return run(lambda: reports.acceptance_report(
            req.flat_tol, req.rank_tol, req.pairing_tol, req.quadrature_order))

    return app


app = create_app()
