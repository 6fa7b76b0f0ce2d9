"""HTTP front end exposing the reasoning operations.

Parse and validation problems come back as 400 with the offending
spans; an exhausted search budget is 503. An inconsistent encoding is
not an HTTP error: it is a legitimate reasoning outcome, reported in
the response's status field.

Run with: uvicorn cpsfr.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI
from fastapi.responses import JSONResponse

from .. import __version__
from ..errors import CpsfError, ResourceBudgetExceededError
from . import ops
from .schemas import (
    AllSatRequest,
    AllSatResponse,
    CheckRequest,
    CheckResponse,
    CompleteRequest,
    CompleteResponse,
    DomainRequest,
    DumpRequest,
    DumpResponse,
    ErrorItem,
    ExampleItem,
    HealthResponse,
    MitigateRequest,
    MitigateResponse,
    ValidateResponse,
    WhatIfRequest,
    WhatIfResponse,
)


def create_app() -> FastAPI:
    app = FastAPI(title="cpsfr", version=__version__)

    @app.exception_handler(ops.ParseFailure)
    async def _parse_failure(request, exc: ops.ParseFailure):
        return JSONResponse(
            status_code=400,
            content={
                "errors": [
                    ErrorItem.from_parse_error(e).model_dump() for e in exc.errors
                ]
            },
        )

    @app.exception_handler(ResourceBudgetExceededError)
    async def _budget(request, exc: ResourceBudgetExceededError):
        return JSONResponse(
            status_code=503,
            content={"error": {"code": exc.code, "message": exc.message}},
        )

    @app.exception_handler(CpsfError)
    async def _cpsf_error(request, exc: CpsfError):
        return JSONResponse(
            status_code=400,
            content={"error": {"code": exc.code, "message": exc.message}},
        )

    @app.get("/health", response_model=HealthResponse)
    async def health() -> HealthResponse:
        return HealthResponse(version=__version__)

    @app.get("/examples", response_model=list[ExampleItem])
    async def examples() -> list[ExampleItem]:
        return ops.op_examples()

    @app.post("/validate", response_model=ValidateResponse)
    async def validate(req: DomainRequest) -> ValidateResponse:
        return ops.op_validate(req.domain, req.filename)

    @app.post("/check", response_model=CheckResponse)
    async def check(req: CheckRequest) -> CheckResponse:
        return ops.op_check(
            req.domain,
            req.scenario,
            req.query,
            horizon=req.horizon,
            budget=req.budget,
            max_witnesses=req.max_witnesses,
            domain_filename=req.filename,
            scenario_filename=req.scenario_filename,
        )

    @app.post("/allsat", response_model=AllSatResponse)
    async def allsat(req: AllSatRequest) -> AllSatResponse:
        return ops.op_allsat(
            req.domain,
            req.scenario,
            step=req.step,
            horizon=req.horizon,
            budget=req.budget,
            max_witnesses=req.max_witnesses,
            domain_filename=req.filename,
            scenario_filename=req.scenario_filename,
        )

    @app.post("/complete", response_model=CompleteResponse)
    async def complete(req: CompleteRequest) -> CompleteResponse:
        return ops.op_complete(
            req.domain,
            req.scenario,
            req.goal,
            max_solutions=req.max_solutions,
            budget=req.budget,
            domain_filename=req.filename,
            scenario_filename=req.scenario_filename,
        )

    @app.post("/whatif", response_model=WhatIfResponse)
    async def whatif(req: WhatIfRequest) -> WhatIfResponse:
        return ops.op_whatif(
            req.domain,
            req.scenario,
            req.query,
            show_triggered=req.show_triggered,
            horizon=req.horizon,
            budget=req.budget,
            max_witnesses=req.max_witnesses,
            domain_filename=req.filename,
            scenario_filename=req.scenario_filename,
        )

    @app.post("/mitigate", response_model=MitigateResponse)
    async def mitigate(req: MitigateRequest) -> MitigateResponse:
        return ops.op_mitigate(
            req.domain,
            req.scenario,
            req.restore,
            minimal=req.minimal,
            candidates=req.candidates,
            max_solutions=req.max_solutions,
            budget=req.budget,
            domain_filename=req.filename,
            scenario_filename=req.scenario_filename,
        )

    @app.post("/dump", response_model=DumpResponse)
    async def dump(req: DumpRequest) -> DumpResponse:
        return ops.op_dump(
            req.domain,
            req.scenario,
            horizon=req.horizon,
            domain_filename=req.filename,
            scenario_filename=req.scenario_filename,
        )

    return app


app = create_app()

__all__ = ["create_app", "app"]
