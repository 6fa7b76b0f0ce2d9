"""Request and response models for the reasoning operations.

These are the single source of truth for task results: the HTTP
routes return them directly and the CLI renders them, so both fronts
always agree on content. Every response is a single top-level object
with a ``task`` discriminator, the task's payload, and ``witnesses``
and ``diagnostics`` fields.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel

from ..language import ParseError
from ..tasks import Verdict

Status = Literal["ok", "NoSolution", "Inconsistent"]


class ErrorItem(BaseModel):
    file: str
    line: int
    col: int
    code: str
    message: str

    @classmethod
    def from_parse_error(cls, err: ParseError) -> "ErrorItem":
        return cls(
            file=err.span.file,
            line=err.span.line,
            col=err.span.col,
            code=err.code,
            message=err.message,
        )


class VerdictModel(BaseModel):
    status: Literal["Entailed", "NotEntailed", "Inconsistent"]
    mode: Literal["cautious", "credulous"]
    negation_entailed: bool = False
    explanation: tuple[tuple[str, str], ...] = ()

    @classmethod
    def from_verdict(cls, v: Verdict) -> "VerdictModel":
        return cls(
            status=v.status,
            mode=v.mode,
            negation_entailed=v.negation_entailed,
            explanation=v.explanation,
        )


class TriggeredItem(BaseModel):
    action: str
    step: int


class PlanItem(BaseModel):
    actions: tuple[str, ...]
    cost: int
    goal_step: int


class CheckResponse(BaseModel):
    task: Literal["check"] = "check"
    query: str
    horizon: int
    verdict: VerdictModel
    witnesses: tuple[tuple[str, ...], ...] = ()
    diagnostics: tuple[str, ...] = ()


class AllSatResponse(BaseModel):
    task: Literal["allsat"] = "allsat"
    step: int
    horizon: int
    verdict: VerdictModel
    unsatisfied: tuple[str, ...] = ()
    witnesses: tuple[tuple[str, ...], ...] = ()
    diagnostics: tuple[str, ...] = ()


class CompleteResponse(BaseModel):
    task: Literal["complete"] = "complete"
    goal: str
    status: Status
    completions: tuple[dict[str, bool], ...] = ()
    witnesses: tuple[tuple[str, ...], ...] = ()
    diagnostics: tuple[str, ...] = ()


class WhatIfResponse(BaseModel):
    task: Literal["whatif"] = "whatif"
    query: str
    horizon: int
    verdict: VerdictModel
    triggered: Optional[tuple[TriggeredItem, ...]] = None
    witnesses: tuple[tuple[str, ...], ...] = ()
    diagnostics: tuple[str, ...] = ()


class MitigateResponse(BaseModel):
    task: Literal["mitigate"] = "mitigate"
    goal: str
    step: int
    goal_step: int
    minimize: bool
    status: Status
    plans: tuple[PlanItem, ...] = ()
    witnesses: tuple[tuple[str, ...], ...] = ()
    diagnostics: tuple[str, ...] = ()


class ValidateResponse(BaseModel):
    task: Literal["validate"] = "validate"
    ok: bool
    aspects: int = 0
    concerns: int = 0
    properties: int = 0
    actions: int = 0
    statements: int = 0
    errors: tuple[ErrorItem, ...] = ()
    diagnostics: tuple[str, ...] = ()


class DumpResponse(BaseModel):
    task: Literal["dump"] = "dump"
    horizon: int
    rules: tuple[str, ...] = ()
    weak: tuple[str, ...] = ()
    diagnostics: tuple[str, ...] = ()


class ExampleItem(BaseModel):
    name: str
    domain: str
    scenarios: dict[str, str]


class HealthResponse(BaseModel):
    status: Literal["ok"] = "ok"
    version: str


class DomainRequest(BaseModel):
    domain: str
    filename: str = "<domain>"


class ScenarioRequest(DomainRequest):
    scenario: Optional[str] = None
    scenario_filename: str = "<scenario>"


class CheckRequest(ScenarioRequest):
    query: str
    horizon: Optional[int] = None
    budget: Optional[int] = None
    max_witnesses: int = 5


class AllSatRequest(ScenarioRequest):
    step: int = 0
    horizon: Optional[int] = None
    budget: Optional[int] = None
    max_witnesses: int = 5


class CompleteRequest(ScenarioRequest):
    goal: str
    max_solutions: Optional[int] = None
    budget: Optional[int] = None


class WhatIfRequest(CheckRequest):
    show_triggered: bool = False


class MitigateRequest(ScenarioRequest):
    restore: str
    minimal: bool = True
    candidates: Optional[tuple[str, ...]] = None
    max_solutions: Optional[int] = None
    budget: Optional[int] = None


class DumpRequest(ScenarioRequest):
    horizon: Optional[int] = None


__all__ = [
    "ErrorItem",
    "VerdictModel",
    "TriggeredItem",
    "PlanItem",
    "CheckResponse",
    "AllSatResponse",
    "CompleteResponse",
    "WhatIfResponse",
    "MitigateResponse",
    "ValidateResponse",
    "DumpResponse",
    "ExampleItem",
    "HealthResponse",
    "DomainRequest",
    "ScenarioRequest",
    "CheckRequest",
    "AllSatRequest",
    "CompleteRequest",
    "WhatIfRequest",
    "MitigateRequest",
    "DumpRequest",
]
