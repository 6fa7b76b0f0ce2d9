"""Task operations over raw input texts, returning response models.

Each op parses its inputs, dispatches to the reasoning layer, and
packs the answer into a schema object. The CLI and the HTTP routes
both call these, so a result is computed exactly one way.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .. import tasks
from ..bundle import bundled_examples
from ..encoder import Base, Horizon, encode
from ..errors import InconsistentSpecError, UnknownActionError
from ..language import (
    EMPTY_SCENARIO,
    ParseError,
    Scenario,
    parse_domain,
    parse_query,
    parse_scenario,
)
from ..model import DomainSpec
from .schemas import (
    AllSatResponse,
    CheckResponse,
    CompleteResponse,
    DumpResponse,
    ErrorItem,
    ExampleItem,
    MitigateResponse,
    PlanItem,
    TriggeredItem,
    ValidateResponse,
    VerdictModel,
    WhatIfResponse,
)


class ParseFailure(Exception):
    """Raised when a domain or scenario text does not parse cleanly."""

    def __init__(self, errors: Sequence[ParseError]):
        super().__init__(f"{len(errors)} error(s)")
        self.errors = tuple(errors)


def load_domain(text: str, filename: str = "<domain>") -> DomainSpec:
    result = parse_domain(text, filename)
    if isinstance(result, list):
        raise ParseFailure(result)
    return result


def load_scenario(
    spec: DomainSpec, text: Optional[str], filename: str = "<scenario>"
) -> Scenario:
    if text is None:
        return EMPTY_SCENARIO
    result = parse_scenario(text, spec, filename)
    if isinstance(result, list):
        raise ParseFailure(result)
    return result


def op_check(
    domain_text: str,
    scenario_text: Optional[str],
    query_text: str,
    horizon: Optional[int] = None,
    budget: Optional[int] = None,
    max_witnesses: int = tasks.DEFAULT_MAX_WITNESSES,
    domain_filename: str = "<domain>",
    scenario_filename: str = "<scenario>",
) -> CheckResponse:
    spec = load_domain(domain_text, domain_filename)
    scenario = load_scenario(spec, scenario_text, scenario_filename)
    query = parse_query(query_text, spec)
    needed = tasks.default_horizon(scenario, floor=query.step)
    used = needed if horizon is None else horizon
    verdict = tasks.check(
        spec, scenario, query, horizon=used, budget=budget, max_witnesses=max_witnesses
    )
    return CheckResponse(
        query=str(query),
        horizon=used,
        verdict=VerdictModel.from_verdict(verdict),
        witnesses=verdict.witnesses,
        diagnostics=verdict.diagnostics + _horizon_note(horizon, needed),
    )


def op_allsat(
    domain_text: str,
    scenario_text: Optional[str],
    step: int = 0,
    horizon: Optional[int] = None,
    budget: Optional[int] = None,
    max_witnesses: int = tasks.DEFAULT_MAX_WITNESSES,
    domain_filename: str = "<domain>",
    scenario_filename: str = "<scenario>",
) -> AllSatResponse:
    spec = load_domain(domain_text, domain_filename)
    scenario = load_scenario(spec, scenario_text, scenario_filename)
    needed = tasks.default_horizon(scenario, floor=step)
    used = needed if horizon is None else horizon
    result = tasks.all_sat(
        spec, scenario, step, horizon=used, budget=budget, max_witnesses=max_witnesses
    )
    return AllSatResponse(
        step=step,
        horizon=used,
        verdict=VerdictModel.from_verdict(result.verdict),
        unsatisfied=result.unsatisfied,
        witnesses=result.verdict.witnesses,
        diagnostics=result.verdict.diagnostics + _horizon_note(horizon, needed),
    )


def op_complete(
    domain_text: str,
    scenario_text: Optional[str],
    goal_text: str,
    max_solutions: Optional[int] = None,
    budget: Optional[int] = None,
    domain_filename: str = "<domain>",
    scenario_filename: str = "<scenario>",
) -> CompleteResponse:
    spec = load_domain(domain_text, domain_filename)
    scenario = load_scenario(spec, scenario_text, scenario_filename)
    goal = tasks.resolve_goal(spec, goal_text)
    try:
        completions = tasks.complete_design(
            spec, scenario, goal, max_solutions=max_solutions, budget=budget
        )
    except InconsistentSpecError as exc:
        return CompleteResponse(
            goal=_render_goal(goal), status="Inconsistent", diagnostics=(exc.message,)
        )
    return CompleteResponse(
        goal=_render_goal(goal),
        status="ok" if completions else "NoSolution",
        completions=tuple(
            {str(prop): value for prop, value in c.assignment} for c in completions
        ),
    )


def op_whatif(
    domain_text: str,
    scenario_text: Optional[str],
    query_text: str,
    show_triggered: bool = False,
    horizon: Optional[int] = None,
    budget: Optional[int] = None,
    max_witnesses: int = tasks.DEFAULT_MAX_WITNESSES,
    domain_filename: str = "<domain>",
    scenario_filename: str = "<scenario>",
) -> WhatIfResponse:
    spec = load_domain(domain_text, domain_filename)
    scenario = load_scenario(spec, scenario_text, scenario_filename)
    query = parse_query(query_text, spec)
    needed = tasks.default_horizon(scenario, floor=query.step)
    used = needed if horizon is None else horizon
    verdict = tasks.what_if(
        spec, scenario, query, horizon=used, budget=budget, max_witnesses=max_witnesses
    )
    triggered = None
    if show_triggered and verdict.status != tasks.INCONSISTENT:
        triggered = tuple(
            TriggeredItem(action=action.name, step=step)
            for action, step in tasks.triggered_actions(
                spec, scenario, horizon=used, budget=budget
            )
        )
    return WhatIfResponse(
        query=str(query),
        horizon=used,
        verdict=VerdictModel.from_verdict(verdict),
        triggered=triggered,
        witnesses=verdict.witnesses,
        diagnostics=verdict.diagnostics + _horizon_note(horizon, needed),
    )


def op_mitigate(
    domain_text: str,
    scenario_text: Optional[str],
    restore_text: str,
    minimal: bool = True,
    candidates: Optional[Sequence[str]] = None,
    max_solutions: Optional[int] = None,
    budget: Optional[int] = None,
    domain_filename: str = "<domain>",
    scenario_filename: str = "<scenario>",
) -> MitigateResponse:
    spec = load_domain(domain_text, domain_filename)
    scenario = load_scenario(spec, scenario_text, scenario_filename)
    goal = tasks.resolve_goal(spec, restore_text)
    s_sharp = tasks.default_horizon(scenario)
    chosen = None
    if candidates is not None:
        chosen = []
        for name in candidates:
            action = spec.action_named(name)
            if action is None:
                raise UnknownActionError(f"unknown action: {name}")
            chosen.append(action)
    try:
        plans = tasks.mitigate(
            spec,
            scenario,
            goal,
            minimize=minimal,
            candidates=chosen,
            max_solutions=max_solutions,
            budget=budget,
        )
    except InconsistentSpecError as exc:
        return MitigateResponse(
            goal=_render_goal(goal),
            step=s_sharp,
            goal_step=s_sharp + 1,
            minimize=minimal,
            status="Inconsistent",
            diagnostics=(exc.message,),
        )
    return MitigateResponse(
        goal=_render_goal(goal),
        step=s_sharp,
        goal_step=s_sharp + 1,
        minimize=minimal,
        status="ok" if plans else "NoSolution",
        plans=tuple(
            PlanItem(actions=p.action_names(), cost=p.cost, goal_step=p.goal_step)
            for p in plans
        ),
    )


def op_validate(domain_text: str, filename: str = "<domain>") -> ValidateResponse:
    result = parse_domain(domain_text, filename)
    if isinstance(result, list):
        return ValidateResponse(
            ok=False, errors=tuple(ErrorItem.from_parse_error(e) for e in result)
        )
    return ValidateResponse(
        ok=True,
        aspects=len(result.forest.aspects),
        concerns=len(result.forest.concerns),
        properties=len(result.properties),
        actions=len(result.actions),
        statements=len(result.statements),
    )


def op_dump(
    domain_text: str,
    scenario_text: Optional[str] = None,
    horizon: Optional[int] = None,
    domain_filename: str = "<domain>",
    scenario_filename: str = "<scenario>",
) -> DumpResponse:
    spec = load_domain(domain_text, domain_filename)
    scenario = load_scenario(spec, scenario_text, scenario_filename)
    used = tasks.default_horizon(scenario) if horizon is None else horizon
    program = encode(spec, scenario, Horizon(used), Base())
    return DumpResponse(
        horizon=used,
        rules=tuple(rule.render() for rule in program.rules),
        weak=tuple(wc.render() for wc in program.weak),
    )


def op_examples() -> list[ExampleItem]:
    return [
        ExampleItem(
            name=ex.name,
            domain=ex.domain_text,
            scenarios=dict(ex.scenarios),
        )
        for ex in bundled_examples()
    ]


def _horizon_note(requested, needed) -> tuple[str, ...]:
    if requested is not None and requested > needed:
        return (
            f"horizon {requested} exceeds the smallest sufficient horizon {needed}",
        )
    return ()


def _render_goal(goal) -> str:
    return str(goal.atom) if goal.positive else f"-{goal.atom}"


__all__ = [
    "ParseFailure",
    "load_domain",
    "load_scenario",
    "op_check",
    "op_allsat",
    "op_complete",
    "op_whatif",
    "op_mitigate",
    "op_validate",
    "op_dump",
    "op_examples",
]
