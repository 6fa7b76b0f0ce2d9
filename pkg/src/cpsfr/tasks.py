"""The five reasoning tasks over an encoded spec and scenario.

check, all_sat, what_if, and triggered_actions use cautious entailment
(true in every answer set); complete_design and mitigate use credulous
search (backed by at least one answer set). Verdicts carry witness
models projected to holds/occurs atoms, and sat-queries additionally
carry an explanation: the chain of concern-failure rule instances that
fired in the witness, from the queried concern down to the properties
that let it down.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

from .encoder import Base, Horizon
from .encoder import Completion as CompletionMode
from .encoder import (
    Mitigation,
    encode,
    holds_lit,
    open_completion_atoms,
)
from .errors import (
    CpsfError,
    HorizonTooSmallError,
    InconsistentSpecError,
    UnknownGoalError,
)
from .language import QueryExpr, Scenario
from .model import (
    ALL,
    SAT_ALL,
    ActionDecl,
    Atom,
    ConcernId,
    DomainSpec,
    SatAtom,
    SpecLit,
    SystemProp,
    Triggers,
)
from .solver import AnswerSet, enumerate_answer_sets, optimal_answer_sets

ENTAILED = "Entailed"
NOT_ENTAILED = "NotEntailed"
INCONSISTENT = "Inconsistent"

CAUTIOUS = "cautious"
CREDULOUS = "credulous"

DEFAULT_MAX_WITNESSES = 5


@dataclass(frozen=True)
class Verdict:
    status: str
    mode: str
    witnesses: tuple[tuple[str, ...], ...] = ()
    explanation: tuple[tuple[str, str], ...] = ()
    negation_entailed: bool = False
    diagnostics: tuple[str, ...] = ()

    def __post_init__(self):
        if self.status not in (ENTAILED, NOT_ENTAILED, INCONSISTENT):
            raise ValueError(f"invalid status {self.status!r}")
        if self.mode not in (CAUTIOUS, CREDULOUS):
            raise ValueError(f"invalid mode {self.mode!r}")


@dataclass(frozen=True)
class AllSatResult:
    """Verdict for sat(all) plus the aspects the witness shows failing."""

    verdict: Verdict
    unsatisfied: tuple[str, ...] = ()


@dataclass(frozen=True)
class Completion:
    """One way to fill in the undetermined atoms of a partial design."""

    assignment: tuple[tuple[SystemProp, bool], ...]

    def mapping(self) -> dict[SystemProp, bool]:
        return dict(self.assignment)

    def __str__(self) -> str:
        if not self.assignment:
            return "{}"
        inner = ", ".join(
            f"{prop}={'true' if value else 'false'}"
            for prop, value in self.assignment
        )
        return "{" + inner + "}"


@dataclass(frozen=True)
class MitigationPlan:
    """A set of candidate actions, all occurring at the mitigation step."""

    actions: frozenset[ActionDecl]
    goal_step: int

    @property
    def cost(self) -> int:
        return len(self.actions)

    def action_names(self) -> tuple[str, ...]:
        return tuple(sorted(a.name for a in self.actions))

    def __str__(self) -> str:
        return "{" + ", ".join(self.action_names()) + "}"


def default_horizon(scenario: Scenario, floor: int = 0) -> int:
    """Smallest horizon covering the history and the given step."""
    last = scenario.last_step()
    return max(floor, 0 if last is None else last + 1)


def _solve(
    spec: DomainSpec,
    scenario: Scenario,
    horizon: int,
    mode,
    budget: int | None,
) -> list[AnswerSet]:
    program = encode(spec, scenario, Horizon(horizon), mode)
    return enumerate_answer_sets(program, budget=budget)


def _project(model: AnswerSet) -> tuple[str, ...]:
    return tuple(
        sorted(
            str(lit)
            for lit in model.literals
            if lit.atom.predicate in ("holds", "occurs")
        )
    )


def _explain(
    spec: DomainSpec, witness: AnswerSet, concern: ConcernId, step: int
) -> tuple[tuple[str, str], ...]:
    """Failure chain from a concern down to its causes in the witness.

    A pair (c, child) records a failing subconcern, (c, prop) a
    property not known to hold; each corresponds to a failure rule
    instance that fired in the witness model.
    """
    children: dict[ConcernId, list[ConcernId]] = {}
    for parent, child in sorted(spec.forest.edges):
        children.setdefault(parent, []).append(child)
    roots = sorted(spec.forest.aspects)
    links: dict[ConcernId, list[SystemProp]] = {}
    for link in sorted(spec.links, key=lambda l: (str(l.concern), str(l.property))):
        links.setdefault(link.concern, []).append(link.property)

    pairs: list[tuple[str, str]] = []
    seen: set[ConcernId] = set()

    def failing(c: ConcernId) -> bool:
        return holds_lit(SatAtom(c), step, positive=False) in witness

    def visit(c: ConcernId) -> None:
        if c in seen:
            return
        seen.add(c)
        for child in roots if c == ALL else children.get(c, []):
            if failing(child):
                pairs.append((str(c), str(child)))
                visit(child)
        if c != ALL:
            for prop in links.get(c, []):
                if holds_lit(prop, step) not in witness:
                    pairs.append((str(c), str(prop)))

    visit(concern)
    return tuple(pairs)


def check(
    spec: DomainSpec,
    scenario: Scenario,
    query: QueryExpr,
    horizon: int | None = None,
    budget: int | None = None,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> Verdict:
    """Cautious entailment of the query literal at its step."""
    if horizon is None:
        horizon = default_horizon(scenario, floor=query.step)
    elif horizon < query.step:
        raise HorizonTooSmallError(
            f"query is at step {query.step} but horizon is {horizon}"
        )
    models = _solve(spec, scenario, horizon, Base(), budget)
    if not models:
        return Verdict(
            INCONSISTENT,
            CAUTIOUS,
            diagnostics=(
                "no answer sets: the observations and statements are contradictory",
            ),
        )
    lit = holds_lit(query.target.atom, query.step, query.target.positive)
    entailed = all(lit in m for m in models)
    negation_entailed = all(-lit in m for m in models)
    if entailed:
        shown = models[:max_witnesses]
    else:
        counter = [m for m in models if lit not in m]
        rest = [m for m in models if lit in m]
        shown = (counter + rest)[:max_witnesses]
    explanation: tuple[tuple[str, str], ...] = ()
    if isinstance(query.target.atom, SatAtom) and shown:
        fail = holds_lit(query.target.atom, query.step, positive=False)
        if fail in shown[0]:
            explanation = _explain(
                spec, shown[0], query.target.atom.concern, query.step
            )
    return Verdict(
        ENTAILED if entailed else NOT_ENTAILED,
        CAUTIOUS,
        witnesses=tuple(_project(m) for m in shown),
        explanation=explanation,
        negation_entailed=negation_entailed,
    )


def all_sat(
    spec: DomainSpec,
    scenario: Scenario,
    step: int = 0,
    horizon: int | None = None,
    budget: int | None = None,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> AllSatResult:
    """Is every aspect satisfied at the step, and if not, which fail."""
    verdict = check(
        spec,
        scenario,
        QueryExpr(SpecLit(SAT_ALL, True), step),
        horizon=horizon,
        budget=budget,
        max_witnesses=max_witnesses,
    )
    unsatisfied: tuple[str, ...] = ()
    if verdict.status == NOT_ENTAILED and verdict.witnesses:
        witness = verdict.witnesses[0]
        unsatisfied = tuple(
            str(aspect)
            for aspect in sorted(spec.forest.aspects)
            if str(holds_lit(SatAtom(aspect), step, False)) in witness
        )
    return AllSatResult(verdict, unsatisfied)


def complete_design(
    spec: DomainSpec,
    scenario: Scenario,
    goal: SpecLit,
    max_solutions: int | None = None,
    budget: int | None = None,
) -> list[Completion]:
    """Credulous search for step-0 assignments that satisfy the goal.

    Returns the empty list when no completion reaches the goal; raises
    InconsistentSpecError when the observations themselves admit no
    model regardless of the open atoms.
    """
    horizon = default_horizon(scenario)
    open_atoms = open_completion_atoms(spec, scenario)
    models = _solve(spec, scenario, horizon, CompletionMode(goal), budget)
    if not models:
        unconstrained = _solve(
            spec, scenario, horizon, CompletionMode(None), budget
        )
        if not unconstrained:
            raise InconsistentSpecError(
                "the observations and statements admit no model"
            )
        return []
    completions: list[Completion] = []
    seen: set[tuple[tuple[SystemProp, bool], ...]] = set()
    for m in models:
        assignment = tuple(
            (atom, holds_lit(atom, 0) in m) for atom in open_atoms
        )
        if assignment not in seen:
            seen.add(assignment)
            completions.append(Completion(assignment))
    completions.sort(key=lambda c: tuple((str(a), not v) for a, v in c.assignment))
    if max_solutions is not None:
        completions = completions[:max_solutions]
    return completions


def what_if(
    spec: DomainSpec,
    scenario: Scenario,
    query: QueryExpr,
    horizon: int | None = None,
    budget: int | None = None,
    max_witnesses: int = DEFAULT_MAX_WITNESSES,
) -> Verdict:
    """check over a scenario whose history adds occurrence facts."""
    verdict = check(
        spec,
        scenario,
        query,
        horizon=horizon,
        budget=budget,
        max_witnesses=max_witnesses,
    )
    if not scenario.history:
        verdict = replace(
            verdict,
            diagnostics=verdict.diagnostics
            + ("history is empty; the result equals a static check",),
        )
    return verdict


def triggered_actions(
    spec: DomainSpec,
    scenario: Scenario,
    horizon: int | None = None,
    budget: int | None = None,
) -> list[tuple[ActionDecl, int]]:
    """Occurrences cautiously entailed beyond the history's own."""
    if horizon is None:
        horizon = default_horizon(scenario)
    models = _solve(spec, scenario, horizon, Base(), budget)
    if not models:
        raise InconsistentSpecError(
            "the observations and statements admit no model"
        )
    common: set[tuple[str, int]] | None = None
    for m in models:
        occ = {
            (lit.atom.args[0], lit.atom.args[1])
            for lit in m.literals
            if lit.positive and lit.atom.predicate == "occurs"
        }
        common = occ if common is None else common & occ
    history = {(action.name, step) for action, step in scenario.history}
    entailed = sorted(
        (common or set()) - history, key=lambda e: (e[1], e[0])
    )
    return [(spec.action_named(name), step) for name, step in entailed]


def default_candidates(
    spec: DomainSpec, scenario: Scenario
) -> tuple[ActionDecl, ...]:
    """Mitigation candidates: every action except the history's own and
    the targets of trigger statements (those fire on their own)."""
    history = {action for action, _ in scenario.history}
    triggered = {
        stmt.action for stmt in spec.statements if isinstance(stmt, Triggers)
    }
    return tuple(
        sorted(
            (a for a in spec.actions if a not in history and a not in triggered),
            key=lambda a: a.name,
        )
    )


def mitigate(
    spec: DomainSpec,
    scenario: Scenario,
    goal: SpecLit,
    minimize: bool = True,
    candidates: Sequence[ActionDecl] | None = None,
    max_solutions: int | None = None,
    budget: int | None = None,
) -> list[MitigationPlan]:
    """Credulous search for action sets restoring the goal one step on.

    Actions are inserted at the first step after the history; the goal
    must hold at the following step. With minimize, only plans of
    minimum cardinality are returned.
    """
    last = scenario.last_step()
    s_sharp = 0 if last is None else last + 1
    horizon = s_sharp + 1
    if candidates is None:
        chosen = default_candidates(spec, scenario)
    else:
        chosen = tuple(sorted(candidates, key=lambda a: a.name))
    if not chosen:
        raise CpsfError(
            "no candidate actions available for mitigation", code="NoCandidates"
        )
    program = encode(
        spec,
        scenario,
        Horizon(horizon),
        Mitigation(goal, s_sharp, chosen, minimize),
    )
    if minimize:
        models = optimal_answer_sets(program, budget=budget)
    else:
        models = enumerate_answer_sets(program, budget=budget)
    if not models:
        if not _solve(spec, scenario, horizon, Base(), budget):
            raise InconsistentSpecError(
                "the observations and statements admit no model"
            )
        return []
    by_name = {a.name: a for a in chosen}
    plans: list[MitigationPlan] = []
    seen: set[frozenset[str]] = set()
    for m in models:
        picked = frozenset(
            by_name[lit.atom.args[0]]
            for lit in m.literals
            if lit.positive
            and lit.atom.predicate == "occurs"
            and lit.atom.args[1] == s_sharp
            and lit.atom.args[0] in by_name
        )
        key = frozenset(a.name for a in picked)
        if key not in seen:
            seen.add(key)
            plans.append(MitigationPlan(picked, s_sharp + 1))
    plans.sort(key=lambda p: (p.cost, p.action_names()))
    if max_solutions is not None:
        plans = plans[:max_solutions]
    return plans


def resolve_goal(spec: DomainSpec, text: str) -> SpecLit:
    """Parse a goal argument: 'all', a concern path, or sat(...) of one."""
    t = text.strip()
    positive = True
    if t.startswith("-"):
        positive = False
        t = t[1:].strip()
    if t.startswith("sat(") and t.endswith(")"):
        t = t[4:-1].strip()
    if t == "all":
        return SpecLit(SAT_ALL, positive)
    words = tuple(w.strip() for w in t.split("."))
    if not all(w.isidentifier() for w in words):
        raise UnknownGoalError(f"malformed goal: {text!r}")
    try:
        concern = spec.forest.resolve(words)
    except CpsfError as exc:
        raise UnknownGoalError(exc.message) from exc
    return SpecLit(SatAtom(concern), positive)


__all__ = [
    "Verdict",
    "AllSatResult",
    "Completion",
    "MitigationPlan",
    "ENTAILED",
    "NOT_ENTAILED",
    "INCONSISTENT",
    "CAUTIOUS",
    "CREDULOUS",
    "default_horizon",
    "check",
    "all_sat",
    "complete_design",
    "what_if",
    "triggered_actions",
    "default_candidates",
    "mitigate",
    "resolve_goal",
]
