"""Compile a domain spec, scenario, and task into a ground program.

Atom vocabulary: ``holds(f, s)`` for a fluent f at step s, ``occurs(a, s)``
for an action occurrence, ``impacted(pos|neg, p, s)`` for property
impact events. Classical negation is carried on the literal.

Fluents split into two disjoint regimes:

* default-valued fluents (every sat(c) atom, plus any fluent named in a
  ``default`` statement) are re-derived at every step by a default rule
  unless an impact or action effect overrides them at that step;
* all other fluents are inertial: their value persists from step to
  step unless overridden, and unobserved plain properties additionally
  default to true at step 0 (configurations do not: an undeclared
  configuration choice stays open rather than being assumed).

Task modes add search structure on top of the base encoding:
completion opens undetermined step-0 atoms as choices, mitigation opens
candidate action occurrences at the mitigation step, and both pin the
goal with an integrity constraint.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import HorizonTooSmallError, UnknownGoalError
from .language import Scenario
from .model import (
    ALL,
    PROPERTY,
    SAT_ALL,
    ActionDecl,
    Atom,
    Causes,
    Condition,
    Default,
    DomainSpec,
    Impacts,
    SatAtom,
    SpecLit,
    Statement,
    SystemProp,
    Triggers,
    fluents,
)
from .program import (
    GroundProgram,
    Literal,
    ProgramBuilder,
    Rule,
    WeakConstraint,
    pos,
)


@dataclass(frozen=True)
class Horizon:
    """Steps range over 0..max_step inclusive."""

    max_step: int

    def __post_init__(self):
        if self.max_step < 0:
            raise ValueError("horizon must be non-negative")

    @property
    def steps(self) -> range:
        return range(self.max_step + 1)


@dataclass(frozen=True)
class Base:
    """Plain temporal projection: no added choices or goals."""


@dataclass(frozen=True)
class Completion:
    """Open undetermined step-0 atoms and require the goal at step 0.

    A ``None`` goal opens the atoms without constraining them, which is
    how callers probe whether the observations alone are consistent.
    """

    goal: SpecLit | None


@dataclass(frozen=True)
class Mitigation:
    """Open candidate occurrences at s_sharp; goal must hold at s_sharp+1."""

    goal: SpecLit
    s_sharp: int
    candidates: tuple[ActionDecl, ...]
    minimize: bool = True


TaskMode = Union[Base, Completion, Mitigation]


def holds_lit(fluent: Atom, step: int, positive: bool = True) -> Literal:
    return Literal(pos("holds", str(fluent), step).atom, positive)


def occurs_lit(action: ActionDecl, step: int, positive: bool = True) -> Literal:
    return Literal(pos("occurs", action.name, step).atom, positive)


def impacted_lit(positive_impact: bool, prop: SystemProp, step: int) -> Literal:
    sign = "pos" if positive_impact else "neg"
    return pos("impacted", sign, str(prop), step)


def _as_horizon(horizon: Horizon | int) -> Horizon:
    return horizon if isinstance(horizon, Horizon) else Horizon(horizon)


def _condition_body(condition: Condition, step: int) -> list[Literal]:
    return [holds_lit(lit.atom, step, lit.positive) for lit in condition]


def default_values(spec: DomainSpec) -> dict[Atom, bool]:
    """Every default-valued fluent with its default polarity.

    All sat(c) atoms default to true; an explicit ``default`` statement
    adds a fluent (or overrides a sat atom's polarity). sat(all) is
    excluded: the all-sat axioms own it.
    """
    values: dict[Atom, bool] = {
        SatAtom(c): True for c in sorted(spec.forest.concerns)
    }
    for stmt in spec.statements:
        if isinstance(stmt, Default) and stmt.target != SAT_ALL:
            values[stmt.target] = stmt.value
    return values


def encode_statement(stmt: Statement, horizon: Horizon | int) -> list[Rule]:
    """Ground one domain statement over all steps of the horizon.

    Impacts yield same-step impact events; causes yield next-step
    effects gated on the occurrence; triggers yield same-step
    occurrences. Defaults yield nothing here: framework_axioms reads
    them through default_values.
    """
    h = _as_horizon(horizon)
    rules: list[Rule] = []
    if isinstance(stmt, Impacts):
        for s in h.steps:
            rules.append(
                Rule.normal(
                    impacted_lit(stmt.positive, stmt.target, s),
                    _condition_body(stmt.condition, s),
                )
            )
    elif isinstance(stmt, Causes):
        for s in range(h.max_step):
            body = _condition_body(stmt.condition, s)
            body.append(occurs_lit(stmt.action, s))
            rules.append(
                Rule.normal(
                    holds_lit(stmt.effect.atom, s + 1, stmt.effect.positive), body
                )
            )
    elif isinstance(stmt, Triggers):
        for s in h.steps:
            rules.append(
                Rule.normal(
                    occurs_lit(stmt.action, s), _condition_body(stmt.condition, s)
                )
            )
    elif not isinstance(stmt, Default):
        raise TypeError(f"unknown statement type {type(stmt).__name__}")
    return rules


def config_action_rules(spec: DomainSpec, horizon: Horizon | int) -> list[Rule]:
    """Effect laws of the generated MakeTrue/MakeFalse actions."""
    h = _as_horizon(horizon)
    rules: list[Rule] = []
    for prop in sorted(spec.properties, key=str):
        if not prop.is_config:
            continue
        for s in range(h.max_step):
            rules.append(
                Rule.normal(
                    holds_lit(prop, s + 1),
                    [occurs_lit(ActionDecl.make_true(prop), s)],
                )
            )
            rules.append(
                Rule.normal(
                    holds_lit(prop, s + 1, positive=False),
                    [occurs_lit(ActionDecl.make_false(prop), s)],
                )
            )
    return rules


def framework_axioms(
    spec: DomainSpec,
    horizon: Horizon | int,
    scenario: Scenario | None = None,
    open_at_zero: frozenset[Atom] = frozenset(),
) -> list[Rule]:
    """The satisfaction, default, bridge, observation, and inertia axioms.

    Per step: concern failure from a failing addressing property (by
    absence of evidence), failure propagation child to parent, default
    re-establishment, impact bridges. At step 0: observation facts and
    the closed-world initialization of unobserved plain properties
    (suppressed for atoms in ``open_at_zero``, which a completion task
    opens as choices instead). Between steps: inertia for every
    non-default fluent.
    """
    h = _as_horizon(horizon)
    defaults = default_values(spec)
    all_fluents = fluents(spec)
    inertial = [f for f in all_fluents if f not in defaults]
    impact_targets = sorted(
        {stmt.target for stmt in spec.statements if isinstance(stmt, Impacts)},
        key=str,
    )
    links = sorted(spec.links, key=lambda l: (str(l.concern), str(l.property)))
    edges = sorted(spec.forest.edges)
    observed = scenario.observation_map() if scenario is not None else {}

    rules: list[Rule] = []
    for s in h.steps:
        for link in links:
            # A concern fails when an addressing property is not known to hold.
            rules.append(
                Rule.normal(
                    holds_lit(SatAtom(link.concern), s, positive=False),
                    body_naf=[holds_lit(link.property, s)],
                )
            )
        for parent, child in edges:
            rules.append(
                Rule.normal(
                    holds_lit(SatAtom(parent), s, positive=False),
                    [holds_lit(SatAtom(child), s, positive=False)],
                )
            )
        for fluent in sorted(defaults, key=str):
            value = defaults[fluent]
            rules.append(
                Rule.normal(
                    holds_lit(fluent, s, value),
                    body_naf=[holds_lit(fluent, s, not value)],
                )
            )
        for target in impact_targets:
            rules.append(
                Rule.normal(
                    holds_lit(target, s, positive=False),
                    [impacted_lit(False, target, s)],
                )
            )
            rules.append(
                Rule.normal(holds_lit(target, s), [impacted_lit(True, target, s)])
            )
        if s == 0:
            for atom in sorted(observed, key=str):
                rules.append(Rule.fact(holds_lit(atom, 0, observed[atom])))
            for prop in sorted(spec.properties, key=str):
                if (
                    prop.kind == PROPERTY
                    and prop not in defaults
                    and prop not in observed
                    and prop not in open_at_zero
                ):
                    rules.append(
                        Rule.normal(
                            holds_lit(prop, 0),
                            body_naf=[holds_lit(prop, 0, positive=False)],
                        )
                    )
        if s < h.max_step:
            for fluent in inertial:
                rules.append(
                    Rule.normal(
                        holds_lit(fluent, s + 1),
                        [holds_lit(fluent, s)],
                        [holds_lit(fluent, s + 1, positive=False)],
                    )
                )
                rules.append(
                    Rule.normal(
                        holds_lit(fluent, s + 1, positive=False),
                        [holds_lit(fluent, s, positive=False)],
                        [holds_lit(fluent, s + 1)],
                    )
                )
    return rules


def allsat_axioms(spec: DomainSpec, horizon: Horizon | int) -> list[Rule]:
    """sat(all) holds by default and fails with any failing aspect."""
    h = _as_horizon(horizon)
    rules: list[Rule] = []
    for s in h.steps:
        rules.append(
            Rule.normal(
                holds_lit(SAT_ALL, s),
                body_naf=[holds_lit(SAT_ALL, s, positive=False)],
            )
        )
        for aspect in sorted(spec.forest.aspects):
            rules.append(
                Rule.normal(
                    holds_lit(SAT_ALL, s, positive=False),
                    [holds_lit(SatAtom(aspect), s, positive=False)],
                )
            )
    return rules


def _check_goal(spec: DomainSpec, goal: SpecLit) -> None:
    atom = goal.atom
    if not isinstance(atom, SatAtom):
        raise UnknownGoalError(f"goal must be a sat(...) literal, got {atom}")
    if atom.concern != ALL and atom.concern not in spec.forest.concerns:
        raise UnknownGoalError(f"unknown goal concern: {atom.concern}")


def open_completion_atoms(
    spec: DomainSpec, scenario: Scenario | None
) -> tuple[Atom, ...]:
    """The undetermined step-0 atoms a completion task chooses over.

    Unobserved, non-default properties and configurations. Default-valued
    fluents are excluded: their per-step rules already determine them.
    """
    observed = scenario.observation_map() if scenario is not None else {}
    defaults = default_values(spec)
    return tuple(
        sorted(
            (
                p
                for p in spec.properties
                if p not in observed and p not in defaults
            ),
            key=str,
        )
    )


def task_axioms(
    spec: DomainSpec,
    mode: TaskMode,
    horizon: Horizon | int,
    scenario: Scenario | None = None,
) -> tuple[list[Rule], list[WeakConstraint]]:
    """Choice rules, the goal constraint, and minimization for a task mode."""
    h = _as_horizon(horizon)
    rules: list[Rule] = []
    weak: list[WeakConstraint] = []
    if isinstance(mode, Base):
        return rules, weak
    if isinstance(mode, Completion):
        if mode.goal is not None:
            _check_goal(spec, mode.goal)
        for atom in open_completion_atoms(spec, scenario):
            rules.append(Rule.choice(holds_lit(atom, 0)))
        if mode.goal is not None:
            rules.append(
                Rule.constraint(
                    body_naf=[holds_lit(mode.goal.atom, 0, mode.goal.positive)]
                )
            )
        return rules, weak
    if isinstance(mode, Mitigation):
        _check_goal(spec, mode.goal)
        goal_step = mode.s_sharp + 1
        if h.max_step < goal_step:
            raise HorizonTooSmallError(
                f"mitigation needs horizon {goal_step}, got {h.max_step}"
            )
        for action in sorted(mode.candidates, key=lambda a: a.name):
            rules.append(Rule.choice(occurs_lit(action, mode.s_sharp)))
        rules.append(
            Rule.constraint(
                body_naf=[holds_lit(mode.goal.atom, goal_step, mode.goal.positive)]
            )
        )
        if mode.minimize:
            for action in sorted(mode.candidates, key=lambda a: a.name):
                weak.append(
                    WeakConstraint(
                        frozenset({occurs_lit(action, mode.s_sharp)}), frozenset()
                    )
                )
        return rules, weak
    raise TypeError(f"unknown task mode {type(mode).__name__}")


def encode(
    spec: DomainSpec,
    scenario: Scenario,
    horizon: Horizon | int,
    mode: TaskMode = Base(),
) -> GroundProgram:
    """The full ground program for one reasoning call.

    Rule order is deterministic: statement translations in declaration
    order, configuration action effects, framework axioms, all-sat
    axioms, history facts, task axioms. Raises ``HorizonTooSmallError``
    when the horizon cannot contain the history (every recorded action
    needs one following step for its effects) or the mitigation goal.
    """
    h = _as_horizon(horizon)
    last = scenario.last_step()
    if last is not None and h.max_step < last + 1:
        raise HorizonTooSmallError(
            f"history runs through step {last}; horizon must be at least {last + 1}"
        )
    open_at_zero: frozenset[Atom] = frozenset()
    if isinstance(mode, Completion):
        open_at_zero = frozenset(open_completion_atoms(spec, scenario))
    builder = ProgramBuilder()
    for stmt in spec.statements:
        builder.extend(encode_statement(stmt, h))
    builder.extend(config_action_rules(spec, h))
    builder.extend(framework_axioms(spec, h, scenario, open_at_zero))
    builder.extend(allsat_axioms(spec, h))
    for action, step in sorted(scenario.history, key=lambda e: (e[1], e[0].name)):
        builder.add(Rule.fact(occurs_lit(action, step)))
    task_rules, task_weak = task_axioms(spec, mode, h, scenario)
    builder.extend(task_rules)
    for wc in task_weak:
        builder.weak(wc.body_pos, wc.body_naf)
    return builder.build()


__all__ = [
    "Horizon",
    "Base",
    "Completion",
    "Mitigation",
    "TaskMode",
    "holds_lit",
    "occurs_lit",
    "impacted_lit",
    "default_values",
    "open_completion_atoms",
    "encode_statement",
    "config_action_rules",
    "framework_axioms",
    "allsat_axioms",
    "task_axioms",
    "encode",
]
