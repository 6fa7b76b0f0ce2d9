"""In-memory model of a cyber-physical system against a concern forest.

The vocabulary follows the NIST CPS Framework: a multi-rooted forest of
concerns whose roots are called aspects, system properties and
configurations that address concerns, actions that change the state of
the system, and four kinds of domain statements (impacts, defaults,
causes, triggers) that relate them.

Concern edges are AND edges: a concern is satisfied only if all of its
sub-concerns and all of its addressing properties are satisfied.

All types here are immutable; a validated ``DomainSpec`` can be shared
freely across concurrent reasoning calls.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .errors import AmbiguousConcernError, UnknownConcernError

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9]*\Z")

PROPERTY = "Property"
CONFIGURATION = "Configuration"

DECLARED = "Declared"
MAKE_TRUE = "MakeTrue"
MAKE_FALSE = "MakeFalse"


def is_ident(text: str) -> bool:
    """A valid identifier: a letter followed by letters or digits."""
    return bool(IDENT_RE.match(text))


@dataclass(frozen=True, order=True)
class ConcernId:
    """A concern named by its full dotted path from the aspect root."""

    path: tuple[str, ...]

    def __post_init__(self):
        if not self.path:
            raise ValueError("concern path must be non-empty")

    @property
    def name(self) -> str:
        return self.path[-1]

    @property
    def dotted(self) -> str:
        return ".".join(self.path)

    @property
    def is_root(self) -> bool:
        return len(self.path) == 1

    def parent(self) -> "ConcernId | None":
        if self.is_root:
            return None
        return ConcernId(self.path[:-1])

    def prefixes(self) -> Iterator["ConcernId"]:
        for i in range(1, len(self.path) + 1):
            yield ConcernId(self.path[:i])

    def __str__(self) -> str:
        return self.dotted


# The reserved meta-aspect naming the whole forest; it may not be
# declared and only ever appears as the satisfaction atom sat(all).
ALL = ConcernId(("all",))


@dataclass(frozen=True)
class SystemProp:
    """A boolean attribute of a system component, written seg1_seg2[prop].

    Two properties are equal exactly when their rendered names are equal;
    ``kind`` (Property vs Configuration) does not take part in identity.
    """

    system_path: tuple[str, ...]
    prop_name: str
    kind: str = field(default=PROPERTY, compare=False)

    def __post_init__(self):
        if not self.system_path:
            raise ValueError("system path must be non-empty")
        if self.kind not in (PROPERTY, CONFIGURATION):
            raise ValueError(f"bad property kind: {self.kind!r}")

    @property
    def is_config(self) -> bool:
        return self.kind == CONFIGURATION

    def __str__(self) -> str:
        return f"{'_'.join(self.system_path)}[{self.prop_name}]"


@dataclass(frozen=True)
class SatAtom:
    """The satisfaction fluent sat(c) of a concern c."""

    concern: ConcernId

    def __str__(self) -> str:
        return f"sat({self.concern})"


SAT_ALL = SatAtom(ALL)

Atom = Union[SystemProp, SatAtom]


@dataclass(frozen=True)
class SpecLit:
    """A signed atom as used in conditions, effects, and queries."""

    atom: Atom
    positive: bool = True

    def negated(self) -> "SpecLit":
        return SpecLit(self.atom, not self.positive)

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"-{self.atom}"


@dataclass(frozen=True)
class Condition:
    """A conjunction of signed atoms."""

    literals: frozenset[SpecLit] = frozenset()

    @classmethod
    def of(cls, *lits: SpecLit) -> "Condition":
        return cls(frozenset(lits))

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def is_contradictory(self) -> bool:
        return any(lit.negated() in self.literals for lit in self.literals)

    def __iter__(self) -> Iterator[SpecLit]:
        return iter(sorted(self.literals, key=str))

    def __str__(self) -> str:
        return " & ".join(str(lit) for lit in self)


@dataclass(frozen=True)
class ActionDecl:
    """An action: either declared by name or generated for a configuration.

    MakeTrue(c) and MakeFalse(c) exist for every declared configuration c
    and only for configurations; they switch c on and off respectively.
    """

    name: str
    origin: str = DECLARED
    config: SystemProp | None = None

    @classmethod
    def make_true(cls, config: SystemProp) -> "ActionDecl":
        return cls(f"MakeTrue({config})", MAKE_TRUE, config)

    @classmethod
    def make_false(cls, config: SystemProp) -> "ActionDecl":
        return cls(f"MakeFalse({config})", MAKE_FALSE, config)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Impacts:
    """Under ``condition``, the target property is made true or false."""

    condition: Condition
    positive: bool
    target: SystemProp


@dataclass(frozen=True)
class Default:
    """The fluent ``target`` takes ``value`` unless there is contrary evidence."""

    target: Atom
    value: bool


@dataclass(frozen=True)
class Causes:
    """Occurrence of ``action`` makes ``effect`` hold at the next step."""

    action: ActionDecl
    effect: SpecLit
    condition: Condition = Condition()


@dataclass(frozen=True)
class Triggers:
    """When ``condition`` holds, ``action`` occurs spontaneously at the same step."""

    condition: Condition
    action: ActionDecl


Statement = Union[Impacts, Default, Causes, Triggers]


@dataclass(frozen=True)
class AddressLink:
    """addrBy(concern, property): the property addresses the concern."""

    concern: ConcernId
    property: SystemProp


@dataclass(frozen=True)
class ConcernForest:
    """A multi-rooted forest of concerns; the roots are the aspects."""

    aspects: frozenset[ConcernId]
    concerns: frozenset[ConcernId]
    edges: frozenset[tuple[ConcernId, ConcernId]]

    @classmethod
    def empty(cls) -> "ConcernForest":
        return cls(frozenset(), frozenset(), frozenset())

    @classmethod
    def from_paths(
        cls,
        aspects: Iterable[str],
        concern_paths: Iterable[tuple[str, ...]] = (),
    ) -> "ConcernForest":
        """Build a forest from aspect names and full dotted concern paths.

        Declaring a path implicitly declares every prefix of it and the
        parent-child edges along the chain.
        """
        roots = frozenset(ConcernId((a,)) for a in aspects)
        concerns: set[ConcernId] = set(roots)
        edges: set[tuple[ConcernId, ConcernId]] = set()
        for path in concern_paths:
            node = ConcernId(tuple(path))
            prev: ConcernId | None = None
            for prefix in node.prefixes():
                concerns.add(prefix)
                if prev is not None:
                    edges.add((prev, prefix))
                prev = prefix
        return cls(roots, frozenset(concerns), frozenset(edges))

    def children(self, c: ConcernId) -> frozenset[ConcernId]:
        if c not in self.concerns:
            raise UnknownConcernError(f"unknown concern: {c}")
        return frozenset(child for parent, child in self.edges if parent == c)

    def parent_of(self, c: ConcernId) -> ConcernId | None:
        for parent, child in self.edges:
            if child == c:
                return parent
        return None

    def resolve(self, path: tuple[str, ...]) -> ConcernId:
        """Resolve a possibly-abbreviated dotted path to a declared concern.

        An exact path match wins; otherwise the path must be the suffix of
        exactly one declared concern.
        """
        exact = ConcernId(tuple(path))
        if exact in self.concerns:
            return exact
        n = len(path)
        matches = sorted(
            (c for c in self.concerns if c.path[-n:] == tuple(path)),
            key=lambda c: c.path,
        )
        if len(matches) == 1:
            return matches[0]
        if not matches:
            raise UnknownConcernError(f"unknown concern: {'.'.join(path)}")
        opts = ", ".join(str(m) for m in matches)
        raise AmbiguousConcernError(
            f"concern {'.'.join(path)} is ambiguous: {opts}"
        )


@dataclass(frozen=True)
class DomainSpec:
    """The full domain model: forest, properties, links, actions, statements."""

    forest: ConcernForest
    properties: frozenset[SystemProp]
    links: frozenset[AddressLink]
    actions: frozenset[ActionDecl]
    statements: tuple[Statement, ...]

    @classmethod
    def empty(cls) -> "DomainSpec":
        return cls(ConcernForest.empty(), frozenset(), frozenset(), frozenset(), ())

    @classmethod
    def build(
        cls,
        forest: ConcernForest,
        properties: Iterable[SystemProp] = (),
        links: Iterable[AddressLink] = (),
        actions: Iterable[ActionDecl] = (),
        statements: Iterable[Statement] = (),
    ) -> "DomainSpec":
        """Construct a spec, generating MakeTrue/MakeFalse for every configuration."""
        props = frozenset(properties)
        acts = set(actions)
        for prop in props:
            if prop.is_config:
                acts.add(ActionDecl.make_true(prop))
                acts.add(ActionDecl.make_false(prop))
        return cls(forest, props, frozenset(links), frozenset(acts), tuple(statements))

    def property_named(self, rendered: str) -> SystemProp | None:
        return {str(p): p for p in self.properties}.get(rendered)

    def action_named(self, name: str) -> ActionDecl | None:
        return {a.name: a for a in self.actions}.get(name)

    def declared_actions(self) -> frozenset[ActionDecl]:
        return frozenset(a for a in self.actions if a.origin == DECLARED)


@dataclass(frozen=True)
class ValidationIssue:
    code: str
    message: str
    entity: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[ValidationIssue, ...]
    warnings: tuple[ValidationIssue, ...]

    @property
    def ok(self) -> bool:
        return not self.errors


def _statement_atoms(stmt: Statement) -> Iterator[SpecLit]:
    match stmt:
        case Impacts(condition, _, target):
            yield from condition
            yield SpecLit(target)
        case Default(target, _):
            yield SpecLit(target)
        case Causes(_, effect, condition):
            yield effect
            yield from condition
        case Triggers(condition, _):
            yield from condition


def _statement_action(stmt: Statement) -> ActionDecl | None:
    match stmt:
        case Causes(action, _, _):
            return action
        case Triggers(_, action):
            return action
    return None


def validate(spec: DomainSpec) -> ValidationReport:
    """Check every structural invariant of the model.

    Always returns a report; an empty error list means the spec is valid.
    Unresolved references are errors, unused declarations are warnings.
    """
    errors: list[ValidationIssue] = []
    warnings: list[ValidationIssue] = []

    def err(code: str, message: str, entity: str) -> None:
        errors.append(ValidationIssue(code, message, entity))

    forest = spec.forest

    for c in sorted(forest.concerns):
        for seg in c.path:
            if not is_ident(seg):
                err("BadIdentifier", f"bad concern segment {seg!r} in {c}", str(c))
        if c.path[0] == ALL.name or c == ALL:
            err("ReservedName", "concern name 'all' is reserved for sat(all)", str(c))

    for a in sorted(forest.aspects):
        if not a.is_root:
            err("AspectNotRoot", f"aspect {a} must be a single-segment root", str(a))
        if a not in forest.concerns:
            err("UnknownConcern", f"aspect {a} not among declared concerns", str(a))

    # Edge endpoints must be declared and must not form cycles or joins.
    parents: dict[ConcernId, list[ConcernId]] = {}
    for parent, child in sorted(forest.edges):
        for node in (parent, child):
            if node not in forest.concerns:
                err("UnknownConcern", f"edge endpoint {node} not declared", str(node))
        parents.setdefault(child, []).append(parent)
    for child, ps in sorted(parents.items()):
        if len(ps) > 1:
            err("MultipleParents", f"concern {child} has {len(ps)} parents", str(child))

    # Cycle check by DFS over the edge relation.
    adjacency: dict[ConcernId, list[ConcernId]] = {}
    for parent, child in forest.edges:
        adjacency.setdefault(parent, []).append(child)
    state: dict[ConcernId, int] = {}  # 1 = on stack, 2 = done

    def visit(node: ConcernId) -> bool:
        state[node] = 1
        for nxt in adjacency.get(node, ()):
            mark = state.get(nxt)
            if mark == 1:
                return True
            if mark is None and visit(nxt):
                return True
        state[node] = 2
        return False

    cyclic = False
    for node in sorted(forest.concerns):
        if state.get(node) is None and visit(node):
            cyclic = True
    if cyclic or any(parent == child for parent, child in forest.edges):
        err("CyclicForest", "concern edges contain a cycle", "forest")

    for c in sorted(forest.concerns):
        if c in forest.aspects:
            continue
        if c not in parents and not cyclic:
            err("RootNotAspect", f"non-aspect concern {c} has no parent", str(c))
        root = ConcernId((c.path[0],))
        if root not in forest.aspects:
            err("UnknownAspect", f"first segment of {c} is not a declared aspect", str(c))

    for p in sorted(spec.properties, key=str):
        for seg in (*p.system_path, p.prop_name):
            if not is_ident(seg):
                err("BadIdentifier", f"bad name segment {seg!r} in {p}", str(p))

    for link in sorted(spec.links, key=lambda l: (str(l.concern), str(l.property))):
        if link.concern not in forest.concerns:
            err("UnknownConcern", f"addressed concern {link.concern} not declared", str(link.concern))
        if link.property not in spec.properties:
            err("UnknownProperty", f"addressing property {link.property} not declared", str(link.property))
        else:
            declared = next(p for p in spec.properties if p == link.property)
            if declared.is_config:
                err("AddressOnConfig", f"configuration {link.property} may not address a concern", str(link.property))

    prop_kinds = {str(p): p.kind for p in spec.properties}
    names_seen: set[str] = set()
    for a in sorted(spec.actions, key=lambda a: a.name):
        if a.name in names_seen:
            err("DuplicateAction", f"action {a.name} declared twice", a.name)
        names_seen.add(a.name)
        if a.origin in (MAKE_TRUE, MAKE_FALSE):
            if a.config is None or a.config not in spec.properties:
                err("UnknownProperty", f"{a.name} targets an undeclared configuration", a.name)
            elif prop_kinds.get(str(a.config)) != CONFIGURATION:
                err("MakeOnNonConfig", f"{a.name} targets a non-configuration property", a.name)
        elif not is_ident(a.name):
            err("BadIdentifier", f"bad action name {a.name!r}", a.name)
    for prop in sorted(spec.properties, key=str):
        if prop.is_config:
            for maker in (ActionDecl.make_true(prop), ActionDecl.make_false(prop)):
                if spec.action_named(maker.name) is None:
                    err("MissingConfigAction", f"configuration {prop} lacks {maker.name}", str(prop))

    defaults_seen: dict[str, bool] = {}
    for stmt in spec.statements:
        label = type(stmt).__name__
        for lit in _statement_atoms(stmt):
            atom = lit.atom
            if isinstance(atom, SystemProp):
                if atom not in spec.properties:
                    err("UnknownProperty", f"{label} references undeclared {atom}", str(atom))
            elif atom.concern != ALL and atom.concern not in forest.concerns:
                err("UnknownConcern", f"{label} references undeclared concern {atom.concern}", str(atom))
        action = _statement_action(stmt)
        if action is not None and spec.action_named(action.name) is None:
            err("UnknownAction", f"{label} references undeclared action {action}", str(action))
        match stmt:
            case Impacts(condition, _, target):
                if condition.is_empty:
                    err("EmptyCondition", "impacts statement needs a condition", label)
                if condition.is_contradictory:
                    err("ContradictoryCondition", "condition contains a literal and its negation", label)
                if target not in spec.properties:
                    err("UnknownProperty", f"impacts target {target} not declared", str(target))
            case Default(target, value):
                key = str(target)
                if key in defaults_seen and defaults_seen[key] != value:
                    err("ConflictingDefaults", f"{key} declared default both true and false", key)
                defaults_seen[key] = value
            case Causes(_, _, condition):
                if condition.is_contradictory:
                    err("ContradictoryCondition", "condition contains a literal and its negation", label)
            case Triggers(condition, _):
                if condition.is_empty:
                    err("EmptyCondition", "triggers statement needs a condition", label)
                if condition.is_contradictory:
                    err("ContradictoryCondition", "condition contains a literal and its negation", label)

    used_props = {str(l.property) for l in spec.links}
    used_actions: set[str] = set()
    for stmt in spec.statements:
        for lit in _statement_atoms(stmt):
            if isinstance(lit.atom, SystemProp):
                used_props.add(str(lit.atom))
        action = _statement_action(stmt)
        if action is not None:
            used_actions.add(action.name)
    for prop in sorted(spec.properties, key=str):
        if str(prop) not in used_props:
            warnings.append(ValidationIssue("UnusedProperty", f"{prop} is never referenced", str(prop)))
    for act in sorted(spec.declared_actions(), key=lambda a: a.name):
        if act.name not in used_actions:
            warnings.append(ValidationIssue("UnusedAction", f"{act} appears in no statement", act.name))

    return ValidationReport(tuple(errors), tuple(warnings))


def children(forest: ConcernForest, c: ConcernId) -> frozenset[ConcernId]:
    """The direct sub-concerns of c."""
    return forest.children(c)


def addressing_properties(spec: DomainSpec, c: ConcernId) -> frozenset[SystemProp]:
    """The properties directly addressing c."""
    if c not in spec.forest.concerns:
        raise UnknownConcernError(f"unknown concern: {c}")
    return frozenset(l.property for l in spec.links if l.concern == c)


def fluents(spec: DomainSpec) -> tuple[Atom, ...]:
    """All time-indexed atoms of the spec, lexicographically ordered.

    Covers every property and configuration plus one sat(c) atom per
    declared concern (aspects included). The meta-atom sat(all) is not a
    spec-level fluent; the encoder introduces it.
    """
    atoms: list[Atom] = list(spec.properties)
    atoms.extend(SatAtom(c) for c in spec.forest.concerns)
    return tuple(sorted(atoms, key=str))


__all__ = [
    "ALL",
    "SAT_ALL",
    "PROPERTY",
    "CONFIGURATION",
    "DECLARED",
    "MAKE_TRUE",
    "MAKE_FALSE",
    "ConcernId",
    "SystemProp",
    "SatAtom",
    "Atom",
    "SpecLit",
    "Condition",
    "ActionDecl",
    "Impacts",
    "Default",
    "Causes",
    "Triggers",
    "Statement",
    "AddressLink",
    "ConcernForest",
    "DomainSpec",
    "ValidationIssue",
    "ValidationReport",
    "validate",
    "children",
    "addressing_properties",
    "fluents",
    "is_ident",
]
