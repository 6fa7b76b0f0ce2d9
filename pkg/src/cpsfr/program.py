"""Ground propositional programs with classical and default negation.

A rule has a head of length 0 (integrity constraint), 1 (normal rule),
or 2 (a choice between a literal and its classical complement), a set of
positive body literals, and a set of body literals under default
negation (``not``). Weak constraints carry unit weights and are used for
cardinality minimization.

Atoms are interned: constructing the same predicate/argument combination
twice yields the very same object, so identity, equality, and hashing
all coincide and stay cheap inside the solver.

Debug dump format, one statement per line::

    h :- b1, b2, not c1.
    p | -p.
    :- a, not b.
    :~ occurs(X,1).

Classical negation renders as a ``-`` prefix.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Iterator

_intern_lock = threading.Lock()
_INTERNED: dict[tuple, "GroundAtom"] = {}


class GroundAtom:
    """An interned propositional atom: predicate plus constant arguments.

    Arguments are plain constants (strings or naturals). Compound domain
    terms such as fluent names arrive pre-rendered as single constants,
    which keeps the kernel purely propositional.
    """

    __slots__ = ("predicate", "args", "_rendered")

    def __new__(cls, predicate: str, args: Iterable[str | int] = ()):
        key = (predicate, tuple(args))
        atom = _INTERNED.get(key)
        if atom is None:
            with _intern_lock:
                atom = _INTERNED.get(key)
                if atom is None:
                    atom = object.__new__(cls)
                    atom.predicate = key[0]
                    atom.args = key[1]
                    if key[1]:
                        inner = ",".join(str(a) for a in key[1])
                        atom._rendered = f"{key[0]}({inner})"
                    else:
                        atom._rendered = key[0]
                    _INTERNED[key] = atom
        return atom

    def __str__(self) -> str:
        return self._rendered

    def __repr__(self) -> str:
        return f"GroundAtom({self._rendered})"


@dataclass(frozen=True, order=True)
class Literal:
    """A ground atom with a classical sign."""

    atom: GroundAtom = field(compare=False)
    positive: bool = field(default=True, compare=False)
    # Ordering and equality go through the rendered form so that sorting
    # is stable and complements of the same atom sort next to each other.
    sort_key: tuple[str, bool] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "sort_key", (str(self.atom), not self.positive))

    def __neg__(self) -> "Literal":
        return Literal(self.atom, not self.positive)

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"-{self.atom}"

    def __repr__(self) -> str:
        return f"Literal({self})"


def pos(predicate: str, *args: str | int) -> Literal:
    return Literal(GroundAtom(predicate, args))


def neg(predicate: str, *args: str | int) -> Literal:
    return Literal(GroundAtom(predicate, args), positive=False)


def _body_str(body_pos: Iterable[Literal], body_naf: Iterable[Literal]) -> str:
    parts = [str(lit) for lit in sorted(body_pos)]
    parts += [f"not {lit}" for lit in sorted(body_naf)]
    return ", ".join(parts)


@dataclass(frozen=True)
class Rule:
    head: tuple[Literal, ...]
    body_pos: frozenset[Literal] = frozenset()
    body_naf: frozenset[Literal] = frozenset()

    def __post_init__(self):
        if len(self.head) > 2:
            raise ValueError("rule head may have at most two literals")
        if len(self.head) == 2 and self.head[0] != -self.head[1]:
            raise ValueError("two-literal heads must be complementary pairs")

    @classmethod
    def fact(cls, lit: Literal) -> "Rule":
        return cls((lit,))

    @classmethod
    def normal(
        cls,
        head: Literal,
        body_pos: Iterable[Literal] = (),
        body_naf: Iterable[Literal] = (),
    ) -> "Rule":
        return cls((head,), frozenset(body_pos), frozenset(body_naf))

    @classmethod
    def constraint(
        cls,
        body_pos: Iterable[Literal] = (),
        body_naf: Iterable[Literal] = (),
    ) -> "Rule":
        return cls((), frozenset(body_pos), frozenset(body_naf))

    @classmethod
    def choice(
        cls,
        lit: Literal,
        body_pos: Iterable[Literal] = (),
        body_naf: Iterable[Literal] = (),
    ) -> "Rule":
        return cls((lit, -lit), frozenset(body_pos), frozenset(body_naf))

    @property
    def is_constraint(self) -> bool:
        return not self.head

    @property
    def is_choice(self) -> bool:
        return len(self.head) == 2

    @property
    def is_fact(self) -> bool:
        return len(self.head) == 1 and not self.body_pos and not self.body_naf

    def render(self) -> str:
        head = " | ".join(str(lit) for lit in self.head)
        body = _body_str(self.body_pos, self.body_naf)
        if not body:
            return f"{head}." if head else ":- ."
        if not head:
            return f":- {body}."
        return f"{head} :- {body}."


@dataclass(frozen=True)
class WeakConstraint:
    """A soft constraint; each satisfied body costs its (unit) weight."""

    body_pos: frozenset[Literal] = frozenset()
    body_naf: frozenset[Literal] = frozenset()
    weight: int = 1
    level: int = 1

    def __post_init__(self):
        if not self.body_pos and not self.body_naf:
            raise ValueError("weak constraint body must be non-empty")
        if self.weight != 1 or self.level != 1:
            raise ValueError("only unit weights at level 1 are supported")

    def render(self) -> str:
        return f":~ {_body_str(self.body_pos, self.body_naf)}."


@dataclass(frozen=True)
class GroundProgram:
    rules: tuple[Rule, ...]
    weak: tuple[WeakConstraint, ...] = ()
    atom_table: tuple[GroundAtom, ...] = field(init=False, compare=False)

    def __post_init__(self):
        seen: dict[GroundAtom, None] = {}
        for rule in self.rules:
            for lit in (*rule.head, *sorted(rule.body_pos), *sorted(rule.body_naf)):
                seen.setdefault(lit.atom)
        for wc in self.weak:
            for lit in (*sorted(wc.body_pos), *sorted(wc.body_naf)):
                seen.setdefault(lit.atom)
        object.__setattr__(self, "atom_table", tuple(seen))

    @property
    def atoms(self) -> tuple[GroundAtom, ...]:
        return self.atom_table

    def dump(self) -> str:
        lines = [rule.render() for rule in self.rules]
        lines += [wc.render() for wc in self.weak]
        return "\n".join(lines) + ("\n" if lines else "")


class ProgramBuilder:
    """Accumulates rules in deterministic order, dropping exact duplicates."""

    def __init__(self) -> None:
        self._rules: list[Rule] = []
        self._weak: list[WeakConstraint] = []
        self._seen: set[Rule] = set()

    def add(self, rule: Rule) -> None:
        if rule not in self._seen:
            self._seen.add(rule)
            self._rules.append(rule)

    def extend(self, rules: Iterable[Rule]) -> None:
        for rule in rules:
            self.add(rule)

    def fact(self, lit: Literal) -> None:
        self.add(Rule.fact(lit))

    def normal(self, head: Literal, body_pos=(), body_naf=()) -> None:
        self.add(Rule.normal(head, body_pos, body_naf))

    def constraint(self, body_pos=(), body_naf=()) -> None:
        self.add(Rule.constraint(body_pos, body_naf))

    def choice(self, lit: Literal, body_pos=(), body_naf=()) -> None:
        self.add(Rule.choice(lit, body_pos, body_naf))

    def weak(self, body_pos=(), body_naf=()) -> None:
        self._weak.append(WeakConstraint(frozenset(body_pos), frozenset(body_naf)))

    def build(self) -> GroundProgram:
        return GroundProgram(tuple(self._rules), tuple(self._weak))


def cost_of(literals: frozenset[Literal], weak: Iterable[WeakConstraint]) -> int:
    """Total weight of weak constraints whose body the literal set satisfies."""
    total = 0
    for wc in weak:
        if wc.body_pos <= literals and not (wc.body_naf & literals):
            total += wc.weight
    return total


def iter_literals(program: GroundProgram) -> Iterator[Literal]:
    for rule in program.rules:
        yield from rule.head
        yield from rule.body_pos
        yield from rule.body_naf
    for wc in program.weak:
        yield from wc.body_pos
        yield from wc.body_naf


__all__ = [
    "GroundAtom",
    "Literal",
    "Rule",
    "WeakConstraint",
    "GroundProgram",
    "ProgramBuilder",
    "pos",
    "neg",
    "cost_of",
    "iter_literals",
]
