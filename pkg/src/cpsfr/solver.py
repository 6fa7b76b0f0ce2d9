"""Stable-model enumeration for ground programs.

Semantics: a consistent literal set M is an answer set of a program P
when M equals the minimal model of the Gelfond-Lifschitz reduct of P
with respect to M, no integrity constraint body is satisfied by M, and
every choice rule whose body is satisfied by M has one of its two head
literals in M (choices are total: firing a choice decides the literal
one way or the other, it never leaves it open).

Two independent code paths compute the same relation:

* ``enumerate_answer_sets`` compiles the program to an internal
  integer-slot form (classical complements become paired slots guarded
  by consistency constraints, choice heads become even loops), branches
  only on slots inside negative-recursive dependency components,
  propagates deterministically between branches, completes the remaining
  components bottom-up by least fixpoint, and verifies every candidate
  with a final reduct check before emitting it.
* ``brute_force_answer_sets`` tests candidate literal sets directly with
  ``is_answer_set``. Candidates range over subsets of the rule-head
  literals, which is exhaustive: a stable model only ever contains
  literals that some rule head can derive.

The brute-force path exists as a differential-testing oracle for the
search path and is deliberately kept free of the solver's machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import (
    InconsistentCandidateError,
    ResourceBudgetExceededError,
    TooLargeForOracleError,
)
from .program import GroundAtom, GroundProgram, Literal, Rule, cost_of

DEFAULT_BUDGET = 10_000_000
ORACLE_ATOM_CAP = 22


class _Inconsistent:
    """Outcome of a definite-program closure that derives l and -l."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "inconsistent"


INCONSISTENT = _Inconsistent()

Definite = Union[GroundProgram, Iterable[Rule]]


@dataclass(frozen=True)
class AnswerSet:
    """A stable, consistent set of ground literals with its weak-constraint cost."""

    literals: frozenset[Literal]
    cost: int = 0

    def __contains__(self, lit: Literal) -> bool:
        return lit in self.literals

    def sorted_literals(self) -> tuple[Literal, ...]:
        return tuple(sorted(self.literals))

    def __str__(self) -> str:
        inner = " ".join(str(lit) for lit in self.sorted_literals())
        return "{" + inner + "}"


def _rules_of(program: Definite) -> tuple[Rule, ...]:
    if isinstance(program, GroundProgram):
        return program.rules
    return tuple(program)


def _check_consistent(candidate: frozenset[Literal]) -> None:
    for lit in candidate:
        if -lit in candidate:
            raise InconsistentCandidateError(
                f"candidate contains both {lit} and {-lit}"
            )


def reduct(program: Definite, candidate: Iterable[Literal]) -> tuple[Rule, ...]:
    """The Gelfond-Lifschitz reduct of the program w.r.t. a consistent candidate.

    Rules blocked by a default-negated literal of the candidate are
    deleted, remaining rules lose their naf parts, and each choice head
    is replaced by its member in the candidate when exactly one member
    is in it (otherwise the choice rule is dropped; ``is_answer_set``
    separately requires fired choices to be total).
    """
    cand = frozenset(candidate)
    _check_consistent(cand)
    out: list[Rule] = []
    for rule in _rules_of(program):
        if rule.body_naf & cand:
            continue
        if rule.is_choice:
            chosen = [lit for lit in rule.head if lit in cand]
            if len(chosen) == 1:
                out.append(Rule((chosen[0],), rule.body_pos, frozenset()))
            continue
        out.append(Rule(rule.head, rule.body_pos, frozenset()))
    return tuple(out)


def minimal_model(program: Definite):
    """Least literal set closed under a definite program's rules.

    Integrity constraints contribute nothing to the closure (they are
    checked by ``is_answer_set``). Returns ``INCONSISTENT`` when the
    closure contains a literal and its classical complement.
    """
    rules = _rules_of(program)
    for rule in rules:
        if rule.body_naf or rule.is_choice:
            raise ValueError("minimal_model requires a definite program")

    derived: set[Literal] = set()
    queue: list[Literal] = []
    remaining: list[int] = []
    occ: dict[Literal, list[int]] = {}
    heads: list[Literal | None] = []

    def fire(head: Literal) -> bool:
        if head in derived:
            return True
        if -head in derived:
            return False
        derived.add(head)
        queue.append(head)
        return True

    for i, rule in enumerate(rules):
        heads.append(rule.head[0] if rule.head else None)
        remaining.append(len(rule.body_pos))
        if rule.is_constraint:
            continue
        for b in rule.body_pos:
            occ.setdefault(b, []).append(i)
        if not rule.body_pos and not fire(rule.head[0]):
            return INCONSISTENT
    while queue:
        lit = queue.pop()
        for i in occ.get(lit, ()):
            remaining[i] -= 1
            if remaining[i] == 0 and heads[i] is not None:
                if not fire(heads[i]):
                    return INCONSISTENT
    return frozenset(derived)


def is_answer_set(program: Definite, candidate: Iterable[Literal]) -> bool:
    """Decide stability of a consistent candidate against the program."""
    cand = frozenset(candidate)
    _check_consistent(cand)
    rules = _rules_of(program)
    model = minimal_model(r for r in reduct(rules, cand) if not r.is_constraint)
    if model is INCONSISTENT or model != cand:
        return False
    for rule in rules:
        if rule.body_naf & cand or not rule.body_pos <= cand:
            continue
        if rule.is_constraint:
            return False
        if rule.is_choice and not any(lit in cand for lit in rule.head):
            return False
    return True


UNDEC, TRUE, FALSE = 0, 1, 2


class _Solver:
    """DFS enumeration over the compiled slot form of a program."""

    def __init__(self, program: GroundProgram, budget: int, limit: int | None):
        self.budget = budget
        self.limit = limit
        self.nodes = 0
        self.stop = False
        self.models: list[AnswerSet] = []

        self.slot_of: dict[Literal, int] = {}
        self.lit_of: list[Literal] = []

        def slot(lit: Literal) -> int:
            s = self.slot_of.get(lit)
            if s is None:
                s = len(self.lit_of)
                self.slot_of[lit] = s
                self.lit_of.append(lit)
            return s

        rules: list[tuple[int, tuple[int, ...], tuple[int, ...]]] = []
        for rule in program.rules:
            bp = tuple(slot(b) for b in sorted(rule.body_pos))
            bn = tuple(slot(b) for b in sorted(rule.body_naf))
            if rule.is_constraint:
                rules.append((-1, bp, bn))
            elif rule.is_choice:
                first, second = (slot(rule.head[0]), slot(rule.head[1]))
                rules.append((first, bp, bn + (second,)))
                rules.append((second, bp, bn + (first,)))
            else:
                rules.append((slot(rule.head[0]), bp, bn))
        self.weak = [
            (
                tuple(slot(b) for b in sorted(wc.body_pos)),
                tuple(slot(b) for b in sorted(wc.body_naf)),
            )
            for wc in program.weak
        ]

        # One consistency constraint per atom that occurs with both signs.
        signs: dict[GroundAtom, dict[bool, int]] = {}
        for lit, s in self.slot_of.items():
            signs.setdefault(lit.atom, {})[lit.positive] = s
        for pair in signs.values():
            if len(pair) == 2:
                rules.append((-1, (pair[True], pair[False]), ()))

        self.rules = rules
        n = len(self.lit_of)
        self.assign = bytearray(n)
        self.trail: list[int] = []
        self.queue: list[int] = []
        self.occ_pos: list[list[int]] = [[] for _ in range(n)]
        self.occ_naf: list[list[int]] = [[] for _ in range(n)]
        self.occ_head: list[list[int]] = [[] for _ in range(n)]
        for ri, (h, bp, bn) in enumerate(rules):
            for b in bp:
                self.occ_pos[b].append(ri)
            for b in bn:
                self.occ_naf[b].append(ri)
            if h >= 0:
                self.occ_head[h].append(ri)

        self._analyze(n)

    # -- dependency analysis ------------------------------------------------

    def _analyze(self, n: int) -> None:
        adj: list[list[int]] = [[] for _ in range(n)]
        for h, bp, bn in self.rules:
            if h >= 0:
                adj[h].extend(bp)
                adj[h].extend(bn)

        # Iterative Tarjan; component ids increase in dependency-first order.
        scc_of = [-1] * n
        low = [0] * n
        num = [0] * n
        on_stack = bytearray(n)
        stack: list[int] = []
        counter = 0
        n_sccs = 0
        for root in range(n):
            if num[root]:
                continue
            work: list[tuple[int, int]] = [(root, 0)]
            while work:
                v, pi = work[-1]
                if pi == 0:
                    counter += 1
                    num[v] = low[v] = counter
                    stack.append(v)
                    on_stack[v] = 1
                advanced = False
                while pi < len(adj[v]):
                    w = adj[v][pi]
                    pi += 1
                    if not num[w]:
                        work[-1] = (v, pi)
                        work.append((w, 0))
                        advanced = True
                        break
                    if on_stack[w] and num[w] < low[v]:
                        low[v] = num[w]
                if advanced:
                    continue
                work.pop()
                if low[v] == num[v]:
                    while True:
                        w = stack.pop()
                        on_stack[w] = 0
                        scc_of[w] = n_sccs
                        if w == v:
                            break
                    n_sccs += 1
                if work:
                    parent = work[-1][0]
                    if low[v] < low[parent]:
                        low[parent] = low[v]

        self.scc_of = scc_of
        self.n_sccs = n_sccs
        is_branch = bytearray(n_sccs)
        for h, _, bn in self.rules:
            if h >= 0:
                for b in bn:
                    if scc_of[b] == scc_of[h]:
                        is_branch[scc_of[h]] = 1
        self.scc_is_branch = is_branch
        self.scc_slots: list[list[int]] = [[] for _ in range(n_sccs)]
        for s in range(n):
            self.scc_slots[scc_of[s]].append(s)
        self.scc_rules: list[list[int]] = [[] for _ in range(n_sccs)]
        for ri, (h, _, _) in enumerate(self.rules):
            if h >= 0:
                self.scc_rules[scc_of[h]].append(ri)
        self.branch_order = sorted(
            (s for s in range(n) if is_branch[self.scc_of[s]]),
            key=lambda s: self.lit_of[s],
        )

    # -- assignment and propagation -----------------------------------------

    def _set(self, s: int, v: int) -> bool:
        a = self.assign[s]
        if a != UNDEC:
            return a == v
        self.assign[s] = v
        self.trail.append(s)
        self.queue.append(s)
        return True

    def _undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            self.assign[self.trail.pop()] = UNDEC
        self.queue.clear()

    def _eval_rule(self, ri: int) -> bool:
        assign = self.assign
        h, bp, bn = self.rules[ri]
        blocked = False
        und_pos: list[int] = []
        und_naf: list[int] = []
        for b in bp:
            v = assign[b]
            if v == FALSE:
                blocked = True
                break
            if v == UNDEC:
                und_pos.append(b)
        if not blocked:
            for b in bn:
                v = assign[b]
                if v == TRUE:
                    blocked = True
                    break
                if v == UNDEC:
                    und_naf.append(b)
        if blocked:
            return h < 0 or self._check_support(h)
        undecided = len(und_pos) + len(und_naf)
        if h < 0 or assign[h] == FALSE:
            # The body must not become fully satisfied.
            if undecided == 0:
                return False
            if undecided == 1:
                if und_pos:
                    return self._set(und_pos[0], FALSE)
                return self._set(und_naf[0], TRUE)
            return True
        if undecided == 0:
            return self._set(h, TRUE)
        if assign[h] == TRUE:
            return self._check_support(h)
        return True

    def _check_support(self, h: int) -> bool:
        """A head slot needs one unblocked rule; force the last one if unique."""
        assign = self.assign
        open_bodies: list[tuple[list[int], list[int]]] = []
        for ri in self.occ_head[h]:
            _, bp, bn = self.rules[ri]
            blocked = False
            und_pos: list[int] = []
            und_naf: list[int] = []
            for b in bp:
                v = assign[b]
                if v == FALSE:
                    blocked = True
                    break
                if v == UNDEC:
                    und_pos.append(b)
            if blocked:
                continue
            for b in bn:
                v = assign[b]
                if v == TRUE:
                    blocked = True
                    break
                if v == UNDEC:
                    und_naf.append(b)
            if blocked:
                continue
            if not und_pos and not und_naf:
                return True  # satisfied body supports h outright
            open_bodies.append((und_pos, und_naf))
        if not open_bodies:
            if assign[h] == TRUE:
                return False
            return self._set(h, FALSE)
        if assign[h] == TRUE and len(open_bodies) == 1:
            und_pos, und_naf = open_bodies[0]
            for b in und_pos:
                if not self._set(b, TRUE):
                    return False
            for b in und_naf:
                if not self._set(b, FALSE):
                    return False
        return True

    def _propagate(self) -> bool:
        queue = self.queue
        while queue:
            s = queue.pop()
            for ri in self.occ_pos[s]:
                if not self._eval_rule(ri):
                    return False
            for ri in self.occ_naf[s]:
                if not self._eval_rule(ri):
                    return False
            for ri in self.occ_head[s]:
                if not self._eval_rule(ri):
                    return False
        return True

    # -- completion of non-branch components ----------------------------------

    def _complete(self) -> bool:
        assign = self.assign
        scc_of = self.scc_of
        for scc in range(self.n_sccs):
            if self.scc_is_branch[scc]:
                continue
            slots = self.scc_slots[scc]
            if all(assign[s] != UNDEC for s in slots) and not self.scc_rules[scc]:
                continue
            derived: set[int] = set()
            changed = True
            while changed:
                changed = False
                for ri in self.scc_rules[scc]:
                    h, bp, bn = self.rules[ri]
                    if h in derived:
                        continue
                    fires = True
                    for b in bp:
                        if scc_of[b] == scc:
                            if b not in derived:
                                fires = False
                                break
                        elif assign[b] != TRUE:
                            fires = False
                            break
                    if fires:
                        for b in bn:
                            if assign[b] != FALSE:
                                fires = False
                                break
                    if fires:
                        derived.add(h)
                        changed = True
            for s in slots:
                value = TRUE if s in derived else FALSE
                a = assign[s]
                if a == UNDEC:
                    assign[s] = value
                    self.trail.append(s)
                elif a != value:
                    return False
        return True

    # -- final stability verification -----------------------------------------

    def _gl_check(self) -> bool:
        assign = self.assign
        derived = bytearray(len(assign))
        changed = True
        while changed:
            changed = False
            for h, bp, bn in self.rules:
                if h < 0:
                    continue
                if derived[h]:
                    continue
                if any(assign[b] == TRUE for b in bn):
                    continue
                if all(derived[b] for b in bp):
                    derived[h] = 1
                    changed = True
        for s in range(len(assign)):
            if (assign[s] == TRUE) != bool(derived[s]):
                return False
        for h, bp, bn in self.rules:
            if h < 0:
                if all(assign[b] == TRUE for b in bp) and not any(
                    assign[b] == TRUE for b in bn
                ):
                    return False
        return True

    # -- search ----------------------------------------------------------------

    def _emit(self) -> None:
        literals = frozenset(
            self.lit_of[s] for s in range(len(self.assign)) if self.assign[s] == TRUE
        )
        cost = 0
        for bp, bn in self.weak:
            if all(self.assign[b] == TRUE for b in bp) and not any(
                self.assign[b] == TRUE for b in bn
            ):
                cost += 1
        self.models.append(AnswerSet(literals, cost))
        if self.limit is not None and len(self.models) >= self.limit:
            self.stop = True

    def _tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise ResourceBudgetExceededError(
                f"search node budget of {self.budget} exhausted"
            )

    def _dfs(self) -> None:
        if self.stop:
            return
        self._tick()
        pick = -1
        for s in self.branch_order:
            if self.assign[s] == UNDEC:
                pick = s
                break
        if pick < 0:
            mark = len(self.trail)
            if self._complete() and self._gl_check():
                self._emit()
            self._undo(mark)
            return
        for value in (TRUE, FALSE):
            mark = len(self.trail)
            if self._set(pick, value) and self._propagate():
                self._dfs()
            self._undo(mark)
            if self.stop:
                return

    def solve(self) -> list[AnswerSet]:
        self._tick()
        for ri in range(len(self.rules)):
            if not self._eval_rule(ri):
                return []
        if not self._propagate():
            return []
        self._dfs()
        return self.models


def enumerate_answer_sets(
    program: GroundProgram,
    limit: int | None = None,
    budget: int | None = None,
) -> list[AnswerSet]:
    """All answer sets of the program, complete and duplicate-free up to ``limit``.

    Deterministic: branching picks the lexicographically smallest
    undecided choice literal, true branch first, so repeated runs return
    identical ordered output. Raises ``ResourceBudgetExceededError`` when
    the node budget is exhausted rather than silently truncating.
    """
    solver = _Solver(program, DEFAULT_BUDGET if budget is None else budget, limit)
    return solver.solve()


def optimal_answer_sets(
    program: GroundProgram,
    budget: int | None = None,
) -> list[AnswerSet]:
    """Only the answer sets of globally minimal weak-constraint cost."""
    models = enumerate_answer_sets(program, budget=budget)
    if not models:
        return []
    best = min(m.cost for m in models)
    return [m for m in models if m.cost == best]


def brute_force_answer_sets(program: GroundProgram) -> list[AnswerSet]:
    """Differential-testing oracle: test every consistent head-literal subset.

    A stable model is the minimal model of its reduct, hence a subset of
    the program's head literals; enumerating those subsets is exhaustive
    over all consistent candidates. Hard-capped for tractability.
    """
    if len(program.atoms) > ORACLE_ATOM_CAP:
        raise TooLargeForOracleError(
            f"{len(program.atoms)} atoms exceed the oracle cap of {ORACLE_ATOM_CAP}"
        )
    pool = sorted({lit for rule in program.rules for lit in rule.head})
    if len(pool) > ORACLE_ATOM_CAP:
        raise TooLargeForOracleError(
            f"{len(pool)} distinct head literals exceed the oracle cap of {ORACLE_ATOM_CAP}"
        )
    index = {lit: i for i, lit in enumerate(pool)}
    conflicts = [
        (i, index[-lit])
        for i, lit in enumerate(pool)
        if -lit in index and i < index[-lit]
    ]
    results: list[AnswerSet] = []
    for mask in range(1 << len(pool)):
        if any(mask >> i & 1 and mask >> j & 1 for i, j in conflicts):
            continue
        candidate = frozenset(
            lit for i, lit in enumerate(pool) if mask >> i & 1
        )
        if is_answer_set(program, candidate):
            results.append(AnswerSet(candidate, cost_of(candidate, program.weak)))
    results.sort(key=lambda m: tuple(sorted(lit.sort_key for lit in m.literals)))
    return results


__all__ = [
    "AnswerSet",
    "INCONSISTENT",
    "DEFAULT_BUDGET",
    "ORACLE_ATOM_CAP",
    "reduct",
    "minimal_model",
    "is_answer_set",
    "enumerate_answer_sets",
    "optimal_answer_sets",
    "brute_force_answer_sets",
]
