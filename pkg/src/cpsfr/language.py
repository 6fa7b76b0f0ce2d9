"""Textual format for domain specs, scenarios, and queries.

Domain files (``.cpsf``) declare the concern forest, the system's
properties and configurations, its actions, and the domain statements.
Scenario files (``.cpss``) record observations and an action history.
Query expressions name a signed fluent at a step.

Lexical notes: ``#`` starts a comment running to end of line;
identifiers are case-sensitive letters-then-alphanumerics; system paths
join identifiers with ``_``; a dot immediately followed by a letter
continues a dotted concern path, any other dot terminates a statement.
``impacts+`` and ``impacts-`` are single tokens.

Parsing is all-or-nothing: ``parse_domain`` and ``parse_scenario``
return either the parsed value or a list of ``ParseError`` records.
The parser recovers at statement terminators, so one bad statement does
not mask errors in the statements after it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import (
    AmbiguousConcernError,
    CpsfError,
    QuerySyntaxError,
    UnknownAtomError,
    UnknownConcernError,
)
from .model import (
    ALL,
    CONFIGURATION,
    DECLARED,
    PROPERTY,
    SAT_ALL,
    ActionDecl,
    AddressLink,
    Atom,
    Causes,
    ConcernForest,
    ConcernId,
    Condition,
    Default,
    DomainSpec,
    Impacts,
    SatAtom,
    SpecLit,
    Statement,
    SystemProp,
    Triggers,
    is_ident,
    validate,
)

KEYWORDS = frozenset(
    {
        "aspect", "concern", "property", "config", "action", "default",
        "addresses", "causes", "if", "triggers", "sat", "obs", "history",
        "scenario", "true", "false",
    }
)

_SYMBOLS = {
    "[": "lbrack", "]": "rbrack", "(": "lparen", ")": "rparen",
    "{": "lbrace", "}": "rbrace", "=": "eq", "&": "amp", "-": "minus",
    "@": "at", ",": "comma",
}


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    col: int
    length: int

    def __post_init__(self):
        if self.line < 1 or self.col < 1:
            raise ValueError("spans are 1-based")

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"


@dataclass(frozen=True)
class ParseError:
    span: SourceSpan
    code: str
    message: str
    expected: tuple[str, ...] | None = None

    def __post_init__(self):
        if not self.message:
            raise ValueError("parse errors need a message")

    def __str__(self) -> str:
        return f"{self.span}: {self.code}: {self.message}"


@dataclass(frozen=True)
class Scenario:
    """Named observations at step 0 plus a timed action history."""

    name: str
    observations: frozenset[tuple[SystemProp, bool]] = frozenset()
    history: frozenset[tuple[ActionDecl, int]] = frozenset()

    def observation_map(self) -> dict[SystemProp, bool]:
        return {atom: value for atom, value in self.observations}

    def last_step(self) -> int | None:
        """The latest history step, or None when the history is empty."""
        return max((step for _, step in self.history), default=None)


EMPTY_SCENARIO = Scenario("empty")


@dataclass(frozen=True)
class QueryExpr:
    """A signed fluent at a step, e.g. ``-sat(Functional)@1``."""

    target: SpecLit
    step: int = 0

    def __post_init__(self):
        if self.step < 0:
            raise ValueError("query step must be non-negative")

    def __str__(self) -> str:
        sign = "" if self.target.positive else "-"
        return f"{sign}{self.target.atom}@{self.step}"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    col: int

    @property
    def length(self) -> int:
        return max(len(self.text), 1)


def _lex(text: str, file: str) -> tuple[list[Token], list[ParseError]]:
    tokens: list[Token] = []
    errors: list[ParseError] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isalpha():
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            word = text[i:j]
            if word == "impacts" and j < n and text[j] in "+-":
                kind = "impacts+" if text[j] == "+" else "impacts-"
                tokens.append(Token(kind, text[i : j + 1], line, col))
                col += j + 1 - i
                i = j + 1
            else:
                tokens.append(Token("word", word, line, col))
                col += j - i
                i = j
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            tokens.append(Token("nat", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch == ".":
            kind = "pathdot" if i + 1 < n and text[i + 1].isalpha() else "dot"
            tokens.append(Token(kind, ".", line, col))
            i += 1
            col += 1
            continue
        kind = _SYMBOLS.get(ch)
        if kind is not None:
            tokens.append(Token(kind, ch, line, col))
            i += 1
            col += 1
            continue
        errors.append(
            ParseError(
                SourceSpan(file, line, col, 1),
                "LexError",
                f"unexpected character {ch!r}",
            )
        )
        i += 1
        col += 1
    tokens.append(Token("eof", "", line, col))
    return tokens, errors


# Raw syntax trees carried between the syntactic and semantic phases.
# Targets are ("prop", path_words, name_word) or ("sat", path_words);
# literals are (negative, target); conditions are literal lists.

_RawTarget = tuple
_RawLit = tuple


class _Recover(Exception):
    pass


class _Parser:
    def __init__(self, tokens: list[Token], errors: list[ParseError], file: str):
        self.tokens = tokens
        self.pos = 0
        self.errors = errors
        self.file = file

    @property
    def cur(self) -> Token:
        return self.tokens[self.pos]

    def peek(self, k: int = 1) -> Token:
        return self.tokens[min(self.pos + k, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.cur
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def span(self, tok: Token, length: int | None = None) -> SourceSpan:
        return SourceSpan(self.file, tok.line, tok.col, length or tok.length)

    def span_to(self, first: Token, last: Token) -> SourceSpan:
        if first.line == last.line:
            return SourceSpan(
                self.file, first.line, first.col, last.col + last.length - first.col
            )
        return self.span(first)

    def error(
        self, tok: Token, code: str, message: str, expected: tuple[str, ...] | None = None
    ) -> None:
        self.errors.append(ParseError(self.span(tok), code, message, expected))

    def fail(
        self, tok: Token, message: str, expected: tuple[str, ...] | None = None
    ) -> None:
        self.error(tok, "SyntaxError", message, expected)
        raise _Recover()

    def expect(self, kind: str, what: str) -> Token:
        if self.cur.kind != kind:
            shown = self.cur.text or "end of input"
            self.fail(self.cur, f"expected {what}, found {shown!r}", (what,))
        return self.advance()

    def at_word(self, text: str) -> bool:
        return self.cur.kind == "word" and self.cur.text == text

    def expect_word(self, text: str) -> Token:
        if not self.at_word(text):
            shown = self.cur.text or "end of input"
            self.fail(self.cur, f"expected {text!r}, found {shown!r}", (text,))
        return self.advance()

    def ident(self, what: str) -> Token:
        tok = self.expect("word", what)
        if not is_ident(tok.text):
            self.fail(tok, f"{what} {tok.text!r} is not a plain identifier")
        return tok

    def terminator(self) -> None:
        self.expect("dot", "'.'")

    _SYNC_WORDS = frozenset(
        {"aspect", "concern", "property", "config", "action", "default",
         "obs", "history", "scenario"}
    )

    def sync(self) -> None:
        """Skip past the next terminator, or stop before a fresh declaration."""
        while self.cur.kind not in ("dot", "eof", "rbrace"):
            if self.cur.kind == "word" and self.cur.text in self._SYNC_WORDS:
                return
            self.advance()
        if self.cur.kind == "dot":
            self.advance()

    # -- shared grammar pieces ------------------------------------------------

    def concern_path(self) -> list[Token]:
        words = [self.ident("concern name")]
        while self.cur.kind == "pathdot":
            self.advance()
            words.append(self.ident("concern name"))
        return words

    def prop_atom(self) -> tuple[list[Token], Token]:
        head = self.expect("word", "system path")
        segs: list[str] = head.text.split("_")
        if not all(is_ident(seg) for seg in segs):
            self.fail(head, f"bad system path {head.text!r}")
        self.expect("lbrack", "'['")
        name = self.ident("property name")
        self.expect("rbrack", "']'")
        return [head], name

    def target(self) -> _RawTarget:
        if self.at_word("sat") and self.peek().kind == "lparen":
            self.advance()
            self.advance()
            path = self.concern_path()
            self.expect("rparen", "')'")
            return ("sat", path)
        path, name = self.prop_atom()
        return ("prop", path, name)

    def literal(self) -> _RawLit:
        negative = False
        if self.cur.kind == "minus":
            self.advance()
            negative = True
        return (negative, self.target())

    def condition(self) -> list[_RawLit]:
        lits = [self.literal()]
        while self.cur.kind == "amp":
            self.advance()
            lits.append(self.literal())
        return lits

    def boolean(self) -> bool:
        if self.at_word("true"):
            self.advance()
            return True
        if self.at_word("false"):
            self.advance()
            return False
        shown = self.cur.text or "end of input"
        self.fail(self.cur, f"expected 'true' or 'false', found {shown!r}", ("true", "false"))
        raise AssertionError("unreachable")


# -- domain parsing ------------------------------------------------------------


@dataclass
class _RawDomain:
    aspects: list[Token]
    concerns: list[list[Token]]
    props: list[tuple[list[Token], Token, list[list[Token]], str]]
    actions: list[Token]
    statements: list[tuple]  # (tag, payload..., first_token)


def _parse_domain_syntax(p: _Parser) -> _RawDomain:
    raw = _RawDomain([], [], [], [], [])
    while p.cur.kind != "eof":
        first = p.cur
        try:
            if p.at_word("aspect"):
                p.advance()
                raw.aspects.append(p.ident("aspect name"))
                p.terminator()
            elif p.at_word("concern"):
                p.advance()
                raw.concerns.append(p.concern_path())
                p.terminator()
            elif p.at_word("property") or p.at_word("config"):
                kind = PROPERTY if p.cur.text == "property" else CONFIGURATION
                p.advance()
                path, name = p.prop_atom()
                addresses: list[list[Token]] = []
                if p.at_word("addresses"):
                    if kind == CONFIGURATION:
                        p.fail(p.cur, "configurations may not address concerns")
                    p.advance()
                    addresses.append(p.concern_path())
                    while p.cur.kind == "comma":
                        p.advance()
                        addresses.append(p.concern_path())
                p.terminator()
                raw.props.append((path, name, addresses, kind))
            elif p.at_word("action"):
                p.advance()
                raw.actions.append(p.ident("action name"))
                p.terminator()
            elif p.at_word("default"):
                p.advance()
                tgt = p.target()
                p.expect("eq", "'='")
                value = p.boolean()
                p.terminator()
                raw.statements.append(("default", tgt, value, first))
            elif p.cur.kind == "word" and p.peek().kind == "word" and p.peek().text == "causes":
                action = p.ident("action name")
                p.advance()  # causes
                effect = p.literal()
                cond: list[_RawLit] = []
                if p.at_word("if"):
                    p.advance()
                    cond = p.condition()
                p.terminator()
                raw.statements.append(("causes", action, effect, cond, first))
            elif p.cur.kind in ("word", "minus"):
                cond = p.condition()
                if p.cur.kind in ("impacts+", "impacts-"):
                    positive = p.advance().kind == "impacts+"
                    path, name = p.prop_atom()
                    p.terminator()
                    raw.statements.append(("impacts", cond, positive, (path, name), first))
                elif p.at_word("triggers"):
                    p.advance()
                    action = p.ident("action name")
                    p.terminator()
                    raw.statements.append(("triggers", cond, action, first))
                else:
                    shown = p.cur.text or "end of input"
                    p.fail(
                        p.cur,
                        f"expected 'impacts+', 'impacts-' or 'triggers', found {shown!r}",
                        ("impacts+", "impacts-", "triggers"),
                    )
            else:
                shown = p.cur.text or "end of input"
                p.fail(first, f"expected a declaration, found {shown!r}")
        except _Recover:
            p.sync()
    return raw


class _DomainBuilder:
    """Semantic phase: resolve names, build the spec, map entities to spans."""

    def __init__(self, raw: _RawDomain, p: _Parser, errors: list[ParseError]):
        self.raw = raw
        self.p = p
        self.errors = errors
        self.entity_spans: dict[str, SourceSpan] = {}

    def note(self, entity: str, span: SourceSpan) -> None:
        self.entity_spans.setdefault(entity, span)

    def err(self, span: SourceSpan, code: str, message: str) -> None:
        self.errors.append(ParseError(span, code, message))

    def build(self) -> DomainSpec:
        p = self.p
        aspect_names: list[str] = []
        for tok in self.raw.aspects:
            self.note(tok.text, p.span(tok))
            if tok.text not in aspect_names:
                aspect_names.append(tok.text)

        concern_paths: list[tuple[str, ...]] = []
        for words in self.raw.concerns:
            path = tuple(w.text for w in words)
            span = p.span_to(words[0], words[-1])
            node = ConcernId(path)
            for prefix in node.prefixes():
                self.note(str(prefix), span)
            concern_paths.append(path)
        forest = ConcernForest.from_paths(aspect_names, concern_paths)

        props: dict[str, SystemProp] = {}
        links: list[AddressLink] = []
        for path_words, name_tok, addresses, kind in self.raw.props:
            prop = SystemProp(tuple(path_words[0].text.split("_")), name_tok.text, kind)
            span = p.span_to(path_words[0], name_tok)
            self.note(str(prop), span)
            seen = props.get(str(prop))
            if seen is not None and seen.kind != kind:
                self.err(
                    span,
                    "DuplicateProperty",
                    f"{prop} declared both as property and configuration",
                )
                continue
            props.setdefault(str(prop), prop)
            for words in addresses:
                concern = self._resolve_concern(forest, words, allow_all=False)
                if concern is not None:
                    links.append(AddressLink(concern, prop))

        actions: dict[str, ActionDecl] = {}
        for tok in self.raw.actions:
            self.note(tok.text, p.span(tok))
            if tok.text in actions:
                self.err(p.span(tok), "DuplicateAction", f"action {tok.text} declared twice")
                continue
            actions[tok.text] = ActionDecl(tok.text)

        statements: list[Statement] = []
        for item in self.raw.statements:
            stmt = self._build_statement(item, forest, props, actions)
            if stmt is not None:
                statements.append(stmt)
                self.note(type(stmt).__name__, self.p.span(item[-1]))

        spec = DomainSpec.build(
            forest, props.values(), links, actions.values(), statements
        )
        if not self.errors:
            report = validate(spec)
            fallback = SourceSpan(p.file, 1, 1, 1)
            for issue in report.errors:
                self.errors.append(
                    ParseError(
                        self.entity_spans.get(issue.entity, fallback),
                        issue.code,
                        issue.message,
                    )
                )
        return spec

    def _resolve_concern(
        self, forest: ConcernForest, words: list[Token], allow_all: bool
    ) -> ConcernId | None:
        path = tuple(w.text for w in words)
        span = self.p.span_to(words[0], words[-1])
        if path == ALL.path:
            if allow_all:
                return ALL
            self.err(span, "ReservedName", "'all' cannot be addressed directly")
            return None
        try:
            concern = forest.resolve(path)
        except AmbiguousConcernError as exc:
            self.err(span, "AmbiguousConcern", exc.message)
            return None
        except UnknownConcernError as exc:
            self.err(span, "UnknownConcern", exc.message)
            return None
        self.note(str(concern), span)
        return concern

    def _resolve_target(
        self,
        tgt: _RawTarget,
        forest: ConcernForest,
        props: dict[str, SystemProp],
    ) -> Atom | None:
        if tgt[0] == "sat":
            concern = self._resolve_concern(forest, tgt[1], allow_all=True)
            if concern is None:
                return None
            return SAT_ALL if concern == ALL else SatAtom(concern)
        path_words, name_tok = tgt[1], tgt[2]
        rendered = f"{path_words[0].text}[{name_tok.text}]"
        prop = props.get(rendered)
        if prop is None:
            span = self.p.span_to(path_words[0], name_tok)
            self.err(span, "UnknownProperty", f"undeclared property {rendered}")
            return None
        return prop

    def _resolve_prop(
        self, raw: tuple, props: dict[str, SystemProp]
    ) -> SystemProp | None:
        path_words, name_tok = raw
        rendered = f"{path_words[0].text}[{name_tok.text}]"
        prop = props.get(rendered)
        if prop is None:
            span = self.p.span_to(path_words[0], name_tok)
            self.err(span, "UnknownProperty", f"undeclared property {rendered}")
        return prop

    def _resolve_condition(
        self,
        raw: list[_RawLit],
        forest: ConcernForest,
        props: dict[str, SystemProp],
        span: SourceSpan,
    ) -> Condition | None:
        lits: list[SpecLit] = []
        for negative, tgt in raw:
            atom = self._resolve_target(tgt, forest, props)
            if atom is None:
                return None
            lits.append(SpecLit(atom, not negative))
        cond = Condition(frozenset(lits))
        if cond.is_contradictory:
            self.err(span, "ContradictoryCondition", "condition contains a literal and its negation")
            return None
        return cond

    def _resolve_action(
        self, tok: Token, actions: dict[str, ActionDecl]
    ) -> ActionDecl | None:
        action = actions.get(tok.text)
        if action is None:
            self.err(self.p.span(tok), "UnknownAction", f"undeclared action {tok.text}")
        return action

    def _build_statement(
        self,
        item: tuple,
        forest: ConcernForest,
        props: dict[str, SystemProp],
        actions: dict[str, ActionDecl],
    ) -> Statement | None:
        p = self.p
        tag = item[0]
        first: Token = item[-1]
        stmt_span = p.span(first)
        if tag == "default":
            _, tgt, value, _ = item
            atom = self._resolve_target(tgt, forest, props)
            if atom is None:
                return None
            self.note(str(atom), stmt_span)
            return Default(atom, value)
        if tag == "impacts":
            _, raw_cond, positive, raw_target, _ = item
            cond = self._resolve_condition(raw_cond, forest, props, stmt_span)
            target = self._resolve_prop(raw_target, props)
            if cond is None or target is None:
                return None
            return Impacts(cond, positive, target)
        if tag == "causes":
            _, action_tok, raw_effect, raw_cond, _ = item
            action = self._resolve_action(action_tok, actions)
            negative, raw_tgt = raw_effect
            atom = self._resolve_target(raw_tgt, forest, props)
            cond = (
                self._resolve_condition(raw_cond, forest, props, stmt_span)
                if raw_cond
                else Condition()
            )
            if action is None or atom is None or cond is None:
                return None
            return Causes(action, SpecLit(atom, not negative), cond)
        if tag == "triggers":
            _, raw_cond, action_tok, _ = item
            cond = self._resolve_condition(raw_cond, forest, props, stmt_span)
            action = self._resolve_action(action_tok, actions)
            if cond is None or action is None:
                return None
            return Triggers(cond, action)
        raise AssertionError(f"unknown statement tag {tag!r}")


def parse_domain(
    text: str, filename: str = "<domain>"
) -> Union[DomainSpec, list[ParseError]]:
    """Parse domain text into a validated spec, or a list of errors."""
    tokens, errors = _lex(text, filename)
    p = _Parser(tokens, errors, filename)
    raw = _parse_domain_syntax(p)
    spec = _DomainBuilder(raw, p, errors).build()
    if errors:
        return sorted(errors, key=lambda e: (e.span.line, e.span.col))
    return spec


# -- scenario parsing ----------------------------------------------------------


def parse_scenario(
    text: str, spec: DomainSpec, filename: str = "<scenario>"
) -> Union[Scenario, list[ParseError]]:
    """Parse scenario text against a validated spec, or return errors."""
    tokens, errors = _lex(text, filename)
    p = _Parser(tokens, errors, filename)
    name = "scenario"
    raw_obs: list[tuple[tuple, bool, SourceSpan]] = []
    raw_hist: list[tuple[Token, int]] = []
    try:
        p.expect_word("scenario")
        name = p.ident("scenario name").text
        p.expect("lbrace", "'{'")
    except _Recover:
        p.sync()
    while p.cur.kind not in ("rbrace", "eof"):
        try:
            if p.at_word("obs"):
                p.advance()
                path, prop_name = p.prop_atom()
                span = p.span_to(path[0], prop_name)
                p.expect("eq", "'='")
                value = p.boolean()
                p.terminator()
                raw_obs.append(((path, prop_name), value, span))
            elif p.at_word("history"):
                p.advance()
                action = p.ident("action name")
                p.expect("at", "'@'")
                step = int(p.expect("nat", "step number").text)
                p.terminator()
                raw_hist.append((action, step))
            else:
                shown = p.cur.text or "end of input"
                p.fail(p.cur, f"expected 'obs' or 'history', found {shown!r}")
        except _Recover:
            p.sync()
    try:
        p.expect("rbrace", "'}'")
        p.expect("eof", "end of input")
    except _Recover:
        pass

    observed: dict[SystemProp, tuple[bool, SourceSpan]] = {}
    for (path, prop_name), value, span in raw_obs:
        rendered = f"{path[0].text}[{prop_name.text}]"
        prop = spec.property_named(rendered)
        if prop is None:
            errors.append(
                ParseError(span, "UnknownAtom", f"observation of undeclared {rendered}")
            )
            continue
        seen = observed.get(prop)
        if seen is not None and seen[0] != value:
            errors.append(
                ParseError(
                    span,
                    "ContradictoryObs",
                    f"{prop} observed both true and false",
                )
            )
            continue
        observed.setdefault(prop, (value, span))
    history: set[tuple[ActionDecl, int]] = set()
    for action_tok, step in raw_hist:
        action = spec.action_named(action_tok.text)
        if action is None:
            errors.append(
                ParseError(
                    p.span(action_tok),
                    "UnknownAction",
                    f"undeclared action {action_tok.text}",
                )
            )
            continue
        history.add((action, step))
    if errors:
        return sorted(errors, key=lambda e: (e.span.line, e.span.col))
    return Scenario(
        name,
        frozenset((prop, value) for prop, (value, _) in observed.items()),
        frozenset(history),
    )


# -- query parsing -------------------------------------------------------------


def parse_query(text: str, spec: DomainSpec, filename: str = "<query>") -> QueryExpr:
    """Parse ``[-]target[@step]`` against the spec; raises on any error."""
    tokens, errors = _lex(text, filename)
    if errors:
        raise QuerySyntaxError(str(errors[0]))
    p = _Parser(tokens, errors, filename)
    try:
        negative = False
        if p.cur.kind == "minus":
            p.advance()
            negative = True
        raw = p.target()
        step = 0
        if p.cur.kind == "at":
            p.advance()
            step = int(p.expect("nat", "step number").text)
        p.expect("eof", "end of query")
    except _Recover:
        raise QuerySyntaxError(str(errors[0])) from None
    if raw[0] == "sat":
        path = tuple(w.text for w in raw[1])
        if path == ALL.path:
            atom: Atom = SAT_ALL
        else:
            atom = SatAtom(spec.forest.resolve(path))
    else:
        rendered = f"{raw[1][0].text}[{raw[2].text}]"
        prop = spec.property_named(rendered)
        if prop is None:
            raise UnknownAtomError(f"unknown atom in query: {rendered}")
        atom = prop
    return QueryExpr(SpecLit(atom, not negative), step)


# -- canonical rendering ---------------------------------------------------------


def _render_lit(lit: SpecLit) -> str:
    return ("" if lit.positive else "-") + str(lit.atom)


def _render_cond(cond: Condition) -> str:
    return " & ".join(_render_lit(lit) for lit in cond)


def _render_statement(stmt: Statement) -> str:
    if isinstance(stmt, Default):
        value = "true" if stmt.value else "false"
        return f"default {stmt.target} = {value}."
    if isinstance(stmt, Impacts):
        op = "impacts+" if stmt.positive else "impacts-"
        return f"{_render_cond(stmt.condition)} {op} {stmt.target}."
    if isinstance(stmt, Causes):
        line = f"{stmt.action.name} causes {_render_lit(stmt.effect)}"
        if not stmt.condition.is_empty:
            line += f" if {_render_cond(stmt.condition)}"
        return line + "."
    if isinstance(stmt, Triggers):
        return f"{_render_cond(stmt.condition)} triggers {stmt.action.name}."
    raise AssertionError(f"unknown statement {stmt!r}")


def render_domain(spec: DomainSpec) -> str:
    """Canonical text: sorted declarations, statements in original order."""
    lines = ["# cpsf domain"]
    forest = spec.forest
    for aspect in sorted(forest.aspects):
        lines.append(f"aspect {aspect}.")
    parents = {parent for parent, _ in forest.edges}
    leaves = sorted(
        c for c in forest.concerns if c not in parents and not c.is_root
    )
    for concern in leaves:
        lines.append(f"concern {concern.dotted}.")
    by_prop: dict[str, list[ConcernId]] = {}
    for link in spec.links:
        by_prop.setdefault(str(link.property), []).append(link.concern)
    for prop in sorted(spec.properties, key=str):
        if prop.is_config:
            continue
        addresses = sorted(by_prop.get(str(prop), ()))
        suffix = (
            " addresses " + ", ".join(c.dotted for c in addresses) if addresses else ""
        )
        lines.append(f"property {prop}{suffix}.")
    for prop in sorted(spec.properties, key=str):
        if prop.is_config:
            lines.append(f"config {prop}.")
    for action in sorted(spec.declared_actions(), key=lambda a: a.name):
        lines.append(f"action {action.name}.")
    for stmt in spec.statements:
        lines.append(_render_statement(stmt))
    return "\n".join(lines) + "\n"


def render_scenario(scenario: Scenario) -> str:
    """Canonical text: observations sorted by atom, history by step then name."""
    lines = ["# cpsf scenario", f"scenario {scenario.name} {{"]
    for atom, value in sorted(scenario.observations, key=lambda o: str(o[0])):
        lines.append(f"  obs {atom} = {'true' if value else 'false'}.")
    for action, step in sorted(scenario.history, key=lambda h: (h[1], h[0].name)):
        if action.origin != DECLARED:
            raise CpsfError(
                f"{action.name} has no textual form", code="UnrenderableAction"
            )
        lines.append(f"  history {action.name} @ {step}.")
    lines.append("}")
    return "\n".join(lines) + "\n"


def format_errors(errors: Iterable[ParseError]) -> str:
    return "\n".join(str(e) for e in errors)


__all__ = [
    "SourceSpan",
    "ParseError",
    "Scenario",
    "EMPTY_SCENARIO",
    "QueryExpr",
    "parse_domain",
    "parse_scenario",
    "parse_query",
    "render_domain",
    "render_scenario",
    "format_errors",
    "KEYWORDS",
]
