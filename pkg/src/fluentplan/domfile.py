"""Reading and writing planning problems as s-expression documents.

A document is a flat sequence of forms::

    (problem NAME)
    (sorts (SORT CONST ...) ...)
    (fluents (SYMBOL SORT ... [:distinct]) ...)
    (action NAME [:params ((VAR SORT) ...)] [:args (CONST ...)]
            :pre (ATOM ...) :neg-pre (ATOM ...)
            :add (ATOM ...) :del (ATOM ...))
    (init ATOM ...)
    (goal FORMULA)

where an ATOM is ``(symbol constant ...)`` and a goal FORMULA combines
atoms with ``and``/``or``/``not``.  ``;`` starts a line comment.  The
fluent universe is the grounding of the declared signatures over their
sorts; ``:distinct`` drops instances that repeat a constant.  Actions
with ``:params`` are schemas and are ground over the declared sorts;
instances whose effects or preconditions turn contradictory under a
binding (the same fluent added and deleted, or required and forbidden)
are silently dropped.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .domain import (
    Fluent,
    Goal,
    GoalAnd,
    GoalAtom,
    GoalNot,
    GoalOr,
    GroundAction,
    Problem,
    Sort,
    validate_problem,
)


class DomainSyntaxError(Exception):
    """Malformed document text."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class DomainValidationError(Exception):
    """Structurally valid document describing an inconsistent problem."""

    def __init__(self, diagnostics: list[str]):
        super().__init__("; ".join(diagnostics))
        self.diagnostics = diagnostics


@dataclass
class _Token:
    text: str
    line: int
    col: int


class _SList(list):
    """A parsed parenthesized form, remembering where it started."""

    def __init__(self, items, line: int, col: int):
        super().__init__(items)
        self.line = line
        self.col = col


def _tokenize(text: str) -> list[_Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
        elif ch in " \t\r":
            col += 1
            i += 1
        elif ch == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif ch in "()":
            tokens.append(_Token(ch, line, col))
            col += 1
            i += 1
        else:
            j = i
            while j < n and text[j] not in " \t\r\n();":
                j += 1
            tokens.append(_Token(text[i:j], line, col))
            col += j - i
            i = j
    return tokens


def _read_forms(text: str) -> list:
    tokens = _tokenize(text)
    pos = 0

    def read_form():
        nonlocal pos
        tok = tokens[pos]
        if tok.text == "(":
            pos += 1
            items = []
            while True:
                if pos >= len(tokens):
                    raise DomainSyntaxError("unclosed parenthesis", tok.line, tok.col)
                if tokens[pos].text == ")":
                    pos += 1
                    return _SList(items, tok.line, tok.col)
                items.append(read_form())
        if tok.text == ")":
            raise DomainSyntaxError("unexpected ')'", tok.line, tok.col)
        pos += 1
        return tok

    forms = []
    while pos < len(tokens):
        forms.append(read_form())
    return forms


def _expect_list(form, what: str) -> _SList:
    if not isinstance(form, _SList):
        raise DomainSyntaxError(f"expected {what}", form.line, form.col)
    return form


def _expect_symbol(form, what: str) -> _Token:
    if not isinstance(form, _Token):
        raise DomainSyntaxError(f"expected {what}", form.line, form.col)
    return form


@dataclass
class _FluentDecl:
    symbol: str
    arg_sorts: tuple[str, ...]
    distinct: bool


class _Parser:
    def __init__(self, text: str):
        self.forms = _read_forms(text)
        self.name = "unnamed"
        self.sorts: list[Sort] = []
        self.sort_map: dict[str, Sort] = {}
        self.decls: list[_FluentDecl] = []
        self.decl_map: dict[str, _FluentDecl] = {}
        self.universe: list[Fluent] = []
        self.universe_set: set[Fluent] = set()
        self.actions: list[GroundAction] = []
        self.init: set[Fluent] = set()
        self.goal: Goal = GoalAnd(())
        self.diagnostics: list[str] = []

    def parse(self) -> Problem:
        # declarations must be seen before use, so handle forms in order
        for form in self.forms:
            form = _expect_list(form, "a top-level form")
            if not form:
                raise DomainSyntaxError("empty form", form.line, form.col)
            head = _expect_symbol(form[0], "a form name")
            handler = {
                "problem": self._parse_problem,
                "sorts": self._parse_sorts,
                "fluents": self._parse_fluents,
                "action": self._parse_action,
                "init": self._parse_init,
                "goal": self._parse_goal,
            }.get(head.text)
            if handler is None:
                raise DomainSyntaxError(
                    f"unknown form ({head.text} ...)", head.line, head.col
                )
            handler(form)
        problem = Problem(
            name=self.name,
            sorts=tuple(self.sorts),
            fluents=tuple(self.universe),
            actions=tuple(self.actions),
            init=frozenset(self.init),
            goal=self.goal,
        )
        diags = list(dict.fromkeys(self.diagnostics + validate_problem(problem)))
        if diags:
            raise DomainValidationError(diags)
        return problem

    def _parse_problem(self, form: _SList) -> None:
        if len(form) != 2:
            raise DomainSyntaxError("(problem NAME) takes one name", form.line, form.col)
        self.name = _expect_symbol(form[1], "a problem name").text

    def _parse_sorts(self, form: _SList) -> None:
        for entry in form[1:]:
            entry = _expect_list(entry, "(SORT CONST ...)")
            if not entry:
                raise DomainSyntaxError("empty sort declaration", entry.line, entry.col)
            name = _expect_symbol(entry[0], "a sort name").text
            constants = tuple(
                _expect_symbol(t, "a constant").text for t in entry[1:]
            )
            sort = Sort(name, constants)
            self.sorts.append(sort)
            self.sort_map[name] = sort

    def _parse_fluents(self, form: _SList) -> None:
        for entry in form[1:]:
            entry = _expect_list(entry, "(SYMBOL SORT ...)")
            if not entry:
                raise DomainSyntaxError(
                    "empty fluent declaration", entry.line, entry.col
                )
            symbol = _expect_symbol(entry[0], "a fluent symbol").text
            rest = [_expect_symbol(t, "a sort name or :distinct") for t in entry[1:]]
            distinct = any(t.text == ":distinct" for t in rest)
            arg_sorts = []
            for tok in rest:
                if tok.text == ":distinct":
                    continue
                if tok.text not in self.sort_map:
                    raise DomainSyntaxError(
                        f"unknown sort {tok.text}", tok.line, tok.col
                    )
                arg_sorts.append(tok.text)
            decl = _FluentDecl(symbol, tuple(arg_sorts), distinct)
            if symbol in self.decl_map:
                self.diagnostics.append(f"fluent symbol {symbol} declared twice")
                continue
            self.decls.append(decl)
            self.decl_map[symbol] = decl
            for combo in itertools.product(
                *(self.sort_map[s].constants for s in decl.arg_sorts)
            ):
                if distinct and len(set(combo)) != len(combo):
                    continue
                fluent = Fluent(symbol, tuple(zip(decl.arg_sorts, combo)))
                self.universe.append(fluent)
                self.universe_set.add(fluent)

    def _atom(self, form, bindings: dict[str, str]) -> Fluent | None:
        form = _expect_list(form, "an atom (symbol constant ...)")
        if not form:
            raise DomainSyntaxError("empty atom", form.line, form.col)
        head = _expect_symbol(form[0], "a fluent symbol")
        decl = self.decl_map.get(head.text)
        if decl is None:
            self.diagnostics.append(
                f"unknown fluent symbol {head.text} (line {head.line})"
            )
            return None
        terms = [_expect_symbol(t, "a constant or parameter").text for t in form[1:]]
        if len(terms) != len(decl.arg_sorts):
            self.diagnostics.append(
                f"fluent {head.text} expects {len(decl.arg_sorts)} arguments, "
                f"got {len(terms)} (line {head.line})"
            )
            return None
        constants = tuple(bindings.get(t, t) for t in terms)
        return Fluent(decl.symbol, tuple(zip(decl.arg_sorts, constants)))

    def _parse_action(self, form: _SList) -> None:
        if len(form) < 2:
            raise DomainSyntaxError("(action NAME ...) needs a name", form.line, form.col)
        name = _expect_symbol(form[1], "an action name").text
        sections: dict[str, list] = {}
        params: list[tuple[str, str]] = []
        args: tuple[str, ...] = ()
        i = 2
        while i < len(form):
            key = _expect_symbol(form[i], "a section keyword")
            if i + 1 >= len(form):
                raise DomainSyntaxError(
                    f"section {key.text} has no body", key.line, key.col
                )
            body = _expect_list(form[i + 1], f"the body of {key.text}")
            if key.text == ":params":
                for p in body:
                    p = _expect_list(p, "(VAR SORT)")
                    if len(p) != 2:
                        raise DomainSyntaxError("expected (VAR SORT)", p.line, p.col)
                    var = _expect_symbol(p[0], "a parameter name").text
                    sort = _expect_symbol(p[1], "a sort name")
                    if sort.text not in self.sort_map:
                        raise DomainSyntaxError(
                            f"unknown sort {sort.text}", sort.line, sort.col
                        )
                    params.append((var, sort.text))
            elif key.text == ":args":
                args = tuple(_expect_symbol(t, "a constant").text for t in body)
            elif key.text in (":pre", ":neg-pre", ":add", ":del"):
                sections[key.text] = list(body)
            else:
                raise DomainSyntaxError(
                    f"unknown action section {key.text}", key.line, key.col
                )
            i += 2

        if params and args:
            raise DomainSyntaxError(
                "an action takes :params or :args, not both", form.line, form.col
            )

        all_constants = {c for s in self.sorts for c in s.constants}
        for var, _ in params:
            if var in all_constants:
                self.diagnostics.append(
                    f"action {name}: parameter {var} shadows a constant"
                )

        combos: list[tuple[str, ...]]
        if params:
            combos = list(
                itertools.product(
                    *(self.sort_map[s].constants for _, s in params)
                )
            )
        else:
            combos = [args]
        for combo in combos:
            bindings = {var: const for (var, _), const in zip(params, combo)}
            groups = {}
            broken = False  # atom failed to resolve; diagnostics already recorded
            excluded = False  # instance refers to a :distinct-excluded fluent
            for section in (":pre", ":neg-pre", ":add", ":del"):
                fluents = []
                for atom_form in sections.get(section, []):
                    fluent = self._atom(atom_form, bindings)
                    if fluent is None:
                        broken = True
                        continue
                    if fluent not in self.universe_set and self._excluded(fluent):
                        excluded = True
                    fluents.append(fluent)
                groups[section] = frozenset(fluents)
            if broken or excluded:
                continue
            if params and (
                groups[":add"] & groups[":del"] or groups[":pre"] & groups[":neg-pre"]
            ):
                continue  # contradictory instance of a schema
            self.actions.append(
                GroundAction(
                    name=name,
                    args=combo,
                    pre_pos=groups[":pre"],
                    pre_neg=groups[":neg-pre"],
                    adds=groups[":add"],
                    dels=groups[":del"],
                )
            )

    def _excluded(self, fluent: Fluent) -> bool:
        decl = self.decl_map.get(fluent.symbol)
        if decl is None or not decl.distinct:
            return False
        constants = fluent.constants
        return len(set(constants)) != len(constants) and all(
            const in self.sort_map[sort].constants for sort, const in fluent.args
        )

    def _parse_init(self, form: _SList) -> None:
        for atom_form in form[1:]:
            fluent = self._atom(atom_form, {})
            if fluent is not None:
                self.init.add(fluent)

    def _parse_goal(self, form: _SList) -> None:
        if len(form) != 2:
            raise DomainSyntaxError("(goal FORMULA) takes one formula", form.line, form.col)
        self.goal = self._formula(form[1])

    def _formula(self, form) -> Goal:
        form = _expect_list(form, "a goal formula")
        if form and isinstance(form[0], _Token) and form[0].text in ("and", "or", "not"):
            head = form[0].text
            if head == "not":
                if len(form) != 2:
                    raise DomainSyntaxError("(not ...) takes one formula", form.line, form.col)
                return GoalNot(self._formula(form[1]))
            children = tuple(self._formula(f) for f in form[1:])
            return GoalAnd(children) if head == "and" else GoalOr(children)
        fluent = self._atom(form, {})
        if fluent is None:
            # recorded as a diagnostic; a placeholder keeps parsing going
            return GoalAnd(())
        return GoalAtom(fluent)


def parse_domain(text: str) -> Problem:
    """Parse, ground, and validate a domain document."""
    return _Parser(text).parse()


def load_domain(path: str) -> Problem:
    with open(path, encoding="utf-8") as handle:
        return parse_domain(handle.read())


# -- printing ---------------------------------------------------------------


def _atom_text(fluent: Fluent) -> str:
    return "(" + " ".join((fluent.symbol,) + fluent.constants) + ")"


def _goal_text(goal: Goal) -> str:
    if isinstance(goal, GoalAtom):
        return _atom_text(goal.fluent)
    if isinstance(goal, GoalNot):
        return f"(not {_goal_text(goal.child)})"
    head = "and" if isinstance(goal, GoalAnd) else "or"
    inner = " ".join(_goal_text(c) for c in goal.children)
    return f"({head} {inner})" if inner else f"({head})"


def format_domain(problem: Problem) -> str:
    """Render a ground problem as a document that parses back to it.

    Requires the fluent universe to be in declaration order (grouped by
    symbol, constants varying row-major), which holds for everything this
    package generates or parses.
    """
    sort_map = {s.name: s for s in problem.sorts}
    decls: list[tuple[str, tuple[str, ...], bool]] = []
    seen: dict[str, list[Fluent]] = {}
    order: list[str] = []
    for fl in problem.fluents:
        if fl.symbol not in seen:
            seen[fl.symbol] = []
            order.append(fl.symbol)
        seen[fl.symbol].append(fl)
    rebuilt: list[Fluent] = []
    for symbol in order:
        group = seen[symbol]
        arg_sorts = group[0].arg_sorts
        full = [
            Fluent(symbol, tuple(zip(arg_sorts, combo)))
            for combo in itertools.product(
                *(sort_map[s].constants for s in arg_sorts)
            )
        ]
        no_repeat = [f for f in full if len(set(f.constants)) == len(f.constants)]
        if group == full:
            distinct = False
        elif group == no_repeat:
            distinct = True
        else:
            raise ValueError(
                f"fluents of {symbol} are not the grounding of one declaration"
            )
        decls.append((symbol, arg_sorts, distinct))
        rebuilt.extend(group)
    if tuple(rebuilt) != problem.fluents:
        raise ValueError("fluent universe is not in declaration order")

    lines = [f"(problem {problem.name})"]
    lines.append(
        "(sorts "
        + " ".join(f"({s.name} {' '.join(s.constants)})" for s in problem.sorts)
        + ")"
    )
    decl_texts = []
    for symbol, arg_sorts, distinct in decls:
        parts = [symbol, *arg_sorts] + ([":distinct"] if distinct else [])
        decl_texts.append("(" + " ".join(parts) + ")")
    lines.append("(fluents " + " ".join(decl_texts) + ")")

    position = {fl: i for i, fl in enumerate(problem.fluents)}

    def atoms(group: frozenset) -> str:
        return "(" + " ".join(
            _atom_text(fl) for fl in sorted(group, key=position.__getitem__)
        ) + ")"

    for action in problem.actions:
        lines.append(
            f"(action {action.name} :args ({' '.join(action.args)})\n"
            f"  :pre {atoms(action.pre_pos)} :neg-pre {atoms(action.pre_neg)}\n"
            f"  :add {atoms(action.adds)} :del {atoms(action.dels)})"
        )
    init_atoms = " ".join(
        _atom_text(fl) for fl in sorted(problem.init, key=position.__getitem__)
    )
    lines.append(f"(init {init_atoms})")
    lines.append(f"(goal {_goal_text(problem.goal)})")
    return "\n".join(lines) + "\n"
