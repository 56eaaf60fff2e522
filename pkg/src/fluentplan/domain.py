"""Ground planning problems over propositional fluents.

A state is a duplicate-free set of ground fluents; an action removes its
delete set and adds its add set, and is applicable when its positive
preconditions hold and its negative ones do not.  Effect sets are required
to be consistent with the preconditions (deletes must hold before, adds
must not), which makes the successor state unique and well defined.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union


@dataclass(frozen=True)
class Sort:
    """A named finite set of constants."""

    name: str
    constants: tuple[str, ...]


@dataclass(frozen=True)
class Fluent:
    """A ground atom; each argument carries its sort name and constant."""

    symbol: str
    args: tuple[tuple[str, str], ...] = ()

    @property
    def constants(self) -> tuple[str, ...]:
        return tuple(c for _, c in self.args)

    @property
    def arg_sorts(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.args)

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return f"{self.symbol}({','.join(self.constants)})"


# a state: duplicate-free by construction
GroundState = frozenset


@dataclass(frozen=True)
class GroundAction:
    """One ground action: preconditions plus add/delete effect sets."""

    name: str
    args: tuple[str, ...] = ()
    pre_pos: frozenset = frozenset()
    pre_neg: frozenset = frozenset()
    adds: frozenset = frozenset()
    dels: frozenset = frozenset()

    def __str__(self) -> str:
        if not self.args:
            return self.name
        return f"{self.name}({','.join(self.args)})"


#: Identity action: applicable everywhere, changes nothing.
NOOP = GroundAction(name="noop")


@dataclass(frozen=True)
class GoalAtom:
    fluent: Fluent


@dataclass(frozen=True)
class GoalNot:
    child: "Goal"


@dataclass(frozen=True)
class GoalAnd:
    children: tuple["Goal", ...] = ()


@dataclass(frozen=True)
class GoalOr:
    children: tuple["Goal", ...] = ()


Goal = Union[GoalAtom, GoalNot, GoalAnd, GoalOr]


@dataclass(frozen=True)
class Problem:
    """A fully ground planning problem."""

    name: str
    sorts: tuple[Sort, ...]
    fluents: tuple[Fluent, ...]
    actions: tuple[GroundAction, ...]
    init: frozenset
    goal: Goal


def goal_atoms(goal: Goal) -> set[Fluent]:
    """All fluents mentioned in a goal formula."""
    if isinstance(goal, GoalAtom):
        return {goal.fluent}
    if isinstance(goal, GoalNot):
        return goal_atoms(goal.child)
    out: set[Fluent] = set()
    for child in goal.children:
        out |= goal_atoms(child)
    return out


def eval_goal(goal: Goal, state: frozenset) -> bool:
    """Evaluate a goal formula against a state (atom == membership)."""
    if isinstance(goal, GoalAtom):
        return goal.fluent in state
    if isinstance(goal, GoalNot):
        return not eval_goal(goal.child, state)
    if isinstance(goal, GoalAnd):
        return all(eval_goal(c, state) for c in goal.children)
    if isinstance(goal, GoalOr):
        return any(eval_goal(c, state) for c in goal.children)
    raise TypeError(f"not a goal formula: {goal!r}")


def apply_action(state: frozenset, action: GroundAction) -> frozenset | None:
    """Successor state, or None when the action is inapplicable.

    Applicable iff pre_pos is a subset of the state and pre_neg is
    disjoint from it; the successor is (state - dels) | adds.
    """
    if not action.pre_pos <= state:
        return None
    if action.pre_neg & state:
        return None
    return (state - action.dels) | action.adds


def validate_problem(problem: Problem) -> list[str]:
    """Check all structural invariants; returns diagnostics (empty == ok)."""
    diags: list[str] = []
    sort_consts: dict[str, tuple[str, ...]] = {}
    for sort in problem.sorts:
        if sort.name in sort_consts:
            diags.append(f"sort {sort.name}: declared twice")
        if not sort.constants:
            diags.append(f"sort {sort.name}: empty")
        if len(set(sort.constants)) != len(sort.constants):
            diags.append(f"sort {sort.name}: duplicate constants")
        sort_consts[sort.name] = sort.constants

    universe = set(problem.fluents)
    if len(universe) != len(problem.fluents):
        diags.append("fluent universe contains duplicates")
    signatures: dict[str, tuple[str, ...]] = {}
    for fl in problem.fluents:
        sig = signatures.setdefault(fl.symbol, fl.arg_sorts)
        if sig != fl.arg_sorts:
            diags.append(f"fluent {fl}: signature differs from other {fl.symbol} fluents")
        for sort_name, const in fl.args:
            consts = sort_consts.get(sort_name)
            if consts is None:
                diags.append(f"fluent {fl}: unknown sort {sort_name}")
            elif const not in consts:
                diags.append(f"fluent {fl}: constant {const} not in sort {sort_name}")

    for fl in problem.init - universe:
        diags.append(f"init: unknown fluent {fl}")

    for action in problem.actions:
        where = f"action {action}"
        for group, label in (
            (action.pre_pos, "precondition"),
            (action.pre_neg, "negative precondition"),
            (action.adds, "add effect"),
            (action.dels, "delete effect"),
        ):
            for fl in group - universe:
                diags.append(f"{where}: unknown fluent {fl} in {label}")
        overlap = action.adds & action.dels
        if overlap:
            diags.append(f"{where}: overlapping effects {sorted(map(str, overlap))}")
        if not action.dels <= action.pre_pos:
            missing = action.dels - action.pre_pos
            diags.append(
                f"{where}: delete effects {sorted(map(str, missing))} "
                "not guarded by positive preconditions"
            )
        if not action.adds <= action.pre_neg:
            missing = action.adds - action.pre_neg
            diags.append(
                f"{where}: add effects {sorted(map(str, missing))} "
                "not guarded by negative preconditions"
            )

    for fl in goal_atoms(problem.goal) - universe:
        diags.append(f"goal: unknown fluent {fl}")
    return diags


def fluent_sort_key(fluent: Fluent) -> tuple:
    """Deterministic lexicographic key: symbol, then argument constants."""
    return (fluent.symbol, fluent.constants)
