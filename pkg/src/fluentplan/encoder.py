"""Translation of ground problems into decision diagrams.

States become minterms over the current-state variable family, goals
become formulas over the same family, and each ground action becomes a
transition formula over both families: precondition literals on the
current state, effect literals on the next state, and a biconditional
frame constraint for every untouched fluent.  A pair of states satisfies
an action's formula exactly when the action maps the first to the second.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bdd import BddManager, BddRef
from .domain import (
    NOOP,
    Goal,
    GoalAnd,
    GoalAtom,
    GoalNot,
    GoalOr,
    GroundAction,
    Problem,
    validate_problem,
)
from .ordering import VariableOrder, VarMap, interleave, sort_order
from .partition import TransitionRelation, partition


class EncodingError(Exception):
    """A fluent, action or goal that cannot be translated."""


@dataclass
class EncodedProblem:
    """A problem compiled to decision diagrams, ready for reachability."""

    problem: Problem
    manager: BddManager
    varmap: VarMap
    init_bdd: BddRef
    goal_bdd: BddRef
    transition: TransitionRelation
    actions: tuple[GroundAction, ...]
    include_noop: bool


def encode_state(
    mgr: BddManager, varmap: VarMap, state: frozenset, which: str = "current"
) -> BddRef:
    """Minterm of a single state: a literal for every fluent in the universe."""
    index = varmap.cur if which == "current" else varmap.nxt
    unknown = state - set(varmap.fluents)
    if unknown:
        raise EncodingError(f"unknown fluents in state: {sorted(map(str, unknown))}")
    result = mgr.true
    false = mgr.false
    # conjoin bottom-up (last variable first) so every step is O(1)
    for fluent in reversed(varmap.fluents):
        v = mgr.var(index[fluent])
        if fluent in state:
            result = mgr.ite(v, result, false)
        else:
            result = mgr.ite(v, false, result)
    return result


def decode_valuation(
    varmap: VarMap, valuation: dict, which: str = "current"
) -> frozenset:
    """The state whose fluents are exactly the true variables of one family."""
    index = varmap.cur if which == "current" else varmap.nxt
    out = []
    for fluent in varmap.fluents:
        v = index[fluent]
        if v not in valuation:
            raise EncodingError(f"valuation missing variable {v} ({fluent})")
        if valuation[v]:
            out.append(fluent)
    return frozenset(out)


def encode_goal(mgr: BddManager, varmap: VarMap, goal: Goal) -> BddRef:
    """Goal formula over the current-state family."""
    if isinstance(goal, GoalAtom):
        v = varmap.cur.get(goal.fluent)
        if v is None:
            raise EncodingError(f"goal mentions unknown fluent {goal.fluent}")
        return mgr.var(v)
    if isinstance(goal, GoalNot):
        return mgr.negate(encode_goal(mgr, varmap, goal.child))
    if isinstance(goal, GoalAnd):
        result = mgr.true
        for child in goal.children:
            result = result & encode_goal(mgr, varmap, child)
        return result
    if isinstance(goal, GoalOr):
        result = mgr.false
        for child in goal.children:
            result = result | encode_goal(mgr, varmap, child)
        return result
    raise EncodingError(f"not a goal formula: {goal!r}")


def encode_action(mgr: BddManager, varmap: VarMap, action: GroundAction) -> BddRef:
    """Transition formula of one ground action over both variable families.

    Effect consistency (deletes held before, adds did not) lets every
    fluent contribute exactly one of five local constraints; conjoining
    them from the bottom of the order up keeps construction linear.
    """
    universe = set(varmap.fluents)
    for group in (action.pre_pos, action.pre_neg, action.adds, action.dels):
        unknown = group - universe
        if unknown:
            raise EncodingError(
                f"action {action}: unknown fluents {sorted(map(str, unknown))}"
            )
    if action.adds & action.dels:
        raise EncodingError(f"action {action}: overlapping effects")
    if not action.dels <= action.pre_pos or not action.adds <= action.pre_neg:
        raise EncodingError(f"action {action}: effects not guarded by preconditions")

    result = mgr.true
    false = mgr.false
    for fluent in reversed(varmap.fluents):
        zc = mgr.var(varmap.cur[fluent])
        zn = mgr.var(varmap.nxt[fluent])
        if fluent in action.adds:  # was false, becomes true
            result = mgr.ite(zc, false, mgr.ite(zn, result, false))
        elif fluent in action.dels:  # was true, becomes false
            result = mgr.ite(zc, mgr.ite(zn, false, result), false)
        elif fluent in action.pre_pos:  # stays true
            result = mgr.ite(zc, mgr.ite(zn, result, false), false)
        elif fluent in action.pre_neg:  # stays false
            result = mgr.ite(zc, false, mgr.ite(zn, false, result))
        else:  # untouched: next equals current
            result = mgr.ite(
                zc, mgr.ite(zn, result, false), mgr.ite(zn, false, result)
            )
    return result


def build_encoded_problem(
    problem: Problem,
    order: VariableOrder | None = None,
    partition_threshold: int | None = None,
    include_noop: bool = True,
) -> EncodedProblem:
    """Validate, order, and encode a problem end to end.

    ``order`` defaults to the sort-driven heuristic.  The transition
    relation is split per ``partition_threshold`` (None keeps one part);
    the disjunction of the parts always equals the monolithic relation.
    """
    diags = validate_problem(problem)
    if diags:
        raise EncodingError("invalid problem: " + "; ".join(diags))
    if order is None:
        order = sort_order(problem.fluents, problem.sorts)
    varmap = interleave(order)
    mgr = BddManager(varmap.num_vars)
    init_bdd = encode_state(mgr, varmap, problem.init)
    goal_bdd = encode_goal(mgr, varmap, problem.goal)
    actions = problem.actions + ((NOOP,) if include_noop else ())
    action_bdds = [(a, encode_action(mgr, varmap, a)) for a in actions]
    transition = partition(action_bdds, partition_threshold)
    return EncodedProblem(
        problem=problem,
        manager=mgr,
        varmap=varmap,
        init_bdd=init_bdd,
        goal_bdd=goal_bdd,
        transition=transition,
        actions=actions,
        include_noop=include_noop,
    )
