"""Shortest-plan recovery from recorded reachability layers.

Walking backwards from a goal state in the last layer, each step picks a
state of the previous layer that can reach the current one; the layer
structure guarantees a predecessor exists, so no backtracking is ever
needed.  Actions are named by re-testing each ground action's explicit
semantics against the two states of a step.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domain import GroundAction, Problem, apply_action, eval_goal
from .encoder import EncodedProblem, decode_valuation, encode_state
from .partition import preimage
from .reachability import LayerSequence


class PlanExtractionError(Exception):
    """The layers and the transition relation disagree; must not happen."""


@dataclass
class Plan:
    """An action sequence with the state trace it induces."""

    steps: tuple[GroundAction, ...]
    states: tuple[frozenset, ...]

    @property
    def length(self) -> int:
        return len(self.steps)


def extract_plan(ep: EncodedProblem, layers: LayerSequence, k: int) -> Plan:
    """Recover a length-k plan given that layer k intersects the goal set.

    The goal state and every predecessor are chosen by the deterministic
    low-first satisfying-assignment rule, so identical runs yield
    identical plans.  Identity steps (possible only when layers are
    cumulative) are elided from the result.
    """
    if layers.layers is None:
        raise ValueError("plan extraction needs recorded layers")
    mgr = ep.manager
    varmap = ep.varmap
    cur_vars = varmap.cur_vars

    goal_states = layers.layers[k] & ep.goal_bdd
    if goal_states == mgr.false:
        raise PlanExtractionError(f"layer {k} does not intersect the goal set")
    chain = [decode_valuation(varmap, mgr.sat_one(goal_states, cur_vars))]
    for i in range(k - 1, -1, -1):
        successor = encode_state(mgr, varmap, chain[0])
        candidates = preimage(ep.transition, successor, varmap) & layers.layers[i]
        if candidates == mgr.false:
            raise PlanExtractionError(
                f"no predecessor in layer {i}: layers and transition disagree"
            )
        chain.insert(0, decode_valuation(varmap, mgr.sat_one(candidates, cur_vars)))

    steps: list[GroundAction] = []
    states: list[frozenset] = [chain[0]]
    for i in range(len(chain) - 1):
        action = _name_step(ep.actions, chain[i], chain[i + 1])
        if action is None:
            raise PlanExtractionError(
                f"no ground action maps chain state {i} to state {i + 1}"
            )
        if not action.adds and not action.dels and chain[i] == chain[i + 1]:
            continue  # identity step: drop it and merge the states
        steps.append(action)
        states.append(chain[i + 1])
    return Plan(steps=tuple(steps), states=tuple(states))


def _name_step(
    actions: tuple[GroundAction, ...], state: frozenset, successor: frozenset
) -> GroundAction | None:
    for action in actions:
        if apply_action(state, action) == successor:
            return action
    return None


def validate_plan(problem: Problem, plan: Plan) -> bool:
    """Replay the plan from the initial state and check the goal at the end."""
    state = problem.init
    if plan.states and plan.states[0] != state:
        return False
    for i, action in enumerate(plan.steps):
        result = apply_action(state, action)
        if result is None:
            return False
        if i + 1 < len(plan.states) and plan.states[i + 1] != result:
            return False
        state = result
    return eval_goal(problem.goal, state)
