"""Explicit-state breadth-first search, the ground truth at small scale.

Enumerates states one by one, which is exact and independent of the
symbolic machinery but only viable for small universes; a fluent-count
limit guards against accidental blowups.
"""

from __future__ import annotations

from dataclasses import dataclass

from .domain import Problem, apply_action, eval_goal

DEFAULT_FLUENT_LIMIT = 24


class OracleScaleError(Exception):
    """Problem too large for explicit enumeration."""


@dataclass
class ExplicitLayer:
    """States first reachable in exactly ``depth`` actions."""

    depth: int
    states: frozenset


def bfs_layers(
    problem: Problem,
    max_depth: int | None = None,
    fluent_limit: int = DEFAULT_FLUENT_LIMIT,
) -> list[ExplicitLayer]:
    """Breadth-first layers to closure (or ``max_depth``); layers are disjoint."""
    if len(problem.fluents) > fluent_limit:
        raise OracleScaleError(
            f"{len(problem.fluents)} fluents exceed the oracle limit {fluent_limit}"
        )
    frontier = {problem.init}
    seen = {problem.init}
    layers = [ExplicitLayer(0, frozenset(frontier))]
    depth = 0
    while frontier and (max_depth is None or depth < max_depth):
        nxt = set()
        for state in frontier:
            for action in problem.actions:
                succ = apply_action(state, action)
                if succ is not None and succ not in seen:
                    nxt.add(succ)
        depth += 1
        if not nxt:
            break
        seen |= nxt
        layers.append(ExplicitLayer(depth, frozenset(nxt)))
        frontier = nxt
    return layers


def reachable_states(problem: Problem, fluent_limit: int = DEFAULT_FLUENT_LIMIT):
    """All reachable states, as a set."""
    out = set()
    for layer in bfs_layers(problem, fluent_limit=fluent_limit):
        out |= layer.states
    return out


def shortest_plan_length(
    problem: Problem, fluent_limit: int = DEFAULT_FLUENT_LIMIT
) -> int | None:
    """Minimal number of actions to a goal state, or None when unreachable."""
    for layer in bfs_layers(problem, fluent_limit=fluent_limit):
        if any(eval_goal(problem.goal, state) for state in layer.states):
            return layer.depth
    return None
