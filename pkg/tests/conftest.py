import random

import pytest

from fluentplan.domain import Fluent, GoalAnd, GoalAtom, GoalOr, GroundAction, Problem, Sort
from fluentplan.generators import generate_blocksworld, generate_gripper


@pytest.fixture(scope="session")
def gripper1():
    return generate_gripper(1)


@pytest.fixture(scope="session")
def gripper2():
    return generate_gripper(2)


@pytest.fixture(scope="session")
def gripper3():
    return generate_gripper(3)


@pytest.fixture(scope="session")
def blocks2():
    return generate_blocksworld(2)


@pytest.fixture(scope="session")
def blocks3():
    return generate_blocksworld(3)


def unsat_variant(problem: Problem) -> Problem:
    """Goal asking for the first object in two places at once."""
    first = problem.fluents[0]
    family = [
        fl
        for fl in problem.fluents
        if fl.symbol == first.symbol and fl.constants[:-1] == first.constants[:-1]
    ]
    return Problem(
        name=problem.name + "-unsat",
        sorts=problem.sorts,
        fluents=problem.fluents,
        actions=problem.actions,
        init=problem.init,
        goal=GoalAnd(tuple(GoalAtom(fl) for fl in family[:2])),
    )


def closure_variant(problem: Problem) -> Problem:
    """Unreachable empty-disjunction goal, to run searches to closure."""
    return Problem(
        name=problem.name + "-closure",
        sorts=problem.sorts,
        fluents=problem.fluents,
        actions=problem.actions,
        init=problem.init,
        goal=GoalOr(()),
    )


def random_mini_problem(rng: random.Random, num_fluents: int = 6, num_actions: int = 6) -> Problem:
    """Small nullary-fluent problem with effect-consistent random actions."""
    fluents = tuple(Fluent(f"f{i}") for i in range(num_fluents))
    actions = []
    for k in range(num_actions):
        pre_pos, pre_neg = set(), set()
        for fl in fluents:
            r = rng.random()
            if r < 0.3:
                pre_pos.add(fl)
            elif r < 0.6:
                pre_neg.add(fl)
        dels = {fl for fl in pre_pos if rng.random() < 0.5}
        adds = {fl for fl in pre_neg if rng.random() < 0.5}
        actions.append(
            GroundAction(
                name=f"a{k}",
                pre_pos=frozenset(pre_pos),
                pre_neg=frozenset(pre_neg),
                adds=frozenset(adds),
                dels=frozenset(dels),
            )
        )
    init = frozenset(fl for fl in fluents if rng.random() < 0.5)
    goal = GoalAnd(tuple(GoalAtom(fl) for fl in fluents if rng.random() < 0.3))
    return Problem(
        name="mini",
        sorts=(Sort("T", ("c",)),),
        fluents=fluents,
        actions=tuple(actions),
        init=init,
        goal=goal,
    )
