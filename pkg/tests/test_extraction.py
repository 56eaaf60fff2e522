import pytest

from fluentplan.domain import GoalAtom, Problem, apply_action, eval_goal
from fluentplan.encoder import build_encoded_problem
from fluentplan.extraction import Plan, extract_plan, validate_plan
from fluentplan.generators import generate_gripper
from fluentplan.oracle import shortest_plan_length
from fluentplan.reachability import ForwardConfig, ForwardOutcome, forward_pass


def run_and_extract(problem, frontier=False, include_noop=True):
    ep = build_encoded_problem(problem, include_noop=include_noop)
    result = forward_pass(ep, ForwardConfig(frontier=frontier, include_noop=include_noop))
    assert result.outcome is ForwardOutcome.GOAL_FOUND
    return ep, result, extract_plan(ep, result.layers, result.step)


def test_gripper1_plan(gripper1):
    _, result, plan = run_and_extract(gripper1)
    assert result.step == 3
    assert validate_plan(gripper1, plan)
    # deterministic tie-breaking: the all-false-preferring assignment
    # walks into the second gripper first
    assert [str(a) for a in plan.steps] == [
        "pick(B1,A,G2)",
        "move(A,B)",
        "drop(B1,B,G2)",
    ]


def test_goal_at_start_empty_plan(gripper1):
    satisfied = Problem(
        name="done",
        sorts=gripper1.sorts,
        fluents=gripper1.fluents,
        actions=gripper1.actions,
        init=gripper1.init,
        goal=GoalAtom(next(f for f in gripper1.fluents if str(f) == "at(B1,A)")),
    )
    _, result, plan = run_and_extract(satisfied)
    assert result.step == 0
    assert plan.steps == ()
    assert plan.states == (gripper1.init,)
    assert validate_plan(satisfied, plan)


def test_gripper2_shortest_plan(gripper2):
    _, result, plan = run_and_extract(gripper2)
    assert plan.length == 5 == shortest_plan_length(gripper2)
    assert validate_plan(gripper2, plan)


def test_lengths_match_oracle(gripper1, gripper2, gripper3, blocks2, blocks3):
    for problem in (gripper1, gripper2, gripper3, blocks2, blocks3):
        _, result, plan = run_and_extract(problem)
        assert plan.length == result.step == shortest_plan_length(problem)
        assert validate_plan(problem, plan)


def test_extraction_in_frontier_mode(gripper2):
    _, result, plan = run_and_extract(gripper2, frontier=True)
    assert plan.length == 5
    assert validate_plan(gripper2, plan)


def test_extraction_without_noop(gripper2):
    _, result, plan = run_and_extract(gripper2, include_noop=False)
    assert plan.length == 5
    assert validate_plan(gripper2, plan)


def test_determinism(gripper3):
    plans = []
    for _ in range(2):
        _, _, plan = run_and_extract(generate_gripper(3))
        plans.append(tuple(map(str, plan.steps)))
    assert plans[0] == plans[1]


def test_plan_invariants(gripper2):
    _, _, plan = run_and_extract(gripper2)
    assert plan.states[0] == gripper2.init
    assert eval_goal(gripper2.goal, plan.states[-1])
    for i, action in enumerate(plan.steps):
        assert apply_action(plan.states[i], action) == plan.states[i + 1]


def test_extract_requires_recorded_layers(gripper1):
    ep = build_encoded_problem(gripper1)
    result = forward_pass(ep, ForwardConfig(record_layers=False))
    with pytest.raises(ValueError):
        extract_plan(ep, result.layers, result.step)


def test_validate_plan_rejects_bad_sequences(gripper1):
    _, _, plan = run_and_extract(gripper1)
    swapped = Plan(steps=tuple(reversed(plan.steps)), states=())
    assert not validate_plan(gripper1, swapped)
    truncated = Plan(steps=plan.steps[:-1], states=())
    assert not validate_plan(gripper1, truncated)
    assert validate_plan(gripper1, Plan(steps=plan.steps, states=()))
