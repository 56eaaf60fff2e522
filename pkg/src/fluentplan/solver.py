"""End-to-end solving: order, encode, search, extract, report."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from collections.abc import Sequence

from .domain import Fluent, Problem
from .encoder import EncodedProblem, build_encoded_problem
from .extraction import Plan, extract_plan, validate_plan
from .ordering import VariableOrder, explicit_order, lexical_order, sort_order
from .reachability import ForwardConfig, ForwardOutcome, ForwardResult, forward_pass


@dataclass
class SolveOptions:
    order: str = "sort"  # sort | lexical | explicit
    explicit_order: Sequence[Fluent] | None = None
    partition_threshold: int | None = None  # None keeps one part
    frontier: bool = False
    include_noop: bool = True
    max_steps: int | None = None
    extract: bool = True


@dataclass
class SolveReport:
    """Flat, serialization-friendly summary of one solve."""

    problem: str
    outcome: str  # plan | no_plan | limit
    goal_step: int | None
    plan_length: int | None
    plan: list[str] | None
    num_fluents: int
    num_actions: int
    num_variables: int
    order: str
    partition_threshold: int | None
    frontier: bool
    include_noop: bool
    part_sizes: list[int]
    layer_node_counts: list[int]
    reached_nodes: int
    reached_states: int
    peak_live_nodes: int
    steps_expanded: int
    wall_time_s: float

    def to_json(self) -> dict:
        return dict(self.__dict__)


@dataclass
class SolveResult:
    outcome: str
    plan: Plan | None
    forward: ForwardResult
    encoded: EncodedProblem
    report: SolveReport
    step_records: list[dict] = field(default_factory=list)


_OUTCOMES = {
    ForwardOutcome.GOAL_FOUND: "plan",
    ForwardOutcome.NO_PLAN: "no_plan",
    ForwardOutcome.STEP_LIMIT: "limit",
}


def make_order(problem: Problem, options: SolveOptions) -> VariableOrder:
    if options.order == "sort":
        return sort_order(problem.fluents, problem.sorts)
    if options.order == "lexical":
        return lexical_order(problem.fluents)
    if options.order == "explicit":
        if options.explicit_order is None:
            raise ValueError("order 'explicit' needs an explicit_order fluent list")
        return explicit_order(problem.fluents, options.explicit_order)
    raise ValueError(f"unknown order strategy {options.order!r}")


def solve(problem: Problem, options: SolveOptions | None = None) -> SolveResult:
    """Solve a ground problem and assemble the report.

    Any extracted plan is replayed against the explicit action semantics
    before it is returned; a replay failure would mean the symbolic and
    explicit paths disagree, so it raises instead of being reported.
    """
    if options is None:
        options = SolveOptions()
    t0 = time.perf_counter()
    order = make_order(problem, options)
    ep = build_encoded_problem(
        problem,
        order=order,
        partition_threshold=options.partition_threshold,
        include_noop=options.include_noop,
    )
    cfg = ForwardConfig(
        frontier=options.frontier,
        include_noop=options.include_noop,
        max_steps=options.max_steps,
        record_layers=options.extract,
    )
    fwd = forward_pass(ep, cfg)

    plan: Plan | None = None
    if fwd.outcome is ForwardOutcome.GOAL_FOUND and options.extract:
        plan = extract_plan(ep, fwd.layers, fwd.step)
        if not validate_plan(problem, plan):
            raise RuntimeError("extracted plan failed replay validation")
    wall = time.perf_counter() - t0

    mgr = ep.manager
    report = SolveReport(
        problem=problem.name,
        outcome=_OUTCOMES[fwd.outcome],
        goal_step=fwd.step if fwd.outcome is ForwardOutcome.GOAL_FOUND else None,
        plan_length=plan.length if plan is not None else None,
        plan=[str(a) for a in plan.steps] if plan is not None else None,
        num_fluents=len(problem.fluents),
        num_actions=len(problem.actions),
        num_variables=ep.varmap.num_vars,
        order=order.strategy,
        partition_threshold=options.partition_threshold,
        frontier=options.frontier,
        include_noop=options.include_noop,
        part_sizes=ep.transition.part_sizes(),
        layer_node_counts=[s.layer_nodes for s in fwd.stats],
        reached_nodes=mgr.node_count(fwd.layers.reached),
        reached_states=mgr.count_models(fwd.layers.reached, ep.varmap.cur_vars),
        peak_live_nodes=len(mgr),
        steps_expanded=fwd.stats[-1].step,
        wall_time_s=wall,
    )
    step_records = [
        {
            "step": s.step,
            "layer_nodes": s.layer_nodes,
            "reached_nodes": s.reached_nodes,
            "seconds": s.seconds,
        }
        for s in fwd.stats
    ]
    return SolveResult(
        outcome=report.outcome,
        plan=plan,
        forward=fwd,
        encoded=ep,
        report=report,
        step_records=step_records,
    )
