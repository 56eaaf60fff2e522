"""Optimal propositional-fluent planning via symbolic reachability."""

__version__ = "0.1.0"

from .bdd import BddManager, BddRef
from .domain import (
    NOOP,
    Fluent,
    GoalAnd,
    GoalAtom,
    GoalNot,
    GoalOr,
    GroundAction,
    Problem,
    Sort,
    apply_action,
    eval_goal,
    validate_problem,
)
from .domfile import format_domain, load_domain, parse_domain
from .generators import generate_blocksworld, generate_gripper
from .solver import SolveOptions, SolveReport, SolveResult, solve

__all__ = [
    "BddManager",
    "BddRef",
    "NOOP",
    "Fluent",
    "GoalAnd",
    "GoalAtom",
    "GoalNot",
    "GoalOr",
    "GroundAction",
    "Problem",
    "Sort",
    "apply_action",
    "eval_goal",
    "validate_problem",
    "format_domain",
    "load_domain",
    "parse_domain",
    "generate_blocksworld",
    "generate_gripper",
    "SolveOptions",
    "SolveReport",
    "SolveResult",
    "solve",
]
