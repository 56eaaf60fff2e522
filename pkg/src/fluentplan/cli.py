"""Command-line front end.

Thin client over the solver core: loads or generates a problem, solves
it, prints the plan to stdout (one ``<index>: <action>`` line per step,
1-based) and the report as a JSON line to stderr.  Exit codes: 0 a plan
was found, 1 the problem is proven unsolvable, 2 error or step limit.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from .domain import Fluent, GoalAnd, GoalAtom, Problem
from .domfile import DomainSyntaxError, DomainValidationError, load_domain
from .encoder import EncodingError
from .generators import generate_blocksworld, generate_gripper
from .solver import SolveOptions, solve

_TERM_RE = re.compile(r"^([^()\s,]+)(?:\(([^()]*)\))?$")


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fluentplan",
        description="Optimal planner over propositional fluents, driven by "
        "symbolic breadth-first reachability.",
    )
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--domain", metavar="FILE", help="domain document to solve")
    source.add_argument(
        "--gripper", type=int, metavar="N", help="generated two-gripper problem with N balls"
    )
    source.add_argument(
        "--blocksworld", type=int, metavar="N", help="generated blocks problem with N blocks"
    )
    parser.add_argument(
        "--order",
        default="sort",
        metavar="sort|lexical|file:PATH",
        help="variable order heuristic, or an explicit fluent list from a file",
    )
    parser.add_argument(
        "--partition-threshold",
        default="inf",
        metavar="N|inf",
        help="node-count bound per transition part (inf keeps one part)",
    )
    parser.add_argument(
        "--frontier",
        action="store_true",
        help="subtract already-reached states from each layer",
    )
    parser.add_argument(
        "--no-noop",
        action="store_true",
        help="do not add the identity action to the transition relation",
    )
    parser.add_argument("--max-steps", type=int, metavar="N", help="step budget")
    parser.add_argument(
        "--stats", action="store_true", help="emit per-step JSON records on stderr"
    )
    parser.add_argument("--plan-out", metavar="FILE", help="also write the plan here")
    parser.add_argument(
        "--dump-dot",
        metavar="FILE",
        help="write the monolithic transition diagram as DOT",
    )
    parser.add_argument(
        "--goal-unsat-demo",
        action="store_true",
        help="replace the goal with an unsatisfiable one (first object in two places)",
    )
    return parser


def _parse_fluent_term(text: str, by_key: dict) -> Fluent:
    match = _TERM_RE.match(text.strip())
    if match is None:
        raise ValueError(f"cannot parse fluent term {text!r}")
    symbol = match.group(1)
    args = tuple(
        a.strip() for a in match.group(2).split(",")
    ) if match.group(2) else ()
    fluent = by_key.get((symbol, args))
    if fluent is None:
        raise ValueError(f"fluent {text!r} is not in the problem's universe")
    return fluent


def _read_order_file(path: str, problem: Problem) -> list[Fluent]:
    by_key = {(fl.symbol, fl.constants): fl for fl in problem.fluents}
    fluents = []
    with open(path, encoding="utf-8") as handle:
        for line in handle:
            line = line.split(";")[0].strip()
            if line:
                fluents.append(_parse_fluent_term(line, by_key))
    return fluents


def _load_problem(args: argparse.Namespace) -> Problem:
    if args.domain is not None:
        return load_domain(args.domain)
    if args.gripper is not None:
        return generate_gripper(args.gripper)
    return generate_blocksworld(args.blocksworld)


def _unsat_goal(problem: Problem) -> Problem:
    # require the first declared fluent's object in every value of its
    # last argument at once: for the gripper family, one ball in both rooms
    first = problem.fluents[0]
    family = [
        fl
        for fl in problem.fluents
        if fl.symbol == first.symbol and fl.constants[:-1] == first.constants[:-1]
    ]
    if len(family) < 2:
        raise ValueError("problem has no fluent family to build an unsatisfiable goal")
    goal = GoalAnd(tuple(GoalAtom(fl) for fl in family))
    return Problem(
        name=problem.name + "-unsat",
        sorts=problem.sorts,
        fluents=problem.fluents,
        actions=problem.actions,
        init=problem.init,
        goal=goal,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)

    try:
        problem = _load_problem(args)
        if args.goal_unsat_demo:
            problem = _unsat_goal(problem)

        options = SolveOptions(
            frontier=args.frontier,
            include_noop=not args.no_noop,
            max_steps=args.max_steps,
        )
        if args.partition_threshold != "inf":
            options.partition_threshold = int(args.partition_threshold)
        if args.order in ("sort", "lexical"):
            options.order = args.order
        elif args.order.startswith("file:"):
            options.order = "explicit"
            options.explicit_order = _read_order_file(args.order[5:], problem)
        else:
            parser.error(f"unknown order {args.order!r}")

        result = solve(problem, options)
    except (DomainSyntaxError, DomainValidationError, EncodingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    if args.stats:
        for record in result.step_records:
            print(json.dumps({"type": "step", **record}), file=sys.stderr)
    print(json.dumps({"type": "report", **result.report.to_json()}), file=sys.stderr)

    if result.plan is not None:
        lines = [
            f"{i}: {action}" for i, action in enumerate(result.plan.steps, start=1)
        ]
        for line in lines:
            print(line)
        if args.plan_out:
            with open(args.plan_out, "w", encoding="utf-8") as handle:
                handle.write("\n".join(lines) + ("\n" if lines else ""))

    if args.dump_dot:
        mgr = result.encoded.manager
        dot = mgr.to_dot(
            result.encoded.transition.monolithic(),
            var_names=result.encoded.varmap.var_names(),
        )
        with open(args.dump_dot, "w", encoding="utf-8") as handle:
            handle.write(dot + "\n")

    return {"plan": 0, "no_plan": 1, "limit": 2}[result.outcome]


if __name__ == "__main__":
    sys.exit(main())
