"""Symbolic breadth-first forward search.

Starting from the initial-state diagram, layers of reachable states are
computed by repeated image steps until a layer overlaps the goal set or no
new states appear.  With the identity action included the layers grow
monotonically and the fixpoint test is a single handle comparison; with
frontier subtraction each layer holds exactly the states first reached at
that depth and the search closes when a frontier comes up empty.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from enum import Enum

from .bdd import BddRef
from .encoder import EncodedProblem
from .partition import image

# op caches are dropped once they pass this many entries, to bound memory
# on long runs; correctness is unaffected
_CACHE_PRESSURE_LIMIT = 2_000_000


class ForwardOutcome(Enum):
    GOAL_FOUND = "goal_found"
    NO_PLAN = "no_plan"
    STEP_LIMIT = "step_limit"


@dataclass
class ForwardConfig:
    """Knobs for the forward pass.

    ``max_steps`` defaults to 2**n - 1 for n fluents, the worst-case
    number of distinct layers; the loop never runs past that bound even
    when asked to.
    """

    frontier: bool = False
    include_noop: bool = True
    max_steps: int | None = None
    record_layers: bool = True

    def __post_init__(self) -> None:
        if self.max_steps is not None and self.max_steps < 1:
            raise ValueError("max_steps must be >= 1")


@dataclass
class StepStat:
    step: int
    layer_nodes: int
    reached_nodes: int
    seconds: float


@dataclass
class LayerSequence:
    """The layer diagrams of one forward pass plus their union."""

    layers: tuple[BddRef, ...] | None  # None when not recorded
    reached: BddRef
    final_layer: BddRef


@dataclass
class ForwardResult:
    outcome: ForwardOutcome
    step: int  # goal layer index, or the step at which the search stopped
    layers: LayerSequence
    stats: list[StepStat] = field(default_factory=list)


def forward_pass(ep: EncodedProblem, cfg: ForwardConfig | None = None) -> ForwardResult:
    """Run the layer recursion until goal contact, fixpoint, or step limit."""
    if cfg is None:
        cfg = ForwardConfig(include_noop=ep.include_noop)
    mgr = ep.manager
    goal = ep.goal_bdd
    false = mgr.false
    num_fluents = len(ep.problem.fluents)
    bound = (1 << num_fluents) - 1 if num_fluents else 1
    max_steps = bound if cfg.max_steps is None else min(cfg.max_steps, bound)

    layer = ep.init_bdd
    reached = layer
    recorded: list[BddRef] | None = [layer] if cfg.record_layers else None
    stats: list[StepStat] = [
        StepStat(0, mgr.node_count(layer), mgr.node_count(reached), 0.0)
    ]

    def result(outcome: ForwardOutcome, step: int) -> ForwardResult:
        seq = LayerSequence(
            layers=tuple(recorded) if recorded is not None else None,
            reached=reached,
            final_layer=layer,
        )
        return ForwardResult(outcome=outcome, step=step, layers=seq, stats=stats)

    if (layer & goal) != false:
        return result(ForwardOutcome.GOAL_FOUND, 0)

    for step in range(1, max_steps + 1):
        t0 = time.perf_counter()
        nxt = image(ep.transition, layer, ep.varmap)
        if cfg.frontier:
            nxt = mgr.apply("diff", nxt, reached)
        new_reached = reached | nxt
        elapsed = time.perf_counter() - t0
        stats.append(
            StepStat(step, mgr.node_count(nxt), mgr.node_count(new_reached), elapsed)
        )
        if recorded is not None:
            recorded.append(nxt)
        goal_hit = (nxt & goal) != false
        if goal_hit:
            layer = nxt
            reached = new_reached
            return result(ForwardOutcome.GOAL_FOUND, step)
        if cfg.frontier:
            closed = nxt == false
        else:
            closed = new_reached == reached
        layer = nxt
        reached = new_reached
        if closed:
            return result(ForwardOutcome.NO_PLAN, step)
        if mgr.cache_size() > _CACHE_PRESSURE_LIMIT:
            mgr.clear_caches()
    return result(ForwardOutcome.STEP_LIMIT, max_steps)


def reached_states(result: ForwardResult) -> BddRef:
    """Union of all layers seen by the forward pass."""
    return result.layers.reached
