"""Disjunctively partitioned transition relations.

The full transition relation is the disjunction of all per-action
formulas; keeping it as several smaller parts bounds the size of any one
diagram, and image computation distributes over the disjunction.  Parts
are formed by greedily folding action diagrams together until a node-count
threshold would be exceeded.
"""

from __future__ import annotations

from dataclasses import dataclass

from .bdd import BddManager, BddRef
from .domain import GroundAction
from .ordering import VarMap


class VariableFamilyError(Exception):
    """A state set strayed outside its variable family."""


@dataclass
class TransitionPart:
    bdd: BddRef
    actions: tuple[GroundAction, ...]


@dataclass
class TransitionRelation:
    """Non-empty list of transition parts; their disjunction is the relation."""

    parts: tuple[TransitionPart, ...]
    threshold: int | None

    @property
    def manager(self) -> BddManager:
        return self.parts[0].bdd.manager

    def part_sizes(self) -> list[int]:
        mgr = self.manager
        return [mgr.node_count(p.bdd) for p in self.parts]

    def monolithic(self) -> BddRef:
        """The single-diagram disjunction of all parts."""
        return _or_reduce(self.manager, [p.bdd for p in self.parts])


def _or_reduce(mgr: BddManager, bdds: list[BddRef]) -> BddRef:
    """Balanced disjunction; same canonical result as any fold order."""
    if not bdds:
        return mgr.false
    work = list(bdds)
    while len(work) > 1:
        nxt = []
        for i in range(0, len(work) - 1, 2):
            nxt.append(work[i] | work[i + 1])
        if len(work) % 2:
            nxt.append(work[-1])
        work = nxt
    return work[0]


def partition(
    action_bdds: list[tuple[GroundAction, BddRef]],
    threshold: int | None = None,
) -> TransitionRelation:
    """Fold per-action diagrams into parts bounded by ``threshold`` nodes.

    Folding is greedy left to right in the given action order: the next
    action diagram joins the current part unless the disjunction would
    exceed the threshold, in which case it starts a new part.  Threshold
    None never splits; threshold 0 yields one part per action.
    """
    if not action_bdds:
        raise ValueError("cannot partition an empty action list")
    mgr = action_bdds[0][1].manager
    if threshold is None:
        part = TransitionPart(
            bdd=_or_reduce(mgr, [b for _, b in action_bdds]),
            actions=tuple(a for a, _ in action_bdds),
        )
        return TransitionRelation(parts=(part,), threshold=None)

    parts: list[TransitionPart] = []
    cur_bdd = action_bdds[0][1]
    cur_actions = [action_bdds[0][0]]
    for action, bdd in action_bdds[1:]:
        candidate = cur_bdd | bdd
        if mgr.node_count(candidate) > threshold:
            parts.append(TransitionPart(cur_bdd, tuple(cur_actions)))
            cur_bdd = bdd
            cur_actions = [action]
        else:
            cur_bdd = candidate
            cur_actions.append(action)
    parts.append(TransitionPart(cur_bdd, tuple(cur_actions)))
    return TransitionRelation(parts=tuple(parts), threshold=threshold)


def _check_family(mgr: BddManager, state_set: BddRef, allowed: tuple[int, ...]) -> None:
    stray = mgr.support(state_set) - set(allowed)
    if stray:
        raise VariableFamilyError(
            f"state set depends on variables outside its family: {sorted(stray)}"
        )


def image(
    relation: TransitionRelation, state_set: BddRef, varmap: VarMap
) -> BddRef:
    """One-step successors of a current-state set, as a current-state set.

    Conjoin-and-quantify against each part, disjoin, and shift the result
    back from the next-state family.
    """
    mgr = relation.manager
    _check_family(mgr, state_set, varmap.cur_vars)
    acc = mgr.false
    for part in relation.parts:
        acc = acc | mgr.and_exists(state_set, part.bdd, varmap.cur_vars)
    return mgr.rename(acc, varmap.nxt_to_cur)


def preimage(
    relation: TransitionRelation, state_set: BddRef, varmap: VarMap
) -> BddRef:
    """States with at least one successor inside the given set."""
    mgr = relation.manager
    _check_family(mgr, state_set, varmap.cur_vars)
    shifted = mgr.rename(state_set, varmap.cur_to_nxt)
    acc = mgr.false
    for part in relation.parts:
        acc = acc | mgr.and_exists(shifted, part.bdd, varmap.nxt_vars)
    return acc
