"""Built-in problem families: ball-transport and blocks stacking."""

from __future__ import annotations

from .domain import Fluent, GoalAnd, GoalAtom, GroundAction, Problem, Sort


def generate_gripper(n: int) -> Problem:
    """Two-gripper robot moving n balls from room A to room B.

    Universe: at(b,r), carry(b,g), free(g), atR(r) — 4n + 4 fluents.
    Actions: move between rooms, pick a ball with a free gripper in the
    same room, drop a carried ball in the current room.
    """
    if n < 1:
        raise ValueError("need at least one ball")
    balls = tuple(f"B{i}" for i in range(1, n + 1))
    rooms = ("A", "B")
    grippers = ("G1", "G2")
    ball_sort = Sort("BALL", balls)
    room_sort = Sort("ROOM", rooms)
    gripper_sort = Sort("GRIPPER", grippers)

    def at(b: str, r: str) -> Fluent:
        return Fluent("at", (("BALL", b), ("ROOM", r)))

    def carry(b: str, g: str) -> Fluent:
        return Fluent("carry", (("BALL", b), ("GRIPPER", g)))

    def free(g: str) -> Fluent:
        return Fluent("free", (("GRIPPER", g),))

    def at_robot(r: str) -> Fluent:
        return Fluent("atR", (("ROOM", r),))

    fluents = (
        [at(b, r) for b in balls for r in rooms]
        + [carry(b, g) for b in balls for g in grippers]
        + [free(g) for g in grippers]
        + [at_robot(r) for r in rooms]
    )

    actions = []
    for r1 in rooms:
        for r2 in rooms:
            if r1 == r2:
                continue
            actions.append(
                GroundAction(
                    name="move",
                    args=(r1, r2),
                    pre_pos=frozenset({at_robot(r1)}),
                    pre_neg=frozenset({at_robot(r2)}),
                    adds=frozenset({at_robot(r2)}),
                    dels=frozenset({at_robot(r1)}),
                )
            )
    for b in balls:
        for r in rooms:
            for g in grippers:
                actions.append(
                    GroundAction(
                        name="pick",
                        args=(b, r, g),
                        pre_pos=frozenset({at(b, r), at_robot(r), free(g)}),
                        pre_neg=frozenset({carry(b, g)}),
                        adds=frozenset({carry(b, g)}),
                        dels=frozenset({at(b, r), free(g)}),
                    )
                )
    for b in balls:
        for r in rooms:
            for g in grippers:
                actions.append(
                    GroundAction(
                        name="drop",
                        args=(b, r, g),
                        pre_pos=frozenset({carry(b, g), at_robot(r)}),
                        pre_neg=frozenset({at(b, r), free(g)}),
                        adds=frozenset({at(b, r), free(g)}),
                        dels=frozenset({carry(b, g)}),
                    )
                )

    init = frozenset(
        {at(b, "A") for b in balls} | {free("G1"), free("G2"), at_robot("A")}
    )
    goal = GoalAnd(tuple(GoalAtom(at(b, "B")) for b in balls))
    return Problem(
        name=f"gripper-{n}",
        sorts=(ball_sort, room_sort, gripper_sort),
        fluents=tuple(fluents),
        actions=tuple(actions),
        init=init,
        goal=goal,
    )


def generate_blocksworld(n: int) -> Problem:
    """Single-arm blocks world: n blocks on the table, goal is one tower.

    Universe: on(x,y) for x != y, ontable(x), clear(x), holding(x), and
    handempty — n(n-1) + 3n + 1 fluents.  The goal stacks B1 on B2 on ...
    on Bn.
    """
    if n < 2:
        raise ValueError("need at least two blocks")
    blocks = tuple(f"B{i}" for i in range(1, n + 1))
    block_sort = Sort("BLOCK", blocks)

    def on(x: str, y: str) -> Fluent:
        return Fluent("on", (("BLOCK", x), ("BLOCK", y)))

    def ontable(x: str) -> Fluent:
        return Fluent("ontable", (("BLOCK", x),))

    def clear(x: str) -> Fluent:
        return Fluent("clear", (("BLOCK", x),))

    def holding(x: str) -> Fluent:
        return Fluent("holding", (("BLOCK", x),))

    handempty = Fluent("handempty")

    fluents = (
        [on(x, y) for x in blocks for y in blocks if x != y]
        + [ontable(x) for x in blocks]
        + [clear(x) for x in blocks]
        + [holding(x) for x in blocks]
        + [handempty]
    )

    actions = []
    for x in blocks:
        actions.append(
            GroundAction(
                name="pickup",
                args=(x,),
                pre_pos=frozenset({ontable(x), clear(x), handempty}),
                pre_neg=frozenset({holding(x)}),
                adds=frozenset({holding(x)}),
                dels=frozenset({ontable(x), clear(x), handempty}),
            )
        )
    for x in blocks:
        actions.append(
            GroundAction(
                name="putdown",
                args=(x,),
                pre_pos=frozenset({holding(x)}),
                pre_neg=frozenset({ontable(x), clear(x), handempty}),
                adds=frozenset({ontable(x), clear(x), handempty}),
                dels=frozenset({holding(x)}),
            )
        )
    for x in blocks:
        for y in blocks:
            if x == y:
                continue
            actions.append(
                GroundAction(
                    name="stack",
                    args=(x, y),
                    pre_pos=frozenset({holding(x), clear(y)}),
                    pre_neg=frozenset({on(x, y), clear(x), handempty}),
                    adds=frozenset({on(x, y), clear(x), handempty}),
                    dels=frozenset({holding(x), clear(y)}),
                )
            )
    for x in blocks:
        for y in blocks:
            if x == y:
                continue
            actions.append(
                GroundAction(
                    name="unstack",
                    args=(x, y),
                    pre_pos=frozenset({on(x, y), clear(x), handempty}),
                    pre_neg=frozenset({holding(x), clear(y)}),
                    adds=frozenset({holding(x), clear(y)}),
                    dels=frozenset({on(x, y), clear(x), handempty}),
                )
            )

    init = frozenset(
        {ontable(x) for x in blocks} | {clear(x) for x in blocks} | {handempty}
    )
    goal = GoalAnd(
        tuple(GoalAtom(on(blocks[i], blocks[i + 1])) for i in range(n - 1))
    )
    return Problem(
        name=f"blocksworld-{n}",
        sorts=(block_sort,),
        fluents=tuple(fluents),
        actions=tuple(actions),
        init=init,
        goal=goal,
    )
