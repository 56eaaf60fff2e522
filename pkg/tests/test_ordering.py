import pytest

from fluentplan.domain import Fluent
from fluentplan.ordering import (
    explicit_order,
    interleave,
    lexical_order,
    sort_order,
)
from fluentplan.generators import generate_gripper


def names(order):
    return [str(f) for f in order.fluents]


def test_lexical_basic():
    universe = [
        Fluent("at", (("BALL", "B2"), ("ROOM", "A"))),
        Fluent("at", (("BALL", "B1"), ("ROOM", "A"))),
        Fluent("carry", (("BALL", "B1"), ("GRIPPER", "G1"))),
    ]
    assert names(lexical_order(universe)) == ["at(B1,A)", "at(B2,A)", "carry(B1,G1)"]
    single = [Fluent("p")]
    assert lexical_order(single).fluents == tuple(single)


def test_lexical_groups_by_symbol(gripper2):
    order = names(lexical_order(gripper2.fluents))
    assert order == [
        "at(B1,A)", "at(B1,B)", "at(B2,A)", "at(B2,B)",
        "atR(A)", "atR(B)",
        "carry(B1,G1)", "carry(B1,G2)", "carry(B2,G1)", "carry(B2,G2)",
        "free(G1)", "free(G2)",
    ]


def test_sort_order_groups_per_ball(gripper2):
    order = names(sort_order(gripper2.fluents, gripper2.sorts))
    assert order[:4] == ["at(B1,A)", "at(B1,B)", "carry(B1,G1)", "carry(B1,G2)"]
    assert order[4:8] == ["at(B2,A)", "at(B2,B)", "carry(B2,G1)", "carry(B2,G2)"]
    # fluents without a ball argument come last, keyed by the next sorts
    assert order[8:] == ["atR(A)", "atR(B)", "free(G1)", "free(G2)"]


def test_sort_order_gripper3_blocks(gripper3):
    order = names(sort_order(gripper3.fluents, gripper3.sorts))
    for i, ball in enumerate(("B1", "B2", "B3")):
        block = order[4 * i : 4 * i + 4]
        assert block == [
            f"at({ball},A)", f"at({ball},B)",
            f"carry({ball},G1)", f"carry({ball},G2)",
        ]
    assert order[12:] == ["atR(A)", "atR(B)", "free(G1)", "free(G2)"]


def test_sort_order_nullary_falls_back_to_symbols():
    universe = [Fluent("q"), Fluent("p"), Fluent("r")]
    assert names(sort_order(universe, [])) == ["p", "q", "r"]


def test_orders_are_permutations(gripper3):
    for order in (
        lexical_order(gripper3.fluents),
        sort_order(gripper3.fluents, gripper3.sorts),
    ):
        assert sorted(order.fluents, key=str) == sorted(gripper3.fluents, key=str)
        assert len(set(order.fluents)) == len(gripper3.fluents)


def test_explicit_order_checks_permutation(gripper1):
    reversed_universe = tuple(reversed(gripper1.fluents))
    order = explicit_order(gripper1.fluents, reversed_universe)
    assert order.fluents == reversed_universe
    with pytest.raises(ValueError):
        explicit_order(gripper1.fluents, gripper1.fluents[:-1])


def test_interleave_examples(gripper1):
    varmap = interleave(sort_order(gripper1.fluents, gripper1.sorts))
    first = varmap.fluents[0]
    assert varmap.cur[first] == 0 and varmap.nxt[first] == 1
    assert max(varmap.nxt_vars) == 2 * len(gripper1.fluents) - 1
    assert varmap.cur_vars == tuple(range(0, 16, 2))
    assert varmap.fluent_of(0) == varmap.fluent_of(1) == first


def test_interleave_gripper20_has_168_variables():
    p = generate_gripper(20)
    assert len(p.fluents) == 84
    varmap = interleave(sort_order(p.fluents, p.sorts))
    assert varmap.num_vars == 168
    assert sorted(varmap.cur_vars + varmap.nxt_vars) == list(range(168))
