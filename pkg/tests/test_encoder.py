import itertools
import random

import pytest

from fluentplan.bdd import BddManager
from fluentplan.domain import (
    NOOP,
    Fluent,
    GoalAnd,
    GoalAtom,
    GoalNot,
    GoalOr,
    GroundAction,
    apply_action,
)
from fluentplan.encoder import (
    EncodingError,
    build_encoded_problem,
    decode_valuation,
    encode_action,
    encode_goal,
    encode_state,
)
from fluentplan.ordering import interleave, lexical_order, sort_order
from fluentplan.oracle import reachable_states
from conftest import random_mini_problem


@pytest.fixture
def abc():
    """Three nullary fluents a, b, c with an interleaved varmap."""
    universe = (Fluent("a"), Fluent("b"), Fluent("c"))
    varmap = interleave(lexical_order(universe))
    mgr = BddManager(varmap.num_vars)
    return mgr, varmap, universe


def test_encode_state_minterm(abc):
    mgr, varmap, (a, b, c) = abc
    za, zb, zc = (mgr.var(varmap.cur[f]) for f in (a, b, c))
    s = encode_state(mgr, varmap, frozenset({a, c}))
    assert s == (za & mgr.negate(zb) & zc)
    assert mgr.count_models(s, varmap.cur_vars) == 1
    empty = encode_state(mgr, varmap, frozenset())
    assert empty == (mgr.negate(za) & mgr.negate(zb) & mgr.negate(zc))


def test_encode_state_set_of_two(abc):
    mgr, varmap, (a, b, c) = abc
    za, zb, zc = (mgr.var(varmap.cur[f]) for f in (a, b, c))
    two = encode_state(mgr, varmap, frozenset({a, c})) | encode_state(
        mgr, varmap, frozenset({b, c})
    )
    expected = (za & mgr.negate(zb) & zc) | (mgr.negate(za) & zb & zc)
    assert two == expected


def test_encode_state_next_family(abc):
    mgr, varmap, (a, b, c) = abc
    s = encode_state(mgr, varmap, frozenset({a}), which="next")
    assert mgr.support(s) == set(varmap.nxt_vars)


def test_encode_state_unknown_fluent(abc):
    mgr, varmap, _ = abc
    with pytest.raises(EncodingError):
        encode_state(mgr, varmap, frozenset({Fluent("ghost")}))


def test_decode_roundtrip_random():
    rng = random.Random(11)
    universe = tuple(Fluent(f"f{i}") for i in range(10))
    varmap = interleave(lexical_order(universe))
    mgr = BddManager(varmap.num_vars)
    for _ in range(100):
        state = frozenset(f for f in universe if rng.random() < 0.5)
        bdd = encode_state(mgr, varmap, state)
        val = mgr.sat_one(bdd, varmap.cur_vars)
        assert decode_valuation(varmap, val) == state


def test_decode_requires_total_valuation(abc):
    mgr, varmap, _ = abc
    with pytest.raises(EncodingError):
        decode_valuation(varmap, {0: True})


def test_encode_goal_atom_and_tautology(abc):
    mgr, varmap, (a, b, c) = abc
    assert encode_goal(mgr, varmap, GoalAtom(a)) == mgr.var(varmap.cur[a])
    taut = GoalOr((GoalNot(GoalAtom(a)), GoalAtom(a)))
    assert encode_goal(mgr, varmap, taut) == mgr.true
    assert encode_goal(mgr, varmap, GoalAnd(())) == mgr.true
    assert encode_goal(mgr, varmap, GoalOr(())) == mgr.false


def test_encode_goal_gripper2(gripper2):
    ep = build_encoded_problem(gripper2)
    mgr, varmap = ep.manager, ep.varmap
    atoms = [f for f in gripper2.fluents if str(f) in ("at(B1,B)", "at(B2,B)")]
    expected = mgr.var(varmap.cur[atoms[0]]) & mgr.var(varmap.cur[atoms[1]])
    assert ep.goal_bdd == expected


def test_encode_goal_matches_explicit_semantics():
    rng = random.Random(23)
    universe = tuple(Fluent(f"f{i}") for i in range(5))
    varmap = interleave(lexical_order(universe))
    mgr = BddManager(varmap.num_vars)
    from fluentplan.domain import eval_goal

    def random_goal(depth):
        r = rng.random()
        if depth == 0 or r < 0.3:
            return GoalAtom(universe[rng.randrange(len(universe))])
        if r < 0.5:
            return GoalNot(random_goal(depth - 1))
        children = tuple(random_goal(depth - 1) for _ in range(rng.randrange(3)))
        return GoalAnd(children) if r < 0.75 else GoalOr(children)

    for _ in range(50):
        goal = random_goal(3)
        bdd = encode_goal(mgr, varmap, goal)
        for bits in range(1 << len(universe)):
            state = frozenset(
                universe[i] for i in range(len(universe)) if (bits >> i) & 1
            )
            val = {varmap.cur[f]: (f in state) for f in universe}
            assert mgr.evaluate(bdd, val) == eval_goal(goal, state)


def test_encode_action_example(abc):
    mgr, varmap, (a, b, c) = abc
    act = GroundAction(
        name="swap",
        pre_pos=frozenset({a}),
        pre_neg=frozenset({b}),
        adds=frozenset({b}),
        dels=frozenset({a}),
    )
    t = encode_action(mgr, varmap, act)
    za, zb, zc = (mgr.var(varmap.cur[f]) for f in (a, b, c))
    na, nb, nc = (mgr.var(varmap.nxt[f]) for f in (a, b, c))
    expected = (
        za
        & mgr.negate(zb)
        & mgr.negate(na)
        & nb
        & mgr.apply("iff", nc, zc)
    )
    assert t == expected


def test_encode_noop_is_frame_everywhere(abc):
    mgr, varmap, universe = abc
    t = encode_action(mgr, varmap, NOOP)
    expected = mgr.true
    for f in universe:
        eq = mgr.apply("iff", mgr.var(varmap.nxt[f]), mgr.var(varmap.cur[f]))
        expected = expected & eq
    assert t == expected


def test_encode_action_rejects_bad_effects(abc):
    mgr, varmap, (a, b, c) = abc
    with pytest.raises(EncodingError):
        encode_action(
            mgr,
            varmap,
            GroundAction(name="bad", adds=frozenset({a}), dels=frozenset({a})),
        )
    with pytest.raises(EncodingError):
        encode_action(mgr, varmap, GroundAction(name="bad", adds=frozenset({a})))


def test_transition_matches_explicit_semantics_exhaustive():
    # all state pairs of small random problems: diagram satisfaction
    # must coincide with the explicit successor relation
    rng = random.Random(31)
    for _ in range(10):
        p = random_mini_problem(rng, num_fluents=5, num_actions=4)
        varmap = interleave(lexical_order(p.fluents))
        mgr = BddManager(varmap.num_vars)
        n = len(p.fluents)
        for a in p.actions:
            t = encode_action(mgr, varmap, a)
            for bits_s, bits_t in itertools.product(range(1 << n), repeat=2):
                s = frozenset(p.fluents[i] for i in range(n) if (bits_s >> i) & 1)
                s2 = frozenset(p.fluents[i] for i in range(n) if (bits_t >> i) & 1)
                val = {varmap.cur[f]: (f in s) for f in p.fluents}
                val.update({varmap.nxt[f]: (f in s2) for f in p.fluents})
                assert mgr.evaluate(t, val) == (apply_action(s, a) == s2)


def test_transition_matches_oracle_on_gripper1(gripper1):
    ep = build_encoded_problem(gripper1)
    mgr, varmap = ep.manager, ep.varmap
    states = sorted(reachable_states(gripper1), key=lambda s: sorted(map(str, s)))
    bdds = {a: encode_action(mgr, varmap, a) for a in gripper1.actions}
    for s in states:
        for s2 in states:
            val = {varmap.cur[f]: (f in s) for f in gripper1.fluents}
            val.update({varmap.nxt[f]: (f in s2) for f in gripper1.fluents})
            for a, t in bdds.items():
                assert mgr.evaluate(t, val) == (apply_action(s, a) == s2)


def test_build_encoded_problem_thresholds(gripper1):
    ep_inf = build_encoded_problem(gripper1)
    assert len(ep_inf.transition.parts) == 1
    ep_zero = build_encoded_problem(gripper1, partition_threshold=0)
    assert len(ep_zero.transition.parts) == len(gripper1.actions) + 1  # + noop
    ep_nonoop = build_encoded_problem(gripper1, include_noop=False)
    assert len(ep_nonoop.actions) == len(gripper1.actions)


def test_partition_disjunction_is_canonical(gripper2):
    from fluentplan.partition import partition

    order = sort_order(gripper2.fluents, gripper2.sorts)
    baseline = build_encoded_problem(gripper2, order=order)
    mono = baseline.transition.monolithic()
    mgr, varmap = baseline.manager, baseline.varmap
    action_bdds = [(a, encode_action(mgr, varmap, a)) for a in baseline.actions]
    for threshold in (0, 100, 1000, None):
        relation = partition(action_bdds, threshold)
        assert relation.monolithic() == mono


def test_init_bdd_single_model(gripper2):
    ep = build_encoded_problem(gripper2)
    assert ep.manager.count_models(ep.init_bdd, ep.varmap.cur_vars) == 1
    val = ep.manager.sat_one(ep.init_bdd, ep.varmap.cur_vars)
    assert decode_valuation(ep.varmap, val) == gripper2.init


def test_build_rejects_invalid_problem(gripper1):
    from fluentplan.domain import Problem

    bad = Problem(
        name="bad",
        sorts=gripper1.sorts,
        fluents=gripper1.fluents,
        actions=gripper1.actions,
        init=gripper1.init | {Fluent("ghost")},
        goal=gripper1.goal,
    )
    with pytest.raises(EncodingError):
        build_encoded_problem(bad)
