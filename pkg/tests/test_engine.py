from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import enumerate_opt
from mwhvc.engine import (
    RAISE,
    STUCK,
    EdgeState,
    Engine,
    VertexState,
    check_tight,
    classify_raise_stuck,
    init,
    run,
    step,
    update_deal,
)
from mwhvc.errors import InvariantViolation, ProtocolError
from mwhvc.generators import gen_random_rank, gen_star
from mwhvc.hypergraph import Hypergraph
from mwhvc.params import make_params


def vertex(w, dual_sum=F(0)):
    return VertexState(id=0, weight=w, live_edges={0}, dual_sum=dual_sum)


def test_init_two_vertex():
    h = Hypergraph(2, (1, 2), [(0, 1)])
    state = init(h, make_params(h, 1))
    assert state.edges[0].deal == F(1, 3)
    assert state.edges[0].min_vertex == 0


def test_init_singleton():
    h = Hypergraph(1, (5,), [(0,)])
    state = init(h, make_params(h, 1))
    assert state.params.beta == F(1, 2)
    assert state.edges[0].deal == F(5, 2)


def test_init_star_center_argmin():
    h = gen_star(5, center_weight=2, leaf_weight=1)
    p = make_params(h, 1)
    state = init(h, p)
    assert all(e.deal == p.beta * F(2, 5) for e in state.edges)
    assert all(e.min_vertex == 0 for e in state.edges)
    assert state.vertices[0].dual_sum == p.beta * 2


def test_init_tie_break_lowest_id():
    h = Hypergraph(3, (2, 1, 2), [(0, 1, 2), (0, 2)])
    # normalized weights: v0 = 1, v1 = 1, v2 = 1
    state = init(h, make_params(h, 1))
    assert [e.min_vertex for e in state.edges] == [0, 0]


@pytest.mark.parametrize(
    "w, b, s, expected",
    [(1, F(1, 2), F(1, 2), True), (1, F(1, 3), F(1, 3), False), (7, F(1, 10), F(0), False)],
)
def test_check_tight(w, b, s, expected):
    assert check_tight(vertex(w, s), b) is expected


@pytest.mark.parametrize("s, expected", [(F(1, 6), RAISE), (F(1, 3), STUCK), (F(0), RAISE)])
def test_classify(s, expected):
    assert classify_raise_stuck(vertex(1), s, F(1, 3), F(2)) == expected


def edge(deal, members=(0, 1, 2)):
    return EdgeState(id=0, members=members, alpha=F(2), min_vertex=0, deal=deal, delta=deal)


def test_update_deal_raise():
    e = edge(F(1, 6), (0, 1))
    assert update_deal(e, {0: RAISE, 1: RAISE}) == F(1, 3)
    assert e.raise_count == 1 and e.delta == F(1, 2)


def test_update_deal_stuck_dominates():
    e = edge(F(1, 6))
    assert update_deal(e, {0: RAISE, 1: STUCK, 2: RAISE}) == F(1, 6)
    assert e.raise_count == 0 and e.delta == F(1, 3)


def test_update_deal_geometric():
    e = edge(F(1, 7), (0,))
    for _ in range(5):
        update_deal(e, {0: RAISE})
    assert e.deal == F(32, 7) and e.raise_count == 5


def test_update_deal_missing_vote():
    with pytest.raises(ProtocolError):
        update_deal(edge(F(1)), {0: RAISE})


def test_step_by_step_two_vertex(two_vertex):
    state = init(two_vertex, make_params(two_vertex, 1))
    assert state.edges[0].delta == F(1, 3)
    ev = step(state)
    assert ev.joins == () and ev.stuck_vertices == (0, 1) and ev.raises == ()
    assert state.edges[0].deal == F(1, 3) and state.edges[0].delta == F(2, 3)
    ev = step(state)
    assert ev.joins == (0, 1) and ev.covered_edges == (0,)
    assert all(e.covered for e in state.edges)


def test_run_two_vertex(two_vertex):
    r = run(two_vertex, make_params(two_vertex, 1))
    assert r.cover == (0, 1) and r.cover_weight == 2 and r.iterations == 2
    assert r.dual == (F(2, 3),)
    assert r.cover_weight <= 3 * enumerate_opt(two_vertex)[0]


def test_run_singleton(singleton):
    r = run(singleton, make_params(singleton, 1))
    assert r.cover == (0,) and r.iterations == 1 and r.dual == (F(1, 2),)


def test_run_no_edges():
    h = Hypergraph(3, (1, 2, 3), [])
    r = run(h, make_params(h, 1))
    assert r.cover == () and r.iterations == 0 and r.rounds == 0


def test_run_triangle(triangle):
    r = run(triangle, make_params(triangle, 1))
    assert triangle.is_cover(r.cover)
    assert r.cover_weight <= 3 * 2


def test_run_cheap_hub():
    # vertex 0 covers everything at weight 1; leaves are heavy
    h = Hypergraph(5, (1, 50, 50, 50, 50), [(0, 1), (0, 2), (0, 3, 4)])
    r = run(h, make_params(h, F(1, 2)))
    assert 0 in r.cover
    assert r.cover_weight <= (h.stats.f + F(1, 2)) * enumerate_opt(h)[0]


def test_isolated_vertex_never_joins():
    h = Hypergraph(3, (1, 1, 1), [(0, 1)])
    r = run(h, make_params(h, 1))
    assert 2 not in r.cover


def test_raises_happen():
    # v0 has small normalized weight on many edges while the other members
    # stay far below their thresholds, so some deals must grow
    h = gen_random_rank(10, 20, 3, 20, 5)
    r = run(h, make_params(h, F(1, 10)))
    assert sum(r.raise_counts) > 0


def test_cap_violation_carries_trace():
    h = gen_random_rank(8, 12, 3, 20, 1)
    with pytest.raises(InvariantViolation) as exc:
        run(h, make_params(h, F(1, 10)), cap=1)
    assert exc.value.trace is not None and len(exc.value.trace.iterations) == 1


class SkipCovering(Engine):
    def cover_edges(self, state, i, joins):
        return []


def test_skipping_covered_broadcast_is_detected(triangle):
    with pytest.raises((InvariantViolation, ProtocolError)):
        run(triangle, make_params(triangle, 1), engine=SkipCovering())


class GreedyRaise(Engine):
    def vote(self, state, i):
        votes = super().vote(state, i)
        return {v: RAISE for v in votes}


def test_forced_raises_break_an_invariant():
    h = gen_star(8, center_weight=1, leaf_weight=1)
    with pytest.raises(InvariantViolation):
        run(h, make_params(h, F(1, 10)), engine=GreedyRaise())


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(["1/10", "1/2", "1"]), st.sampled_from(["global", "local", "refined"]))
def test_runs_are_monotone_and_deterministic(seed, eps, mode):
    h = gen_random_rank(7, 10, 3, 15, seed)
    p = make_params(h, eps, mode)
    r1, r2 = run(h, p), run(h, p)
    assert r1 == r2
    deals = dict(enumerate(r1.trace.initial_deals))
    for ev in r1.trace.iterations:
        for j, d in ev.deals.items():
            assert d >= deals[j]
            deals[j] = d
