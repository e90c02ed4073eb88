from dataclasses import replace
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from conftest import enumerate_opt
from mwhvc.engine import Engine, run
from mwhvc.errors import InvariantViolation, ParameterError
from mwhvc.generators import gen_cycle, gen_random_rank, gen_random_uniform
from mwhvc.hypergraph import Hypergraph
from mwhvc.params import make_params
from mwhvc.verify import (
    Certificate,
    branch_and_bound_opt,
    brute_force_opt,
    certificate,
    check_counters,
    check_cover,
    check_dual_feasible,
    check_ratio,
    check_trace,
    verify_run,
)


def test_check_cover_examples(triangle):
    assert check_cover(triangle, [0, 1])
    assert not check_cover(triangle, [0])
    assert check_cover(Hypergraph(2, (1, 1), []), [])


def test_opt_cycle5():
    assert brute_force_opt(gen_cycle(5))[0] == 3


def test_opt_single_edge_witness():
    assert brute_force_opt(Hypergraph(2, (1, 2), [(0, 1)])) == (1, (0,))


def test_opt_singleton():
    assert brute_force_opt(Hypergraph(1, (7,), [(0,)])) == (7, (0,))


def test_opt_refuses_large():
    with pytest.raises(ParameterError):
        brute_force_opt(Hypergraph(30, (1,) * 30, [(0, 1)]))


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32), st.integers(1, 10), st.integers(1, 3))
def test_brute_force_matches_enumeration(seed, n, f):
    h = gen_random_rank(max(n, f), 2 * n, f, 9, seed)
    best, winners = enumerate_opt(h)
    w, witness = brute_force_opt(h)
    assert w == best and witness == min(winners)


@pytest.mark.parametrize("seed", range(20))
def test_branch_and_bound_agrees(seed):
    h = gen_random_uniform(12, 18, 3, 50, seed)
    assert branch_and_bound_opt(h) == brute_force_opt(h)[0]


def test_dual_feasible_examples(two_vertex):
    assert check_dual_feasible(two_vertex, [F(1)])
    assert not check_dual_feasible(two_vertex, [F(3, 2)])


def test_check_ratio_flags(two_vertex):
    cert = Certificate((0, 1), 2, (F(2, 3),), F(2, 3), 3 * F(2, 3))
    assert check_ratio(two_vertex, cert, F(1), 2, opt=1).ok
    bad = Certificate((0,), 1, (F(2),), F(2), F(6))
    flags = check_ratio(two_vertex, bad, F(1), 2, opt=1).flags()
    assert flags["cover_valid"] and not flags["dual_feasible"] and not flags["weak_duality"]
    uncovered = Certificate((), 0, (F(0),), F(0), F(0))
    assert not check_ratio(two_vertex, uncovered, F(1), 2).flags()["cover_valid"]


def test_certificate_fields(two_vertex):
    r = run(two_vertex, make_params(two_vertex, 1))
    c = certificate(r)
    assert c.dual_sum == F(2, 3) and c.ratio_bound == 2 and c.cover_weight == 2


def test_clean_run_verifies(triangle):
    rep = verify_run(triangle, run(triangle, make_params(triangle, 1)))
    assert rep.ok, rep.to_json()
    assert {"ratio_vs_opt", "per_iteration_vault", "congest_budget", "iteration_bound"} <= set(rep.flags())


def test_tampered_counters_fail(triangle):
    p = make_params(triangle, 1)
    r = run(triangle, p)
    forged = replace(r, stuck_counts=(99,) * 3)
    flags = check_counters(forged, triangle, p).flags()
    assert not flags["counter_recount"] and not flags["stuck_bound"]


def test_tampered_trace_fails():
    h = gen_random_rank(8, 12, 3, 20, 5)
    p = make_params(h, F(1, 10))
    r = run(h, p)
    ev = next(e for e in r.trace.iterations if e.deals)
    j = next(iter(ev.deals))
    ev.deals[j] = ev.deals[j] * 1000
    assert not check_trace(h, p, r).ok


def test_tampered_cover_fails(triangle):
    r = run(triangle, make_params(triangle, 1))
    forged = replace(r, cover=(0,), cover_weight=1)
    flags = verify_run(triangle, forged).flags()
    assert not flags["cover_valid"]


class NoJoin(Engine):
    """Fault injection: tight vertices never join the cover."""

    def tight(self, state, i):
        return []


def test_mutant_engine_is_caught():
    h = gen_random_rank(6, 8, 3, 9, 3)
    p = make_params(h, 1)
    with pytest.raises(InvariantViolation):
        run(h, p, engine=NoJoin())
