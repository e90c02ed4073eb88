from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from mwhvc.errors import InvalidInstance, ParseError
from mwhvc.generators import gen_random_rank, gen_set_cover_random, gen_star
from mwhvc.hypergraph import (
    Hypergraph,
    SetSystem,
    degree_stats,
    from_set_cover,
    read_hypergraph,
    read_set_system,
    validate,
    write_hypergraph,
    write_set_system,
)


def test_validate_minimal_ok():
    assert validate(Hypergraph(2, (1, 1), [(0, 1)])).ok


@pytest.mark.parametrize(
    "h, needle",
    [
        (Hypergraph(2, (1, 1), [()]), "empty edge"),
        (Hypergraph(2, (0, 1), [(0, 1)]), "weight < 1"),
        (Hypergraph(2, (1, 1), [(0, 0)]), "duplicate vertex"),
        (Hypergraph(2, (1, 1), [(0, 2)]), "out of range"),
        (Hypergraph(2, (1,), [(0, 1)]), "expected 2 weights"),
    ],
)
def test_validate_reports_violation(h, needle):
    report = validate(h)
    assert not report.ok
    assert any(needle in v for v in report.violations)
    with pytest.raises(InvalidInstance):
        report.raise_if_invalid()


def test_edges_are_sorted_and_duplicates_kept():
    h = Hypergraph(3, (1, 1, 1), [(2, 0), (0, 2)])
    assert h.edges == ((0, 2), (0, 2))
    assert h.stats.per_vertex_degree == (2, 0, 2)


def test_degree_stats_star():
    s = degree_stats(Hypergraph(4, (1,) * 4, [(0, 1), (0, 2), (0, 3)]))
    assert (s.f, s.delta) == (2, 3)
    assert s.per_edge_local_delta == (3, 3, 3)


def test_degree_stats_single_edge():
    s = degree_stats(Hypergraph(1, (1,), [(0,)]))
    assert (s.f, s.delta) == (1, 1)


def test_degree_stats_uniform():
    s = degree_stats(Hypergraph(4, (1,) * 4, [(0, 1, 2), (0, 1, 3)]))
    assert (s.f, s.delta) == (3, 2)
    assert s.per_vertex_degree == (2, 2, 1, 1)


@settings(max_examples=200)
@given(st.integers(0, 2**32))
def test_delta_matches_recount(seed):
    h = gen_random_rank(7, 9, 3, 5, seed)
    recount = max(sum(v in e for e in h.edges) for v in range(h.n))
    s = degree_stats(h)
    assert s.delta == recount
    assert all(d <= s.delta for d in s.per_edge_local_delta)


def test_from_set_cover_example():
    s = SetSystem(2, ((1, frozenset({0})), (2, frozenset({0, 1}))))
    h = from_set_cover(s)
    assert h.n == 2 and h.weights == (1, 2)
    assert h.edges == ((0, 1), (1,))


def test_from_set_cover_single():
    h = from_set_cover(SetSystem(1, ((4, frozenset({0})),)))
    assert (h.n, h.edges, h.weights) == (1, ((0,),), (4,))


def test_from_set_cover_rank_is_max_frequency():
    # elements 0,1,2 each in exactly two of three subsets
    s = SetSystem(3, ((1, frozenset({0, 1})), (1, frozenset({1, 2})), (1, frozenset({0, 2}))))
    h = from_set_cover(s)
    assert h.n == 3 and h.stats.f == 2
    assert sorted(h.edges) == [(0, 1), (0, 2), (1, 2)]


def test_from_set_cover_rejects_uncovered_element():
    with pytest.raises(InvalidInstance):
        from_set_cover(SetSystem(2, ((1, frozenset({0})),)))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_from_set_cover_preserves_covers(seed):
    s = gen_set_cover_random(6, 7, 3, 9, seed)
    h = from_set_cover(s)
    for k in range(h.n + 1):
        for c in combinations(range(h.n), k):
            assert h.is_cover(c) == s.is_cover(c)
            assert h.cover_weight(c) == sum(s.subsets[i][0] for i in c)


def test_read_minimal():
    h = read_hypergraph("2 1\n1 1\n2 0 1\n")
    assert h == Hypergraph(2, (1, 1), [(0, 1)])


def test_round_trip_normalizes():
    text = "# a comment\n3   2\n 4 5 6\n2 2 0\n\n1 1\n"
    h = read_hypergraph(text)
    out = write_hypergraph(h)
    assert out == "3 2\n4 5 6\n2 0 2\n1 1\n"
    assert write_hypergraph(read_hypergraph(out)) == out


@pytest.mark.parametrize(
    "text, line",
    [
        ("2 1\n1 1\n3 0 1\n", 3),  # arity 3 but 2 ids
        ("2 1\n1\n2 0 1\n", 2),  # weight count
        ("2 2\n1 1\n2 0 1\n", 4),  # missing edge
        ("2 1\n1 x\n2 0 1\n", 2),
        ("2 1\n1 1\n2 0 1\n1 0\n", 4),  # trailing edge
    ],
)
def test_parse_errors_carry_line(text, line):
    with pytest.raises(ParseError) as exc:
        read_hypergraph(text)
    assert exc.value.line == line


def test_parse_rejects_invalid_content():
    with pytest.raises(ParseError):
        read_hypergraph("2 1\n0 1\n2 0 1\n")


@settings(max_examples=100)
@given(st.integers(0, 2**32))
def test_round_trip_random(seed):
    h = gen_random_rank(6, 5, 3, 100, seed)
    assert read_hypergraph(write_hypergraph(h)) == h


def test_edgeless_round_trip():
    h = Hypergraph(0, (), [])
    assert read_hypergraph(write_hypergraph(h)) == h


def test_set_system_round_trip():
    s = gen_set_cover_random(5, 4, 2, 7, 3)
    assert read_set_system(write_set_system(s)) == s


def test_star_stats():
    h = gen_star(2**10, 1, 2**10)
    assert h.stats.delta == 2**10
    assert sum(1 for e in h.edges if 0 in e) == 2**10
