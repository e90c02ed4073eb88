import sys
from itertools import combinations
from pathlib import Path

import pytest

from mwhvc import Hypergraph

FIXTURES = Path(__file__).parent / "fixtures"


def enumerate_opt(h):
    """Plain 2^n enumeration, no pruning: (min weight, all minimum covers)."""
    best, winners = None, []
    for k in range(h.n + 1):
        for c in combinations(range(h.n), k):
            if all(set(c) & set(e) for e in h.edges):
                w = sum(h.weights[v] for v in c)
                if best is None or w < best:
                    best, winners = w, [c]
                elif w == best:
                    winners.append(c)
    return best, winners


@pytest.fixture
def two_vertex():
    return Hypergraph(2, (1, 1), [(0, 1)])


@pytest.fixture
def singleton():
    return Hypergraph(1, (1,), [(0,)])


@pytest.fixture
def triangle():
    return Hypergraph(3, (1, 1, 1), [(0, 1), (1, 2), (0, 2)])


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n, (ok, detail) in sorted(mod.RESULTS.items()):
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
