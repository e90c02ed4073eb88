"""Weighted hypergraphs, set systems, and their plain-text formats.

Vertices are dense 0-based integers, every edge is stored as a sorted tuple of
vertex ids and weights are positive integers.  A :class:`Hypergraph` is
immutable; derived statistics (rank, maximum degree, incidence lists) are
computed lazily and cached.

Text format::

    n m
    w_0 w_1 ... w_{n-1}
    k v_1 ... v_k        (m lines, one per edge)

Lines starting with ``#`` are comments.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidInstance, ParseError

__all__ = [
    "Hypergraph",
    "SetSystem",
    "DegreeStats",
    "ValidationReport",
    "validate",
    "degree_stats",
    "from_set_cover",
    "read_hypergraph",
    "write_hypergraph",
    "read_set_system",
    "write_set_system",
]


@dataclass(frozen=True)
class DegreeStats:
    f: int
    delta: int
    per_vertex_degree: tuple[int, ...]
    per_edge_local_delta: tuple[int, ...]


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self):
        return self.ok

    def raise_if_invalid(self):
        if self.violations:
            raise InvalidInstance("; ".join(self.violations))


@dataclass(frozen=True)
class Hypergraph:
    """Vertex-weighted hypergraph.

    ``edges`` may be given in any order and with unsorted members; they are
    normalized to sorted tuples.  Duplicate edges are kept: each one is a
    separate client node of the network.
    """

    n: int
    weights: tuple[int, ...]
    edges: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "weights", tuple(self.weights))
        object.__setattr__(self, "edges", tuple(tuple(sorted(e)) for e in self.edges))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def incidence(self) -> tuple[tuple[int, ...], ...]:
        """``incidence[v]`` lists the ids of the edges containing ``v``."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for j, e in enumerate(self.edges):
            for v in e:
                inc[v].append(j)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def stats(self) -> DegreeStats:
        return degree_stats(self)

    @property
    def rank(self) -> int:
        return self.stats.f

    @property
    def max_degree(self) -> int:
        return self.stats.delta

    @property
    def max_weight(self) -> int:
        return max(self.weights, default=1)

    def cover_weight(self, cover: Iterable[int]) -> int:
        return sum(self.weights[v] for v in set(cover))

    def is_cover(self, cover: Iterable[int]) -> bool:
        c = set(cover)
        return all(not c.isdisjoint(e) for e in self.edges)


@dataclass(frozen=True)
class SetSystem:
    """Weighted set system over elements ``0 .. n_elements-1``."""

    n_elements: int
    subsets: tuple[tuple[int, frozenset[int]], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(
            self, "subsets", tuple((int(w), frozenset(s)) for w, s in self.subsets)
        )

    def validate(self) -> ValidationReport:
        out = []
        covered = set()
        for i, (w, s) in enumerate(self.subsets):
            if w < 1:
                out.append(f"subset {i}: weight < 1")
            for x in s:
                if not 0 <= x < self.n_elements:
                    out.append(f"subset {i}: element {x} out of range")
            covered |= s
        for x in range(self.n_elements):
            if x not in covered:
                out.append(f"element {x} is in no subset")
        return ValidationReport(tuple(out))

    def is_cover(self, chosen: Iterable[int]) -> bool:
        got = set()
        for i in chosen:
            got |= self.subsets[i][1]
        return got >= set(range(self.n_elements))


def validate(h: Hypergraph) -> ValidationReport:
    """Collect every structural violation of ``h``; never raises."""
    out = []
    if h.n < 0:
        out.append("negative vertex count")
    if len(h.weights) != h.n:
        out.append(f"expected {h.n} weights, got {len(h.weights)}")
    for v, w in enumerate(h.weights):
        if not isinstance(w, int) or w < 1:
            out.append(f"vertex {v}: weight < 1")
    for j, e in enumerate(h.edges):
        if not e:
            out.append(f"edge {j}: empty edge")
            continue
        if len(set(e)) != len(e):
            out.append(f"edge {j}: duplicate vertex in edge")
        for v in e:
            if not 0 <= v < h.n:
                out.append(f"edge {j}: vertex id {v} out of range")
    return ValidationReport(tuple(out))


def degree_stats(h: Hypergraph) -> DegreeStats:
    deg = [0] * h.n
    for e in h.edges:
        for v in e:
            deg[v] += 1
    local = tuple(max(deg[v] for v in e) for e in h.edges)
    return DegreeStats(
        f=max((len(e) for e in h.edges), default=0),
        delta=max(deg, default=0),
        per_vertex_degree=tuple(deg),
        per_edge_local_delta=local,
    )


def from_set_cover(s: SetSystem) -> Hypergraph:
    """One vertex per subset, one hyperedge per element.

    Edge ``x`` holds the subsets containing element ``x``, so the rank of the
    result is the maximum element frequency.
    """
    report = s.validate()
    report.raise_if_invalid()
    members: list[list[int]] = [[] for _ in range(s.n_elements)]
    for i, (_, subset) in enumerate(s.subsets):
        for x in subset:
            members[x].append(i)
    return Hypergraph(
        n=len(s.subsets),
        weights=tuple(w for w, _ in s.subsets),
        edges=tuple(tuple(e) for e in members),
    )


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(tokens: Sequence[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer token in {' '.join(tokens)!r}", lineno) from None


def read_hypergraph(text: str) -> Hypergraph:
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    lineno, head = lines[0]
    header = _ints(head, lineno)
    if len(header) != 2 or min(header) < 0:
        raise ParseError("header must be 'n m' with n, m >= 0", lineno)
    n, m = header
    pos = 1
    weights: list[int] = []
    if n > 0:
        if pos >= len(lines):
            raise ParseError("missing weight line", lineno + 1)
        lineno, toks = lines[pos]
        weights = _ints(toks, lineno)
        if len(weights) != n:
            raise ParseError(f"expected {n} weights, got {len(weights)}", lineno)
        pos += 1
    edges = []
    for _ in range(m):
        if pos >= len(lines):
            raise ParseError(f"expected {m} edges, got {len(edges)}", lines[-1][0] + 1)
        lineno, toks = lines[pos]
        vals = _ints(toks, lineno)
        if vals[0] != len(vals) - 1:
            raise ParseError(f"edge arity {vals[0]} but {len(vals) - 1} ids listed", lineno)
        edges.append(tuple(vals[1:]))
        pos += 1
    if pos != len(lines):
        raise ParseError("trailing data after last edge", lines[pos][0])
    h = Hypergraph(n, tuple(weights), tuple(edges))
    report = validate(h)
    if not report.ok:
        raise ParseError("; ".join(report.violations), None)
    return h


def write_hypergraph(h: Hypergraph, header: str | None = None) -> str:
    out = []
    if header:
        out.extend(f"# {line}" for line in header.splitlines())
    out.append(f"{h.n} {h.m}")
    out.append(" ".join(str(w) for w in h.weights))
    out.extend(" ".join(str(x) for x in (len(e), *e)) for e in h.edges)
    return "\n".join(out) + "\n"


def read_set_system(text: str) -> SetSystem:
    """Parse ``|X| m`` followed by ``m`` lines of ``w k x_1 .. x_k``."""
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError("empty input", 1)
    lineno, head = lines[0]
    header = _ints(head, lineno)
    if len(header) != 2 or min(header) < 0:
        raise ParseError("header must be '|X| m'", lineno)
    nx, m = header
    if len(lines) - 1 != m:
        raise ParseError(f"expected {m} subsets, got {len(lines) - 1}", lines[-1][0])
    subsets = []
    for lineno, toks in lines[1:]:
        vals = _ints(toks, lineno)
        if len(vals) < 2 or vals[1] != len(vals) - 2:
            raise ParseError("subset line must be 'w k x_1 .. x_k'", lineno)
        subsets.append((vals[0], frozenset(vals[2:])))
    s = SetSystem(nx, tuple(subsets))
    report = s.validate()
    if not report.ok:
        raise ParseError("; ".join(report.violations), None)
    return s


def write_set_system(s: SetSystem) -> str:
    out = [f"{s.n_elements} {len(s.subsets)}"]
    for w, subset in s.subsets:
        xs = sorted(subset)
        out.append(" ".join(str(x) for x in (w, len(xs), *xs)))
    return "\n".join(out) + "\n"
