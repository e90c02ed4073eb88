"""Primal-dual (f+eps)-approximation for minimum weight hypergraph vertex cover.

Every vertex and every edge is a node with local state.  An iteration runs the
five sub-steps below in order; inside a sub-step all nodes read the state left
by the previous sub-step and act simultaneously.

    tight     vertices with dual sum >= (1 - beta) w(v) join the cover
    covered   edges touched by a joining vertex become covered
    shrink    vertices drop covered edges and stop once none are left
    vote      live vertices send "raise" if their live deal sum is at most
              (beta / alpha) w(v), otherwise "stuck"
    update    an uncovered edge multiplies its deal by alpha iff every member
              voted "raise", then adds the deal to its dual variable

All arithmetic is exact, so feasibility and the per-vertex deal bound are
asserted after every iteration with zero tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .congest import Kind, MessageLedger, MessageStats, total_rounds
from .errors import InvariantViolation, ProtocolError
from .hypergraph import Hypergraph, validate
from .params import Params
from .rational import ZERO, q, qsum

__all__ = [
    "RAISE",
    "STUCK",
    "VertexState",
    "EdgeState",
    "EngineState",
    "IterationEvents",
    "RunTrace",
    "RunResult",
    "init",
    "check_tight",
    "classify_raise_stuck",
    "update_deal",
    "step",
    "run",
    "Engine",
]

RAISE = "raise"
STUCK = "stuck"


@dataclass
class VertexState:
    id: int
    weight: int
    live_edges: set[int]
    dual_sum: Fraction = ZERO
    in_cover: bool = False
    terminated: bool = False
    stuck_count: int = 0


@dataclass
class EdgeState:
    id: int
    members: tuple[int, ...]
    alpha: Fraction
    min_vertex: int
    deal: Fraction = ZERO
    delta: Fraction = ZERO
    covered: bool = False
    raise_count: int = 0
    covered_at: int | None = None


@dataclass
class IterationEvents:
    iteration: int
    joins: tuple[int, ...] = ()
    covered_edges: tuple[int, ...] = ()
    terminated: tuple[int, ...] = ()
    raises: tuple[int, ...] = ()
    stuck_vertices: tuple[int, ...] = ()
    # deal of every edge still uncovered after this iteration
    deals: dict[int, Fraction] | None = None


@dataclass
class RunTrace:
    initial_deals: tuple[Fraction, ...]
    min_vertex: tuple[int, ...]
    iterations: list[IterationEvents] = field(default_factory=list)


@dataclass
class EngineState:
    h: Hypergraph
    params: Params
    vertices: list[VertexState]
    edges: list[EdgeState]
    iteration: int = 0
    trace: RunTrace | None = None
    ledger: MessageLedger | None = None
    record_deals: bool = True
    beta: Fraction = ZERO  # params.beta as the hot-path rational type

    @property
    def uncovered(self) -> list[EdgeState]:
        return [e for e in self.edges if not e.covered]

    @property
    def cover(self) -> tuple[int, ...]:
        return tuple(v.id for v in self.vertices if v.in_cover)

    def live_deal_sum(self, v: VertexState) -> Fraction:
        return qsum(self.edges[j].deal for j in v.live_edges)



@dataclass
class RunResult:
    """Outcome of one run.  ``dual[j]`` is the final dual variable of edge ``j``."""

    cover: tuple[int, ...]
    cover_weight: int
    dual: tuple[Fraction, ...]
    iterations: int
    rounds: int
    params: Params
    trace: RunTrace
    raise_counts: tuple[int, ...]
    stuck_counts: tuple[int, ...]
    covered_at: tuple[int, ...]
    messages: MessageStats
    ledger: MessageLedger | None = field(default=None, repr=False, compare=False)

    @property
    def dual_sum(self) -> Fraction:
        return qsum(self.dual)


def _send(state: EngineState, kind: Kind, src, dst, iteration: int) -> None:
    if state.ledger is not None:
        state.ledger.send(kind, src, dst, iteration)


def init(h: Hypergraph, p: Params, ledger: MessageLedger | None = None, record_deals: bool = True) -> EngineState:
    """Initialization and iteration 0: every edge starts with
    ``beta * min_{v in e} w(v) / |E(v)|`` (ties go to the lowest vertex id)."""
    validate(h).raise_if_invalid()
    deg = h.stats.per_vertex_degree
    vertices = [
        VertexState(id=v, weight=h.weights[v], live_edges=set(h.incidence[v]))
        for v in range(h.n)
    ]
    for vs in vertices:
        if not vs.live_edges:
            vs.terminated = True
    beta = q(p.beta)
    alphas = {a: q(a) for a in set(p.alpha_table)}
    edges = []
    for j, members in enumerate(h.edges):
        ve = min(members, key=lambda v: (Fraction(h.weights[v], deg[v]), v))
        deal = beta * h.weights[ve] / deg[ve]
        edges.append(EdgeState(id=j, members=members, alpha=alphas[p.alpha_for(j)],
                               min_vertex=ve, deal=deal, delta=deal))
    state = EngineState(h=h, params=p, vertices=vertices, edges=edges, ledger=ledger,
                        record_deals=record_deals, beta=beta)
    for e in edges:
        for v in e.members:
            vertices[v].dual_sum += e.delta
            _send(state, Kind.WEIGHT_DEGREE, ("v", v), ("e", e.id), 0)
        for v in e.members:
            _send(state, Kind.MIN_PAIR, ("e", e.id), ("v", v), 0)
            if p.alpha_mode == "local":
                _send(state, Kind.LOCAL_DEGREE, ("e", e.id), ("v", v), 0)
    state.trace = RunTrace(
        initial_deals=tuple(e.deal for e in edges),
        min_vertex=tuple(e.min_vertex for e in edges),
    )
    check_invariants(state)
    return state


def check_tight(v: VertexState, beta: Fraction) -> bool:
    return v.dual_sum >= (1 - beta) * v.weight


def classify_raise_stuck(v: VertexState, live_deal_sum: Fraction, beta: Fraction, alpha: Fraction) -> str:
    """``raise`` iff the deals on ``v``'s live edges sum to at most ``(beta/alpha) w(v)``."""
    return RAISE if live_deal_sum <= beta / alpha * v.weight else STUCK


def update_deal(e: EdgeState, messages: Mapping[int, str]) -> Fraction:
    """Apply one round of votes to ``e`` and fold the new deal into its dual."""
    missing = [v for v in e.members if v not in messages]
    if missing:
        raise ProtocolError(f"edge {e.id} is missing votes from {missing}")
    if all(messages[v] == RAISE for v in e.members):
        e.deal = e.alpha * e.deal
        e.raise_count += 1
    e.delta += e.deal
    return e.deal


class Engine:
    """Sub-step driver; subclass and override a sub-step to inject faults."""

    def tight(self, state: EngineState, i: int) -> list[int]:
        beta = state.beta
        joins = [v.id for v in state.vertices if not v.terminated and check_tight(v, beta)]
        for vid in joins:
            v = state.vertices[vid]
            v.in_cover = True
            v.terminated = True
            for j in sorted(v.live_edges):
                _send(state, Kind.COVERED_UP, ("v", vid), ("e", j), i)
        return joins

    def cover_edges(self, state: EngineState, i: int, joins: list[int]) -> list[int]:
        newly = sorted({j for vid in joins for j in state.vertices[vid].live_edges})
        for j in newly:
            e = state.edges[j]
            e.covered = True
            e.covered_at = i
            for v in e.members:
                _send(state, Kind.COVERED_DOWN, ("e", j), ("v", v), i)
        return newly

    def shrink(self, state: EngineState, i: int, newly: list[int]) -> list[int]:
        touched = set()
        for j in newly:
            for vid in state.edges[j].members:
                state.vertices[vid].live_edges.discard(j)
                touched.add(vid)
        done = []
        for vid in sorted(touched):
            v = state.vertices[vid]
            if not v.terminated and not v.live_edges:
                v.terminated = True
                done.append(vid)
        return done

    def vote(self, state: EngineState, i: int) -> dict[int, str]:
        votes = {}
        for v in state.vertices:
            if v.terminated:
                continue
            alpha_v = max(state.edges[j].alpha for j in v.live_edges)
            votes[v.id] = classify_raise_stuck(v, state.live_deal_sum(v), state.beta, alpha_v)
            for j in sorted(v.live_edges):
                _send(state, Kind.RAISE_STUCK, ("v", v.id), ("e", j), i)
        return votes

    def update(self, state: EngineState, i: int, votes: dict[int, str]) -> list[int]:
        raises = []
        for e in state.edges:
            if e.covered:
                continue
            before = e.raise_count
            update_deal(e, {v: votes[v] for v in e.members if v in votes})
            if e.raise_count != before:
                raises.append(e.id)
            for v in e.members:
                state.vertices[v].dual_sum += e.deal
                _send(state, Kind.DEAL_BIT, ("e", e.id), ("v", v), i)
        return raises


_DEFAULT_ENGINE = Engine()


def step(state: EngineState, engine: Engine | None = None) -> IterationEvents:
    """Run one iteration in place and return what happened in it."""
    eng = engine or _DEFAULT_ENGINE
    state.iteration += 1
    i = state.iteration
    joins = eng.tight(state, i)
    newly = eng.cover_edges(state, i, joins)
    terminated = eng.shrink(state, i, newly)
    votes = eng.vote(state, i)
    stuck = sorted(v for v, m in votes.items() if m == STUCK)
    for vid in stuck:
        state.vertices[vid].stuck_count += 1
    raises = eng.update(state, i, votes)
    events = IterationEvents(
        iteration=i,
        joins=tuple(joins),
        covered_edges=tuple(newly),
        terminated=tuple(terminated),
        raises=tuple(raises),
        stuck_vertices=tuple(stuck),
        deals={e.id: e.deal for e in state.edges if not e.covered} if state.record_deals else None,
    )
    if state.trace is not None:
        state.trace.iterations.append(events)
    check_invariants(state)
    return events


def check_invariants(state: EngineState) -> None:
    """Dual feasibility for every vertex and the live-deal bound for live ones."""
    beta = state.beta
    for v in state.vertices:
        if v.dual_sum > v.weight:
            raise InvariantViolation(
                f"dual packing violated at vertex {v.id} in iteration {state.iteration}",
                payload={"check": "dual_feasible", "vertex": v.id, "iteration": state.iteration,
                         "dual_sum": str(v.dual_sum), "weight": v.weight},
                trace=state.trace,
            )
        if not v.terminated:
            s = state.live_deal_sum(v)
            if s > beta * v.weight:
                raise InvariantViolation(
                    f"live deal sum exceeds beta*w at vertex {v.id} in iteration {state.iteration}",
                    payload={"check": "vault", "vertex": v.id, "iteration": state.iteration,
                             "live_deal_sum": str(s), "limit": str(beta * v.weight)},
                    trace=state.trace,
                )


def run(
    h: Hypergraph,
    p: Params,
    cap: int | None = None,
    engine: Engine | None = None,
    record_deals: bool = True,
    keep_messages: bool = False,
) -> RunResult:
    """Iterate until every edge is covered.

    Exceeding ``cap`` iterations (default ``p.default_cap()``) raises
    :class:`InvariantViolation`; the iteration bound makes that a bug.
    """
    ledger = MessageLedger(h.n, h.max_weight, p.f, keep=keep_messages)
    state = init(h, p, ledger=ledger, record_deals=record_deals)
    limit = p.default_cap() if cap is None else cap
    while any(not e.covered for e in state.edges):
        if state.iteration >= limit:
            raise InvariantViolation(
                f"no termination within {limit} iterations",
                payload={"check": "iteration_cap", "cap": limit,
                         "uncovered": [e.id for e in state.edges if not e.covered]},
                trace=state.trace,
            )
        step(state, engine)
    cover = state.cover
    result = RunResult(
        cover=cover,
        cover_weight=h.cover_weight(cover),
        dual=tuple(e.delta for e in state.edges),
        iterations=state.iteration,
        rounds=total_rounds(state.iteration, h.m),
        params=p,
        trace=state.trace,
        raise_counts=tuple(e.raise_count for e in state.edges),
        stuck_counts=tuple(v.stuck_count for v in state.vertices),
        covered_at=tuple(e.covered_at for e in state.edges),
        messages=ledger.summary(),
        ledger=ledger,
    )
    return result
