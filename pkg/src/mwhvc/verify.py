"""Independent checks of a completed run.

Nothing here reuses engine state: the exact optimum comes from exhaustive
search, the per-iteration duals are rebuilt from the recorded deals, and the
message count is recomputed from the trace events.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .congest import total_rounds
from .engine import RunResult
from .errors import ParameterError
from .hypergraph import Hypergraph
from .params import Params, ceil_log
from .rational import ZERO, q, qsum

__all__ = [
    "Check",
    "VerificationReport",
    "Certificate",
    "certificate",
    "check_cover",
    "brute_force_opt",
    "branch_and_bound_opt",
    "check_dual_feasible",
    "check_ratio",
    "check_counters",
    "check_trace",
    "check_messages",
    "recount_messages",
    "verify_run",
]

BRUTE_FORCE_MAX_N = 24


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.detail:
            out["detail"] = self.detail
        return out


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def flags(self) -> dict[str, bool]:
        return {c.name: c.passed for c in self.checks}

    def extend(self, other: "VerificationReport") -> "VerificationReport":
        self.checks.extend(other.checks)
        return self

    def add(self, name: str, passed: bool, **detail) -> None:
        self.checks.append(Check(name, bool(passed), detail if not passed else {}))

    def to_json(self) -> dict:
        return {"ok": self.ok, "checks": [c.to_json() for c in self.checks]}


@dataclass(frozen=True)
class Certificate:
    cover: tuple[int, ...]
    cover_weight: int
    dual: tuple[Fraction, ...]
    dual_sum: Fraction
    ratio_bound: Fraction


def certificate(result: RunResult) -> Certificate:
    p = result.params
    s = result.dual_sum
    return Certificate(
        cover=result.cover,
        cover_weight=result.cover_weight,
        dual=result.dual,
        dual_sum=s,
        ratio_bound=(p.f + p.epsilon) * s,
    )


def check_cover(h: Hypergraph, cover: Iterable[int]) -> bool:
    c = set(cover)
    return all(not c.isdisjoint(e) for e in h.edges)


def _uncovered_edge(h: Hypergraph, cover: Iterable[int]):
    c = set(cover)
    for j, e in enumerate(h.edges):
        if c.isdisjoint(e):
            return j
    return None


def brute_force_opt(h: Hypergraph) -> tuple[int, tuple[int, ...]]:
    """Exact minimum-weight cover by exhaustive search over vertex subsets.

    Vertices are decided in id order; an edge is checked as soon as its
    largest member is decided, and branches heavier than the incumbent are
    cut.  Among minimum-weight covers the lexicographically smallest sorted
    id tuple is returned.
    """
    n = h.n
    if n > BRUTE_FORCE_MAX_N:
        raise ParameterError(f"brute force refused for n={n} > {BRUTE_FORCE_MAX_N}")
    w = h.weights
    closing: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
    for e in h.edges:
        closing[e[-1]].append(e)
    inside = [False] * n
    chosen: list[int] = []
    best: list = [sum(w) + 1, ()]

    def rec(v: int, total: int) -> None:
        if total > best[0]:
            return
        if v == n:
            key = (total, tuple(chosen))
            if key < (best[0], best[1]):
                best[0], best[1] = key
            return
        inside[v] = True
        chosen.append(v)
        rec(v + 1, total + w[v])
        chosen.pop()
        inside[v] = False
        if all(any(inside[u] for u in e) for e in closing[v]):
            rec(v + 1, total)

    rec(0, 0)
    return best[0], best[1]


def branch_and_bound_opt(h: Hypergraph) -> int:
    """Minimum cover weight by branching on the members of an uncovered edge."""
    w = h.weights
    edges = [sum(1 << v for v in e) for e in h.edges]
    best = [sum(w)]

    def rec(mask: int, total: int) -> None:
        if total >= best[0]:
            return
        for e in edges:
            if not e & mask:
                break
        else:
            best[0] = total
            return
        bits = e
        while bits:
            low = bits & -bits
            rec(mask | low, total + w[low.bit_length() - 1])
            bits ^= low

    if not edges:
        return 0
    rec(0, 0)
    return best[0]


def check_dual_feasible(h: Hypergraph, dual: Sequence[Fraction]) -> bool:
    if len(dual) != h.m or any(d < 0 for d in dual):
        return False
    load = [ZERO] * h.n
    for d, e in zip(dual, h.edges):
        for v in e:
            load[v] += d
    return all(load[v] <= h.weights[v] for v in range(h.n))


def _overloaded(h: Hypergraph, dual: Sequence[Fraction]):
    load = [ZERO] * h.n
    for d, e in zip(dual, h.edges):
        for v in e:
            load[v] += d
    for v in range(h.n):
        if load[v] > h.weights[v]:
            return v, load[v]
    return None


def check_ratio(
    h: Hypergraph,
    cert: Certificate,
    epsilon: Fraction,
    f: int,
    opt: int | None = None,
) -> VerificationReport:
    """Cover validity, dual feasibility and the approximation certificate.

    ``cover_weight <= (f + eps) * sum(dual)`` needs no oracle.  When ``opt``
    is given, weak duality ``sum(dual) <= opt`` and the end-to-end ratio
    ``cover_weight <= (f + eps) * opt`` are checked too.
    """
    rep = VerificationReport()
    missing = _uncovered_edge(h, cert.cover)
    rep.add("cover_valid", missing is None, uncovered_edge=missing)
    bad = _overloaded(h, cert.dual)
    rep.add(
        "dual_feasible",
        bad is None and all(d >= 0 for d in cert.dual),
        vertex=None if bad is None else bad[0],
        load=None if bad is None else str(bad[1]),
    )
    factor = f + Fraction(epsilon)
    rep.add(
        "certificate",
        cert.cover_weight <= factor * cert.dual_sum,
        cover_weight=cert.cover_weight,
        bound=str(factor * cert.dual_sum),
    )
    if opt is not None:
        rep.add("weak_duality", cert.dual_sum <= opt, dual_sum=str(cert.dual_sum), opt=opt)
        rep.add("ratio_vs_opt", cert.cover_weight <= factor * opt,
                cover_weight=cert.cover_weight, bound=str(factor * opt))
    return rep


def _vertex_alpha(h: Hypergraph, p: Params) -> list[Fraction]:
    return [max((p.alpha_for(j) for j in h.incidence[v]), default=p.alpha) for v in range(h.n)]


def check_counters(result: RunResult, h: Hypergraph, p: Params) -> VerificationReport:
    """Counted forms of the raise, stuck and iteration bounds."""
    rep = VerificationReport()
    trace = result.trace
    deg = h.stats.per_vertex_degree

    raises = [0] * h.m
    stuck = [0] * h.n
    for ev in trace.iterations:
        for j in ev.raises:
            raises[j] += 1
        for v in ev.stuck_vertices:
            stuck[v] += 1
    rep.add("counter_recount", tuple(raises) == result.raise_counts and tuple(stuck) == result.stuck_counts)

    bad = None
    for j in range(h.m):
        limit = ceil_log(p.alpha_for(j), deg[trace.min_vertex[j]])
        if result.raise_counts[j] > limit:
            bad = {"edge": j, "raise_count": result.raise_counts[j], "limit": limit}
            break
    rep.add("raise_bound", bad is None, **(bad or {}))

    bad = None
    for v, a in enumerate(_vertex_alpha(h, p)):
        if not result.stuck_counts[v] < a / p.beta:
            bad = {"vertex": v, "stuck_count": result.stuck_counts[v], "limit": str(a / p.beta)}
            break
    rep.add("stuck_bound", bad is None, **(bad or {}))

    bad = None
    for j, e in enumerate(h.edges):
        at = result.covered_at[j]
        limit = 1 + result.raise_counts[j] + sum(result.stuck_counts[v] for v in e)
        if at is None or at > limit:
            bad = {"edge": j, "covered_at": at, "limit": limit}
            break
    rep.add("edge_iteration_bound", bad is None, **(bad or {}))

    bound = p.iteration_bound()
    rep.add("iteration_bound", result.iterations <= bound, iterations=result.iterations, bound=bound)
    return rep


def check_trace(h: Hypergraph, p: Params, result: RunResult) -> VerificationReport:
    """Replay the recorded deals and re-check every per-iteration claim.

    After each iteration: every vertex carries total dual at most its weight;
    every live vertex carries live deals at most ``beta * w(v)``; joining
    vertices were ``beta``-tight; raised deals grew by exactly ``alpha(e)``
    and no raised edge contains a stuck vertex.
    """
    rep = VerificationReport()
    trace = result.trace
    inc = h.incidence
    beta = q(p.beta)
    alpha = [q(a) for a in p.alpha_table]
    delta = [q(d) for d in trace.initial_deals]
    deal = dict(enumerate(delta))
    in_cover: set[int] = set()
    failure: dict | None = None

    def load(v):
        return qsum(delta[j] for j in inc[v])

    def sweep(it):
        for v in range(h.n):
            if load(v) > h.weights[v]:
                return {"check": "dual_feasible", "iteration": it, "vertex": v, "load": str(load(v))}
            if v not in in_cover:
                live = [j for j in inc[v] if j in deal]
                s = qsum(deal[j] for j in live)
                if live and s > beta * h.weights[v]:
                    return {"check": "vault", "iteration": it, "vertex": v, "live_deal_sum": str(s)}
        return None

    failure = sweep(0)
    for ev in trace.iterations:
        if failure:
            break
        it = ev.iteration
        if ev.deals is None:
            failure = {"check": "trace", "iteration": it, "reason": "deals not recorded"}
            break
        for v in ev.joins:
            if v in in_cover or load(v) < (1 - beta) * h.weights[v]:
                failure = {"check": "join_tight", "iteration": it, "vertex": v}
                break
        if failure:
            break
        in_cover.update(ev.joins)
        expected_cov = sorted(j for j in deal if not in_cover.isdisjoint(h.edges[j]))
        if sorted(ev.covered_edges) != expected_cov:
            failure = {"check": "covered_edges", "iteration": it,
                       "expected": expected_cov, "got": sorted(ev.covered_edges)}
            break
        for j in ev.covered_edges:
            del deal[j]
        if set(ev.deals) != set(deal):
            failure = {"check": "deal_domain", "iteration": it}
            break
        stuck = set(ev.stuck_vertices)
        raised = set(ev.raises)
        for j, new in ev.deals.items():
            old = deal[j]
            grew = new == alpha[j] * old
            if j in raised:
                ok = grew and stuck.isdisjoint(h.edges[j])
            else:
                ok = new == old and not stuck.isdisjoint(h.edges[j])
            if not ok:
                failure = {"check": "deal_update", "iteration": it, "edge": j,
                           "old": str(old), "new": str(new)}
                break
            deal[j] = new
            delta[j] += new
        if failure:
            break
        failure = sweep(it)

    if failure is None and deal:
        failure = {"check": "termination", "uncovered": sorted(deal)}
    if failure is None and tuple(delta) != tuple(result.dual):
        failure = {"check": "final_dual", "reason": "replayed duals differ from result"}
    names = ("dual_feasible", "vault")
    kind = failure["check"] if failure else None
    rep.add("per_iteration_feasibility", kind != "dual_feasible", **(failure or {}))
    rep.add("per_iteration_vault", kind != "vault", **(failure or {}))
    rep.add("trace_consistent", kind is None or kind in names, **(failure or {}))
    return rep


def recount_messages(h: Hypergraph, result: RunResult) -> int:
    """Total message count derived from the trace alone."""
    total = 2 * sum(len(e) for e in h.edges)
    if result.params.alpha_mode == "local":
        total += sum(len(e) for e in h.edges)
    in_cover: set[int] = set()
    uncovered = set(range(h.m))
    for ev in result.trace.iterations:
        joins = set(ev.joins)
        in_cover |= joins
        for j in ev.covered_edges:
            total += len(joins.intersection(h.edges[j])) + len(h.edges[j])
        uncovered.difference_update(ev.covered_edges)
        total += 2 * sum(len(h.edges[j]) for j in uncovered)
    return total


def check_messages(h: Hypergraph, result: RunResult) -> VerificationReport:
    rep = VerificationReport()
    stats = result.messages
    rep.add("congest_budget", stats.max_bits <= stats.budget, max_bits=stats.max_bits, budget=stats.budget)
    expected_rounds = total_rounds(result.iterations, h.m)
    rep.add("round_count", result.rounds == expected_rounds, rounds=result.rounds, expected=expected_rounds)
    recount = recount_messages(h, result)
    rep.add("message_recount", recount == stats.total_messages,
            recount=recount, ledger=stats.total_messages)
    rep.add("round_partition", sum(stats.per_round.values()) == stats.total_messages)
    return rep


def verify_run(h: Hypergraph, result: RunResult, opt: int | None = None, use_oracle: bool = True) -> VerificationReport:
    """All checks for one run; computes the exact optimum when ``n`` allows."""
    p = result.params
    if opt is None and use_oracle and h.n <= BRUTE_FORCE_MAX_N:
        opt = brute_force_opt(h)[0]
    rep = check_ratio(h, certificate(result), p.epsilon, p.f, opt)
    rep.add("cover_weight_consistent", result.cover_weight == h.cover_weight(result.cover))
    rep.extend(check_counters(result, h, p))
    trace = result.trace
    if len(trace.initial_deals) == h.m and all(ev.deals is not None for ev in trace.iterations):
        rep.extend(check_trace(h, p, result))
    rep.extend(check_messages(h, result))
    return rep
