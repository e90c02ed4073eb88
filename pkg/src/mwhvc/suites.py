"""Verification suites and the round-complexity benchmark."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

from .engine import Engine, run
from .errors import MWHVCError, ParameterError
from .generators import SplitMix64, gen_random_rank, gen_star
from .hypergraph import Hypergraph
from .params import make_params
from .verify import brute_force_opt, verify_run

__all__ = [
    "SUITE_EPSILONS",
    "exhaustive_graphs",
    "random_hypergraphs",
    "SuiteReport",
    "run_suite",
    "bench_rows",
]

SUITE_EPSILONS = (Fraction(1, 10), Fraction(1, 2), Fraction(1))


def exhaustive_graphs(k: int, weights: Sequence[int] = (1, 2, 3)) -> Iterator[Hypergraph]:
    """Every labelled simple graph on 1..k vertices under every weight assignment."""
    if k > 4:
        raise ParameterError("exhaustive mode is limited to k <= 4")
    for n in range(1, k + 1):
        pairs = list(combinations(range(n), 2))
        for mask in range(1 << len(pairs)):
            edges = tuple(p for i, p in enumerate(pairs) if mask >> i & 1)
            for ws in product(weights, repeat=n):
                yield Hypergraph(n, ws, edges)


def random_hypergraphs(trials: int, seed: int, n_max: int = 10, f: int = 3, weight_max: int = 20) -> Iterator[Hypergraph]:
    """``trials`` rank-``f`` hypergraphs with ``f <= n <= n_max`` and ``1 <= m <= 2n``."""
    master = SplitMix64(seed)
    for _ in range(trials):
        n = master.between(f, n_max)
        m = master.between(1, 2 * n)
        yield gen_random_rank(n, m, f, weight_max, master.next_u64())


@dataclass
class SuiteReport:
    instances: int = 0
    runs: int = 0
    failures: list[dict] = field(default_factory=list)
    flag_counts: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "instances": self.instances,
            "runs": self.runs,
            "checks_passed": dict(sorted(self.flag_counts.items())),
            "failures": self.failures,
        }


def _describe(h: Hypergraph) -> dict:
    return {"n": h.n, "weights": list(h.weights), "edges": [list(e) for e in h.edges]}


def run_suite(
    instances: Iterable[Hypergraph],
    epsilons: Sequence = SUITE_EPSILONS,
    modes: Sequence[str] = ("global",),
    engine: Engine | None = None,
    max_failures: int = 20,
) -> SuiteReport:
    """Run and fully verify every (instance, epsilon, mode) combination.

    Engine errors (invariant violations, protocol errors, cap overruns) are
    recorded as failures with the instance as counterexample.
    """
    rep = SuiteReport()
    for h in instances:
        rep.instances += 1
        opt = brute_force_opt(h)[0]
        for mode in modes:
            for eps in epsilons:
                rep.runs += 1
                try:
                    p = make_params(h, eps, mode)
                    result = run(h, p, engine=engine)
                    vr = verify_run(h, result, opt=opt)
                except MWHVCError as exc:
                    failure = {"error": type(exc).__name__, "message": str(exc),
                               "payload": getattr(exc, "payload", None)}
                else:
                    for name, ok in vr.flags().items():
                        rep.flag_counts[name] = rep.flag_counts.get(name, 0) + ok
                    if vr.ok:
                        continue
                    failure = {"failed": [c.to_json() for c in vr.failures]}
                if len(rep.failures) < max_failures:
                    failure.update(instance=_describe(h), epsilon=str(eps), alpha_mode=mode)
                    rep.failures.append(failure)
                else:
                    rep.failures.append({"truncated": True})
                    return rep
    return rep


def _bench_one(args) -> dict:
    delta, f, eps, mode, gamma, reps = args
    h = gen_star(delta, f=f)
    p = make_params(h, eps, mode, gamma)
    elapsed = []
    for _ in range(max(1, reps)):
        t0 = time.perf_counter()
        result = run(h, p, record_deals=False)
        elapsed.append(time.perf_counter() - t0)
    bound = p.iteration_bound()
    return {
        "delta": delta,
        "f": f,
        "epsilon": str(p.epsilon),
        "alpha_mode": mode,
        "alpha": str(p.alpha),
        "alpha_decimal": float(p.alpha),
        "beta": str(p.beta),
        "iterations": result.iterations,
        "rounds": result.rounds,
        "bound": bound,
        "within_bound": result.iterations <= bound,
        "cover_weight": result.cover_weight,
        "seconds": min(elapsed),
    }


def bench_rows(
    deltas: Sequence[int],
    f: int = 2,
    epsilon=1,
    modes: Sequence[str] = ("global", "refined"),
    gamma=Fraction(1, 2),
    repetitions: int = 1,
    jobs: int = 1,
) -> list[dict]:
    """One row per (delta, mode) on star instances, in input order."""
    tasks = [(d, f, epsilon, mode, gamma if mode == "refined" else None, repetitions)
             for d in deltas for mode in modes]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_bench_one, tasks))
    return [_bench_one(t) for t in tasks]
