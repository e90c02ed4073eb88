"""JSON run records.

Every rational is written as ``{"exact": "p/q", "decimal": <float>}`` so fixtures
stay bit-exact while remaining readable.  Key order is fixed, which makes the
serialized record byte-identical across repeated runs.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .engine import IterationEvents, RunResult, RunTrace
from .congest import MessageStats
from .hypergraph import Hypergraph
from .params import Params, make_params
from .rational import q, ratstr
from .verify import VerificationReport, verify_run

__all__ = [
    "rat",
    "parse_rat",
    "run_record",
    "dumps",
    "trace_to_json",
    "trace_from_json",
    "result_from_record",
    "reverify_record",
    "TRACE_FLAGS",
]

# flags that need the per-iteration trace to be recomputed
TRACE_FLAGS = frozenset(
    {"counter_recount", "message_recount", "per_iteration_feasibility", "per_iteration_vault", "trace_consistent"}
)


def rat(x) -> dict:
    return {"exact": ratstr(x), "decimal": float(x)}


def parse_rat(d) -> Fraction:
    return Fraction(d["exact"] if isinstance(d, dict) else d)


def trace_to_json(trace: RunTrace) -> dict:
    return {
        "initial_deals": [ratstr(x) for x in trace.initial_deals],
        "min_vertex": list(trace.min_vertex),
        "iterations": [
            {
                "iteration": ev.iteration,
                "joins": list(ev.joins),
                "covered_edges": list(ev.covered_edges),
                "terminated": list(ev.terminated),
                "raises": list(ev.raises),
                "stuck_vertices": list(ev.stuck_vertices),
                "deals": None if ev.deals is None else {str(j): ratstr(d) for j, d in sorted(ev.deals.items())},
            }
            for ev in trace.iterations
        ],
    }


def trace_from_json(d: dict) -> RunTrace:
    return RunTrace(
        initial_deals=tuple(q(Fraction(x)) for x in d["initial_deals"]),
        min_vertex=tuple(d["min_vertex"]),
        iterations=[
            IterationEvents(
                iteration=ev["iteration"],
                joins=tuple(ev["joins"]),
                covered_edges=tuple(ev["covered_edges"]),
                terminated=tuple(ev["terminated"]),
                raises=tuple(ev["raises"]),
                stuck_vertices=tuple(ev["stuck_vertices"]),
                deals=None if ev["deals"] is None else {int(j): q(Fraction(x)) for j, x in ev["deals"].items()},
            )
            for ev in d["iterations"]
        ],
    )


def run_record(
    h: Hypergraph,
    result: RunResult,
    report: VerificationReport,
    opt: int | None = None,
    include_trace: bool = False,
    counterexample: dict | None = None,
) -> dict:
    p = result.params
    local = p.alpha_mode == "local"
    return {
        "instance": {"n": h.n, "m": h.m, "f": h.stats.f, "delta": h.stats.delta, "W": h.max_weight},
        "params": {
            "epsilon": rat(p.epsilon),
            "gamma": None if p.gamma is None else rat(p.gamma),
            "alpha_mode": p.alpha_mode,
            "alpha": [rat(a) for a in p.alpha_table] if local else rat(p.alpha),
            "beta": rat(p.beta),
        },
        "results": {
            "iterations": result.iterations,
            "rounds": result.rounds,
            "cover": list(result.cover),
            "cover_weight": result.cover_weight,
            "dual": [ratstr(d) for d in result.dual],
            "dual_sum": rat(result.dual_sum),
            "ratio_certificate": rat((p.f + p.epsilon) * result.dual_sum),
            "opt": opt,
            "iteration_bound": p.iteration_bound(),
            "messages": result.messages.to_json(),
            "raise_counts": list(result.raise_counts),
            "stuck_counts": list(result.stuck_counts),
            "covered_at": list(result.covered_at),
            "min_vertex": list(result.trace.min_vertex),
        },
        "verification": report.flags(),
        "counterexample": counterexample,
        "trace": trace_to_json(result.trace) if include_trace else None,
    }


def dumps(record: dict) -> str:
    return json.dumps(record, indent=2) + "\n"


def _params_from_record(h: Hypergraph, rec: dict) -> Params:
    pr = rec["params"]
    gamma = None if pr["gamma"] is None else parse_rat(pr["gamma"])
    return make_params(h, parse_rat(pr["epsilon"]), pr["alpha_mode"], gamma)


def result_from_record(h: Hypergraph, rec: dict) -> RunResult:
    """Rebuild a :class:`RunResult` from a parsed record (no ledger attached)."""
    res = rec["results"]
    msgs = res["messages"]
    stats = MessageStats(
        total_messages=msgs["total_messages"],
        total_bits=msgs["total_bits"],
        max_bits=msgs["max_bits"],
        budget=msgs["budget"],
        per_round={r: c for r, c in enumerate(msgs["per_round"]) if c},
        per_kind=dict(msgs["per_kind"]),
    )
    if rec.get("trace"):
        trace = trace_from_json(rec["trace"])
    else:
        trace = RunTrace(initial_deals=(), min_vertex=tuple(res["min_vertex"]))
    return RunResult(
        cover=tuple(res["cover"]),
        cover_weight=res["cover_weight"],
        dual=tuple(q(Fraction(x)) for x in res["dual"]),
        iterations=res["iterations"],
        rounds=res["rounds"],
        params=_params_from_record(h, rec),
        trace=trace,
        raise_counts=tuple(res["raise_counts"]),
        stuck_counts=tuple(res["stuck_counts"]),
        covered_at=tuple(res["covered_at"]),
        messages=stats,
    )


def reverify_record(h: Hypergraph, rec: dict) -> dict[str, bool]:
    """Recompute the verification flags of a parsed record.

    Without an embedded trace the trace-derived flags cannot be recomputed
    and are left out of the returned mapping.
    """
    result = result_from_record(h, rec)
    report = verify_run(h, result, opt=rec["results"]["opt"], use_oracle=False)
    flags = report.flags()
    if not rec.get("trace"):
        flags = {k: v for k, v in flags.items() if k not in TRACE_FLAGS}
    return flags
