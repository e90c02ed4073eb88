"""Command line front end.

Exit codes: 0 solved and every check passed, 2 input or parameter error,
3 invariant or bound violation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .engine import run
from .errors import InvariantViolation, MWHVCError, ParameterError, ParseError, ProtocolError, InvalidInstance
from .generators import GenSpec, generate
from .hypergraph import (
    Hypergraph,
    SetSystem,
    from_set_cover,
    read_hypergraph,
    read_set_system,
    write_hypergraph,
    write_set_system,
)
from .params import as_fraction, make_params
from .records import dumps, run_record
from .suites import SUITE_EPSILONS, bench_rows, exhaustive_graphs, random_hypergraphs, run_suite
from .verify import BRUTE_FORCE_MAX_N, brute_force_opt, verify_run

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VIOLATION = 3
DEFAULT_SEED = 20190101


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _write(text: str, out: str | None) -> None:
    if out and out != "-":
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def load_instance(path: str, set_cover: bool = False) -> Hypergraph:
    text = _read_text(path)
    if set_cover:
        return from_set_cover(read_set_system(text))
    return read_hypergraph(text)


def solve_record(h: Hypergraph, epsilon, alpha_mode: str = "global", gamma=None, cap=None,
                 with_opt: bool = True, include_trace: bool = False) -> tuple[dict, bool]:
    """Run, verify and serialize one instance; returns ``(record, all_passed)``."""
    p = make_params(h, epsilon, alpha_mode, gamma)
    opt = brute_force_opt(h)[0] if with_opt and h.n <= BRUTE_FORCE_MAX_N else None
    result = run(h, p, cap=cap)
    report = verify_run(h, result, opt=opt, use_oracle=False)
    counterexample = None if report.ok else {"failed": [c.to_json() for c in report.failures]}
    rec = run_record(h, result, report, opt=opt, include_trace=include_trace, counterexample=counterexample)
    return rec, report.ok


def _csv_row(rec: dict) -> dict:
    res, pr = rec["results"], rec["params"]
    alpha = pr["alpha"]
    return {
        "n": rec["instance"]["n"],
        "m": rec["instance"]["m"],
        "f": rec["instance"]["f"],
        "delta": rec["instance"]["delta"],
        "W": rec["instance"]["W"],
        "epsilon": pr["epsilon"]["exact"],
        "alpha_mode": pr["alpha_mode"],
        "alpha": alpha["exact"] if isinstance(alpha, dict) else max(alpha, key=lambda a: Fraction(a["exact"]))["exact"],
        "beta": pr["beta"]["exact"],
        "iterations": res["iterations"],
        "rounds": res["rounds"],
        "cover_weight": res["cover_weight"],
        "dual_sum": res["dual_sum"]["exact"],
        "ratio_certificate": res["ratio_certificate"]["exact"],
        "opt": "" if res["opt"] is None else res["opt"],
        "total_messages": res["messages"]["total_messages"],
        "max_bits": res["messages"]["max_bits"],
        "all_checks": all(rec["verification"].values()),
    }


def _to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    if rows:
        w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
    return buf.getvalue()


def cmd_solve(args) -> int:
    h = load_instance(args.input, args.set_cover)
    try:
        rec, ok = solve_record(h, args.epsilon, args.alpha_mode, args.gamma, args.cap,
                               with_opt=not args.no_opt, include_trace=args.trace)
    except (InvariantViolation, ProtocolError) as exc:
        payload = {"error": type(exc).__name__, "message": str(exc), "counterexample": getattr(exc, "payload", {})}
        _write(json.dumps(payload, indent=2) + "\n", args.output)
        return EXIT_VIOLATION
    text = dumps(rec) if args.format == "json" else _to_csv([_csv_row(rec)])
    _write(text, args.output)
    return EXIT_OK if ok else EXIT_VIOLATION


def cmd_verify(args) -> int:
    seed = args.seed
    if seed is None:
        seed = int(os.environ.get("MWHVC_SEED", DEFAULT_SEED))
    modes = tuple(args.alpha_mode)
    epsilons = tuple(as_fraction(e) for e in args.epsilons) if args.epsilons else SUITE_EPSILONS
    sections = {}
    if args.input_dir:
        paths = sorted(Path(args.input_dir).glob("*.hg"))
        sections["files"] = run_suite((read_hypergraph(p.read_text()) for p in paths), epsilons, modes)
    if args.exhaustive_n is not None:
        sections["exhaustive"] = run_suite(exhaustive_graphs(args.exhaustive_n), epsilons, modes)
    if args.random is not None:
        sections["random"] = run_suite(
            random_hypergraphs(args.random, seed, n_max=args.n_max, f=args.f), epsilons, modes
        )
    if not sections:
        raise ParameterError("nothing to verify: give a directory, --exhaustive-n or --random")
    out = {
        "ok": all(s.ok for s in sections.values()),
        "seed": seed,
        "alpha_modes": list(modes),
        "epsilons": [str(e) for e in epsilons],
        "suites": {k: v.to_json() for k, v in sections.items()},
    }
    _write(json.dumps(out, indent=2) + "\n", args.output)
    return EXIT_OK if out["ok"] else EXIT_VIOLATION


def cmd_bench(args) -> int:
    deltas = [int(d) for d in args.deltas.split(",")]
    if min(deltas) < 1:
        raise ParameterError("deltas must be >= 1")
    rows = bench_rows(deltas, f=args.f, epsilon=args.epsilon, modes=tuple(args.alpha_mode),
                      gamma=args.gamma, repetitions=args.repetitions, jobs=args.jobs)
    text = json.dumps(rows, indent=2) + "\n" if args.format == "json" else _to_csv(rows)
    _write(text, args.output)
    return EXIT_OK if all(r["within_bound"] for r in rows) else EXIT_VIOLATION


def cmd_gen(args) -> int:
    spec = GenSpec(kind=args.kind, n=args.n, m=args.m, f=args.f, delta=args.delta,
                   weight_max=args.weight_max, seed=args.seed,
                   center_weight=args.center_weight, leaf_weight=args.leaf_weight)
    obj = generate(spec)
    if isinstance(obj, SetSystem):
        text = f"# {spec.describe()}\n" + write_set_system(obj)
    else:
        text = write_hypergraph(obj, header=spec.describe())
    _write(text, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mwhvc", description="Distributed (f+eps)-approximate hypergraph vertex cover simulator")
    sub = ap.add_subparsers(dest="command", required=True)

    def alpha_opts(p, multi=False):
        if multi:
            p.add_argument("--alpha-mode", action="append", default=None,
                           help="global|refined|local|fixed:<p/q> (repeatable)")
        else:
            p.add_argument("--alpha-mode", default="global", help="global|refined|local|fixed:<p/q>")
        p.add_argument("--gamma", default=None, help="refined-mode exponent p/q in (0,1), default 1/2")

    s = sub.add_parser("solve", help="solve one instance and verify the run")
    s.add_argument("input", help="hypergraph file, or - for stdin")
    s.add_argument("--epsilon", default="1")
    alpha_opts(s)
    s.add_argument("--cap", type=int, default=None, help="iteration cap (default from the iteration bound)")
    s.add_argument("--format", choices=("json", "csv"), default="json")
    s.add_argument("--trace", action="store_true", help="embed the per-iteration trace")
    s.add_argument("--set-cover", action="store_true", help="input is in set-system format")
    s.add_argument("--no-opt", action="store_true", help="skip the exhaustive optimum")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("input_dir", nargs="?", help="directory of *.hg files")
    v.add_argument("--exhaustive-n", type=int, default=None)
    v.add_argument("--random", type=int, default=None, metavar="TRIALS")
    v.add_argument("--seed", type=int, default=None, help="default $MWHVC_SEED or %d" % DEFAULT_SEED)
    v.add_argument("--n-max", type=int, default=10)
    v.add_argument("--f", type=int, default=3)
    v.add_argument("--epsilons", nargs="*", default=None)
    alpha_opts(v, multi=True)
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="star benchmark of iterations against the analytic bound")
    b.add_argument("--deltas", default="16,256,4096")
    b.add_argument("--f", type=int, default=2)
    b.add_argument("--epsilon", default="1")
    alpha_opts(b, multi=True)
    b.add_argument("--repetitions", type=int, default=1)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--format", choices=("json", "csv"), default="csv")
    b.add_argument("-o", "--output")
    b.set_defaults(func=cmd_bench)

    g = sub.add_parser("gen", help="write a generated instance")
    g.add_argument("--kind", required=True,
                   choices=("star", "cycle", "clique", "random", "random_uniform", "random_rank", "set_cover_random"))
    g.add_argument("--n", type=int, default=0)
    g.add_argument("--m", type=int, default=0)
    g.add_argument("--f", type=int, default=2)
    g.add_argument("--delta", type=int, default=0)
    g.add_argument("--weight-max", type=int, default=1)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--center-weight", type=int, default=1)
    g.add_argument("--leaf-weight", type=int, default=1)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "alpha_mode", None) is None:
        args.alpha_mode = ["global", "refined"] if args.command == "bench" else ["global"]
    if args.command == "bench" and args.gamma is None:
        args.gamma = Fraction(1, 2)
    try:
        return args.func(args)
    except (ParseError, ParameterError, InvalidInstance, OSError) as exc:
        print(f"mwhvc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except MWHVCError as exc:
        print(f"mwhvc: violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
