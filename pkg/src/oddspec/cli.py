"""Command-line interface.

Exit codes: 0 success, 1 an assertable statement failed, 2 usage or I/O error.
The default solver tolerance comes from ``ODDSPEC_TOL`` (``--tol`` overrides).
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from . import __version__
from .constructions import FAMILIES, FamilySpec, fixtures
from .cycles import DEFAULT_BUDGET, cycle_spectrum, t2_threshold
from .extremal import (ParameterError, ProcedureAborted, ProcedureParams, check_theorem3_conclusion,
                       run_procedure_p, validate_params)
from .graph import GraphError, is_bipartite, min_degree, read_edge_list, triangle_count, write_edge_list
from .spectral import ConvergenceError, NotApplicable, lemma1_check, lemma2_check, spectral_radius
from .verify import STATEMENTS, expand_corpus, join_threshold_sweep, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive_float(text: str) -> float:
    val = float(text)
    if not val > 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return val


def _positive_int(text: str) -> int:
    val = int(text)
    if val <= 0:
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return val


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _table(rows: list[tuple[str, object]]) -> str:
    width = max(len(k) for k, _ in rows)
    return "".join(f"{k.ljust(width)}  {v}\n" for k, v in rows)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    g = read_edge_list(args.input)
    spec = spectral_radius(g, args.tol, args.max_iter)
    thr = t2_threshold(g.n)
    if abs(spec.mu - thr) <= 1e-9 * max(1.0, thr):
        relation = "equal"
    else:
        relation = "greater" if spec.mu > thr else "less"
    report = {
        "n": g.n, "m": g.m, "min_degree": min_degree(g) if g.n else None,
        "bipartite": is_bipartite(g).bipartite, "triangles": triangle_count(g),
        "mu": spec.mu, "residual": spec.residual, "iterations": spec.iterations,
        "min_perron_entry": spec.min_entry(), "t2_threshold": thr, "mu_vs_threshold": relation,
    }
    try:
        report["lemma1_slack"] = lemma1_check(g, spec).slack
    except NotApplicable:
        report["lemma1_slack"] = None
    report["lemma2_slack"] = lemma2_check(g, spec, args.tol).slack if g.n >= 2 else None
    if args.format == "json":
        _emit(_dump(report), args.output)
    else:
        _emit(_table(list(report.items())), args.output)
    failed = any(report[k] is not None and report[k] < -1e-9 for k in ("lemma1_slack", "lemma2_slack"))
    return EXIT_FAIL if failed else EXIT_OK


def cmd_construct(args) -> int:
    spec = FamilySpec(args.family, args.n, args.k, args.p, args.seed)
    c = spec.construct()
    if args.output:
        write_edge_list(c.graph, args.output)
    else:
        from .graph import to_edge_list
        sys.stdout.write(to_edge_list(c.graph))
    if args.meta:
        meta = {"family": spec.to_dict(), "n": c.graph.n, "m": c.graph.m,
                "exact_mu": c.exact_mu, **{k: v for k, v in c.meta.items()}}
        Path(args.meta).write_text(_dump(meta), encoding="utf-8")
    return EXIT_OK


def cmd_cycles(args) -> int:
    g = read_edge_list(args.input)
    t_max = args.t_max if args.t_max is not None else max(3, g.n)
    rep = cycle_spectrum(g, t_max, args.budget)
    if args.format == "json":
        _emit(_dump(rep.to_dict()), args.output)
    else:
        rows = [(f"t={t}", r.status.value + (f" {list(r.witness)}" if r.witness else ""))
                for t, r in sorted(rep.entries.items())]
        _emit(_table(rows), args.output)
    return EXIT_OK


def cmd_procedure(args) -> int:
    g = read_edge_list(args.input)
    params = ProcedureParams(args.alpha, args.beta, args.gamma, args.K, strict=args.strict)
    gate = validate_params(ProcedureParams(args.alpha, args.beta, args.gamma, args.K, strict=False), g.n)
    try:
        trace = run_procedure_p(g, params, args.tol, override=args.override)
    except ProcedureAborted as exc:
        sys.stderr.write(f"error: {exc}\n")
        if args.trace_out:
            Path(args.trace_out).write_text(exc.trace.to_json(), encoding="utf-8")
        return EXIT_FAIL
    chk = check_theorem3_conclusion(trace, params, g)
    doc = trace.to_dict()
    doc["gate"] = {"n_min": gate.n_min, "clauses": gate.clauses}
    doc["conclusion"] = chk.to_dict()
    text = _dump(doc)
    if args.trace_out:
        Path(args.trace_out).write_text(text, encoding="utf-8")
    if args.trace_out is None or args.format == "json":
        sys.stdout.write(text)
    else:
        sys.stdout.write(_table([("steps", trace.k), ("branch", trace.branch),
                                 ("|H|", len(trace.final_subgraph)), ("mu(H)", trace.mu_final),
                                 ("delta(H)", trace.delta_final), ("conclusion", chk.passed)]))
    if not params.strict and not chk.passed:
        sys.stderr.write("note: conclusion not met; parameters outside the theorem's hypotheses\n")
    return EXIT_FAIL if (params.strict and not chk.passed) else EXIT_OK


def cmd_verify(args) -> int:
    if args.input:
        corpus = [(args.input, read_edge_list(args.input))]
    elif args.family == "fixtures":
        corpus = sorted(fixtures().items())
    else:
        if args.family is None:
            raise UsageError("verify needs --family or --input")
        corpus = expand_corpus(args.family, args.trials, args.seed, args.n, args.k, args.p)
    options = {}
    if args.statement == "theorem3" and args.alpha is not None:
        options["params"] = ProcedureParams(args.alpha, args.beta, args.gamma, args.K, strict=args.strict)
    if args.statement == "theorem2":
        options["theta"] = args.theta
    if args.statement == "theorem1":
        options["fraction"] = args.fraction
        options["budget"] = args.budget
    if args.statement == "fact1":
        options["budget"] = args.budget
    report = run_suite(args.statement, corpus, args.seed, **options)
    _emit(report.to_json(timing=args.timing), args.output)
    if args.csv:
        Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
    return EXIT_FAIL if report.failed else EXIT_OK


def cmd_sweep(args) -> int:
    res = join_threshold_sweep(args.n)
    if args.format == "json":
        _emit(_dump(res.to_dict()), args.output)
    else:
        rows = [(f"n={e.n}", f"k_min={e.k_min} ratio={e.ratio:.6f} "
                 f"(limit {res.limit_constant:.6f}, diff {e.ratio - res.limit_constant:+.6f})")
                for e in res.entries]
        _emit(_table(rows), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="oddspec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=_positive_float, default=None,
                        help="eigensolver residual tolerance (default: $ODDSPEC_TOL or 1e-10)")
    common.add_argument("--max-iter", type=_positive_int, default=10**6)
    common.add_argument("-o", "--output", default=None, help="write the report here instead of stdout")
    common.add_argument("--format", choices=("json", "human"), default="json")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="spectral and structural summary of an edge list")
    p.add_argument("input")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("construct", parents=[common], help="write a canonical edge list for a family")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--meta", default=None, help="also write construction metadata (exact_mu) as JSON")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("cycles", parents=[common], help="cycle spectrum with exact search")
    p.add_argument("--input", required=True)
    p.add_argument("--t-max", type=int, default=None)
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET)
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("procedure", parents=[common], help="minimum Perron-entry deletion procedure")
    p.add_argument("--input", required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--gamma", type=float, required=True)
    p.add_argument("--K", type=float, default=0.0)
    p.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--override", action="store_true", help="run even if the graph premises fail")
    p.add_argument("--trace-out", default=None)
    p.set_defaults(func=cmd_procedure)

    p = sub.add_parser("verify", parents=[common], help="run a statement checker over a corpus")
    p.add_argument("--statement", choices=STATEMENTS, required=True)
    p.add_argument("--family", choices=FAMILIES + ("fixtures",), default=None)
    p.add_argument("--input", default=None, help="check a single edge-list file instead of a family")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--p", type=float)
    p.add_argument("--trials", type=_positive_int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--csv", default=None, help="also write a one-row CSV summary")
    p.add_argument("--timing", action="store_true", help="include wall time in the JSON report")
    p.add_argument("--theta", type=float, default=1e-5)
    p.add_argument("--fraction", type=float, default=1 / 320)
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET)
    p.add_argument("--alpha", type=float)
    p.add_argument("--beta", type=float, default=0.5)
    p.add_argument("--gamma", type=float, default=0.4375)
    p.add_argument("--K", type=float, default=0.0)
    p.add_argument("--strict", action=argparse.BooleanOptionalAction, default=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sweep", parents=[common], help="join-threshold sweep over n")
    p.add_argument("--n", type=int, nargs="+", required=True)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.tol is not None:
        os.environ["ODDSPEC_TOL"] = repr(args.tol)
    try:
        return args.func(args)
    except (GraphError, ParameterError, UsageError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ConvergenceError as exc:
        sys.stderr.write(f"error: eigensolver did not converge: {exc} (residual {exc.result.residual:.3e})\n")
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
