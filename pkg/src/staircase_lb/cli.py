"""Command-line front end.

Exit codes: 0 success, 1 validation error, 2 budget exceeded,
3 verification failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .adversary import (
    DEFAULT_BUDGET_LABELS,
    DEFAULT_BUDGET_RPRIME,
    CHECKS,
    adversary_bound,
    build_family,
    check_budget,
    run_checks,
    sampled_adversary_bound,
)
from .adversary.family import E_LOWER, fmt_scalar
from .errors import BudgetExceededError, StaircaseError, ValidationError, VerificationError
from .graph import Graph, bound_calculator, generate
from .io import csv_text, dumps, load_graph, load_path_system, read_json, write_json, write_text
from .routing import (
    anneal_congestion,
    check_congestion_inequality,
    min_congestion_bruteforce,
    shortest_path_system,
    vertex_congestion,
)
from .solvers import QueryOracle, decision_from_search, random_descent, steepest_descent
from .staircase import HardInstance, make_instance

TIE_BREAK = "bfs-ascending-neighbours-smallest-label-parent"

SCALING_HEADER = (
    "family",
    "n",
    "L",
    "g",
    "mode",
    "min_ratio_squared_num",
    "min_ratio_squared_den",
    "bound",
    "threshold",
    "ratio",
)


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget-labels", type=int, default=DEFAULT_BUDGET_LABELS)
    p.add_argument("--budget-rprime", type=int, default=DEFAULT_BUDGET_RPRIME)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--exact", dest="exact", action="store_true", default=True,
                      help="exact rationals when n is a perfect square (default)")
    mode.add_argument("--float", dest="exact", action="store_false",
                      help="force high-precision floating evaluation")


def _graph_source(p: argparse.ArgumentParser, required_family: bool = False) -> None:
    p.add_argument("--graph", help="graph JSON file")
    p.add_argument("--family", default=None if required_family else "complete",
                   help="path, cycle, complete, grid, hypercube, random-regular")
    p.add_argument("--n", type=int)
    p.add_argument("--degree", type=int)
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--dim", type=int)
    p.add_argument("--max-attempts", type=int, default=10_000)


def _family_params(args) -> dict:
    return {
        k: getattr(args, k)
        for k in ("n", "degree", "rows", "cols", "dim")
        if getattr(args, k, None) is not None
    }


def _resolve_graph(args) -> tuple[Graph, dict]:
    if args.graph:
        return load_graph(args.graph), {"source": "file", "file": args.graph}
    params = _family_params(args)
    if not params:
        raise ValidationError("give --graph FILE or a family with its parameters (e.g. --n)")
    family = args.family.replace("-", "_")
    G = generate(family, seed=args.seed, max_attempts=args.max_attempts, **params)
    return G, {"source": "family", "family": family, "params": params, "seed": args.seed}


def _parse_L(value: Optional[int], n: int) -> int:
    L = max(1, math.isqrt(n)) if value is None else value
    if L < 1:
        raise ValidationError(f"L must be >= 1, got {L}")
    return L


def _rational_strings(x) -> tuple[str, str]:
    if isinstance(x, (int, Fraction)):
        x = Fraction(x)
        return str(x.numerator), str(x.denominator)
    return "", ""


def _sig12(x) -> str:
    return format(float(x), ".12g")


# -- subcommands -------------------------------------------------------------


def cmd_gen_graph(args) -> int:
    params = _family_params(args)
    G = generate(args.family, seed=args.seed, max_attempts=args.max_attempts, **params)
    write_json(args.out, G.to_dict())
    return 0


def _build_routes(G: Graph, args):
    method = args.method
    if method == "shortest":
        return shortest_path_system(G)
    if method == "bruteforce":
        return min_congestion_bruteforce(G)[0]
    if method == "anneal":
        start = load_path_system(args.paths, G) if getattr(args, "paths", None) else shortest_path_system(G)
        return anneal_congestion(G, start, args.iters, args.seed)
    raise ValidationError(f"unknown routing method {method!r}")


def cmd_routes(args) -> int:
    G, source = _resolve_graph(args)
    P = _build_routes(G, args)
    report = vertex_congestion(P)
    write_json(args.out, P.to_dict())
    summary = {
        "graph": source,
        "method": args.method,
        "iters": args.iters if args.method == "anneal" else None,
        "seed": args.seed,
        "tie_break": TIE_BREAK,
        "congestion": report.to_dict(),
    }
    if args.check_inequality:
        summary["congestion_inequality"] = check_congestion_inequality(G, P)
    text = dumps(summary)
    if args.report:
        write_text(args.report, text)
    else:
        sys.stderr.write(text) if args.out in (None, "-") else sys.stdout.write(text)
    return 0


def _family_from_args(args):
    G, source = _resolve_graph(args)
    if args.paths:
        P = load_path_system(args.paths, G)
        method = "file"
    else:
        P = _build_routes(G, args)
        method = args.method
    fam = build_family(G, P, _parse_L(args.L, G.n), exact=args.exact)
    provenance = {
        "graph": source,
        "n": G.n,
        "L": fam.L,
        "g": fam.g,
        "paths": {"method": method, "file": args.paths, "iters": args.iters if method == "anneal" else None},
        "tie_break": TIE_BREAK,
        "exactness": "exact" if fam.exact else "inexact",
        "seed": args.seed,
    }
    return fam, provenance


def _threshold(fam) -> dict:
    calc = bound_calculator(fam.n, fam.g)
    floor = min(fam.scalar(Fraction(fam.n**3, fam.g**2)), fam.scalar(Fraction(1, fam.g)) * fam.n15) / fam.scalar(
        64 * E_LOWER * E_LOWER
    )
    return {
        "congestion_formula": calc["congestion"],
        "threshold": calc["threshold"],
        "squared_floor": fmt_scalar(floor),
        "g_below_n15": fam.g < fam.n15,
    }


def _parse_checks(spec: str) -> Optional[list]:
    if spec in (None, "none", ""):
        return []
    if spec == "all":
        return list(CHECKS)
    return [s.strip() for s in spec.split(",") if s.strip()]


def _adversary_report(args) -> dict:
    fam, provenance = _family_from_args(args)
    report: dict = {"provenance": provenance, "threshold": _threshold(fam)}
    checks = _parse_checks(args.verify)
    if args.sampled is not None:
        if checks:
            raise ValidationError("verification needs full enumeration; drop --sampled")
        provenance["mode"] = "sampled"
        report["sampled"] = sampled_adversary_bound(fam, args.sampled, args.seed)
    else:
        provenance["mode"] = "full"
        check_budget(fam, args.budget_labels, args.budget_rprime)
        ev = adversary_bound(fam, args.budget_labels, args.budget_rprime)
        report["evaluation"] = ev.to_dict()
        if checks:
            results = run_checks(fam, checks, ev, args.budget_labels, args.budget_rprime)
            report["checks"] = [c.to_dict() for c in results]
            report["passed"] = all(c.passed for c in results)
    return report


def cmd_adversary(args) -> int:
    report = _adversary_report(args)
    write_json(args.out, report)
    return _summarise_checks(report)


def cmd_verify(args) -> int:
    if args.verify in (None, "none"):
        args.verify = "all"
    report = _adversary_report(args)
    write_json(args.out, report)
    return _summarise_checks(report)


def _summarise_checks(report: dict) -> int:
    for c in report.get("checks", []):
        status = "PASS" if c["passed"] else "FAIL"
        if not c["applicable"]:
            status = "N/A "
        sys.stderr.write(f"{status} {c['name']}: {c['lhs']} {c['relation']} {c['rhs']} ({c['checked']} checked)\n")
    if report.get("passed") is False:
        failed = [c["name"] for c in report["checks"] if not c["passed"]]
        raise VerificationError(f"verification failed: {', '.join(failed)}")
    return 0


def cmd_solve(args) -> int:
    if args.instance:
        inst, b = HardInstance.from_dict(read_json(args.instance))
    else:
        if not args.graph or not args.milestones:
            raise ValidationError("give --instance FILE, or --graph FILE with --milestones")
        G = load_graph(args.graph)
        P = load_path_system(args.paths, G) if args.paths else shortest_path_system(G)
        inst = make_instance(G, P, args.milestones)
        b = args.b
    if args.write_instance:
        write_json(args.write_instance, inst.to_dict(b))

    if args.algo == "steepest":
        res = steepest_descent(QueryOracle(inst), args.start)
        out = res.to_dict("steepest", None)
    elif args.algo == "random":
        res = random_descent(QueryOracle(inst), args.probes, args.seed)
        out = res.to_dict("random", args.seed)
    else:
        if b is None:
            raise ValidationError("decision needs a hidden bit: set \"b\" in the instance or pass --b")
        res = decision_from_search(QueryOracle(inst, b), args.start)
        out = res.to_dict("decide", None)
    write_json(args.out, out)
    return 0


def cmd_scaling(args) -> int:
    rows = []
    for n in args.n or []:
        ns = argparse.Namespace(**vars(args))
        ns.n = n
        ns.graph = None
        ns.rows = ns.cols = ns.dim = None
        G, _ = _resolve_graph(ns)
        P = _build_routes(G, ns)
        fam = build_family(G, P, _parse_L(args.L, n), exact=args.exact)
        try:
            check_budget(fam, args.budget_labels, args.budget_rprime)
            value = adversary_bound(fam, args.budget_labels, args.budget_rprime).min_ratio_squared
            mode = "exact" if fam.exact else "full-inexact"
        except BudgetExceededError:
            est = sampled_adversary_bound(fam, args.samples, args.seed)
            value = est["min_ratio_squared"]
            value = Fraction(value) if fam.exact else float(value)
            mode = "sampled"
        bound = math.sqrt(float(value))
        threshold = bound_calculator(n, fam.g)["threshold"]
        num, den = _rational_strings(value)
        rows.append([args.family, n, fam.L, fam.g, mode, num, den,
                     _sig12(bound), _sig12(threshold), _sig12(bound / threshold)])
    write_text(args.out, csv_text(SCALING_HEADER, rows))
    return 0


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="staircase-lb", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-graph", help="write a graph from a named family")
    _common(p)
    _graph_source(p)
    p.set_defaults(func=cmd_gen_graph)

    p = sub.add_parser("routes", help="build an all-pairs path system and report congestion")
    _common(p)
    _graph_source(p)
    p.add_argument("--method", choices=("shortest", "anneal", "bruteforce"), default="shortest")
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--paths", help="starting path system for --method anneal")
    p.add_argument("--report", help="congestion report file (default: stdout, or stderr when paths go to stdout)")
    p.add_argument("--check-inequality", action="store_true",
                   help="add g / (n ln^2 n * Delta / beta), computing beta exactly")
    p.set_defaults(func=cmd_routes)

    for name, func, helptext in (
        ("adversary", cmd_adversary, "evaluate the adversary bound on a family"),
        ("verify", cmd_verify, "run the verification suite (defaults to all checks)"),
    ):
        p = sub.add_parser(name, help=helptext)
        _common(p)
        _graph_source(p)
        p.add_argument("--paths", help="path system JSON (default: built with --method)")
        p.add_argument("--method", choices=("shortest", "anneal", "bruteforce"), default="shortest")
        p.add_argument("--iters", type=int, default=1000)
        p.add_argument("--L", type=int, help="milestone count minus one (default floor(sqrt(n)))")
        p.add_argument("--verify", default="none" if name == "adversary" else "all",
                       help=f"'all', 'none' or a comma list of {','.join(CHECKS)}")
        p.add_argument("--sampled", type=int, help="sample this many admissible triples instead")
        p.set_defaults(func=func)

    p = sub.add_parser("solve", help="run a classical solver against an instance")
    _common(p)
    p.add_argument("--instance", help="instance JSON file")
    p.add_argument("--graph", help="graph JSON (with --milestones) instead of --instance")
    p.add_argument("--paths", help="path system JSON (default: shortest paths)")
    p.add_argument("--milestones", type=int, nargs="+")
    p.add_argument("--b", type=int, choices=(0, 1))
    p.add_argument("--write-instance", help="also save the instance JSON here")
    p.add_argument("--algo", choices=("steepest", "random", "decide"), default="steepest")
    p.add_argument("--start", type=int, default=1)
    p.add_argument("--probes", type=int, default=1)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("scaling", help="CSV of exact (or sampled) bounds against the threshold formula")
    _common(p)
    p.add_argument("--family", default="complete", help="path, cycle, complete or random-regular")
    p.add_argument("--n", type=int, nargs="*", default=[], help="vertex counts, one row each")
    p.add_argument("--degree", type=int)
    p.add_argument("--max-attempts", type=int, default=10_000)
    p.add_argument("--method", choices=("shortest", "anneal", "bruteforce"), default="shortest")
    p.add_argument("--iters", type=int, default=1000)
    p.add_argument("--L", type=int)
    p.add_argument("--samples", type=int, default=1000)
    p.set_defaults(func=cmd_scaling)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except StaircaseError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
