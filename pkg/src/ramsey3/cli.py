"""Command-line front end.

Exit codes: 0 success, 1 negative answer of a decision verb, 2 usage error,
3 budget or vertex cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import bounds, colorings, constructions, experiments
from .classifier import Classifier, Verdict, explain_certificate
from .core import BudgetExceeded, CapExceeded, Hypergraph3, HypergraphError, read_hypergraph

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def budget_for(args, fallback: int) -> int:
    """--budget, else RAMSEY3_BUDGET, else the verb's own default."""
    if args.budget is not None:
        return args.budget
    env = os.environ.get("RAMSEY3_BUDGET")
    return int(env) if env else fallback


def load_graph(arg: str) -> Hypergraph3:
    """A path to a hypergraph text file, or a generator shorthand such as
    ``star:h=4``, ``fano`` or ``random:n=8,p=1/4,seed=3``."""
    path = Path(arg)
    if path.is_file():
        try:
            return read_hypergraph(path)
        except HypergraphError as exc:
            raise UsageError(f"{arg}: {exc}") from None
    spec = constructions.parse_generator(arg)
    if spec.name not in constructions.GENERATORS:
        raise UsageError(f"{arg}: no such file and not a generator name")
    try:
        return constructions.generate(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def load_oracle(arg: str) -> colorings.ColoringOracle:
    try:
        return colorings.parse_oracle(arg)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def emit_json(obj, dest: Optional[str]) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if dest in (None, "-"):
        print(text)
    else:
        Path(dest).write_text(text + "\n")


def _window(args, oracle: colorings.ColoringOracle) -> range:
    if args.window is None:
        return range(oracle.domain_size)
    lo, hi = args.window
    if not 0 <= lo < hi <= oracle.domain_size:
        raise UsageError(f"window [{lo}, {hi}) is not inside [0, {oracle.domain_size})")
    return range(lo, hi)


# -------------------------------------------------------------------- verbs


def cmd_classify(args) -> int:
    g = load_graph(args.graph)
    clf = Classifier(max_n=args.max_n, budget=budget_for(args, 10**7))
    verdict = clf.classify(g)
    out = verdict.to_json()
    if args.l1:
        member, cert = clf.l1_member(g)
        out["l1_member"] = member
        out["l1_certificate"] = cert.to_json()
    if args.json is not None:
        emit_json(out, args.json)
    else:
        line = verdict.summary()
        if args.l1:
            line += f" l1={str(out['l1_member']).lower()}"
        print(line)
        if verdict.note:
            print(f"note: {verdict.note}")
    return EXIT_OK


def cmd_check(args) -> int:
    g = load_graph(args.graph)
    try:
        verdict = Verdict.from_json(json.loads(Path(args.verdict).read_text()))
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"cannot read verdict: {exc}") from None
    problem = explain_certificate(g, verdict)
    if problem is None:
        print("certificate valid")
        return EXIT_OK
    print(f"certificate invalid: {problem}")
    return EXIT_NO


def cmd_gen(args) -> int:
    params = {k: getattr(args, k) for k in ("h", "n", "i", "m", "p", "seed") if getattr(args, k) is not None}
    try:
        g = constructions.generate(constructions.GeneratorSpec(args.name, params))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.output:
        Path(args.output).write_text(g.to_text())
    else:
        sys.stdout.write(g.to_text())
    return EXIT_OK


def cmd_color(args) -> int:
    oracle = load_oracle(args.oracle)
    try:
        label = oracle(*args.triple)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json is not None:
        emit_json({"oracle": oracle.name, "triple": args.triple, "label": colorings.label_to_json(label)}, args.json)
    else:
        print(label)
    return EXIT_OK


def cmd_search(args) -> int:
    oracle = load_oracle(args.oracle)
    pattern = load_graph(args.pattern)
    res = colorings.find_mono_copy(oracle, pattern, _window(args, oracle), budget=budget_for(args, colorings.DEFAULT_SEARCH_BUDGET))
    if args.json is not None:
        emit_json(
            {
                "oracle": oracle.name,
                "found": res is not None,
                "embedding": list(res[0]) if res else None,
                "label": colorings.label_to_json(res[1]) if res else None,
            },
            args.json,
        )
    elif res is None:
        print("absent")
    else:
        print(f"found embedding={' '.join(map(str, res[0]))} label={res[1]}")
    return EXIT_OK if res is not None else EXIT_NO


def cmd_audit(args) -> int:
    oracle = load_oracle(args.oracle)
    try:
        report = colorings.audit_coloring(oracle, _window(args, oracle), args.h, args.predicate, budget=budget_for(args, 10**7))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json is not None:
        emit_json({"oracle": oracle.name, **report.to_json()}, args.json)
    else:
        print(
            f"predicate={report.predicate_name} all_pass={str(report.all_pass).lower()} "
            f"patterns={len(report.patterns_found)} subsets={report.subsets_examined}"
        )
    return EXIT_OK if report.all_pass else EXIT_NO


def cmd_bound(args) -> int:
    try:
        if args.kind == "tower":
            value = bounds.tower(args.k, args.x)
        else:
            value = bounds.upper_bound_value(args.q, args.h, args.ell, args.t)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.json is not None:
        emit_json({"kind": args.kind, "value": str(value), "bits": value.bit_length()}, args.json)
    else:
        print(value)
    return EXIT_OK


def cmd_arrows(args) -> int:
    pattern = load_graph(args.pattern)
    if args.cap is not None:
        r = bounds.ramsey_exact(pattern, args.q, args.cap, budget=budget_for(args, bounds.DEFAULT_ARROWS_BUDGET))
        if args.json is not None:
            emit_json({"q": args.q, "cap": args.cap, "ramsey": r}, args.json)
        else:
            print(f"r={r}" if r is not None else f"r>{args.cap}")
        return EXIT_OK if r is not None else EXIT_NO
    if args.N is None:
        raise UsageError("arrows needs --N or --cap")
    res = bounds.arrows(args.N, pattern, args.q, budget=budget_for(args, bounds.DEFAULT_ARROWS_BUDGET))
    if args.json is not None:
        emit_json({"N": args.N, "q": args.q, **res.to_json()}, args.json)
    else:
        print(f"arrows={str(res.arrows).lower()} nodes={res.nodes_explored}")
    return EXIT_OK if res.arrows else EXIT_NO


def cmd_suite(args) -> int:
    if args.which == "paper":
        report = experiments.run_paper_suite(Classifier(max_n=args.max_n, budget=budget_for(args, 10**7)))
    else:
        report = experiments.random_classification_experiment(
            args.n, args.C, args.samples, args.seed, budget=budget_for(args, 10**7), threads=args.threads
        )
    if args.json is not None:
        emit_json(report.to_json(include_runtimes=args.runtimes), args.json)
    else:
        for c in sorted(report.cases, key=lambda c: c.name):
            mark = "PASS" if c.passed and c.validated else "FAIL"
            print(f"{mark} {c.name}: expected={c.expected} observed={c.observed}")
        print(json.dumps(report.summary, sort_keys=True))
    return EXIT_OK if report.all_pass else EXIT_NO


# ------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None, help="search budget (default: env RAMSEY3_BUDGET or per verb)")
    common.add_argument("--max-n", type=int, default=24, help="vertex cap for exhaustive searches")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--json", nargs="?", const="-", default=None, metavar="PATH", help="JSON output ('-' for stdout)")

    p = argparse.ArgumentParser(prog="ramsey3", description="Ramsey growth regimes of 3-uniform hypergraphs")
    sub = p.add_subparsers(dest="verb", required=True)

    c = sub.add_parser("classify", parents=[common], help="regime, least level and certificate")
    c.add_argument("graph", help="hypergraph file or generator shorthand")
    c.add_argument("--l1", action="store_true", help="also decide L1 membership")
    c.set_defaults(fn=cmd_classify)

    c = sub.add_parser("check", parents=[common], help="re-validate a verdict JSON against a graph")
    c.add_argument("graph")
    c.add_argument("verdict")
    c.set_defaults(fn=cmd_check)

    c = sub.add_parser("gen", parents=[common], help="write a named hypergraph")
    c.add_argument("name", choices=constructions.GENERATORS)
    for flag in ("h", "n", "i", "m"):
        c.add_argument(f"--{flag}", type=int)
    c.add_argument("--p", type=Fraction, help="edge probability, e.g. 20/196")
    c.add_argument("-o", "--output")
    c.set_defaults(fn=cmd_gen)

    c = sub.add_parser("color", parents=[common], help="evaluate an oracle on a triple")
    c.add_argument("--oracle", required=True)
    c.add_argument("--triple", type=int, nargs=3, required=True, metavar=("X", "Y", "Z"))
    c.set_defaults(fn=cmd_color)

    c = sub.add_parser("search", parents=[common], help="least monochromatic copy")
    c.add_argument("--oracle", required=True)
    c.add_argument("--pattern", required=True)
    c.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"))
    c.set_defaults(fn=cmd_search)

    c = sub.add_parser("audit", parents=[common], help="check every small monochromatic pattern")
    c.add_argument("--oracle", required=True)
    c.add_argument("--window", type=int, nargs=2, metavar=("LO", "HI"))
    c.add_argument("--h", type=int, default=4)
    c.add_argument("--predicate", default="in_U", choices=("in_U", "in_L1", "tripartite", "at_most_one_edge"))
    c.set_defaults(fn=cmd_audit)

    c = sub.add_parser("bound", parents=[common], help="exact tower or upper-bound value")
    c.add_argument("kind", choices=("tower", "upper"))
    for flag in ("k", "x", "q", "h", "ell", "t"):
        c.add_argument(f"--{flag}", type=int)
    c.set_defaults(fn=cmd_bound)

    c = sub.add_parser("arrows", parents=[common], help="brute-force arrowing / exact Ramsey number")
    c.add_argument("--N", type=int)
    c.add_argument("--pattern", required=True)
    c.add_argument("--q", type=int, default=2)
    c.add_argument("--cap", type=int, help="find the least N <= cap instead")
    c.set_defaults(fn=cmd_arrows)

    c = sub.add_parser("suite", parents=[common], help="scripted experiments")
    c.add_argument("which", choices=("paper", "random"))
    c.add_argument("--n", type=int, default=14)
    c.add_argument("--C", type=int, default=20)
    c.add_argument("--samples", type=int, default=100)
    c.add_argument("--runtimes", action="store_true", help="include wall-clock times in JSON")
    c.set_defaults(fn=cmd_suite)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.verb == "bound":
        need = ("k", "x") if args.kind == "tower" else ("q", "h", "ell", "t")
        missing = [f"--{f}" for f in need if getattr(args, f) is None]
        if missing:
            parser.error(f"bound {args.kind} needs {' '.join(missing)}")
    if args.verb == "suite" and args.seed is None:
        args.seed = 1
    if args.verb == "gen" and args.seed is None and args.name == "random":
        args.seed = 0
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, CapExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
