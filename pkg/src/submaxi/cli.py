"""Command line interface.

Subcommands::

    submaxi run INSTANCE --algorithm triple --epsilon 0.1
    submaxi classify INSTANCE
    submaxi reduce GRAPH
    submaxi suite [DIR] --epsilon 0.05 0.1 0.2

Exit codes: 0 success, 2 argument error, 3 parse error, 4 cap refusal,
5 internal invariant violation (an infeasible constrained output).
"""

from __future__ import annotations

import argparse
import csv
import io
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import checkers
from .algorithms import (
    ALGORITHMS,
    BRUTE_FORCE_CAP,
    DETERMINISTIC_BETA,
    RANDOMIZED_BETA,
    brute_force,
    composed_ratio,
    max_independent_size,
    max_union_alpha,
    max_union_ratio,
    run_algorithm,
    threshold_query_bound,
)
from .core import CapExceededError
from .instances import Instance, InstanceParseError, load_instance, phi_instance, suite_dir
from .systems import parse_graph

EXIT_OK, EXIT_ARGS, EXIT_PARSE, EXIT_CAP, EXIT_INVARIANT = 0, 2, 3, 4, 5

RUN_COLUMNS = ["instance", "algorithm", "epsilon", "seed", "value", "value_queries",
               "membership_queries", "time_ms", "feasible"]
SUITE_COLUMNS = ["instance", "n", "algorithm", "epsilon", "seed", "value", "value_queries",
                 "membership_queries", "feasible", "guarantee", "p", "alpha", "beta", "opt",
                 "bound", "ratio", "query_bound", "bound_satisfied", "error"]
UNCONSTRAINED_ALGOS = {"dg-det", "dg-rand"}
SUITE_CAP = 14
SLACK = 1e-9


def num(x) -> str:
    """Format a number with 17 significant digits; empty for None."""
    if x is None:
        return ""
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    if math.isinf(x):
        return "inf"
    return f"{x:.17g}"


def _epsilon(text: str) -> float:
    try:
        eps = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0 < eps < 1:
        raise argparse.ArgumentTypeError(f"epsilon must lie in (0, 1), got {eps}")
    return eps


def _csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for r in rows:
        w.writerow([r.get(c, "") for c in columns])
    return buf.getvalue()


def _fail(code: int, msg: str) -> int:
    print(f"submaxi: {msg}", file=sys.stderr)
    return code


# -- run ---------------------------------------------------------------------

def cmd_run(args) -> int:
    try:
        inst = load_instance(args.instance)
    except (OSError, InstanceParseError) as exc:
        return _fail(EXIT_PARSE, f"cannot load {args.instance}: {exc}")
    f, sys_ = inst.build(cache=args.cache == "on")
    cap = BRUTE_FORCE_CAP if args.cap is None else args.cap
    try:
        rec = run_algorithm(args.algorithm, f, sys_, args.epsilon, args.seed, cap)
    except CapExceededError as exc:
        return _fail(EXIT_CAP, str(exc))
    feasible = bool(sys_.system.is_member(rec.output))
    row = {
        "instance": inst.name, "algorithm": args.algorithm,
        "epsilon": num(args.epsilon) if args.algorithm in ("threshold", "triple") else "",
        "seed": args.seed, "value": num(rec.value), "value_queries": rec.value_queries,
        "membership_queries": rec.membership_queries,
        "time_ms": f"{rec.wall_time * 1000:.3f}", "feasible": num(feasible),
    }
    sys.stdout.write(_csv([row], RUN_COLUMNS))
    if args.show_set:
        print(inst.ground.format(rec.output))
    if not feasible and args.algorithm not in UNCONSTRAINED_ALGOS:
        return _fail(EXIT_INVARIANT, f"{args.algorithm} returned an infeasible set")
    return EXIT_OK


# -- classify ----------------------------------------------------------------

def cmd_classify(args) -> int:
    try:
        inst = load_instance(args.instance)
    except (OSError, InstanceParseError) as exc:
        return _fail(EXIT_PARSE, f"cannot load {args.instance}: {exc}")
    _, sys_ = inst.build()
    cap = checkers.CHECK_CAP if args.cap is None else args.cap
    try:
        report = checkers.classify(sys_.system, cap=cap)
    except CapExceededError as exc:
        return _fail(EXIT_CAP, f"refusing to classify: {exc}")
    sys.stdout.write(f"instance: {inst.name}\n" + report.to_text())
    return EXIT_OK


# -- reduce ------------------------------------------------------------------

def cmd_reduce(args) -> int:
    path = Path(args.graph)
    try:
        graph = parse_graph(path.read_text())
        if graph.n < 1:
            raise ValueError("graph has no vertices")
    except (OSError, ValueError) as exc:
        return _fail(EXIT_PARSE, f"cannot read graph {path}: {exc}")
    name = args.name or f"{path.stem}_phi"
    sys.stdout.write(phi_instance(graph, name).dumps())
    return EXIT_OK


# -- suite -------------------------------------------------------------------

def _instance_facts(inst: Instance, cap: int) -> dict:
    """Exact reference quantities, or an empty dict above the cap."""
    if inst.n > cap:
        return {}
    f, sys_ = inst.build()
    return {
        "opt": brute_force(f, sys_, cap).value,
        "uopt": brute_force(f, None, cap).value,
        "rank": max_independent_size(sys_, inst.n, cap),
        "monotone": checkers.check_monotone(f, inst.n, cap).ok,
        "p": checkers.p_extendible_parameter(sys_.system, n=inst.n, cap=cap),
    }


def _ratio(value, ref):
    if ref is None:
        return None
    if ref == 0:
        return 1.0 if value == 0 else math.inf
    return value / ref


def _suite_rows(inst: Instance, epsilons, seed: int, cap: int, cache: bool) -> list[dict]:
    facts = _instance_facts(inst, cap)
    p = facts.get("p")
    opt = facts.get("opt")
    runs = [("greedy", None)] + [("threshold", e) for e in epsilons] + \
           [("triple", e) for e in epsilons] + [("dg-det", None), ("dg-rand", None), ("brute", None)]
    rows = []
    for algo, eps in runs:
        if algo == "brute" and inst.n > cap:
            continue
        f, sys_ = inst.build(cache=cache)
        rec = run_algorithm(algo, f, sys_, eps if eps is not None else 0.1, seed, cap)
        feasible = bool(sys_.system.is_member(rec.output))
        row = {"instance": inst.name, "n": inst.n, "algorithm": algo, "epsilon": num(eps),
               "seed": seed, "value": num(rec.value), "value_queries": rec.value_queries,
               "membership_queries": rec.membership_queries, "feasible": num(feasible),
               "p": num(p)}
        ok = feasible or algo in UNCONSTRAINED_ALGOS
        guarantee, alpha, beta, ref, bound, ratio, qbound = "none", None, None, opt, 0.0, None, None
        if not facts:
            guarantee, bound = "unverified", None
        elif algo == "greedy":
            ratio = _ratio(rec.value, opt)
            if facts["monotone"]:
                guarantee = "opt_over_rank"
                bound = opt / facts["rank"] if facts["rank"] else 0.0
        elif algo == "threshold":
            guarantee = "max_union"
            qbound = threshold_query_bound(inst.n, eps)
            ok = ok and rec.value_queries <= qbound
            ratio = max_union_ratio(rec.output, f, sys_.system, cap)
            if p is not None:
                alpha = bound = max_union_alpha(p, eps)
                ok = ok and ratio >= alpha - SLACK
        elif algo == "triple":
            guarantee = "composed"
            beta = DETERMINISTIC_BETA
            ratio = _ratio(rec.value, opt)
            if p is not None:
                alpha = max_union_alpha(p, eps)
                bound = composed_ratio(alpha, beta) * opt
        elif algo == "dg-det":
            guarantee, beta, ref = "unconstrained", DETERMINISTIC_BETA, facts["uopt"]
            bound = beta * ref
            ratio = _ratio(rec.value, ref)
        elif algo == "dg-rand":
            guarantee, beta, ref = "expectation_only", RANDOMIZED_BETA, facts["uopt"]
            ratio = _ratio(rec.value, ref)
        elif algo == "brute":
            guarantee, bound, ratio = "exact", opt, 1.0
        if bound is not None and algo != "threshold":
            ok = ok and rec.value >= bound - SLACK * max(1.0, abs(bound))
        row.update(guarantee=guarantee, alpha=num(alpha), beta=num(beta), opt=num(ref),
                   bound=num(bound), ratio=num(ratio), query_bound=num(qbound),
                   bound_satisfied=num(ok))
        rows.append(row)
    return rows


def _suite_file(job) -> tuple[list[dict], bool]:
    path, epsilons, seed, cap, cache = job
    try:
        inst = load_instance(path)
    except (OSError, InstanceParseError) as exc:
        return [{"instance": Path(path).stem, "bound_satisfied": "false",
                 "error": str(exc).replace("\n", " ")}], False
    rows = _suite_rows(inst, epsilons, seed, cap, cache)
    violated = any(r["feasible"] == "false" and r["algorithm"] not in UNCONSTRAINED_ALGOS
                   for r in rows)
    return rows, violated


def suite_csv(directory, epsilons=(0.05, 0.1, 0.2), seed: int = 0, cap: int = SUITE_CAP,
              cache: bool = False, jobs: int = 1) -> tuple[str, bool]:
    """Run the suite over ``directory``; returns the CSV text and whether any
    constrained output was infeasible."""
    paths = sorted(Path(directory).glob("*.json"))
    work = [(str(p), tuple(epsilons), seed, cap, cache) for p in paths]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_suite_file, work))
    else:
        results = [_suite_file(w) for w in work]
    rows = [r for rs, _ in results for r in rs]
    return _csv(rows, SUITE_COLUMNS), any(v for _, v in results)


def cmd_suite(args) -> int:
    directory = Path(args.directory) if args.directory else suite_dir()
    if not directory.is_dir():
        return _fail(EXIT_ARGS, f"{directory} is not a directory")
    cap = SUITE_CAP if args.cap is None else args.cap
    text, violated = suite_csv(directory, args.epsilon, args.seed, cap,
                               args.cache == "on", args.jobs)
    sys.stdout.write(text)
    if violated:
        return _fail(EXIT_INVARIANT, "an algorithm returned an infeasible set")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="submaxi",
                                 description="Submodular maximization over independence systems.")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--seed", type=int, default=0,
                       help="seed for random.Random (randomized double greedy)")
        p.add_argument("--cache", choices=("on", "off"), default="off",
                       help="memoize oracle values; cache hits are not counted")
        p.add_argument("--cap", type=int, default=None,
                       help="size cap for exhaustive routines")

    p = sub.add_parser("run", help="run one algorithm on one instance")
    p.add_argument("instance")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="triple")
    p.add_argument("--epsilon", type=_epsilon, default=0.1)
    p.add_argument("--show-set", action="store_true", help="also print the chosen set")
    common(p)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("classify", help="classify an instance's independence system")
    p.add_argument("instance")
    p.add_argument("--cap", type=int, default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("reduce", help="emit the padded instance of a graph")
    p.add_argument("graph")
    p.add_argument("--name", default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("suite", help="run every algorithm on every instance of a directory")
    p.add_argument("directory", nargs="?", default=None,
                   help="instance directory (default: the shipped suite)")
    p.add_argument("--epsilon", type=_epsilon, nargs="+", default=[0.05, 0.1, 0.2])
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    p.set_defaults(func=cmd_suite)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
