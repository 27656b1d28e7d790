"""Acceptance checks, one per criterion.

Run with ``pytest tests/test_acceptance.py -v`` or directly with
``python tests/test_acceptance.py``; either way one PASS/FAIL line is printed
per criterion.  Reference optima come from the itertools oracles in
``oracles.py``, not from the package's brute force.
"""

import random
import sys
import time
from itertools import combinations
from pathlib import Path
from statistics import geometric_mean, mean

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from submaxi import (  # noqa: E402
    CardinalitySystem,
    Graph,
    ModularFunction,
    ValueOracle,
    greedy,
    max_union_ratio,
    phi_project,
    phi_reduce,
    threshold_greedy,
    triple_greedy,
    unconstrained_max_deterministic,
    unconstrained_max_randomized,
)
from submaxi import checkers  # noqa: E402
from submaxi.algorithms import (  # noqa: E402
    ALGORITHMS,
    composed_ratio,
    max_union_alpha,
    run_algorithm,
    threshold_pass_count,
    threshold_query_bound,
)
from submaxi.cli import suite_csv  # noqa: E402
from submaxi.instances import load_suite, suite_dir  # noqa: E402

from oracles import es, exact_max, feasible_sets, is_edge_independent, max_edge_independent  # noqa: E402

EPSILONS = (0.05, 0.1, 0.2)
SLACK = 1e-9
CRITERIA = {}


def criterion(number, title):
    def register(fn):
        CRITERIA[number] = (title, fn)
        return fn
    return register


def suite(max_n=None):
    return [i for i in load_suite() if max_n is None or i.n <= max_n]


def facts(inst):
    f, m = inst.build()
    fn, member = f.fn, m.system.is_member
    return fn, m.system, member


def require(cond, msg):
    if not cond:
        raise AssertionError(msg)


def at_least(value, bound):
    return value >= bound - SLACK * max(1.0, abs(bound))


@criterion(1, "feasibility and greedy maximality over the shipped suite")
def feasibility_and_maximality():
    start = time.perf_counter()
    instances = suite()
    require(len(instances) >= 30 and all(i.n <= 14 for i in instances), "suite too small")
    runs = 0
    for inst in instances:
        _, system, member = facts(inst)
        for algo in ALGORITHMS:
            for eps in EPSILONS if algo in ("threshold", "triple") else (0.1,):
                f, m = inst.build()
                rec = run_algorithm(algo, f, m, eps, cap=14)
                runs += 1
                if algo not in ("dg-det", "dg-rand"):
                    require(member(rec.output), f"{inst.name}/{algo}: infeasible output")
                if algo == "greedy":
                    g = rec.output
                    require(not any(member(g.add(x)) for x in range(inst.n) if x not in g),
                            f"{inst.name}: greedy output not maximal")
    elapsed = time.perf_counter() - start
    require(elapsed < 10, f"took {elapsed:.1f}s")
    return f"{len(instances)} instances, {runs} runs, {elapsed:.2f}s"


@criterion(2, "greedy reaches OPT/beta_max on monotone instances")
def greedy_ratio():
    checked = 0
    for inst in suite(12):
        fn, system, member = facts(inst)
        if not checkers.check_monotone(fn, inst.n):
            continue
        opt = exact_max(inst.n, fn, member)
        beta = max(len(s) for s in feasible_sets(inst.n, member))
        f, m = inst.build()
        value = greedy(f, m).value
        require(at_least(value, opt / beta), f"{inst.name}: {value} < {opt}/{beta}")
        checked += 1
    require(checked > 0, "no monotone instances")
    return f"{checked} monotone instances"


@criterion(3, "greedy reaches (2/n)*OPT on 1-systems with two disjoint bases")
def disjoint_bases_ratio():
    checked = 0
    for inst in suite():
        fn, system, member = facts(inst)
        if checkers.p_system_parameter(system, n=inst.n, cap=14) != 1:
            continue
        if not checkers.has_two_disjoint_bases(system, n=inst.n, cap=14):
            continue
        opt = exact_max(inst.n, fn, member)
        f, m = inst.build()
        value = greedy(f, m).value
        require(at_least(value, 2 / inst.n * opt), f"{inst.name}: {value} vs OPT {opt}")
        checked += 1
    require(checked > 0, "no qualifying instances")
    return f"{checked} instances"


@criterion(4, "threshold greedy is a MAX-UNION approximation")
def threshold_max_union():
    start = time.perf_counter()
    checked = 0
    for inst in suite(10):
        fn, system, member = facts(inst)
        p = checkers.p_extendible_parameter(system, n=inst.n)
        for eps in EPSILONS:
            f, m = inst.build()
            a = threshold_greedy(f, m, eps).output
            ratio = max_union_ratio(a, ValueOracle(fn, inst.n), system)
            alpha = max_union_alpha(p, eps)
            require(ratio >= alpha - SLACK, f"{inst.name} eps={eps}: {ratio} < {alpha}")
            checked += 1
    elapsed = time.perf_counter() - start
    require(elapsed < 60, f"took {elapsed:.1f}s")
    return f"{checked} runs, {elapsed:.2f}s"


@criterion(5, "triple greedy reaches the composed bound with beta = 1/3")
def triple_bound():
    checked = 0
    for inst in suite(10):
        fn, system, member = facts(inst)
        p = checkers.p_extendible_parameter(system, n=inst.n)
        opt = exact_max(inst.n, fn, member)
        for eps in EPSILONS:
            f, m = inst.build()
            rec = triple_greedy(f, m, eps, "deterministic")
            bound = composed_ratio(max_union_alpha(p, eps), 1 / 3) * opt
            require(at_least(rec.value, bound), f"{inst.name} eps={eps}: {rec.value} < {bound}")
            checked += 1
    return f"{checked} runs"


@criterion(6, "threshold greedy query bound and n*T scaling")
def query_complexity():
    runs = 0
    for inst in suite():
        for eps in EPSILONS:
            f, m = inst.build()
            rec = threshold_greedy(f, m, eps)
            require(rec.value_queries <= threshold_query_bound(inst.n, eps),
                    f"{inst.name} eps={eps}: {rec.value_queries} queries")
            runs += 1
    eps = 0.1
    scaled = []
    for n in (100, 1000, 10000):
        rng = random.Random(n)
        f = ModularFunction([rng.uniform(1, 10) for _ in range(n)])
        rec = threshold_greedy(ValueOracle(f, n), CardinalitySystem(n, 10), eps)
        require(rec.value_queries <= threshold_query_bound(n, eps), f"n={n}: over bound")
        scaled.append(rec.value_queries / (n * threshold_pass_count(n, eps)))
    c = geometric_mean(scaled)
    require(all(c / 2 <= r <= 2 * c for r in scaled), f"q/(nT) = {scaled} not within 2x of {c}")
    return f"{runs} suite runs; q/(nT) = " + ", ".join(f"{r:.3f}" for r in scaled) + \
        f" (fit {c:.3f})"


def graph_catalog():
    graphs = []
    for k in range(1, 7):
        graphs += [Graph.path(k), Graph.edgeless(k), Graph.complete(k)]
        if k >= 2:
            graphs.append(Graph.star(k))
        if k >= 3:
            graphs.append(Graph.cycle(k))
    for k in range(1, 5):
        pairs = list(combinations(range(k), 2))
        for r in range(len(pairs) + 1):
            graphs += [Graph(k, edges) for edges in combinations(pairs, r)]
    return graphs


@criterion(7, "the padding reduction preserves OPT and projects to independent sets")
def reduction():
    graphs = graph_catalog()
    projected = 0
    for g in graphs:
        system, fn = phi_reduce(g)
        n = system.n
        members = feasible_sets(n, system.is_member)
        opt = max(fn(es(n, s)) for s in members)
        require(opt == max_edge_independent(g.n, g.edges), f"OPT mismatch on {g}")
        for s in members:
            out = phi_project(es(n, s), system)
            require(is_edge_independent(out, g.edges) and len(out) == fn(es(n, s)),
                    f"bad projection of {s} on {g}")
            projected += 1
    return f"{len(graphs)} graphs, {projected} projections"


@criterion(8, "greedy is stuck at value 1 on padded stars")
def star_gap():
    parts = []
    for m in (5, 9, 17):
        g = Graph.star(m)
        system, fn = phi_reduce(g)
        rec = greedy(ValueOracle(fn, system.n), system)
        opt = max_edge_independent(m, g.edges)
        leaves = es(system.n, list(range(1, m)) + [m])
        require(system.is_member(leaves) and fn(leaves) == opt, "leaf set not feasible")
        require(rec.value == 1 and opt == m - 1, f"m={m}: greedy {rec.value}, OPT {opt}")
        parts.append(f"m={m}: 1 vs {opt}")
    return "; ".join(parts)


@criterion(9, "double greedy bounds on non-monotone fixtures")
def unconstrained():
    checked = 0
    for inst in suite(12):
        fn, _, _ = facts(inst)
        if checkers.check_monotone(fn, inst.n):
            continue
        opt = exact_max(inst.n, fn)
        det = unconstrained_max_deterministic(ValueOracle(fn, inst.n)).value
        require(at_least(det, opt / 3), f"{inst.name}: deterministic {det} < {opt}/3")
        avg = mean(unconstrained_max_randomized(ValueOracle(fn, inst.n), seed).value
                   for seed in range(1000))
        require(avg >= 0.45 * opt, f"{inst.name}: randomized mean {avg} < 0.45*{opt}")
        checked += 1
    require(checked > 0, "no non-monotone fixtures")
    return f"{checked} fixtures"


@criterion(10, "suite CSV is byte-identical across invocations")
def determinism():
    first, _ = suite_csv(suite_dir(), seed=0)
    second, _ = suite_csv(suite_dir(), seed=0)
    parallel, _ = suite_csv(suite_dir(), seed=0, jobs=2)
    require(first == second == parallel, "CSV differs between runs")
    return f"{len(first.encode())} bytes, {first.count(chr(10)) - 1} rows"


def report(number):
    title, fn = CRITERIA[number]
    try:
        detail = fn()
    except AssertionError as exc:
        return False, f"FAIL criterion {number}: {title}: {exc}"
    return True, f"PASS criterion {number}: {title} ({detail})"


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, capsys):
    ok, line = report(number)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [report(k) for k in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
