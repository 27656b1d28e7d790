"""Maximization routines over independence systems.

All routines take a :class:`ValueOracle` and (where constrained) a
:class:`MembershipOracle` or bare system, and return a :class:`RunRecord`.
Ties are broken towards the smallest element index.  Comparisons against
thresholds are exact.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import (
    ElementSet,
    MembershipOracle,
    ValueOracle,
    as_membership,
    check_cap,
    iter_bits,
    marginal_gain,
    restrict_complement,
    restrict_to,
)

BRUTE_FORCE_CAP = 20

#: Ratio of :func:`unconstrained_max_deterministic` (worst case).
DETERMINISTIC_BETA = 1 / 3
#: Ratio of :func:`unconstrained_max_randomized` (in expectation only).
RANDOMIZED_BETA = 1 / 2


@dataclass(frozen=True)
class RunRecord:
    algorithm: str
    output: ElementSet
    value: float
    value_queries: int
    membership_queries: int
    wall_time: float
    cached: bool = False
    params: dict = field(default_factory=dict)

    def same_result(self, other: "RunRecord") -> bool:
        """Equality ignoring wall time."""
        return (self.algorithm, self.output, self.value, self.value_queries,
                self.membership_queries, self.cached, self.params) == (
            other.algorithm, other.output, other.value, other.value_queries,
            other.membership_queries, other.cached, other.params)


class _Run:
    """Measures query deltas and wall time around one algorithm run."""

    def __init__(self, f: ValueOracle, sys: Optional[MembershipOracle]):
        self.f, self.sys = f, sys
        self.q0 = f.queries
        self.m0 = sys.queries if sys is not None else 0
        self.t0 = time.perf_counter()

    def record(self, name: str, out: ElementSet, **params) -> RunRecord:
        elapsed = time.perf_counter() - self.t0
        vq = self.f.queries - self.q0
        mq = self.sys.queries - self.m0 if self.sys is not None else 0
        return RunRecord(name, out, self.f.uncounted(out), vq, mq, elapsed,
                         self.f.cached, params)


# -- bounds -----------------------------------------------------------------

def threshold_pass_count(n: int, eps: float) -> int:
    """Number of thresholds ``M (1-eps)^i`` with ``(1-eps)^i >= eps/n``.

    This is ``floor(ln(n/eps) / -ln(1-eps)) + 1``; the float estimate is
    corrected with exact rational arithmetic on the binary value of ``eps``
    so that boundary cases such as ``(1-eps)^i == eps/n`` count correctly.
    """
    if n < 1:
        return 0
    t = math.floor(math.log(n / eps) / -math.log1p(-eps)) + 1
    q = Fraction(eps)
    floor_ = q / n

    def admitted(i):
        return (1 - q) ** i >= floor_

    while t > 0 and not admitted(t - 1):
        t -= 1
    while admitted(t):
        t += 1
    return t


def threshold_query_bound(n: int, eps: float) -> int:
    """Value-query ceiling for :func:`threshold_greedy` on ``n`` candidates."""
    return n + 2 * n * threshold_pass_count(n, eps)


def max_union_alpha(p: float, eps: float) -> float:
    """MAX-UNION ratio of threshold greedy on a p-extendible system."""
    return 1.0 / (p / (1 - eps) + 1 + eps)


def composed_ratio(alpha: float, beta: float) -> float:
    """TripleGreedy ratio from its MAX-UNION and unconstrained ratios."""
    if alpha <= 0 or beta <= 0:
        return 0.0
    return alpha * beta / (alpha + 2 * beta)


def triple_greedy_ratio(p: float, eps: float) -> float:
    """Closed form of ``composed_ratio(max_union_alpha(p, eps), 1/2 - eps)``."""
    return 1.0 / (2 / (1 - 2 * eps) + 2 * p / (1 - eps) + 2 + 2 * eps)


def _check_eps(eps: float):
    if not 0 < eps < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {eps}")


# -- greedy -----------------------------------------------------------------

def greedy(f: ValueOracle, sys) -> RunRecord:
    """Repeatedly add the feasible element maximizing ``f(G + s)``.

    Stops when no element outside G keeps G independent, so the output is
    maximal.
    """
    sys = as_membership(sys)
    run = _Run(f, sys)
    g = ElementSet(0, f.n)
    while True:
        best, best_val = None, -math.inf
        for s in iter_bits(f.domain.mask & ~g.mask):
            cand = g.add(s)
            if not sys(cand):
                continue
            val = f(cand)
            if val > best_val:
                best, best_val = s, val
        if best is None:
            break
        g = g.add(best)
    return run.record("greedy", g)


# -- threshold greedy (MAX-UNION) --------------------------------------------

def _threshold(f: ValueOracle, sys: MembershipOracle, eps: float) -> ElementSet:
    domain = list(f.domain)
    n = len(domain)
    a = ElementSet(0, f.n)
    if n == 0:
        return a
    empty = ElementSet(0, f.n)
    m = max(f(empty.add(x)) for x in domain)
    if m <= 0:
        return a
    candidates = domain
    for i in range(threshold_pass_count(n, eps)):
        tau = m * (1 - eps) ** i
        keep = []
        for x in candidates:
            if marginal_gain(f, a, x) >= tau:
                if sys(a.add(x)):
                    a = a.add(x)
                # Dropped either way: A only grows, so A + x infeasible now
                # means infeasible for every later A by downward closure.
                continue
            keep.append(x)
        candidates = keep
    return a


def threshold_greedy(f: ValueOracle, sys, eps: float) -> RunRecord:
    """Decreasing-threshold greedy.

    ``M`` is the best singleton value over the whole domain (feasible or
    not); thresholds run ``M, M(1-eps), ...`` down to ``eps*M/n``.  In each
    pass an element enters when its marginal gain reaches the threshold and
    the enlarged set stays independent.  On a p-extendible system the result
    approximates MAX-UNION within :func:`max_union_alpha` ``(p, eps)``.
    """
    _check_eps(eps)
    sys = as_membership(sys)
    run = _Run(f, sys)
    a = _threshold(f, sys, eps)
    return run.record("threshold", a, epsilon=eps)


# -- unconstrained maximization ----------------------------------------------

def _double_greedy(f: ValueOracle, rng: Optional[random.Random]) -> ElementSet:
    x = ElementSet(0, f.n)
    y = f.domain
    for i in f.domain:
        a = marginal_gain(f, x, i)
        b = f(y.remove(i)) - f(y)
        if rng is None:
            keep = a >= b
        else:
            a1, b1 = max(a, 0.0), max(b, 0.0)
            if a1 + b1 == 0:
                keep = a >= b
            else:
                keep = rng.random() < a1 / (a1 + b1)
        if keep:
            x = x.add(i)
        else:
            y = y.remove(i)
    return x


def unconstrained_max_deterministic(f: ValueOracle) -> RunRecord:
    """Deterministic double greedy over ``f.domain``; a 1/3-approximation."""
    run = _Run(f, None)
    out = _double_greedy(f, None)
    return run.record("dg-det", out, beta=DETERMINISTIC_BETA)


def unconstrained_max_randomized(f: ValueOracle, seed: int = 0) -> RunRecord:
    """Randomized double greedy; 1/2-approximation in expectation.

    Randomness comes from ``random.Random(seed)`` (Mersenne Twister), one draw
    per element that has a positive gain on either side.
    """
    run = _Run(f, None)
    out = _double_greedy(f, random.Random(seed))
    return run.record("dg-rand", out, beta=RANDOMIZED_BETA, seed=seed)


UNCONSTRAINED = {
    "deterministic": unconstrained_max_deterministic,
    "randomized": unconstrained_max_randomized,
}


# -- triple greedy -----------------------------------------------------------

def triple_greedy(f: ValueOracle, sys, eps: float, unconstrained: str = "deterministic",
                  seed: int = 0) -> RunRecord:
    """Best of two disjoint MAX-UNION solutions and an unconstrained
    maximizer inside the first one.

    Ties prefer the unconstrained set, then the first MAX-UNION set, then the
    second.  ``params["beta"]`` is the ratio of the unconstrained routine
    used, for pairing with :func:`composed_ratio`.
    """
    _check_eps(eps)
    if unconstrained not in UNCONSTRAINED:
        raise ValueError(f"unknown unconstrained routine {unconstrained!r}")
    sys = as_membership(sys)
    run = _Run(f, sys)
    a = _threshold(f, sys, eps)
    b = _threshold(restrict_complement(f, a), sys, eps)
    fa = restrict_to(f, a)
    if unconstrained == "deterministic":
        a_prime = _double_greedy(fa, None)
        beta = DETERMINISTIC_BETA
    else:
        a_prime = _double_greedy(fa, random.Random(seed))
        beta = RANDOMIZED_BETA
    best, best_val = None, -math.inf
    for cand in (a_prime, a, b):
        val = f(cand)
        if val > best_val:
            best, best_val = cand, val
    params = {"epsilon": eps, "unconstrained": unconstrained, "beta": beta}
    if unconstrained == "randomized":
        params["seed"] = seed
    return run.record("triple", best, **params)


# -- exact -------------------------------------------------------------------

def independent_masks(sys, domain: ElementSet, cap: int = BRUTE_FORCE_CAP):
    """Every independent subset of ``domain`` as a bitmask, by increasing size.

    Each set is reached by adding an element larger than its current maximum,
    and non-members are never extended (supersets of a non-member are
    non-members).  ``sys`` may be ``None`` for the free system.
    """
    check_cap(len(domain), cap, "independent set enumeration")
    n = domain.n
    bits = list(domain)
    layer = [(0, -1)]
    while layer:
        yield from (m for m, _ in layer)
        nxt = []
        for mask, last in layer:
            for j in range(last + 1, len(bits)):
                cand = mask | 1 << bits[j]
                if sys is None or sys(ElementSet(cand, n)):
                    nxt.append((cand, j))
        layer = nxt


def brute_force(f: ValueOracle, sys=None, cap: int = BRUTE_FORCE_CAP) -> RunRecord:
    """Exact ``argmax_{S in I} f(S)``.

    Ties go to the lexicographically smallest sorted index tuple.  With
    ``sys=None`` this maximizes over all subsets of ``f.domain``.
    """
    check_cap(len(f.domain), cap, "brute force")
    sys = None if sys is None else as_membership(sys)
    run = _Run(f, sys)
    best, best_val = None, -math.inf
    for mask in independent_masks(sys, f.domain, cap):
        s = ElementSet(mask, f.n)
        val = f(s)
        if val > best_val or (val == best_val and s.sorted() < best.sorted()):
            best, best_val = s, val
    return run.record("brute", best)


def max_union_ratio(a: ElementSet, f: ValueOracle, sys, cap: int = BRUTE_FORCE_CAP) -> float:
    """``min f(A) / f(A | B)`` over independent B with ``f(A | B) > 0``.

    This is the largest alpha for which ``A`` meets the MAX-UNION
    requirement; ``math.inf`` when every ``f(A | B)`` is zero.
    """
    sys = None if sys is None else as_membership(sys)
    fa = f(a)
    ratio = math.inf
    for mask in independent_masks(sys, f.domain, cap):
        u = f(ElementSet(mask | a.mask, f.n))
        if u > 0:
            ratio = min(ratio, fa / u)
    return ratio


def max_independent_size(sys, n: int, cap: int = BRUTE_FORCE_CAP) -> int:
    """Largest cardinality of an independent set, by enumeration."""
    return max(m.bit_count() for m in independent_masks(sys, ElementSet.full(n), cap))


ALGORITHMS = ("greedy", "threshold", "triple", "dg-det", "dg-rand", "brute")


def run_algorithm(name: str, f: ValueOracle, sys, eps: float = 0.1, seed: int = 0,
                  cap: int = BRUTE_FORCE_CAP) -> RunRecord:
    if name == "greedy":
        return greedy(f, sys)
    if name == "threshold":
        return threshold_greedy(f, sys, eps)
    if name == "triple":
        return triple_greedy(f, sys, eps)
    if name == "dg-det":
        return unconstrained_max_deterministic(f)
    if name == "dg-rand":
        return unconstrained_max_randomized(f, seed)
    if name == "brute":
        return brute_force(f, sys, cap)
    raise ValueError(f"unknown algorithm {name!r}")
