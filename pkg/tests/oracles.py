"""Reference computations for tests, written independently of the package
(itertools enumeration over explicit Python sets)."""

from itertools import chain, combinations

from submaxi import ElementSet


def subsets(items):
    items = list(items)
    return chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))


def es(n, items):
    return ElementSet.of(n, items)


def feasible_sets(n, member):
    """All tuples S (sorted) with member(S) true, by full enumeration."""
    return [s for s in subsets(range(n)) if member(es(n, s))]


def exact_max(n, f, member=None):
    """max f(S) over members, enumerating all 2^n subsets."""
    return max(f(es(n, s)) for s in subsets(range(n))
               if member is None or member(es(n, s)))


def max_edge_independent(n_vertices, edges):
    """Largest vertex set spanning no edge, enumerating all 2^|V| sets."""
    best = 0
    for s in subsets(range(n_vertices)):
        chosen = set(s)
        if not any(u in chosen and v in chosen for u, v in edges):
            best = max(best, len(chosen))
    return best


def is_edge_independent(vertices, edges):
    vs = set(vertices)
    return not any(u in vs and v in vs for u, v in edges)


def crossing_weight(edges, side):
    side = set(side)
    return sum(w for u, v, w in edges if (u in side) != (v in side))
