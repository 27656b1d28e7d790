"""Independence systems with membership predicates, and the reduction Phi.

A system exposes ``n``, ``is_member(S)``, ``declared_class``, ``declared_p``
and ``to_spec()``.  Membership tests run in time polynomial in ``n``; none of
them enumerate bases.  Wrap a system in :class:`~submaxi.core.MembershipOracle`
to count queries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import ElementSet, SystemClass
from .functions import PhiObjective


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1`` (sorted edge list)."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be >= 0")
        clean = set()
        for e in self.edges:
            u, v = int(e[0]), int(e[1])
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.n} vertices")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", tuple(sorted(clean)))
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.n:
                raise ValueError("graph labels must match the vertex count")

    def adjacency(self) -> list[int]:
        """Neighbour bitmask per vertex."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return adj

    def is_edge_independent(self, vertex_mask: int) -> bool:
        return all(not (vertex_mask >> u & 1 and vertex_mask >> v & 1)
                   for u, v in self.edges)

    def to_spec(self) -> dict:
        d = {"n": self.n, "edges": [list(e) for e in self.edges]}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        return d

    @classmethod
    def from_spec(cls, d: dict) -> "Graph":
        return cls(int(d["n"]), tuple(tuple(e) for e in d.get("edges", ())),
                   d.get("labels"))

    # Catalog graphs used by fixtures and tests.

    @classmethod
    def path(cls, m: int) -> "Graph":
        return cls(m, tuple((i, i + 1) for i in range(m - 1)))

    @classmethod
    def cycle(cls, m: int) -> "Graph":
        if m < 3:
            raise ValueError("a simple cycle needs at least 3 vertices")
        return cls(m, tuple((i, (i + 1) % m) for i in range(m)))

    @classmethod
    def star(cls, m: int) -> "Graph":
        """Center 0 joined to leaves 1..m-1."""
        return cls(m, tuple((0, i) for i in range(1, m)))

    @classmethod
    def complete(cls, m: int) -> "Graph":
        return cls(m, tuple((i, j) for i in range(m) for j in range(i + 1, m)))

    @classmethod
    def edgeless(cls, m: int) -> "Graph":
        return cls(m)


def parse_graph(text: str) -> Graph:
    """Parse ``"n m"`` followed by ``m`` lines ``"u v"`` (0-based)."""
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    if not lines or len(lines[0]) != 2:
        raise ValueError("graph file must start with a line 'n m'")
    try:
        n, m = int(lines[0][0]), int(lines[0][1])
        if len(lines) - 1 != m:
            raise ValueError(f"header declares {m} edges, found {len(lines) - 1}")
        edges = []
        for row in lines[1:]:
            if len(row) != 2:
                raise ValueError(f"bad edge line {' '.join(row)!r}")
            edges.append((int(row[0]), int(row[1])))
    except ValueError as exc:
        raise ValueError(f"malformed graph file: {exc}") from None
    return Graph(n, tuple(edges))


def format_graph(g: Graph) -> str:
    return "\n".join([f"{g.n} {len(g.edges)}"] + [f"{u} {v}" for u, v in g.edges]) + "\n"


class CardinalitySystem:
    family = "cardinality"
    declared_class = SystemClass.MATROID
    declared_p = 1

    def __init__(self, n: int, k: int):
        if k < 0:
            raise ValueError("k must be >= 0")
        self.n, self.k = int(n), int(k)

    def is_member(self, s: ElementSet) -> bool:
        return len(s) <= self.k

    def to_spec(self) -> dict:
        return {"family": self.family, "n": self.n, "k": self.k}


class PartitionMatroid:
    family = "partition"
    declared_class = SystemClass.MATROID
    declared_p = 1

    def __init__(self, blocks: Sequence[Sequence[int]], capacities: Sequence[int]):
        self.blocks = [sorted(int(x) for x in b) for b in blocks]
        self.capacities = [int(c) for c in capacities]
        if len(self.blocks) != len(self.capacities):
            raise ValueError("one capacity per block required")
        if any(c < 0 for c in self.capacities):
            raise ValueError("block capacities must be >= 0")
        members = sorted(x for b in self.blocks for x in b)
        self.n = len(members)
        if members != list(range(self.n)):
            raise ValueError("blocks must partition 0..n-1")
        self._masks = [sum(1 << x for x in b) for b in self.blocks]

    def is_member(self, s: ElementSet) -> bool:
        return all((s.mask & m).bit_count() <= c
                   for m, c in zip(self._masks, self.capacities))

    def to_spec(self) -> dict:
        return {"family": self.family, "blocks": self.blocks,
                "capacities": self.capacities}


class IntersectionSystem:
    """Sets independent in every member system.

    Declared ``q``-extendible only when all ``q`` members declare themselves
    matroids; otherwise ``general``.  Members are not verified.
    """

    family = "intersection"

    def __init__(self, members: Sequence):
        if not members:
            raise ValueError("intersection of zero systems")
        self.members = list(members)
        sizes = {m.n for m in self.members}
        if len(sizes) != 1:
            raise ValueError(f"member systems disagree on n: {sorted(sizes)}")
        self.n = sizes.pop()
        if all(m.declared_class is SystemClass.MATROID for m in self.members):
            self.declared_class = SystemClass.P_EXTENDIBLE
            self.declared_p = len(self.members)
        else:
            self.declared_class = SystemClass.GENERAL
            self.declared_p = None

    def is_member(self, s: ElementSet) -> bool:
        return all(m.is_member(s) for m in self.members)

    def to_spec(self) -> dict:
        return {"family": self.family, "members": [m.to_spec() for m in self.members]}


class MatchingSystem:
    """Ground elements are the edges of ``graph``; members are matchings."""

    family = "matching"
    declared_class = SystemClass.P_EXTENDIBLE
    declared_p = 2

    def __init__(self, graph: Graph):
        self.graph = graph
        self.n = len(graph.edges)

    def is_member(self, s: ElementSet) -> bool:
        seen = 0
        for i in s:
            u, v = self.graph.edges[i]
            ends = 1 << u | 1 << v
            if seen & ends:
                return False
            seen |= ends
        return True

    def to_spec(self) -> dict:
        return {"family": self.family, "graph": self.graph.to_spec()}


class ExplicitSystem:
    """Members are the subsets of the listed bases (the empty set always)."""

    family = "explicit"
    declared_class = SystemClass.GENERAL
    declared_p = None

    def __init__(self, n: int, bases: Sequence[Sequence[int]]):
        self.n = int(n)
        self.bases = sorted({tuple(sorted(set(int(x) for x in b))) for b in bases})
        for b in self.bases:
            if b and not (0 <= b[0] and b[-1] < self.n):
                raise ValueError(f"basis {b} out of range for n={self.n}")
        self._masks = [sum(1 << x for x in b) for b in self.bases]

    def is_member(self, s: ElementSet) -> bool:
        return s.mask == 0 or any(s.mask & ~b == 0 for b in self._masks)

    def to_spec(self) -> dict:
        return {"family": self.family, "n": self.n, "bases": [list(b) for b in self.bases]}


class EdgeIndependenceSystem:
    """Edge-independent vertex sets of a graph (no padding)."""

    family = "edge_independence"
    declared_class = SystemClass.GENERAL
    declared_p = None

    def __init__(self, graph: Graph):
        self.graph = graph
        self.n = graph.n
        self._adj = graph.adjacency()

    def is_member(self, s: ElementSet) -> bool:
        return all(not (s.mask & self._adj[v]) for v in s)

    def to_spec(self) -> dict:
        return {"family": self.family, "graph": self.graph.to_spec()}


class PhiSystem:
    """Padded edge-independence system on ``V`` followed by ``|V|`` dummies.

    S is independent iff ``S & V`` is edge-independent in the host graph and
    ``|S & D| <= |V| - |S & V|``, so every maximal member has exactly ``|V|``
    elements.
    """

    family = "phi"
    declared_class = SystemClass.P_SYSTEM
    declared_p = 1

    def __init__(self, graph: Graph):
        if graph.n < 1:
            raise ValueError("reduction needs at least one vertex")
        self.graph = graph
        self.m = graph.n
        self.n = 2 * self.m
        self._vmask = (1 << self.m) - 1
        self._adj = graph.adjacency()

    @property
    def vertex_set(self) -> ElementSet:
        return ElementSet(self._vmask, self.n)

    @property
    def dummy_set(self) -> ElementSet:
        return ElementSet(self._vmask << self.m, self.n)

    def labels(self) -> list[str]:
        names = list(self.graph.labels) if self.graph.labels else [f"v{i}" for i in range(self.m)]
        return names + [f"d{i + 1}" for i in range(self.m)]

    def is_member(self, s: ElementSet) -> bool:
        vs = s.mask & self._vmask
        ds = s.mask >> self.m
        for v in ElementSet(vs, self.n):
            if vs & self._adj[v]:
                return False
        return ds.bit_count() <= self.m - vs.bit_count()

    def to_spec(self) -> dict:
        return {"family": self.family, "graph": self.graph.to_spec()}


def phi_reduce(graph: Graph) -> tuple[PhiSystem, PhiObjective]:
    """Map a graph to an equal-basis-size instance whose optimum is its
    maximum edge-independent set size."""
    return PhiSystem(graph), PhiObjective(graph.n)


def phi_project(s: ElementSet, sys: PhiSystem) -> ElementSet:
    """Drop the dummies from an independent set of ``sys``."""
    if s.n != sys.n:
        raise ValueError(f"ground set mismatch: system n={sys.n}, set n={s.n}")
    if not sys.is_member(s):
        raise ValueError(f"{s!r} is not independent in the reduced system")
    return s & sys.vertex_set


_SIMPLE = {
    "cardinality": lambda d: CardinalitySystem(d["n"], d["k"]),
    "partition": lambda d: PartitionMatroid(d["blocks"], d["capacities"]),
    "matching": lambda d: MatchingSystem(Graph.from_spec(d["graph"])),
    "explicit": lambda d: ExplicitSystem(d["n"], d["bases"]),
    "edge_independence": lambda d: EdgeIndependenceSystem(Graph.from_spec(d["graph"])),
    "phi": lambda d: PhiSystem(Graph.from_spec(d["graph"])),
    "intersection": lambda d: IntersectionSystem([system_from_spec(m) for m in d["members"]]),
}


def system_from_spec(spec: dict):
    """Build a system from its tagged dictionary."""
    try:
        build = _SIMPLE[spec["family"]]
    except KeyError:
        raise ValueError(f"unknown or missing system family in {spec!r}") from None
    try:
        return build(spec)
    except (KeyError, TypeError) as exc:
        raise ValueError(f"bad parameters for system {spec['family']!r}: {exc}") from None


def contains(sys, s: ElementSet) -> bool:
    """Membership test; counted when ``sys`` is a MembershipOracle."""
    if s.n != sys.n:
        raise ValueError(f"ground set mismatch: system n={sys.n}, set n={s.n}")
    if hasattr(sys, "is_member"):
        return bool(sys.is_member(s))
    return sys(s)
