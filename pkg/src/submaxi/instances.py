"""Instance files and the shipped fixture catalog.

An instance file is a JSON object::

    {
      "version": 1,
      "name": "star5_phi",
      "n": 10,
      "labels": ["s", "a", ...],          # optional
      "function": {"family": "phi", "n_vertices": 5},
      "system": {"family": "phi", "graph": {"n": 5, "edges": [[0, 1], ...]}},
      "metadata": {"expected_p": 1}       # optional, free-form
    }

Keys are written sorted with two-space indentation so fixtures diff cleanly.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Optional

from .core import GroundSet, MembershipOracle, ValueOracle
from .functions import (
    CoverageFunction,
    CutFunction,
    FacilityLocationFunction,
    ModularFunction,
    function_from_spec,
)
from .systems import (
    CardinalitySystem,
    EdgeIndependenceSystem,
    ExplicitSystem,
    Graph,
    IntersectionSystem,
    MatchingSystem,
    PartitionMatroid,
    phi_reduce,
    system_from_spec,
)

FORMAT_VERSION = 1


class InstanceParseError(ValueError):
    pass


@dataclass
class Instance:
    name: str
    n: int
    function: dict
    system: dict
    labels: Optional[list[str]] = None
    metadata: dict = field(default_factory=dict)

    def build(self, cache: bool = False, checked: bool = False):
        """Return fresh ``(ValueOracle, MembershipOracle)`` for one run."""
        fn = function_from_spec(self.function)
        sys = system_from_spec(self.system)
        if fn.n != self.n or sys.n != self.n:
            raise InstanceParseError(
                f"{self.name}: n={self.n} but function has n={fn.n}, system has n={sys.n}")
        return ValueOracle(fn, self.n, cache=cache, checked=checked), MembershipOracle(sys)

    @property
    def ground(self) -> GroundSet:
        return GroundSet(self.n, self.labels)

    def to_dict(self) -> dict:
        d = {"version": FORMAT_VERSION, "name": self.name, "n": self.n,
             "function": self.function, "system": self.system}
        if self.labels is not None:
            d["labels"] = list(self.labels)
        if self.metadata:
            d["metadata"] = self.metadata
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "Instance":
        if not isinstance(d, dict):
            raise InstanceParseError("instance must be a JSON object")
        if d.get("version") != FORMAT_VERSION:
            raise InstanceParseError(f"unsupported instance version {d.get('version')!r}")
        try:
            inst = cls(name=str(d["name"]), n=int(d["n"]), function=dict(d["function"]),
                       system=dict(d["system"]), labels=d.get("labels"),
                       metadata=dict(d.get("metadata", {})))
        except (KeyError, TypeError, ValueError) as exc:
            raise InstanceParseError(f"malformed instance: {exc!r}") from None
        try:
            inst.build()
        except InstanceParseError:
            raise
        except (ValueError, KeyError, TypeError) as exc:
            raise InstanceParseError(f"{inst.name}: {exc}") from None
        if inst.labels is not None and len(inst.labels) != inst.n:
            raise InstanceParseError(f"{inst.name}: {len(inst.labels)} labels for n={inst.n}")
        return inst

    @classmethod
    def loads(cls, text: str) -> "Instance":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InstanceParseError(f"invalid JSON: {exc}") from None
        return cls.from_dict(d)


def load_instance(path) -> Instance:
    return Instance.loads(Path(path).read_text())


def instance_from(name: str, fn, sys, labels=None, **metadata) -> Instance:
    return Instance(name, sys.n, fn.to_spec(), sys.to_spec(),
                    list(labels) if labels is not None else None, metadata)


def phi_instance(graph: Graph, name: str) -> Instance:
    sys, fn = phi_reduce(graph)
    return instance_from(name, fn, sys, labels=sys.labels(),
                         graph_vertices=graph.n, expected_p_system=1)


STAR5 = Graph(5, ((0, 1), (0, 2), (0, 3), (0, 4)), ("s", "a", "b", "c", "d"))
J_SYSTEM = ExplicitSystem(4, [[0, 1], [2, 3]])
J_LABELS = ["a", "b", "c", "d"]


def _weights(rng, n, lo=0.5, hi=10.0):
    return [round(rng.uniform(lo, hi), 3) for _ in range(n)]


def _random_edges(rng, n, prob, weighted=True):
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < prob:
                edges.append([u, v, round(rng.uniform(0.5, 5.0), 3) if weighted else 1.0])
    return edges


def _coverage(rng, n, universe, per):
    return CoverageFunction([rng.sample(range(universe), rng.randint(1, per)) for _ in range(n)])


def _facility(rng, n, clients):
    return FacilityLocationFunction(
        [[round(rng.uniform(0, 10), 3) for _ in range(n)] for _ in range(clients)])


def _cut(rng, n, prob=0.5):
    edges = _random_edges(rng, n, prob)
    if not edges:
        edges = [[0, 1, 1.0]]
    return CutFunction(n, edges)


def _blocks(n, sizes):
    out, start = [], 0
    for s in sizes:
        out.append(list(range(start, start + s)))
        start += s
    assert start == n
    return out


def catalog() -> list[Instance]:
    """The shipped suite, generated from a fixed seed."""
    rng = random.Random(20240101)
    out: list[Instance] = []

    out.append(phi_instance(STAR5, "star5_phi"))
    out.append(phi_instance(Graph.path(3), "p3_phi"))
    out.append(phi_instance(Graph.path(5), "p5_phi"))
    out.append(phi_instance(Graph.cycle(4), "c4_phi"))
    out.append(phi_instance(Graph.cycle(5), "c5_phi"))
    out.append(phi_instance(Graph.complete(4), "k4_phi"))
    out.append(phi_instance(Graph.edgeless(3), "edgeless3_phi"))
    out.append(phi_instance(Graph.edgeless(1), "single_vertex_phi"))
    out.append(phi_instance(Graph.star(7), "star7_phi"))
    out.append(phi_instance(Graph.cycle(6), "c6_phi"))

    out.append(instance_from("explicit_J", ModularFunction([1, 1, 2, 2]), J_SYSTEM,
                             labels=J_LABELS))
    out.append(instance_from("explicit_J_cut", CutFunction(4, [[0, 2, 1.0], [1, 3, 2.0], [0, 1, 1.5]]),
                             J_SYSTEM, labels=J_LABELS))
    bases = [sorted(rng.sample(range(8), rng.randint(2, 4))) for _ in range(5)]
    out.append(instance_from("explicit_random_facility", _facility(rng, 8, 5),
                             ExplicitSystem(8, bases)))

    out.append(instance_from("cardinality_k2", ModularFunction([5, 3, 1, 4, 2]),
                             CardinalitySystem(5, 2)))
    out.append(instance_from("cardinality_k3_coverage", _coverage(rng, 6, 10, 4),
                             CardinalitySystem(6, 3)))
    out.append(instance_from("cardinality_k3_cut", _cut(rng, 6), CardinalitySystem(6, 3)))
    out.append(instance_from("cardinality_k4_facility", _facility(rng, 8, 6),
                             CardinalitySystem(8, 4)))
    out.append(instance_from("cardinality_k5_cut", _cut(rng, 10, 0.4), CardinalitySystem(10, 5)))
    out.append(instance_from("cardinality_k6_coverage", _coverage(rng, 12, 20, 5),
                             CardinalitySystem(12, 6)))

    out.append(instance_from("partition_modular", ModularFunction(_weights(rng, 6)),
                             PartitionMatroid(_blocks(6, [2, 2, 2]), [1, 1, 1])))
    out.append(instance_from("partition_coverage", _coverage(rng, 8, 12, 4),
                             PartitionMatroid(_blocks(8, [3, 3, 2]), [2, 1, 1])))
    out.append(instance_from("partition_cut", _cut(rng, 8),
                             PartitionMatroid(_blocks(8, [4, 4]), [2, 2])))
    out.append(instance_from("partition_facility", _facility(rng, 10, 6),
                             PartitionMatroid(_blocks(10, [3, 3, 4]), [1, 2, 2])))

    p4 = Graph.path(4)
    out.append(instance_from("matching_p4", ModularFunction([1, 1, 1]), MatchingSystem(p4)))
    out.append(instance_from("matching_p6_facility", _facility(rng, 5, 4),
                             MatchingSystem(Graph.path(6))))
    k4 = Graph.complete(4)
    out.append(instance_from("matching_k4_coverage", _coverage(rng, 6, 9, 3), MatchingSystem(k4)))
    out.append(instance_from("matching_k4_cut", _cut(rng, 6), MatchingSystem(k4)))
    out.append(instance_from("matching_c6_cut", _cut(rng, 6), MatchingSystem(Graph.cycle(6))))
    out.append(instance_from("matching_k5_cut", _cut(rng, 10, 0.35),
                             MatchingSystem(Graph.complete(5))))
    out.append(instance_from("matching_c8_modular", ModularFunction(_weights(rng, 8)),
                             MatchingSystem(Graph.cycle(8))))

    two = IntersectionSystem([PartitionMatroid(_blocks(6, [2, 2, 2]), [1, 1, 1]),
                              PartitionMatroid([[0, 3], [1, 4], [2, 5]], [1, 1, 1])])
    out.append(instance_from("intersection2_modular", ModularFunction(_weights(rng, 6)), two))
    two8 = IntersectionSystem([PartitionMatroid(_blocks(8, [4, 4]), [2, 2]),
                               PartitionMatroid([[0, 1, 4, 5], [2, 3, 6, 7]], [1, 2])])
    out.append(instance_from("intersection2_cut", _cut(rng, 8), two8))
    three = IntersectionSystem([
        PartitionMatroid(_blocks(9, [3, 3, 3]), [1, 1, 1]),
        PartitionMatroid([[0, 3, 6], [1, 4, 7], [2, 5, 8]], [1, 1, 1]),
        PartitionMatroid([[0, 4, 8], [1, 5, 6], [2, 3, 7]], [1, 1, 1]),
    ])
    out.append(instance_from("intersection3_coverage", _coverage(rng, 9, 12, 4), three))

    out.append(instance_from("edge_independence_star5", ModularFunction([3, 1, 1, 1, 1]),
                             EdgeIndependenceSystem(STAR5), labels=STAR5.labels))
    out.append(instance_from("edge_independence_c6_cut", _cut(rng, 6),
                             EdgeIndependenceSystem(Graph.cycle(6))))
    out.append(instance_from("edge_independence_p7_coverage", _coverage(rng, 7, 10, 3),
                             EdgeIndependenceSystem(Graph.path(7))))
    return out


def suite_dir() -> Path:
    """Directory holding the shipped instance files."""
    return Path(str(resources.files("submaxi") / "data" / "suite"))


def load_suite(directory=None) -> list[Instance]:
    directory = suite_dir() if directory is None else Path(directory)
    return [load_instance(p) for p in sorted(directory.glob("*.json"))]


def write_catalog(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for inst in catalog():
        p = directory / f"{inst.name}.json"
        p.write_text(inst.dumps())
        paths.append(p)
    return paths
