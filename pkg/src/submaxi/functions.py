"""Concrete non-negative submodular set functions.

Every family is a plain callable on :class:`~submaxi.core.ElementSet` with a
ground-set size ``n`` and a ``to_spec()`` producing the tagged dictionary
stored in instance files.  Wrap one in :class:`~submaxi.core.ValueOracle`
to count queries.
"""

from __future__ import annotations

from typing import Optional, Sequence

from .core import ElementSet, iter_bits


def _nonneg(values, what):
    for v in values:
        if v < 0:
            raise ValueError(f"{what} must be non-negative, got {v}")


class ModularFunction:
    family = "modular"

    def __init__(self, weights: Sequence[float]):
        self.weights = [float(w) for w in weights]
        _nonneg(self.weights, "weights")
        self.n = len(self.weights)

    def __call__(self, s: ElementSet) -> float:
        w = self.weights
        return float(sum(w[i] for i in s))

    def to_spec(self) -> dict:
        return {"family": self.family, "weights": self.weights}


class CoverageFunction:
    """Weighted coverage: f(S) is the weight of the items covered by S.

    ``sets[i]`` lists the items (integers ``0..u-1``) covered by element i.
    Without ``weights`` every item counts 1.
    """

    family = "coverage"

    def __init__(self, sets: Sequence[Sequence[int]], weights: Optional[Sequence[float]] = None):
        self.sets = [sorted(set(int(x) for x in items)) for items in sets]
        self.n = len(self.sets)
        universe = 1 + max((max(items) for items in self.sets if items), default=-1)
        for items in self.sets:
            if items and items[0] < 0:
                raise ValueError("coverage items must be non-negative integers")
        if weights is not None:
            weights = [float(w) for w in weights]
            _nonneg(weights, "item weights")
            if len(weights) < universe:
                raise ValueError(
                    f"{len(weights)} item weights for a universe of {universe} items")
            universe = len(weights)
        self.universe = universe
        self.weights = weights
        self._masks = [sum(1 << x for x in items) for items in self.sets]

    def __call__(self, s: ElementSet) -> float:
        covered = 0
        for i in s:
            covered |= self._masks[i]
        if self.weights is None:
            return float(covered.bit_count())
        return float(sum(self.weights[x] for x in iter_bits(covered)))

    def to_spec(self) -> dict:
        return {"family": self.family, "sets": self.sets, "weights": self.weights}


class CutFunction:
    """Weight of the edges with exactly one endpoint in S (non-monotone)."""

    family = "cut"

    def __init__(self, n: int, edges: Sequence[Sequence]):
        self.n = int(n)
        self.edges = []
        for e in edges:
            u, v = int(e[0]), int(e[1])
            w = float(e[2]) if len(e) > 2 else 1.0
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={self.n}")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if w < 0:
                raise ValueError(f"edge weight must be non-negative, got {w}")
            self.edges.append((min(u, v), max(u, v), w))
        self.edges.sort()

    def __call__(self, s: ElementSet) -> float:
        m = s.mask
        return float(sum(w for u, v, w in self.edges if (m >> u & 1) != (m >> v & 1)))

    def to_spec(self) -> dict:
        return {"family": self.family, "n": self.n,
                "edges": [[u, v, w] for u, v, w in self.edges]}


class PhiObjective:
    """f(S) = |S & V| where V is the first ``n_vertices`` elements."""

    family = "phi"

    def __init__(self, n_vertices: int):
        if n_vertices < 0:
            raise ValueError("n_vertices must be >= 0")
        self.n_vertices = int(n_vertices)
        self.n = 2 * self.n_vertices
        self._vmask = (1 << self.n_vertices) - 1

    def __call__(self, s: ElementSet) -> float:
        return float((s.mask & self._vmask).bit_count())

    def to_spec(self) -> dict:
        return {"family": self.family, "n_vertices": self.n_vertices}


class FacilityLocationFunction:
    """f(S) = sum over clients of the best benefit offered by a facility in S."""

    family = "facility_location"

    def __init__(self, benefits: Sequence[Sequence[float]]):
        self.benefits = [[float(b) for b in row] for row in benefits]
        widths = {len(row) for row in self.benefits}
        if len(widths) > 1:
            raise ValueError("benefit matrix rows have different lengths")
        for row in self.benefits:
            _nonneg(row, "benefits")
        self.n = widths.pop() if widths else 0

    def __call__(self, s: ElementSet) -> float:
        chosen = list(s)
        if not chosen:
            return 0.0
        return float(sum(max(row[j] for j in chosen) for row in self.benefits))

    def to_spec(self) -> dict:
        return {"family": self.family, "benefits": self.benefits}


FAMILIES = {
    cls.family: cls
    for cls in (ModularFunction, CoverageFunction, CutFunction, PhiObjective,
                FacilityLocationFunction)
}


def function_from_spec(spec: dict):
    """Build a function family instance from its tagged dictionary."""
    spec = dict(spec)
    try:
        family = spec.pop("family")
        cls = FAMILIES[family]
    except KeyError:
        raise ValueError(f"unknown or missing function family in {spec!r}") from None
    try:
        return cls(**spec)
    except TypeError as exc:
        raise ValueError(f"bad parameters for {family!r}: {exc}") from None


def evaluate(spec: dict, s: ElementSet) -> float:
    f = function_from_spec(spec)
    if f.n != s.n:
        raise ValueError(f"function has n={f.n}, set has n={s.n}")
    return f(s)
