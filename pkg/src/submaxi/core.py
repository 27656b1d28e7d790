"""Ground sets, element sets and counted oracles.

Element sets are bitmasks over the indices ``0..n-1`` of a ground set.  Python
integers are arbitrary width, so the same representation serves n = 4 in an
exhaustive loop and n = 10000 in a query-complexity run.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Iterator, Optional


class DomainError(ValueError):
    """A set function was evaluated outside its declared domain."""


class CapExceededError(RuntimeError):
    """An exponential-time routine refused an instance above its size cap."""


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class GroundSet:
    n: int
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"ground set size must be >= 0, got {self.n}")
        if self.labels is not None:
            object.__setattr__(self, "labels", tuple(self.labels))
            if len(self.labels) != self.n:
                raise ValueError(
                    f"expected {self.n} labels, got {len(self.labels)}")

    def label(self, i: int) -> str:
        if self.labels is None:
            return str(i)
        return self.labels[i]

    def index(self, label: str) -> int:
        if self.labels is None:
            return int(label)
        return self.labels.index(label)

    def empty(self) -> "ElementSet":
        return ElementSet(0, self.n)

    def full(self) -> "ElementSet":
        return ElementSet.full(self.n)

    def subset(self, items: Iterable) -> "ElementSet":
        """Build a set from indices or labels."""
        idx = [i if isinstance(i, int) else self.index(i) for i in items]
        return ElementSet.of(self.n, idx)

    def format(self, s: "ElementSet") -> str:
        return "{" + ",".join(self.label(i) for i in s) + "}"


@dataclass(frozen=True)
class ElementSet:
    """Immutable subset of ``{0, ..., n-1}`` stored as a bitmask."""

    mask: int
    n: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> self.n:
            raise ValueError(f"mask {self.mask:#x} has members outside 0..{self.n - 1}")

    @classmethod
    def of(cls, n: int, items: Iterable[int]) -> "ElementSet":
        mask = 0
        for i in items:
            if not 0 <= i < n:
                raise ValueError(f"element {i} out of range for n={n}")
            mask |= 1 << i
        return cls(mask, n)

    @classmethod
    def full(cls, n: int) -> "ElementSet":
        return cls((1 << n) - 1, n)

    def _check(self, other: "ElementSet"):
        if self.n != other.n:
            raise ValueError(f"ground set mismatch: n={self.n} vs n={other.n}")

    def __contains__(self, x: int) -> bool:
        return 0 <= x < self.n and bool(self.mask >> x & 1)

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.mask | other.mask, self.n)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.mask & other.mask, self.n)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.mask & ~other.mask, self.n)

    def __le__(self, other: "ElementSet") -> bool:
        self._check(other)
        return self.mask & ~other.mask == 0

    def __lt__(self, other: "ElementSet") -> bool:
        return self <= other and self.mask != other.mask

    def complement(self) -> "ElementSet":
        return ElementSet(((1 << self.n) - 1) & ~self.mask, self.n)

    def add(self, x: int) -> "ElementSet":
        if not 0 <= x < self.n:
            raise ValueError(f"element {x} out of range for n={self.n}")
        return ElementSet(self.mask | 1 << x, self.n)

    def remove(self, x: int) -> "ElementSet":
        if not 0 <= x < self.n:
            raise ValueError(f"element {x} out of range for n={self.n}")
        return ElementSet(self.mask & ~(1 << x), self.n)

    def sorted(self) -> tuple[int, ...]:
        return tuple(self)

    def __repr__(self) -> str:
        return f"ElementSet({{{', '.join(map(str, self))}}}, n={self.n})"


class _Counter:
    def __init__(self):
        self._lock = threading.Lock()
        self.value = 0

    def incr(self):
        with self._lock:
            self.value += 1


class ValueOracle:
    """Counted access to a set function ``f: 2^U -> R``.

    ``fn`` receives an :class:`ElementSet`.  ``domain`` is the set of elements
    algorithms may range over; it is the whole ground set unless the oracle was
    produced by :func:`restrict_to` or :func:`restrict_complement`.  With
    ``checked=True`` every value is validated against ``nonneg_declared`` and
    every argument against ``domain``.  Cache hits are not counted.
    """

    def __init__(self, fn: Callable[[ElementSet], float], n: int, *,
                 nonneg_declared: bool = True, cache: bool = False,
                 checked: bool = False, domain: Optional[ElementSet] = None):
        self.fn = fn
        self.n = n
        self.nonneg_declared = nonneg_declared
        self.checked = checked
        self.domain = ElementSet.full(n) if domain is None else domain
        self._counter = _Counter()
        self._cache: Optional[dict[int, float]] = {} if cache else None

    @property
    def cached(self) -> bool:
        return self._cache is not None

    @property
    def queries(self) -> int:
        return self._counter.value

    def reset(self):
        self._counter = _Counter()
        if self._cache is not None:
            self._cache = {}

    def _validate(self, s: ElementSet):
        if s.n != self.n:
            raise ValueError(f"ground set mismatch: oracle n={self.n}, set n={s.n}")
        if self.checked and not s <= self.domain:
            raise DomainError(f"{s!r} is outside the oracle domain {self.domain!r}")

    def __call__(self, s: ElementSet) -> float:
        self._validate(s)
        if self._cache is not None:
            hit = self._cache.get(s.mask)
            if hit is not None:
                return hit
        self._counter.incr()
        value = float(self.fn(s))
        if self.checked and self.nonneg_declared and value < 0:
            raise ValueError(f"declared non-negative function returned {value} on {s!r}")
        if self._cache is not None:
            self._cache[s.mask] = value
        return value

    def uncounted(self, s: ElementSet) -> float:
        """Evaluate without touching the counter (bookkeeping only)."""
        return float(self.fn(s))


class _DerivedOracle(ValueOracle):
    """Oracle whose evaluations are forwarded to, and counted on, a parent."""

    def __init__(self, parent: ValueOracle, fn: Callable[[ElementSet], float],
                 domain: ElementSet):
        self.parent = parent
        self.fn = fn
        self.n = parent.n
        self.nonneg_declared = parent.nonneg_declared
        self.checked = parent.checked
        self.domain = domain

    @property
    def cached(self) -> bool:
        return self.parent.cached

    @property
    def queries(self) -> int:
        return self.parent.queries

    def reset(self):
        self.parent.reset()

    def __call__(self, s: ElementSet) -> float:
        self._validate(s)
        return self.fn(s)

    def uncounted(self, s: ElementSet) -> float:
        return self.fn(s, counted=False)


def marginal_gain(f: ValueOracle, a: ElementSet, x: int) -> float:
    """``f(A + x) - f(A)``; two oracle queries unless cached."""
    if not 0 <= x < f.n:
        raise ValueError(f"element {x} out of range for n={f.n}")
    return f(a.add(x)) - f(a)


def restrict_to(f: ValueOracle, r: ElementSet) -> ValueOracle:
    """The function ``S -> f(S & R)``, with domain ``R``."""

    def fn(s, counted=True):
        return f(s & r) if counted else f.uncounted(s & r)

    return _DerivedOracle(f, fn, f.domain & r)


def restrict_complement(f: ValueOracle, a: ElementSet) -> ValueOracle:
    """``f`` on the ground set ``U \\ A``.

    Arguments meeting ``A`` are illegal; checked oracles raise
    :class:`DomainError`, unchecked ones evaluate ``f`` as is.
    """

    def fn(s, counted=True):
        return f(s) if counted else f.uncounted(s)

    return _DerivedOracle(f, fn, f.domain - a)


class SystemClass(str, Enum):
    MATROID = "matroid"
    P_EXTENDIBLE = "p-extendible"
    P_SYSTEM = "p-system"
    GENERAL = "general"


class MembershipOracle:
    """Counted membership predicate for an independence system.

    ``system`` is anything exposing ``n``, ``is_member(ElementSet)``,
    ``declared_class`` and ``declared_p``.
    """

    def __init__(self, system):
        self.system = system
        self.n = system.n
        self._counter = _Counter()

    @property
    def declared_class(self) -> SystemClass:
        return self.system.declared_class

    @property
    def declared_p(self) -> Optional[int]:
        return self.system.declared_p

    @property
    def queries(self) -> int:
        return self._counter.value

    def reset(self):
        self._counter = _Counter()

    def __call__(self, s: ElementSet) -> bool:
        if s.n != self.n:
            raise ValueError(f"ground set mismatch: system n={self.n}, set n={s.n}")
        self._counter.incr()
        return bool(self.system.is_member(s))

    contains = __call__


def as_membership(sys) -> MembershipOracle:
    return sys if isinstance(sys, MembershipOracle) else MembershipOracle(sys)


def as_value_oracle(f, n: Optional[int] = None) -> ValueOracle:
    if isinstance(f, ValueOracle):
        return f
    return ValueOracle(f, f.n if n is None else n)


def all_masks(domain: ElementSet) -> Iterator[int]:
    """Every submask of ``domain.mask``, in increasing numeric order."""
    bits = list(domain)
    for code in range(1 << len(bits)):
        mask = 0
        for j, b in enumerate(bits):
            if code >> j & 1:
                mask |= 1 << b
        yield mask


def check_cap(n: int, cap: int, what: str):
    if n > cap:
        raise CapExceededError(f"{what}: n={n} exceeds cap {cap}")
