"""Exhaustive classifiers for independence systems and set functions.

Everything here is exponential in ``n`` and guarded by a cap; these are test
oracles, not production paths.  Systems may be given as a system object, a
:class:`~submaxi.core.MembershipOracle`, or any predicate on
:class:`~submaxi.core.ElementSet` (pass ``n`` for the latter).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .core import ElementSet, check_cap, iter_bits

CHECK_CAP = 12


@dataclass(frozen=True)
class CheckResult:
    ok: bool
    witness: Optional[tuple] = None

    def __bool__(self) -> bool:
        return self.ok


def _size(sys, n):
    return sys.n if n is None else n


def _predicate(sys):
    if hasattr(sys, "is_member"):
        return sys.is_member
    return sys


def membership_table(sys, n: Optional[int] = None, cap: int = CHECK_CAP) -> bytearray:
    """``table[mask]`` is 1 iff the set with that bitmask is a member."""
    n = _size(sys, n)
    check_cap(n, cap, "membership table")
    pred = _predicate(sys)
    return bytearray(bool(pred(ElementSet(m, n))) for m in range(1 << n))


def _is_closed(table, n) -> bool:
    if not table[0]:
        return False
    for m in range(1 << n):
        if table[m]:
            for b in iter_bits(m):
                if not table[m ^ (1 << b)]:
                    return False
    return True


def _bases(table, n) -> list[int]:
    return [m for m in range(1 << n) if table[m]
            and all(m >> x & 1 or not table[m | 1 << x] for x in range(n))]


def check_independence_system(sys, n: Optional[int] = None, cap: int = CHECK_CAP) -> bool:
    """Nonempty and closed under subsets (checked on immediate subsets)."""
    n = _size(sys, n)
    return _is_closed(membership_table(sys, n, cap), n)


def matroid_violation(sys, n: Optional[int] = None, cap: int = CHECK_CAP):
    """Return ``(larger, smaller)`` violating augmentation, or ``None``.

    Uses the standard axiom: for members with ``|S1| > |S2|`` some
    ``x in S1 - S2`` has ``S2 + x`` independent.  Equivalently, for every
    member S the set of elements that cannot extend S (together with S) has
    rank ``|S|``.
    """
    n = _size(sys, n)
    table = membership_table(sys, n, cap)
    size = 1 << n
    best = [0] * size  # a largest member inside each mask
    for m in range(size):
        if table[m]:
            best[m] = m
        else:
            cands = [best[m ^ (1 << b)] for b in iter_bits(m)]
            best[m] = max(cands, key=int.bit_count)
    for s in range(size):
        if not table[s]:
            continue
        stuck = s
        for x in range(n):
            if not table[s | 1 << x]:
                stuck |= 1 << x
        big = best[stuck]
        if big.bit_count() > s.bit_count():
            return ElementSet(big, n), ElementSet(s, n)
    return None


def check_matroid(sys, n: Optional[int] = None, cap: int = CHECK_CAP) -> bool:
    n = _size(sys, n)
    if not check_independence_system(sys, n, cap):
        return False
    return matroid_violation(sys, n, cap) is None


def _required_p(table, n, cap_p):
    """Smallest p for which every (A, B, x) triple can be repaired."""
    worst = 0
    for b_mask in range(1 << n):
        if not table[b_mask]:
            continue
        bits = list(iter_bits(b_mask))
        k = len(bits)
        local = [0] * (1 << k)
        for c in range(1, 1 << k):
            low = c & -c
            local[c] = local[c ^ low] | 1 << bits[low.bit_length() - 1]
        full = (1 << k) - 1
        for x in range(n):
            xb = 1 << x
            if b_mask & xb or table[b_mask | xb]:
                # x in B needs no repair; B + x independent repairs with Y = {}.
                continue
            ok = [table[local[c] | xb] for c in range(1 << k)]
            # reach[c]: largest C' with c ⊆ C' ⊆ B and C' + x independent.
            # ok is downward closed, so reach[c] = -1 exactly when ok[c] fails.
            reach = [-1] * (1 << k)
            for c in range(full, -1, -1):
                if ok[c]:
                    r = c.bit_count()
                    for j in range(k):
                        if not c >> j & 1 and reach[c | 1 << j] > r:
                            r = reach[c | 1 << j]
                    reach[c] = r
            for c in range(full):
                if ok[c]:
                    need = k - reach[c]
                    if need > worst:
                        worst = need
                        if cap_p is not None and worst > cap_p:
                            return None
    return worst


def p_extendible_parameter(sys, cap_p: Optional[int] = None, n: Optional[int] = None,
                           cap: int = CHECK_CAP) -> Optional[int]:
    """Smallest p (at least 1) making ``sys`` p-extendible, or ``None`` if
    it exceeds ``cap_p``.

    For A ⊊ B in I and x ∉ A with A + x in I, some Y ⊆ B - A of size at most
    p must leave ``(B - Y) + x`` in I.  For fixed (B, x) the cheapest repair
    given A keeps the largest C with A ⊆ C ⊆ B and C + x in I, so
    ``|Y| = |B| - |C|``.
    """
    n = _size(sys, n)
    table = membership_table(sys, n, cap)
    if not _is_closed(table, n):
        raise ValueError("not an independence system")
    need = _required_p(table, n, cap_p)
    if need is None:
        return None
    p = max(need, 1)
    if cap_p is not None and p > cap_p:
        return None
    return p


def p_system_parameter(sys, n: Optional[int] = None, cap: int = CHECK_CAP) -> Fraction:
    """Largest basis size over smallest, exactly.  ``{∅}`` counts as 1."""
    sizes = basis_sizes(sys, n, cap)
    lo, hi = min(sizes), max(sizes)
    if lo == 0:
        return Fraction(1)
    return Fraction(hi, lo)


def basis_sizes(sys, n: Optional[int] = None, cap: int = CHECK_CAP) -> dict[int, int]:
    n = _size(sys, n)
    table = membership_table(sys, n, cap)
    return dict(sorted(Counter(m.bit_count() for m in _bases(table, n)).items()))


def bases(sys, n: Optional[int] = None, cap: int = CHECK_CAP) -> list[ElementSet]:
    n = _size(sys, n)
    table = membership_table(sys, n, cap)
    return [ElementSet(m, n) for m in _bases(table, n)]


def two_disjoint_bases(sys, n: Optional[int] = None, cap: int = CHECK_CAP):
    """A pair of distinct disjoint bases, or ``None``."""
    bs = bases(sys, n, cap)
    for i, b1 in enumerate(bs):
        for b2 in bs[i + 1:]:
            if not b1.mask & b2.mask:
                return b1, b2
    return None


def has_two_disjoint_bases(sys, n: Optional[int] = None, cap: int = CHECK_CAP) -> bool:
    return two_disjoint_bases(sys, n, cap) is not None


def _values(f, n, cap):
    check_cap(n, cap, "function table")
    return [f(ElementSet(m, n)) for m in range(1 << n)]


def _tol(*vals, rtol=1e-9):
    return rtol * max(1.0, *(abs(v) for v in vals))


def check_submodular(f, n: Optional[int] = None, cap: int = CHECK_CAP,
                     rtol: float = 1e-9) -> CheckResult:
    """Diminishing returns over every S ⊆ T and x ∉ T.

    Checked on the equivalent local form ``f(S+x) - f(S) >= f(S+x+y) -
    f(S+y)``; a failure yields the witness ``(S, T=S+y, x)``.
    """
    n = _size(f, n)
    v = _values(f, n, cap)
    for s in range(1 << n):
        free = [x for x in range(n) if not s >> x & 1]
        for i, x in enumerate(free):
            sx = s | 1 << x
            for y in free[i + 1:]:
                sy = s | 1 << y
                lhs = v[sx] - v[s]
                rhs = v[sx | 1 << y] - v[sy]
                if lhs < rhs - _tol(v[s], v[sx], v[sy], v[sx | sy], rtol=rtol):
                    return CheckResult(False, (ElementSet(s, n), ElementSet(sy, n), x))
    return CheckResult(True)


def check_monotone(f, n: Optional[int] = None, cap: int = CHECK_CAP,
                   rtol: float = 1e-9) -> CheckResult:
    """``f(S) <= f(S + x)`` for all S, x; witness ``(S, x)`` on failure."""
    n = _size(f, n)
    v = _values(f, n, cap)
    for s in range(1 << n):
        for x in range(n):
            if not s >> x & 1 and v[s | 1 << x] < v[s] - _tol(v[s], rtol=rtol):
                return CheckResult(False, (ElementSet(s, n), x))
    return CheckResult(True)


@dataclass(frozen=True)
class ClassificationReport:
    n: int
    is_independence_system: bool
    is_matroid: bool = False
    p_extendible: Optional[int] = None
    p_system: Optional[Fraction] = None
    basis_sizes: dict = field(default_factory=dict)
    has_two_disjoint_bases: bool = False

    def summary(self) -> str:
        if not self.is_independence_system:
            return "not an independence system"
        parts = [f"{_fmt_frac(self.p_system)}-system",
                 "matroid" if self.is_matroid else "not matroid"]
        if self.p_extendible is None:
            parts.append("not p-extendible within cap")
        else:
            parts.append(f"{self.p_extendible}-extendible")
        return ", ".join(parts)

    def to_text(self) -> str:
        lines = [
            f"summary: {self.summary()}",
            f"n: {self.n}",
            f"independence_system: {str(self.is_independence_system).lower()}",
        ]
        if self.is_independence_system:
            sizes = " ".join(f"{k}x{v}" for k, v in self.basis_sizes.items())
            pe = "none" if self.p_extendible is None else str(self.p_extendible)
            lines += [
                f"matroid: {str(self.is_matroid).lower()}",
                f"p_extendible: {pe}",
                f"p_system: {_fmt_frac(self.p_system)}",
                f"basis_sizes: {sizes}",
                f"two_disjoint_bases: {str(self.has_two_disjoint_bases).lower()}",
            ]
        return "\n".join(lines) + "\n"


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def classify(sys, n: Optional[int] = None, cap: int = CHECK_CAP,
             cap_p: Optional[int] = None) -> ClassificationReport:
    n = _size(sys, n)
    if not check_independence_system(sys, n, cap):
        return ClassificationReport(n, False)
    return ClassificationReport(
        n=n,
        is_independence_system=True,
        is_matroid=matroid_violation(sys, n, cap) is None,
        p_extendible=p_extendible_parameter(sys, cap_p, n, cap),
        p_system=p_system_parameter(sys, n, cap),
        basis_sizes=basis_sizes(sys, n, cap),
        has_two_disjoint_bases=has_two_disjoint_bases(sys, n, cap),
    )
