"""Closed subsets of a rational interval, presented by their gaps.

A :class:`SkeletonSet` is ``host`` minus a union of disjoint open rational
intervals.  The gaps are produced lazily: ``gaps(depth)`` returns the finite
list found by depth ``depth``, and the list only grows as the depth grows.
Membership questions therefore reduce to inspecting finitely many gaps.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

from denjoy.enclosure import fmt, parse_rational


@dataclass(frozen=True, order=True)
class IntervalQ:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", parse_rational(self.lo))
        object.__setattr__(self, "hi", parse_rational(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval with lo > hi: [{self.lo}, {self.hi}]")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def mid(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x) -> bool:
        return self.lo <= x <= self.hi

    def contains_interval(self, other: "IntervalQ") -> bool:
        return self.lo <= other.lo and other.hi <= self.hi

    def overlaps(self, other: "IntervalQ") -> bool:
        """True when the interiors meet."""
        return self.lo < other.hi and other.lo < self.hi

    def meets(self, other: "IntervalQ") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def clip(self, other: "IntervalQ") -> Optional["IntervalQ"]:
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        return IntervalQ(lo, hi) if lo <= hi else None

    def affine(self, t) -> Fraction:
        """Point at relative position ``t`` in ``[0, 1]``."""
        return self.lo + self.length * t

    def to_json(self):
        return [fmt(self.lo), fmt(self.hi)]

    def __str__(self):
        return f"[{fmt(self.lo)}, {fmt(self.hi)}]"


GapSource = Callable[[int], Sequence[IntervalQ]]


@dataclass(frozen=True, eq=False)
class SkeletonSet:
    """``host`` minus the open gaps enumerated by ``gap_source``.

    ``tail`` optionally bounds the total length of gaps not yet found at a
    given depth.  ``empty`` flags a set with no interior points, as produced
    by intersecting with an interval that sits inside a gap.
    """

    host: IntervalQ
    gap_source: GapSource
    exhaustive_at: Optional[int] = None
    tail: Optional[Callable[[int], Fraction]] = None
    empty: bool = False
    label: str = "set"
    _cache: dict = field(default_factory=dict, repr=False)

    def gaps(self, depth: int) -> list[IntervalQ]:
        if depth < 0:
            raise ValueError("depth must be >= 0")
        if self.exhaustive_at is not None:
            depth = min(depth, self.exhaustive_at)
        if depth not in self._cache:
            found = sorted(self.gap_source(depth))
            self._cache[depth] = tuple(found)
        return list(self._cache[depth])

    def in_gap(self, x, depth: int) -> Optional[IntervalQ]:
        for g in self.gaps(depth):
            if g.lo < x < g.hi:
                return g
        return None

    def may_contain(self, x, depth: int) -> bool:
        """False only when ``x`` is certified outside the set at ``depth``."""
        return self.host.contains(x) and self.in_gap(x, depth) is None


def gaps(S: SkeletonSet, depth: int) -> list[IntervalQ]:
    return S.gaps(depth)


# --- constructors -----------------------------------------------------------


def full(host: IntervalQ) -> SkeletonSet:
    return SkeletonSet(host, lambda d: [], exhaustive_at=0, label="interval")


def finite_points(points: Sequence, host: Optional[IntervalQ] = None) -> SkeletonSet:
    pts = sorted({parse_rational(p) for p in points})
    if not pts:
        raise ValueError("need at least one point")
    if host is None:
        host = IntervalQ(pts[0], pts[-1])
    if pts[0] != host.lo or pts[-1] != host.hi:
        raise ValueError("a finite skeleton must contain both host endpoints")
    found = [IntervalQ(p, q) for p, q in zip(pts, pts[1:])]
    return SkeletonSet(host, lambda d: found, exhaustive_at=0, label="finite")


def cantor_gaps(host: IntervalQ, depth: int) -> list[tuple[int, int, IntervalQ]]:
    """Middle-thirds gaps up to ``depth`` as ``(level, index, gap)``.

    Gaps are indexed breadth first: level ``k`` holds indices
    ``2**(k-1) .. 2**k - 1`` from left to right.
    """
    out = []
    intervals = [host]
    for level in range(1, depth + 1):
        nxt = []
        for pos, iv_ in enumerate(intervals):
            third = iv_.length / 3
            out.append((level, (1 << (level - 1)) + pos, IntervalQ(iv_.lo + third, iv_.hi - third)))
            nxt.append(IntervalQ(iv_.lo, iv_.lo + third))
            nxt.append(IntervalQ(iv_.hi - third, iv_.hi))
        intervals = nxt
    return out


def cantor(host: IntervalQ) -> SkeletonSet:
    """Middle-thirds Cantor set on ``host``."""

    def source(d):
        return [g for _, _, g in cantor_gaps(host, d)]

    return SkeletonSet(
        host, source, tail=lambda d: host.length * Fraction(2, 3) ** d, label="cantor"
    )


def from_gaps(host: IntervalQ, source: GapSource, label: str = "set", **kw) -> SkeletonSet:
    return SkeletonSet(host, source, label=label, **kw)


# --- operations -------------------------------------------------------------


def intersect_interval(S: SkeletonSet, J: IntervalQ, depth: int) -> SkeletonSet:
    """Skeleton of ``S`` intersected with ``J``; the new host is ``J``.

    Gaps of ``S`` are clipped to ``J``; clipped pieces of zero length are
    dropped.  When ``J`` lies in the closure of a single depth-``depth`` gap
    the result is flagged ``empty`` (no interior).
    """
    if not S.host.contains_interval(J):
        raise ValueError(f"{J} is not inside host {S.host}")
    if J == S.host:
        return S
    empty = S.empty or any(g.lo <= J.lo and J.hi <= g.hi for g in S.gaps(depth))

    def source(d):
        out = []
        for g in S.gaps(d):
            c = g.clip(J)
            if c is not None and c.lo < c.hi:
                out.append(c)
        return out

    return SkeletonSet(J, source, exhaustive_at=S.exhaustive_at, tail=S.tail, empty=empty, label=S.label)


def measure_bounds(S: SkeletonSet, depth: int) -> tuple[Fraction, Fraction]:
    upper = S.host.length - sum((g.length for g in S.gaps(depth)), Fraction(0))
    if S.empty:
        return Fraction(0), Fraction(0)
    if S.exhaustive_at is not None and S.exhaustive_at <= depth:
        return upper, upper
    if S.tail is not None:
        return max(Fraction(0), upper - S.tail(depth)), upper
    return Fraction(0), upper


@dataclass(frozen=True)
class PrePartition:
    intervals: tuple[IntervalQ, ...]

    def __post_init__(self):
        if not self.intervals:
            raise ValueError("a pre-partition is non-empty")

    @property
    def mu_sum(self) -> Fraction:
        return sum((J.length for J in self.intervals), Fraction(0))

    def to_json(self):
        return [J.to_json() for J in self.intervals]


def non_overlapping(J: IntervalQ, K: IntervalQ) -> bool:
    # sharing an endpoint is allowed
    return J.hi <= K.lo or K.hi <= J.lo


def validate_prepartition(P: PrePartition, K_points: Sequence, host: IntervalQ) -> bool:
    pts = {parse_rational(p) for p in K_points}
    ivs = list(P.intervals)
    for J in ivs:
        if not host.contains_interval(J) or J.lo not in pts or J.hi not in pts:
            return False
    return all(non_overlapping(ivs[i], ivs[j]) for i in range(len(ivs)) for j in range(i + 1, len(ivs)))


def gaps_cover(cover: Sequence[IntervalQ], inner: Sequence[IntervalQ]) -> bool:
    """Every open interval in ``inner`` lies inside a single open interval of ``cover``."""
    cs = sorted(cover, key=lambda c: (c.lo, -c.hi))
    # running maximum of right ends, so one bisection per inner interval suffices
    los, best = [], []
    for c in cs:
        los.append(c.lo)
        best.append(max(c.hi, best[-1]) if best else c.hi)
    for g in inner:
        i = bisect.bisect_right(los, g.lo)
        if i == 0 or best[i - 1] < g.hi:
            return False
    return True


def to_json(S: SkeletonSet, depth: int) -> dict:
    return {
        "host": S.host.to_json(),
        "depth": depth,
        "gaps": [g.to_json() for g in S.gaps(depth)],
        "empty": S.empty,
    }
