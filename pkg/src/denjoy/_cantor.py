"""Indexed middle-thirds geometry shared by the construction and its checks.

Gaps of the Cantor set on ``host`` are indexed breadth first starting at 1:
the gap at level ``k`` and position ``p`` (``0 <= p < 2**(k-1)``) has index
``2**(k-1) + p``.  The remaining interval at level ``l`` and position ``p``
contains exactly the gaps whose indices descend from ``2**l + p``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional

from denjoy.closedset import IntervalQ

LOCATE_CAP = 20000


def remaining_interval(host: IntervalQ, level: int, pos: int) -> IntervalQ:
    L = host.length
    lo = host.lo
    scale = L
    for t in range(level - 1, -1, -1):
        scale /= 3
        if (pos >> t) & 1:
            lo += 2 * scale
    return IntervalQ(lo, lo + scale)


def gap_interval(host: IntervalQ, index: int) -> IntervalQ:
    if index < 1:
        raise ValueError("gap indices start at 1")
    k = index.bit_length()
    R = remaining_interval(host, k - 1, index - (1 << (k - 1)))
    third = R.length / 3
    return IntervalQ(R.lo + third, R.hi - third)


def gap_level(index: int) -> int:
    return index.bit_length()


def locate(host: IntervalQ, x) -> tuple[str, Optional[int]]:
    """Exact position of rational ``x`` relative to the Cantor set on ``host``.

    Returns ``("C", None)`` for points of the Cantor set, ``("gap", n)`` for
    points of the open gap ``n``, or ``("unknown", None)`` if the ternary orbit
    was not decided within ``LOCATE_CAP`` steps.
    """
    s = (Fraction(x) - host.lo) / host.length
    if not 0 <= s <= 1:
        raise ValueError(f"{x} outside {host}")
    seen = set()
    level, pos = 0, 0
    third, two_thirds = Fraction(1, 3), Fraction(2, 3)
    for _ in range(LOCATE_CAP):
        if third < s < two_thirds:
            return "gap", (1 << level) + pos
        if s in seen:
            return "C", None
        seen.add(s)
        if s <= third:
            s, pos = 3 * s, 2 * pos
        else:
            s, pos = 3 * s - 2, 2 * pos + 1
        level += 1
    return "unknown", None


@dataclass(frozen=True)
class Weights:
    """Non-increasing weights on gap indices with closed-form tails."""

    weight: Callable[[int], Fraction]
    tail_from: Callable[[int], Fraction]  # sum of weight(j) for j >= i


def block_tail(level: int, pos: int, above: int, w: Weights, enum_limit: int) -> Fraction:
    """Upper bound on the weight of gaps inside a remaining interval with index > ``above``.

    Indices up to ``enum_limit`` are summed exactly; all larger indices are
    bounded by the closed-form tail.
    """
    total = Fraction(0)
    s = 0
    while True:
        base = ((1 << level) + pos) << s
        count = 1 << s
        if base > enum_limit:
            total += w.tail_from(base)
            return total
        for i in range(count):
            idx = base + i
            if idx > enum_limit:
                total += w.tail_from(idx)
                return total
            if idx > above:
                total += w.weight(idx)
        s += 1


@dataclass(frozen=True)
class CoverItem:
    kind: str  # "gap": resolved gap meeting J; "block": remaining interval inside J;
    #            "rest": remaining interval meeting J whose gaps are all unresolved
    index: int
    interval: IntervalQ
    level: int = 0
    pos: int = 0


def cover(host: IntervalQ, J: IntervalQ, resolved: int) -> Iterator[CoverItem]:
    """Walk the Cantor structure on ``host`` restricted to the interior of ``J``.

    Gaps with index ``<= resolved`` meeting ``J`` are reported individually.
    Remaining intervals inside ``J`` are reported as blocks; remaining
    intervals only partly inside ``J`` whose middle gap meets ``J`` but is
    unresolved are reported as ``rest``.  Points of ``J`` not covered by the reported items
    belong to the Cantor set.
    """
    stack = [(0, 0, host)]
    while stack:
        level, pos, R = stack.pop()
        if not R.overlaps(J):
            continue
        n0 = (1 << level) + pos
        if J.contains_interval(R):
            yield CoverItem("block", n0, R, level, pos)
            continue
        third = R.length / 3
        G = IntervalQ(R.lo + third, R.hi - third)
        if G.overlaps(J):
            if n0 > resolved:
                # n0 is the smallest index of any gap of R meeting J
                yield CoverItem("rest", n0, R, level, pos)
                continue
            yield CoverItem("gap", n0, G, level + 1, pos)
        stack.append((level + 1, 2 * pos + 1, IntervalQ(R.hi - third, R.hi)))
        stack.append((level + 1, 2 * pos, IntervalQ(R.lo, R.lo + third)))


def gaps_in_block(level: int, pos: int, upto: int) -> Iterator[int]:
    """Indices ``<= upto`` of the gaps inside the remaining interval ``(level, pos)``."""
    s = 0
    while True:
        base = ((1 << level) + pos) << s
        if base > upto:
            return
        for i in range(1 << s):
            if base + i > upto:
                return
            yield base + i
        s += 1
