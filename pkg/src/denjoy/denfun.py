"""Lazy trees for Denjoy-integrable functions of a prescribed rank.

``build_rank(alpha, host, r)`` returns a :class:`ConstructedFunction` whose
indefinite integral ``F`` vanishes at both ends of ``host``, stays in
``[0, r]`` and reaches ``r``.  Three node kinds occur:

* ``Base`` (rank 0): one sine hump ``f = A sin(2 pi (x-a)/L)`` with
  ``A = r pi / L``, so ``F = (r/2)(1 - cos(2 pi (x-a)/L))``.
* ``Successor`` (rank beta+1): children of rank beta on the intervals of a
  double Cantor grid.  Gap ``n`` of the outer Cantor set carries its own
  Cantor set whose gap ``m`` holds a child with oscillation
  ``2 r sched(n, m)``.
* ``Limit``: children on dyadic pieces accumulating at both ends, piece
  ``n`` having oscillation ``r / max(n, 1)`` and a rank drawn from a
  bijective enumeration of the ordinals below ``alpha``.

Evaluation is budgeted by ``depth``.  At depth ``d`` a successor node
resolves outer gaps ``n <= d + 1`` and, inside those, children
``m <= 2**n + d + 1``; a limit node resolves pieces ``n < 2**(d + 1)``.
Children are evaluated with the same budget: ranks strictly decrease along
the tree, so recursion always terminates.  Anything unresolved is replaced
by a bound taken from the oscillation schedule.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from denjoy import _cantor
from denjoy.closedset import IntervalQ
from denjoy.enclosure import (
    EXACT,
    INF,
    PI_HI,
    Enclosure,
    TailBound,
    cos2pi,
    fmt,
    mul,
    parse_rational,
    pi_enclosure,
    sin2pi,
)
from denjoy.ordinal import (
    Kind,
    Ordinal,
    as_ordinal,
    classify,
    enumerate_below,
    infinite_fiber_map,
    unpair,
)

BASE, SUCCESSOR, LIMIT = "Base", "Successor", "Limit"

# --- schedule ---------------------------------------------------------------


def schedule(n: int, m: int) -> Fraction:
    """Relative oscillation of child ``m`` in gap ``n``; sums to 1 over ``m >= 1``."""
    if m < 1:
        raise ValueError("m starts at 1")
    if m < (1 << n):
        return Fraction(1, 1 << n)
    return Fraction(1, 1 << (n + m - (1 << n) + 1))


def schedule_partial_sum(n: int, M: int) -> Fraction:
    if M < 1:
        raise ValueError("M must be >= 1")
    P = 1 << n
    if M < P:
        return Fraction(M, P)
    return 1 - Fraction(1, P << (M - P + 1))


def resolved_gaps(depth: int) -> int:
    return depth + 1


def resolved_children(n: int, depth: int) -> int:
    return (1 << n) + depth + 1


def resolved_pieces(depth: int) -> int:
    # pieces 0 .. N-1 are resolved
    return 1 << (depth + 1)


# --- nodes -------------------------------------------------------------------


@dataclass(frozen=True)
class WeightProfile:
    osc: Fraction
    l1_lower: Fraction
    l1_upper: object  # Fraction or INF

    def to_json(self):
        return {"osc": fmt(self.osc), "l1_lower": fmt(self.l1_lower), "l1_upper": fmt(self.l1_upper)}


class ConstructedFunction:
    __slots__ = ("node_kind", "interval", "rank_label", "target_osc", "profile", "_pred")

    def __init__(self, rank: Ordinal, interval: IntervalQ, r: Fraction):
        cls = classify(rank)
        self.rank_label = rank
        self.interval = interval
        self.target_osc = r
        self._pred = cls.pred
        if cls.kind is Kind.ZERO:
            self.node_kind = BASE
            self.profile = WeightProfile(r, 2 * r, 2 * r)
        else:
            self.node_kind = SUCCESSOR if cls.kind is Kind.SUCCESSOR else LIMIT
            # F climbs 0 -> r -> 0, so the variation is at least 2r; the
            # children's L1 lower bounds sum divergently
            self.profile = WeightProfile(r, 2 * r, INF)

    def __repr__(self):
        return f"ConstructedFunction({self.node_kind}, rank={self.rank_label}, {self.interval}, r={fmt(self.target_osc)})"

    @property
    def a(self) -> Fraction:
        return self.interval.lo

    @property
    def b(self) -> Fraction:
        return self.interval.hi

    # base data

    @property
    def amplitude_over_pi(self) -> Fraction:
        return self.target_osc / self.interval.length

    def amplitude_upper(self):
        """Rational upper bound on sup |f|; infinite above rank 0."""
        if self.node_kind == BASE:
            return self.amplitude_over_pi * PI_HI
        return INF

    # successor data

    def gap_osc(self, n: int) -> Fraction:
        """omega(F_n) over outer gap ``n``: the largest child oscillation there."""
        return 2 * self.target_osc / (1 << n)

    def child_osc(self, n: int, m: int) -> Fraction:
        return 2 * self.target_osc * schedule(n, m)

    def gap(self, n: int) -> IntervalQ:
        return _cantor.gap_interval(self.interval, n)

    def child_interval(self, n: int, m: int) -> IntervalQ:
        return _cantor.gap_interval(self.gap(n), m)

    def successor_child(self, n: int, m: int) -> "ConstructedFunction":
        if self.node_kind != SUCCESSOR:
            raise TypeError("not a successor node")
        return build_rank(self._pred, self.child_interval(n, m), self.child_osc(n, m))

    def outer_weights(self) -> _cantor.Weights:
        r2 = 2 * self.target_osc
        return _cantor.Weights(lambda n: r2 / (1 << n), lambda i: 2 * r2 / (1 << i))

    def inner_weights(self, n: int) -> _cantor.Weights:
        r2 = 2 * self.target_osc

        def tail_from(i):
            return r2 * (1 - schedule_partial_sum(n, i - 1)) if i > 1 else r2

        return _cantor.Weights(lambda m: r2 * schedule(n, m), tail_from)

    def gap_amplitude_upper(self, n: int):
        """Upper bound on sup |f| over outer gap ``n``."""
        if not self._pred.is_zero():
            return INF
        best = Fraction(0)
        for m in {max(1, (1 << n) - 1), 1 << n}:
            length = self.child_interval(n, m).length
            best = max(best, self.child_osc(n, m) * PI_HI / length)
        return best

    # limit data

    @property
    def w(self) -> Fraction:
        return self.interval.mid

    def piece_osc(self, n: int) -> Fraction:
        return self.target_osc / max(n, 1)

    def piece_rank(self, n: int) -> Ordinal:
        return enumerate_below(self.rank_label, infinite_fiber_map(n))

    def piece(self, side: str, n: int) -> IntervalQ:
        a, b, w = self.a, self.b, self.w
        if side == "L":
            return IntervalQ(a + (w - a) / (1 << (n + 1)), a + (w - a) / (1 << n))
        return IntervalQ(b - (b - w) / (1 << n), b - (b - w) / (1 << (n + 1)))

    def limit_child(self, side: str, n: int) -> "ConstructedFunction":
        if self.node_kind != LIMIT:
            raise TypeError("not a limit node")
        return build_rank(self.piece_rank(n), self.piece(side, n), self.piece_osc(n))

    # generic

    def children(self) -> Iterator[tuple[IntervalQ, "ConstructedFunction"]]:
        """All children, lazily; successor children in diagonal order of ``(n, m)``."""
        k = 0
        while self.node_kind != BASE:
            if self.node_kind == SUCCESSOR:
                i, j = unpair(k)
                c = self.successor_child(i + 1, j + 1)
                yield c.interval, c
            else:
                for side in ("L", "R"):
                    c = self.limit_child(side, k)
                    yield c.interval, c
            k += 1

    def peak(self) -> Fraction:
        """A point where F attains its maximum ``r``."""
        node = self
        while node.node_kind != BASE:
            node = node.successor_child(1, 1) if node.node_kind == SUCCESSOR else node.limit_child("L", 0)
        return node.interval.mid

    def descriptor(self) -> dict:
        d = {
            "rank": str(self.rank_label),
            "interval": self.interval.to_json(),
            "r": fmt(self.target_osc),
            "kind": self.node_kind,
        }
        if self.node_kind == BASE:
            d["amplitude_over_pi"] = fmt(self.amplitude_over_pi)
        return d


@functools.lru_cache(maxsize=None)
def _build(rank: Ordinal, lo: Fraction, hi: Fraction, r: Fraction) -> ConstructedFunction:
    return ConstructedFunction(rank, IntervalQ(lo, hi), r)


def build_rank(alpha, host, r) -> ConstructedFunction:
    alpha = as_ordinal(alpha)
    if not isinstance(host, IntervalQ):
        host = IntervalQ(*host)
    r = parse_rational(r)
    if r <= 0:
        raise ValueError("r must be positive")
    if host.length <= 0:
        raise ValueError("host interval must be nondegenerate")
    return _build(alpha, host.lo, host.hi, r)


def from_descriptor(d: dict) -> ConstructedFunction:
    return build_rank(d["rank"], IntervalQ(*d["interval"]), d["r"])


# --- pointwise evaluation ----------------------------------------------------


def _piece_index(s: Fraction) -> int:
    # n with s in (2^-(n+1), 2^-n], for 0 < s <= 1
    return (s.denominator // s.numerator).bit_length() - 1


def _limit_locate(fun: ConstructedFunction, x: Fraction):
    """``None`` at a piece endpoint (F = 0 there), else ``(side, n)``."""
    if x == fun.a or x == fun.b or x == fun.w:
        return None
    if x < fun.w:
        side, s = "L", (x - fun.a) / (fun.w - fun.a)
    else:
        side, s = "R", (fun.b - x) / (fun.b - fun.w)
    n = _piece_index(s)
    if s == Fraction(1, 1 << n):
        return None
    return side, n


def _succ_locate(fun: ConstructedFunction, x: Fraction):
    """``("zero",)``, ``("unknown", bound)``, ``("gap", n)`` or ``("child", n, m)``."""
    where, n = _cantor.locate(fun.interval, x)
    if where == "C":
        return ("zero",)
    if where == "unknown":
        return ("unknown", None)
    where, m = _cantor.locate(fun.gap(n), x)
    if where == "C":
        return ("zero",)
    if where == "unknown":
        return ("gap", n)
    return ("child", n, m)


def _check_in(fun, x):
    x = parse_rational(x)
    if not fun.interval.contains(x):
        raise ValueError(f"{fmt(x)} outside {fun.interval}")
    return x


def eval_F(fun: ConstructedFunction, x, depth: int) -> Enclosure:
    x = _check_in(fun, x)
    while True:
        if x == fun.a or x == fun.b:
            return Enclosure.point(0)
        if fun.node_kind == BASE:
            t = (x - fun.a) / fun.interval.length
            return (Enclosure.point(1) - cos2pi(t)).scale(fun.target_osc / 2)
        if fun.node_kind == SUCCESSOR:
            loc = _succ_locate(fun, x)
            if loc[0] == "zero":
                return Enclosure.point(0)
            if loc[0] == "unknown":
                return Enclosure.tail(0, fun.target_osc, depth)
            n = loc[1]
            if n > resolved_gaps(depth) or loc[0] == "gap":
                return Enclosure.tail(0, fun.gap_osc(n), depth)
            m = loc[2]
            if m > resolved_children(n, depth):
                return Enclosure.tail(0, fun.child_osc(n, m), depth)
            fun = fun.successor_child(n, m)
            continue
        loc = _limit_locate(fun, x)
        if loc is None:
            return Enclosure.point(0)
        side, n = loc
        if n >= resolved_pieces(depth):
            return Enclosure.tail(0, fun.piece_osc(n), depth)
        fun = fun.limit_child(side, n)


def _sym(amp, depth) -> Enclosure:
    return Enclosure(-amp, amp, TailBound(depth, 2 * amp))


def eval_f(fun: ConstructedFunction, x, depth: int) -> Enclosure:
    x = _check_in(fun, x)
    while True:
        if x == fun.a or x == fun.b:
            return Enclosure.point(0)
        if fun.node_kind == BASE:
            t = (x - fun.a) / fun.interval.length
            return mul(pi_enclosure().scale(fun.amplitude_over_pi), sin2pi(t))
        if fun.node_kind == SUCCESSOR:
            loc = _succ_locate(fun, x)
            if loc[0] == "zero":
                return Enclosure.point(0)
            if loc[0] == "unknown":
                return _sym(INF, depth)
            n = loc[1]
            if n > resolved_gaps(depth) or loc[0] == "gap":
                return _sym(fun.gap_amplitude_upper(n), depth)
            m = loc[2]
            child = fun.successor_child(n, m)
            if m > resolved_children(n, depth):
                return _sym(child.amplitude_upper(), depth)
            fun = child
            continue
        loc = _limit_locate(fun, x)
        if loc is None:
            return Enclosure.point(0)
        child = fun.limit_child(*loc)
        if loc[1] >= resolved_pieces(depth):
            return _sym(child.amplitude_upper(), depth)
        fun = child


# --- ranges, oscillation, integrals ------------------------------------------


def _limit_sides(fun: ConstructedFunction, J: IntervalQ):
    """Per side, the range of piece indices whose interiors meet ``J``.

    Yields ``(side, top, bottom, s_lo, s_hi)`` where ``bottom`` is ``None``
    when ``J`` reaches the accumulation point at that side.
    """
    a, b, w = fun.a, fun.b, fun.w
    for side in ("L", "R"):
        if side == "L":
            p, q = max(J.lo, a), min(J.hi, w)
            if p >= q:
                continue
            s_lo, s_hi = (p - a) / (w - a), (q - a) / (w - a)
        else:
            p, q = max(J.lo, w), min(J.hi, b)
            if p >= q:
                continue
            s_lo, s_hi = (b - q) / (b - w), (b - p) / (b - w)
        top = _piece_index(s_hi)
        if s_lo == 0:
            bottom = None
        else:
            k = _piece_index(s_lo)
            bottom = k - 1 if s_lo == Fraction(1, 1 << k) else k
        yield side, top, bottom, s_lo, s_hi


def _piece_inside(n, s_lo, s_hi) -> bool:
    return s_lo <= Fraction(1, 1 << (n + 1)) and Fraction(1, 1 << n) <= s_hi


def _range(fun: ConstructedFunction, J: IntervalQ, depth: int):
    """``(upper bound on max F, lower bound on min F, witness point)`` over ``J``.

    The witness is a point whose F value is the largest bound found among
    pieces wholly inside ``J`` (or ``None``); it feeds the lower bound of the
    oscillation.
    """
    if J.length == 0:
        e = eval_F(fun, J.lo, depth)
        return e.hi, e.lo, J.lo
    if fun.node_kind == BASE:
        ends = [(eval_F(fun, J.lo, depth), J.lo), (eval_F(fun, J.hi, depth), J.hi)]
        lo = min(e.lo for e, _ in ends)
        if J.contains(fun.interval.mid):
            return fun.target_osc, lo, fun.interval.mid
        e, x = max(ends, key=lambda t: t[0].hi)
        return e.hi, lo, x

    best = [Fraction(0), None]

    def offer(bound, node=None):
        if bound > best[0] or (bound == best[0] and best[1] is None and node is not None):
            best[0] = bound
            best[1] = node.peak() if node is not None else None

    if fun.node_kind == SUCCESSOR:
        # J strictly inside one resolved child: F there is the child's F
        loc = _succ_locate(fun, J.mid)
        if loc[0] == "child" and loc[1] <= resolved_gaps(depth) and loc[2] <= resolved_children(loc[1], depth):
            child = fun.successor_child(loc[1], loc[2])
            if child.interval.contains_interval(J):
                return _range(child, J, depth)
        n_max = resolved_gaps(depth)
        for item in _cantor.cover(fun.interval, J, n_max):
            n = item.index
            if item.kind != "gap":
                offer(fun.gap_osc(n), fun.successor_child(n, 1) if item.kind == "block" and n <= n_max else None)
                continue
            if J.contains_interval(item.interval):
                offer(fun.gap_osc(n), fun.successor_child(n, 1))
                continue
            m_max = resolved_children(n, depth)
            for sub in _cantor.cover(item.interval, J, m_max):
                m = sub.index
                if sub.kind != "gap":
                    offer(fun.child_osc(n, m), fun.successor_child(n, m) if sub.kind == "block" and m <= m_max else None)
                    continue
                child = fun.successor_child(n, m)
                if J.contains_interval(sub.interval):
                    offer(child.target_osc, child)
                else:
                    hi, _, x = _range(child, J.clip(sub.interval), depth)
                    if hi > best[0]:
                        best[0], best[1] = hi, x
        return best[0], Fraction(0), best[1]

    N = resolved_pieces(depth)
    loc = _limit_locate(fun, J.mid)
    if loc is not None and loc[1] < N:
        child = fun.limit_child(*loc)
        if child.interval.contains_interval(J):
            return _range(child, J, depth)
    for side, top, bottom, s_lo, s_hi in _limit_sides(fun, J):
        boundary = [top] + ([bottom] if bottom is not None and bottom != top else [])
        for n in boundary:
            if _piece_inside(n, s_lo, s_hi):
                continue
            child = fun.limit_child(side, n)
            if n < N:
                hi, _, x = _range(child, J.clip(child.interval), depth)
                if hi > best[0]:
                    best[0], best[1] = hi, x
            else:
                offer(child.target_osc)
        first = top if _piece_inside(top, s_lo, s_hi) else top + 1
        if bottom is None or first <= bottom:
            child = fun.limit_child(side, first)
            offer(child.target_osc, child if first < N else None)
    return best[0], Fraction(0), best[1]


def oscillation(fun: ConstructedFunction, J: IntervalQ, depth: int) -> Enclosure:
    if not fun.interval.contains_interval(J):
        raise ValueError(f"{J} not inside {fun.interval}")
    upper, min_lo, witness = _range(fun, J, depth)
    upper = upper - min_lo
    samples = [J.lo, J.hi] + ([witness] if witness is not None else [])
    vals = [eval_F(fun, x, depth) for x in samples]
    lower = max(Fraction(0), max(v.lo for v in vals) - min(v.hi for v in vals))
    lower = min(lower, upper)
    if lower == upper and all(v.exact for v in vals):
        return Enclosure.point(upper)
    return Enclosure(lower, upper, TailBound(depth, upper - lower))


def _clamp(e: Enclosure, bound) -> Enclosure:
    lo, hi = max(e.lo, -bound), min(e.hi, bound)
    if lo == e.lo and hi == e.hi:
        return e
    return Enclosure(lo, hi, e.justification if isinstance(e.justification, TailBound) else EXACT)


def integral(fun: ConstructedFunction, J: IntervalQ, depth: int) -> Enclosure:
    """Enclosure of the integral of f over ``J``, summed piece by piece.

    Resolved pieces lying wholly inside ``J`` contribute 0; resolved pieces
    cut by ``J`` recurse; every unresolved piece (or group of pieces whose
    F is confined to ``[0, w]``) contributes ``[-w, w]``.
    """
    if not fun.interval.contains_interval(J):
        raise ValueError(f"{J} not inside {fun.interval}")
    if J.length == 0:
        return Enclosure.point(0)
    if fun.node_kind == BASE:
        return eval_F(fun, J.hi, depth) - eval_F(fun, J.lo, depth)
    total = Enclosure.point(0)
    tail = Fraction(0)
    if fun.node_kind == SUCCESSOR:
        n_max = resolved_gaps(depth)
        outer = fun.outer_weights()
        for item in _cantor.cover(fun.interval, J, n_max):
            if item.kind != "gap":
                tail += _cantor.block_tail(item.level, item.pos, n_max, outer, n_max + 64)
                for n in _cantor.gaps_in_block(item.level, item.pos, n_max):
                    tail += _gap_tail(fun, n, depth)
                continue
            n = item.index
            if J.contains_interval(item.interval):
                tail += _gap_tail(fun, n, depth)
                continue
            m_max = resolved_children(n, depth)
            inner = fun.inner_weights(n)
            part = Enclosure.point(0)
            part_tail = Fraction(0)
            for sub in _cantor.cover(item.interval, J, m_max):
                if sub.kind != "gap":
                    part_tail += _cantor.block_tail(sub.level, sub.pos, m_max, inner, m_max + 64)
                    continue
                if J.contains_interval(sub.interval):
                    continue
                child = fun.successor_child(n, sub.index)
                part = part + _clamp(integral(child, J.clip(sub.interval), depth), child.target_osc)
            if part_tail:
                part = part + Enclosure.tail(-part_tail, part_tail, depth)
            total = total + _clamp(part, fun.gap_osc(n))
    else:
        N = resolved_pieces(depth)
        for side, top, bottom, s_lo, s_hi in _limit_sides(fun, J):
            boundary = {top} | ({bottom} if bottom is not None else set())
            for n in sorted(boundary):
                if n >= N or _piece_inside(n, s_lo, s_hi):
                    continue
                child = fun.limit_child(side, n)
                total = total + _clamp(integral(child, J.clip(child.interval), depth), child.target_osc)
            if bottom is None or bottom >= N:
                # F is confined to [0, r / max(k, 1)] beyond the resolved pieces
                tail += fun.piece_osc(max(top, N))
    if tail:
        total = total + Enclosure.tail(-tail, tail, depth)
    return total


def _gap_tail(fun: ConstructedFunction, n: int, depth: int) -> Fraction:
    # a whole resolved gap: completed children give 0, the rest is the schedule tail
    m_max = resolved_children(n, depth)
    t = 2 * fun.target_osc * (1 - schedule_partial_sum(n, m_max))
    return min(t, fun.gap_osc(n))
