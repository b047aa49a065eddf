"""Certificates for the derivative operators and the rank of constructed functions.

``D_f(S)`` keeps the points of ``S`` near which ``f`` is not integrable on
``S``; ``D_F(S)`` keeps the points near which ``F`` fails restricted absolute
continuity on ``S``; ``D_{f,F}`` is their union.  Nothing here decides these
sets for arbitrary functions.  For functions produced by ``build_rank`` the
tree structure supplies certificates: explicit lower bounds for divergent
``L1`` norms, explicit pre-partitions violating the AC* condition, and the
open intervals on which a Base piece certifies that both conditions hold.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from denjoy import _cantor
from denjoy.closedset import (
    IntervalQ,
    PrePartition,
    SkeletonSet,
    from_gaps,
)
from denjoy.denfun import (
    BASE,
    LIMIT,
    SUCCESSOR,
    ConstructedFunction,
    _limit_sides,
    _piece_inside,
    oscillation,
    resolved_children,
    resolved_gaps,
    resolved_pieces,
)
from denjoy.enclosure import fmt, parse_rational
from denjoy.ordinal import ONE, ZERO, Ordinal


class CertificateError(ValueError):
    pass


# --- local L1 ----------------------------------------------------------------


@dataclass(frozen=True)
class BoundedBy:
    bound: Fraction

    def to_json(self):
        return {"kind": "bounded", "bound": fmt(self.bound)}


@dataclass(frozen=True)
class DivergesAbove:
    """The integral of ``|f|`` over ``J`` exceeds ``lower``, and the same
    argument at larger depths yields unbounded ``lower``."""

    lower: Fraction

    def to_json(self):
        return {"kind": "diverges", "lower": fmt(self.lower)}


@dataclass(frozen=True)
class Inconclusive:
    def to_json(self):
        return {"kind": "inconclusive"}


L1Result = Union[BoundedBy, DivergesAbove, Inconclusive]


def _join(parts: Sequence[L1Result]) -> L1Result:
    div = [p.lower for p in parts if isinstance(p, DivergesAbove)]
    if div:
        return DivergesAbove(sum(div, Fraction(0)))
    if any(isinstance(p, Inconclusive) for p in parts):
        return Inconclusive()
    return BoundedBy(sum((p.bound for p in parts), Fraction(0)))


def _whole_gap_l1(fun: ConstructedFunction, n: int, depth: int) -> Fraction:
    # each child has L1 norm >= 2 * its oscillation, and the children of a gap
    # have oscillations summing to 2r; half of that is reached by the first
    # 2**n - 1 of them, which keeps the bound a small rational
    return 2 * fun.target_osc


def local_l1_certificate(fun: ConstructedFunction, J: IntervalQ, depth: int) -> L1Result:
    """Certify a bound on, or divergence of, the integral of ``|f|`` over ``J``."""
    if not fun.interval.contains_interval(J):
        raise ValueError(f"{J} not inside {fun.interval}")
    if J.length == 0:
        return BoundedBy(Fraction(0))
    if fun.node_kind == BASE:
        if J == fun.interval:
            return BoundedBy(2 * fun.target_osc)
        return BoundedBy(min(2 * fun.target_osc, fun.amplitude_upper() * J.length))

    if fun.node_kind == SUCCESSOR:
        n_max = resolved_gaps(depth)
        where, n = _cantor.locate(fun.interval, J.mid)
        if where == "gap" and fun.gap(n).contains_interval(J):
            return _inside_gap(fun, n, J, depth)
        if where == "unknown":
            return Inconclusive()
        # the interior of J meets the outer Cantor set: it contains whole gaps
        # of arbitrarily large index, each carrying L1 mass about 4r
        lower = Fraction(0)
        # count gaps down to depth + 1 levels below the first level whose
        # remaining intervals fit inside J
        level = 0
        while fun.interval.length / 3**level > J.length / 3:
            level += 1
        cap = max(n_max, 1 << (level + depth + 2))
        for item in _cantor.cover(fun.interval, J, cap):
            if item.kind == "block":
                for n in _cantor.gaps_in_block(item.level, item.pos, cap):
                    lower += _whole_gap_l1(fun, n, depth)
            elif item.kind == "gap" and J.contains_interval(item.interval):
                lower += _whole_gap_l1(fun, item.index, depth)
        return DivergesAbove(lower) if lower > 0 else Inconclusive()

    N = resolved_pieces(depth)
    parts = []
    for side, top, bottom, s_lo, s_hi in _limit_sides(fun, J):
        if bottom is None:
            lower = Fraction(0)
            for n in range(top, N):
                if _piece_inside(n, s_lo, s_hi):
                    lower += 2 * fun.piece_osc(n)
            parts.append(DivergesAbove(lower) if lower > 0 else Inconclusive())
            continue
        for n in range(top, bottom + 1):
            child = fun.limit_child(side, n)
            parts.append(local_l1_certificate(child, J.clip(child.interval), depth))
    return _join(parts)


def _inside_gap(fun: ConstructedFunction, n: int, J: IntervalQ, depth: int) -> L1Result:
    G = fun.gap(n)
    m_max = resolved_children(n, depth)
    base_children = fun.rank_label == ONE
    parts = []
    for item in _cantor.cover(G, J, m_max):
        if item.kind == "gap":
            child = fun.successor_child(n, item.index)
            parts.append(local_l1_certificate(child, J.clip(item.interval), depth))
            continue
        if base_children:
            w = fun.inner_weights(n)
            # exact weights for small indices, closed-form tail beyond
            limit = min(m_max, 1 << 12) + 64
            parts.append(BoundedBy(2 * _cantor.block_tail(item.level, item.pos, 0, w, limit)))
        elif item.kind == "block":
            # whole children of positive rank lie inside J
            child = fun.successor_child(n, item.index)
            parts.append(local_l1_certificate(child, child.interval, depth))
        else:
            parts.append(Inconclusive())
    return _join(parts)


# --- AC* falsifier -----------------------------------------------------------


@dataclass(frozen=True)
class ACStarWitness:
    prepartition: PrePartition
    mu_sum: Fraction
    osc_sum_lower: Fraction
    epsilon: Fraction
    delta: Fraction

    def to_json(self):
        return {
            "intervals": self.prepartition.to_json(),
            "mu_sum": fmt(self.mu_sum),
            "osc_sum_lower": fmt(self.osc_sum_lower),
            "epsilon": fmt(self.epsilon),
            "delta": fmt(self.delta),
        }


def acstar_falsifier(fun: ConstructedFunction, K_points, epsilon, delta, depth: int) -> Optional[ACStarWitness]:
    """Search for a pre-partition with edges in ``K_points`` showing ``F`` is not AC*.

    Candidates are the intervals between consecutive points.  They are taken
    greedily by certified oscillation per unit length while the total length
    stays below ``delta``.  Only certified lower bounds on oscillation are
    used, so a returned witness is genuine; ``None`` means none was found.
    """
    eps, dl = parse_rational(epsilon), parse_rational(delta)
    pts = sorted({parse_rational(p) for p in K_points})
    cands = []
    for p, q in zip(pts, pts[1:]):
        J = IntervalQ(p, q)
        if not fun.interval.contains_interval(J):
            raise ValueError(f"{J} not inside {fun.interval}")
        low = oscillation(fun, J, depth).lo
        if low > 0:
            cands.append((low / J.length, J, low))
    cands.sort(key=lambda t: (-t[0], t[1].lo))
    chosen, mu, osc = [], Fraction(0), Fraction(0)
    for _, J, low in cands:
        if osc >= eps:
            break
        if mu + J.length < dl:
            chosen.append(J)
            mu += J.length
            osc += low
    if osc < eps or not chosen:
        return None
    return ACStarWitness(PrePartition(tuple(sorted(chosen))), mu, osc, eps, dl)


def successor_witness_points(fun: ConstructedFunction, n: int, level: int) -> list[Fraction]:
    """Endpoints of the children of gap ``n`` at inner Cantor level ``level``."""
    pts = []
    for m in range(1 << (level - 1), 1 << level):
        J = fun.child_interval(n, m)
        pts += [J.lo, J.hi]
    return pts


# --- rank certificates -------------------------------------------------------


@dataclass
class RankCertificate:
    fun: ConstructedFunction
    certified_members: list  # (level, points, reason)
    vanish_level: Ordinal
    den_layer: Ordinal
    witnesses: list = field(default_factory=list)

    def members_at(self, level) -> set:
        out = set()
        for lv, pts, _ in self.certified_members:
            if lv == level:
                out.update(pts)
        return out

    def to_json(self):
        return {
            "subject": self.fun.descriptor(),
            "certified_members": [
                {"level": str(lv), "points": [fmt(p) for p in pts], "reason": why}
                for lv, pts, why in self.certified_members
            ],
            "vanish_level": str(self.vanish_level),
            "den_layer": str(self.den_layer),
            "witnesses": [w.to_json() for w in self.witnesses],
        }


MIN_PROBE = 3


def rank_certify(fun: ConstructedFunction, max_probe: int) -> RankCertificate:
    """Certificate that the derivation of ``fun`` vanishes at ``rank + 1``.

    Membership is lifted structurally: endpoints of children of rank ``beta``
    lie in the ``beta``-th derivative of their own interval, hence of the
    parent's; points approached by such endpoints lie there too because the
    derived sets are closed.  ``max_probe`` bounds how many children per
    index are listed as explicit evidence for each limit.
    """
    if max_probe < MIN_PROBE:
        raise CertificateError(
            f"max_probe={max_probe} cannot exhibit a converging sequence; need at least {MIN_PROBE}"
        )
    alpha = fun.rank_label
    a, b = fun.a, fun.b
    members = [(ZERO, [a, b], "host endpoints")]
    witnesses = []
    if fun.node_kind == SUCCESSOR:
        beta = fun._pred
        for n in range(1, max_probe + 1):
            ends = []
            for m in range(1, max_probe + 1):
                J = fun.child_interval(n, m)
                ends += [J.lo, J.hi]
            G = fun.gap(n)
            members.append((beta, ends, f"endpoints of rank-{beta} children in gap {n}"))
            members.append((beta, [G.lo, G.hi], f"limits of child endpoints in gap {n}"))
        members.append((beta, [a, b], "limits of gap endpoints"))
        members.append((alpha, [a, b], "gap oscillations near the endpoints are not summable"))
    elif fun.node_kind == LIMIT:
        for n in range(max_probe):
            gamma = fun.piece_rank(n)
            pieces = [fun.piece("L", n), fun.piece("R", n)]
            members.append((gamma, [p for J in pieces for p in (J.lo, J.hi)], f"endpoints of piece {n}"))
            members.append((gamma, [a, b], f"pieces of rank >= {gamma} accumulate at the endpoints"))
        members.append((alpha, [a, b], "intersection over all smaller levels"))
    if fun.node_kind == SUCCESSOR and fun.rank_label == ONE:
        # explicit AC* failure on the Cantor set: children at inner level 7 of gap 7
        pts = successor_witness_points(fun, 7, 7)
        wit = acstar_falsifier(fun, pts, fun.target_osc / 2, fun.interval.length / 729, 6)
        if wit is not None:
            witnesses.append(wit)
    return RankCertificate(fun, members, alpha + ONE, alpha, witnesses)


# --- one derivative step -----------------------------------------------------


def _nice_intervals(fun: ConstructedFunction, depth: int) -> list[IntervalQ]:
    """Open intervals on which ``f`` is integrable and ``F`` is AC*, certified at ``depth``."""
    if fun.node_kind == BASE:
        return [fun.interval]
    out = []
    if fun.node_kind == SUCCESSOR:
        for n in range(1, resolved_gaps(depth) + 1):
            if fun.rank_label == ONE:
                # gap n carries finitely many L1 units: f is integrable there
                out.append(fun.gap(n))
                continue
            for m in range(1, resolved_children(n, depth) + 1):
                out += _nice_intervals(fun.successor_child(n, m), depth)
    else:
        for n in range(resolved_pieces(depth)):
            for side in ("L", "R"):
                out += _nice_intervals(fun.limit_child(side, n), depth)
    return out


def _merge(intervals: Sequence[IntervalQ]) -> list[IntervalQ]:
    out: list[IntervalQ] = []
    for J in sorted(intervals):
        if out and J.lo < out[-1].hi:
            if J.hi > out[-1].hi:
                out[-1] = IntervalQ(out[-1].lo, J.hi)
        else:
            out.append(J)
    return out


@dataclass(frozen=True)
class Annotation:
    point: Fraction
    via: str  # "f" or "F"
    certificate: object

    def to_json(self):
        return {"point": fmt(self.point), "via": self.via, "certificate": self.certificate.to_json()}


def derivative_step(fun: ConstructedFunction, S: SkeletonSet, depth: int):
    """Over-approximate ``D_{f,F}(S)``; returns ``(skeleton, annotations)``.

    Certified-nice open intervals are removed from ``S``; what remains is a
    superset of the true derivative.  Host endpoints of ``fun`` that survive
    are annotated with a divergence certificate when one is found.
    """
    if not fun.interval.contains_interval(S.host):
        raise ValueError(f"{S.host} not inside {fun.interval}")
    host = S.host

    def source(d):
        removed = []
        for J in _nice_intervals(fun, d):
            c = J.clip(host)
            if c is not None and c.lo < c.hi:
                removed.append(c)
        return _merge(list(S.gaps(d)) + removed)

    out = from_gaps(host, source, label=f"D({S.label})")
    notes = []
    if not S.empty and fun.node_kind != BASE:
        h = fun.interval.length / 3 ** (depth + 1)
        for x, J in ((fun.a, IntervalQ(fun.a, fun.a + h)), (fun.b, IntervalQ(fun.b - h, fun.b))):
            if not host.contains(x) or out.in_gap(x, depth) is not None:
                continue
            cert = local_l1_certificate(fun, J, depth)
            if isinstance(cert, DivergesAbove):
                notes.append(Annotation(x, "f", cert))
    return out, notes
