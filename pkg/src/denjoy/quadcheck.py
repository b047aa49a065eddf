"""Certified checks of the integral identities behind the construction.

``verify_step`` tests the gluing over a Cantor set (integral of the whole
equals the sum over the gaps, the set itself contributes nothing, and the
gap oscillations are summable).  ``verify_improper`` tests the limit step
(integrals from the accumulating pieces to the midpoint shrink like
``r/n``).  ``ftc_spotcheck`` compares difference quotients of ``F`` with
``f`` at random points inside Base pieces.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from denjoy.closedset import IntervalQ, cantor, measure_bounds
from denjoy.denfun import (
    BASE,
    LIMIT,
    SUCCESSOR,
    ConstructedFunction,
    eval_f,
    eval_F,
    integral,
    oscillation,
    resolved_children,
    resolved_gaps,
    resolved_pieces,
)
from denjoy.enclosure import PI_UPPER, Enclosure, fmt, parse_rational


def integrate(fun: ConstructedFunction, J: IntervalQ, depth: int) -> Enclosure:
    return integral(fun, J, depth)


@dataclass
class Check:
    name: str
    value: object  # Enclosure or Fraction
    passed: bool
    tolerance: object = None

    def to_json(self):
        v = self.value.to_json() if isinstance(self.value, Enclosure) else fmt(self.value)
        return {
            "name": self.name,
            "value": v,
            "pass": self.passed,
            "tolerance": None if self.tolerance is None else fmt(self.tolerance),
        }


@dataclass
class VerificationReport:
    subject: dict
    depth: int
    checks: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name, value, passed, tolerance=None):
        self.checks.append(Check(name, value, bool(passed), tolerance))

    def to_json(self):
        return {
            "subject": self.subject,
            "depth": self.depth,
            "pass": self.passed,
            "checks": [c.to_json() for c in self.checks],
        }


def verify_step(node: ConstructedFunction, depth: int) -> VerificationReport:
    if node.node_kind != SUCCESSOR:
        raise TypeError(f"verify_step needs a successor node, got {node.node_kind}")
    rep = VerificationReport(node.descriptor(), depth)
    whole = integrate(node, node.interval, depth)
    rep.add("integral over host contains 0", whole, whole.contains(0), whole.width)

    # sum over the resolved children plus schedule tails for the rest
    total = Enclosure.point(0)
    r2 = 2 * node.target_osc
    n_max = resolved_gaps(depth)
    for n in range(1, n_max + 1):
        m_max = resolved_children(n, depth)
        for m in range(1, m_max + 1):
            child = node.successor_child(n, m)
            total = total + integrate(child, child.interval, depth)
        t = node.inner_weights(n).tail_from(m_max + 1)
        total = total + Enclosure.tail(-t, t, depth)
    t = node.outer_weights().tail_from(n_max + 1)
    total = total + Enclosure.tail(-t, t, depth)
    lo, hi = measure_bounds(cantor(node.interval), depth)
    # f vanishes on the Cantor set, so it contributes exactly 0 whatever its measure
    rep.add("Cantor set contributes 0 (f = 0 there)", Enclosure.point(0), lo == 0, hi)
    rep.add(
        "sum over gaps agrees with the whole",
        total,
        total.contains(0) and total.overlaps(whole),
        total.width,
    )

    osc_sum = Fraction(0)
    ok = True
    for n in range(1, max(8, n_max) + 1):
        up = oscillation(node, node.gap(n), depth).hi
        ok = ok and up <= node.gap_osc(n)
        osc_sum += up
    rep.add("gap oscillation bounds", osc_sum, ok)
    rep.add("partial gap oscillation sum <= 2r", osc_sum, osc_sum <= r2, r2)
    return rep


def verify_improper(node: ConstructedFunction, N: int) -> VerificationReport:
    if node.node_kind != LIMIT:
        raise TypeError(f"verify_improper needs a limit node, got {node.node_kind}")
    if N < 1:
        raise ValueError("N must be >= 1")
    depth = max(0, N.bit_length() - 1)
    rep = VerificationReport(node.descriptor(), depth)
    w = node.w
    for n in range(1, N + 1):
        bound = node.target_osc / n
        for side in ("L", "R"):
            child = node.limit_child(side, n)
            for x in (child.interval.lo if side == "L" else child.interval.hi, child.peak()):
                J = IntervalQ(x, w) if side == "L" else IntervalQ(w, x)
                e = integrate(node, J, depth)
                rep.add(f"|int over {J}| <= r/{n}", e, e.mag <= bound, bound)
    return rep


def _random_base_piece(fun: ConstructedFunction, depth: int, rng: random.Random) -> ConstructedFunction:
    while fun.node_kind != BASE:
        if fun.node_kind == SUCCESSOR:
            n = rng.randint(1, resolved_gaps(depth))
            m = rng.randint(1, resolved_children(n, depth))
            fun = fun.successor_child(n, m)
        else:
            fun = fun.limit_child(rng.choice("LR"), rng.randrange(resolved_pieces(depth)))
    return fun


def ftc_constant(piece: ConstructedFunction) -> Fraction:
    """``C`` with ``|(F(x+h)-F(x))/h - f(x)| <= C*h`` inside a Base piece.

    Taylor's theorem gives ``h/2 * sup|f'|`` and ``sup|f'| = 2 pi A / L``;
    ``C`` drops the 1/2 and uses the rational bound 355/113 for pi.
    """
    L = piece.interval.length
    A = piece.target_osc * PI_UPPER / L
    return A * 2 * PI_UPPER / L


def ftc_spotcheck(fun: ConstructedFunction, samples: int, h, depth: int, seed: int) -> VerificationReport:
    h = parse_rational(h)
    rng = random.Random(seed)
    rep = VerificationReport(fun.descriptor(), depth)
    got = tries = 0
    while got < samples and tries < 50 * samples:
        tries += 1
        piece = _random_base_piece(fun, depth, rng)
        J = piece.interval
        if J.length <= h:
            continue
        x = J.lo + (J.length - h) * Fraction(rng.randrange(1 << 20), 1 << 20)
        q = (eval_F(fun, x + h, depth) - eval_F(fun, x, depth)).scale(1 / h)
        res = (q - eval_f(fun, x, depth)).mag
        C = ftc_constant(piece)
        rep.add(f"x={fmt(x)}", res, res <= C * h, C * h)
        got += 1
    rep.add("samples drawn", Fraction(got), got == samples, Fraction(samples))
    return rep
