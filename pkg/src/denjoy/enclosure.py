"""Exact rational enclosures of real values.

An :class:`Enclosure` is a closed interval ``[lo, hi]`` with rational (or
infinite) endpoints known to contain a real number.  ``Exact`` enclosures
come from closed forms: they are points when the value is rational and
otherwise outward-rounded rational brackets of width below ``2**-90``
around a transcendental value such as ``pi``.  ``TailBound`` enclosures
carry the truncation depth and the rational bound on the unresolved tail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from mpmath import iv

iv.prec = 110

Number = Union[Fraction, float]  # float only for +-inf

INF = math.inf


@dataclass(frozen=True)
class Exact:
    def to_json(self):
        return {"kind": "exact"}


@dataclass(frozen=True)
class TailBound:
    depth: int
    bound: Number

    def to_json(self):
        return {"kind": "tail", "depth": self.depth, "bound": fmt(self.bound)}


EXACT = Exact()


@dataclass(frozen=True)
class Enclosure:
    lo: Number
    hi: Number
    justification: Union[Exact, TailBound] = EXACT

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty enclosure [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, value) -> "Enclosure":
        v = Fraction(value)
        return cls(v, v)

    @classmethod
    def tail(cls, lo, hi, depth: int, bound=None) -> "Enclosure":
        if bound is None:
            bound = hi - lo
        return cls(lo, hi, TailBound(depth, bound))

    @property
    def exact(self) -> bool:
        return isinstance(self.justification, Exact)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Number:
        return self.hi - self.lo

    @property
    def mag(self) -> Number:
        """Upper bound on the absolute value."""
        return max(abs(self.lo), abs(self.hi))

    def contains(self, value) -> bool:
        if isinstance(value, Enclosure):
            return self.lo <= value.lo and value.hi <= self.hi
        return self.lo <= value <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def _combine(self, other, lo, hi):
        if self.exact and other.exact:
            return Enclosure(lo, hi)
        depth = min(_depth(self), _depth(other))
        return Enclosure(lo, hi, TailBound(depth, hi - lo))

    def __add__(self, other):
        if not isinstance(other, Enclosure):
            other = Enclosure.point(other)
        return self._combine(other, self.lo + other.lo, self.hi + other.hi)

    __radd__ = __add__

    def __neg__(self):
        return Enclosure(-self.hi, -self.lo, self.justification)

    def __sub__(self, other):
        if not isinstance(other, Enclosure):
            other = Enclosure.point(other)
        return self + (-other)

    def scale(self, c) -> "Enclosure":
        c = Fraction(c)
        lo, hi = _mul(self.lo, c), _mul(self.hi, c)
        if c < 0:
            lo, hi = hi, lo
        return Enclosure(lo, hi, self.justification)

    def hull(self, other: "Enclosure") -> "Enclosure":
        return self._combine(other, min(self.lo, other.lo), max(self.hi, other.hi))

    def to_json(self):
        return {"lo": fmt(self.lo), "hi": fmt(self.hi), "justification": self.justification.to_json()}


def _depth(e: Enclosure) -> int:
    j = e.justification
    return j.depth if isinstance(j, TailBound) else 1 << 30


def _mul(x, c):
    if c == 0:
        return Fraction(0)
    return x * c


def fmt(value) -> str:
    """Serialise a rational (or infinity) as a ``"p/q"`` string."""
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        value = Fraction(value)
    value = Fraction(value)
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def parse_rational(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    value = Fraction(str(text).strip())
    return value


# --- transcendental brackets -------------------------------------------------


def _mpf_to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    v = Fraction(man) * (Fraction(2) ** exp)
    return -v if sign else v


def _bracket(x) -> tuple[Fraction, Fraction]:
    lo, hi = x._mpi_
    return _mpf_to_fraction(lo), _mpf_to_fraction(hi)


PI_LO, PI_HI = _bracket(iv.pi)
# coarse rational upper bound, handy for readable tolerances
PI_UPPER = Fraction(355, 113)


def pi_enclosure() -> Enclosure:
    return Enclosure(PI_LO, PI_HI)


_COS_TWELFTHS = {0: 1, 2: Fraction(1, 2), 3: 0, 4: Fraction(-1, 2), 6: -1, 8: Fraction(-1, 2), 9: 0, 10: Fraction(1, 2)}


def cos2pi(q: Fraction) -> Enclosure:
    """Enclosure of ``cos(2*pi*q)`` for rational ``q``; a point when rational."""
    q = Fraction(q) % 1
    t = q * 12
    if t.denominator == 1 and int(t) in _COS_TWELFTHS:
        return Enclosure.point(_COS_TWELFTHS[int(t)])
    x = iv.cos(2 * iv.pi * iv.mpf(q.numerator) / q.denominator)
    lo, hi = _bracket(x)
    return Enclosure(max(lo, Fraction(-1)), min(hi, Fraction(1)))


def sin2pi(q: Fraction) -> Enclosure:
    return cos2pi(Fraction(q) - Fraction(1, 4))


def mul(a: Enclosure, b: Enclosure) -> Enclosure:
    """Product of two finite enclosures."""
    prods = [a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi]
    return a._combine(b, min(prods), max(prods))
