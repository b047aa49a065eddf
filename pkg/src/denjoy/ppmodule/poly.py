"""Polynomials over Q in the single indeterminate X."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable


class PolyQ:
    """Exact polynomial; ``coefficients[i]`` multiplies ``X^i``."""

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable = ()):
        cs = [Fraction(c) for c in coefficients]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coefficients = tuple(cs)

    @classmethod
    def const(cls, c) -> "PolyQ":
        return cls([c])

    @classmethod
    def x_power(cls, k: int, c=1) -> "PolyQ":
        return cls([0] * k + [c])

    # --- structure -----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coefficients

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def lead(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def valuation(self) -> int:
        """Largest k with X^k dividing self."""
        if self.is_zero():
            raise ValueError("zero polynomial has no X-adic valuation")
        for i, c in enumerate(self.coefficients):
            if c:
                return i
        raise AssertionError

    def monic(self) -> "PolyQ":
        return self if self.is_zero() else self.scale(1 / self.lead)

    def scale(self, c) -> "PolyQ":
        c = Fraction(c)
        return PolyQ(c * a for a in self.coefficients)

    def shift_down(self, k: int) -> "PolyQ":
        if any(self.coefficients[:k]):
            raise ValueError(f"X^{k} does not divide {self}")
        return PolyQ(self.coefficients[k:])

    def __call__(self, x):
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    # --- arithmetic ----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PolyQ.const(other)
        if not isinstance(other, PolyQ):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def __add__(self, other):
        other = _lift(other)
        n = max(len(self.coefficients), len(other.coefficients))
        a = self.coefficients + (0,) * (n - len(self.coefficients))
        b = other.coefficients + (0,) * (n - len(other.coefficients))
        return PolyQ(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return PolyQ(-c for c in self.coefficients)

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return ZERO_POLY
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    out[i + j] += a * b
        return PolyQ(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative exponent")
        out = ONE_POLY
        for _ in range(k):
            out = out * self
        return out

    def __divmod__(self, other):
        other = _lift(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coefficients)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coefficients) + 1)
        d, lc = other.degree, other.lead
        while len(rem) - 1 >= d and any(rem):
            shift = len(rem) - 1 - d
            c = rem[-1] / lc
            q[shift] = c
            for j, b in enumerate(other.coefficients):
                rem[shift + j] -= c * b
            while rem and rem[-1] == 0:
                rem.pop()
        return PolyQ(q), PolyQ(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    # --- text ----------------------------------------------------------------

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coefficients[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            num = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            if not mono:
                body = num
            elif a == 1:
                body = mono
            else:
                body = f"{num}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"PolyQ({str(self)!r})"


def _lift(p) -> PolyQ:
    if isinstance(p, PolyQ):
        return p
    return PolyQ.const(p)


ZERO_POLY = PolyQ()
ONE_POLY = PolyQ([1])
X = PolyQ([0, 1])


def strip_x_power(p: PolyQ) -> tuple[int, PolyQ]:
    """``(k, p0)`` with ``p = X^k * p0`` and ``X`` not dividing ``p0``."""
    if p.is_zero():
        raise ValueError("strip_x_power of the zero polynomial")
    k = p.valuation()
    return k, p.shift_down(k)
