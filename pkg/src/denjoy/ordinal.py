"""Countable ordinals below epsilon_0 in Cantor normal form.

An ordinal is a finite sum ``w^e1*c1 + w^e2*c2 + ...`` with strictly
decreasing exponents ``e1 > e2 > ...`` (themselves ordinals) and positive
integer coefficients.  Only addition is provided beyond comparison; general
ordinal multiplication and exponentiation are not needed here.

Textual syntax (used by the CLI)::

    0, 7, w, w+3, w*2, w^2*3+w+4, w^(w+1), w^w
"""

from __future__ import annotations

import enum
import functools
import math
import re
from dataclasses import dataclass
from typing import NamedTuple, Optional


class OrdinalError(ValueError):
    pass


@functools.total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        terms = tuple((e if isinstance(e, Ordinal) else Ordinal.finite(e), int(c)) for e, c in terms)
        for i, (e, c) in enumerate(terms):
            if c < 1:
                raise OrdinalError(f"coefficient must be positive, got {c}")
            if i and not terms[i - 1][0] > e:
                raise OrdinalError("exponents must be strictly decreasing")
        self.terms = terms
        self._hash = None

    @classmethod
    def finite(cls, n: int) -> "Ordinal":
        if n < 0:
            raise OrdinalError(f"negative ordinal {n}")
        return cls(((ZERO, n),)) if n else ZERO

    @classmethod
    def omega_power(cls, e, c: int = 1) -> "Ordinal":
        return cls(((e, c),))

    # --- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or self.terms[0][0].is_zero()

    def __int__(self):
        if not self.is_finite():
            raise OrdinalError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def leading_exponent(self) -> "Ordinal":
        return self.terms[0][0] if self.terms else ZERO

    # --- order -------------------------------------------------------------

    def _key(self):
        return tuple((e._key(), c) for e, c in self.terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Ordinal.finite(other) if other >= 0 else None
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        if isinstance(other, int):
            other = Ordinal.finite(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return _cmp(self, other) < 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    # --- arithmetic --------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Ordinal.finite(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        if other.is_zero():
            return self
        lead = other.terms[0][0]
        kept = [t for t in self.terms if not t[0] < lead]
        if kept and kept[-1][0] == lead:
            e, c = kept.pop()
            return Ordinal(tuple(kept) + ((e, c + other.terms[0][1]),) + other.terms[1:])
        return Ordinal(tuple(kept) + other.terms)

    def __radd__(self, other):
        if isinstance(other, int):
            return Ordinal.finite(other) + self
        return NotImplemented

    # --- text --------------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e.is_zero():
                parts.append(str(c))
                continue
            if e == ONE:
                base = "w"
            elif e.is_finite():
                base = f"w^{int(e)}"
            elif e == OMEGA:
                base = "w^w"
            else:
                base = f"w^({e})"
            parts.append(base if c == 1 else f"{base}*{c}")
        return "+".join(parts)

    def __repr__(self):
        return f"Ordinal({str(self)!r})"


def _cmp(a: Ordinal, b: Ordinal) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    return (len(a.terms) > len(b.terms)) - (len(a.terms) < len(b.terms))


ZERO = Ordinal.__new__(Ordinal)
ZERO.terms = ()
ZERO._hash = None
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


class Order(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


def compare(a: Ordinal, b: Ordinal) -> Order:
    return Order(_cmp(a, b))


class Kind(enum.Enum):
    ZERO = "zero"
    SUCCESSOR = "successor"
    LIMIT = "limit"


class Classification(NamedTuple):
    kind: Kind
    pred: Optional[Ordinal] = None


def classify(a: Ordinal) -> Classification:
    if a.is_zero():
        return Classification(Kind.ZERO)
    e, c = a.terms[-1]
    if not e.is_zero():
        return Classification(Kind.LIMIT)
    head = a.terms[:-1]
    return Classification(Kind.SUCCESSOR, Ordinal(head + (((e, c - 1),) if c > 1 else ())))


def successor(a: Ordinal) -> Ordinal:
    return a + ONE


# --- pairing and enumeration ------------------------------------------------


def pair(i: int, j: int) -> int:
    """Cantor pairing ``N x N -> N``."""
    s = i + j
    return s * (s + 1) // 2 + j


def unpair(n: int) -> tuple[int, int]:
    s = (math.isqrt(8 * n + 1) - 1) // 2
    j = n - s * (s + 1) // 2
    return s - j, j


def infinite_fiber_map(n: int) -> int:
    """First projection of the pairing: every fiber is infinite."""
    if n < 0:
        raise ValueError("n must be a natural number")
    return unpair(n)[0]


def enumerate_below(alpha: Ordinal, n: int) -> Ordinal:
    """Bijection ``N -> {beta : beta < alpha}`` for a limit ordinal ``alpha``.

    Write ``alpha = delta + w^e``.  When ``delta > 0`` even indices enumerate
    ``[0, delta)`` and odd indices enumerate ``delta + [0, w^e)``.  Below a
    power ``w^e`` the enumeration is a diagonal pairing: for a successor
    exponent ``e = e'+1`` index ``pair(i, j)`` maps to ``w^e'*i + (j-th
    element below w^e')``; for a limit exponent index 0 maps to 0 and index
    ``1 + pair(i, j)`` maps to ``w^d + (j-th element below w^(d+1))`` with
    ``d`` the ``i``-th exponent below ``e``.
    """
    if n < 0:
        raise ValueError("n must be a natural number")
    if classify(alpha).kind is not Kind.LIMIT:
        raise OrdinalError(f"{alpha} is not a limit ordinal")
    e, c = alpha.terms[-1]
    delta = Ordinal(alpha.terms[:-1] + (((e, c - 1),) if c > 1 else ()))
    if delta.is_zero():
        return _below_power(e, n)
    if n % 2 == 0:
        return enumerate_below(delta, n // 2)
    return delta + _below_power(e, n // 2)


def _below_power(e: Ordinal, n: int) -> Ordinal:
    # bijection N -> [0, w^e), e >= 1
    kind = classify(e)
    if kind.kind is Kind.SUCCESSOR:
        pred = kind.pred
        if pred.is_zero():
            return Ordinal.finite(n)
        i, j = unpair(n)
        tail = _below_power(pred, j)
        return (Ordinal.omega_power(pred, i) if i else ZERO) + tail
    if n == 0:
        return ZERO
    i, j = unpair(n - 1)
    d = enumerate_below(e, i)
    return Ordinal.omega_power(d) + _below_power(d + ONE, j)


# --- parsing ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|(w)|(\^)|(\*)|(\+)|(\()|(\)))")


@dataclass
class _Cursor:
    text: str
    pos: int = 0

    def peek(self):
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            rest = self.text[self.pos:].strip()
            if not rest:
                return None, None
            raise OrdinalError(f"unsupported ordinal notation at position {self.pos}: {rest!r}")
        return m, m.lastindex

    def take(self):
        m, kind = self.peek()
        if m is None:
            raise OrdinalError(f"unexpected end of ordinal text {self.text!r}")
        self.pos = m.end()
        return m.group(kind), kind


def parse_ordinal(text: str) -> Ordinal:
    """Parse the CNF syntax; reject anything not in Cantor normal form."""
    cur = _Cursor(text)
    value = _parse_sum(cur)
    m, _ = cur.peek()
    if m is not None:
        raise OrdinalError(f"trailing input at position {cur.pos} in {text!r}")
    return value


def _parse_sum(cur: _Cursor) -> Ordinal:
    terms = [_parse_term(cur)]
    while True:
        m, kind = cur.peek()
        if kind != 5:
            break
        cur.take()
        terms.append(_parse_term(cur))
    out = []
    for e, c in terms:
        if out and not out[-1][0] > e:
            raise OrdinalError(
                f"not in Cantor normal form: exponent {e} does not decrease after {out[-1][0]}"
            )
        out.append((e, c))
    if len(out) == 1 and out[0][1] == 0:
        return ZERO
    if any(c == 0 for _, c in out):
        raise OrdinalError("zero summand inside a CNF sum")
    return Ordinal(tuple(out))


def _parse_term(cur: _Cursor) -> tuple[Ordinal, int]:
    tok, kind = cur.take()
    if kind == 1:
        return ZERO, int(tok)
    if kind != 2:
        raise OrdinalError(f"unexpected {tok!r} at position {cur.pos}")
    exponent = ONE
    m, k = cur.peek()
    if k == 3:
        cur.take()
        tok, k = cur.take()
        if k == 1:
            exponent = Ordinal.finite(int(tok))
        elif k == 2:
            exponent = OMEGA
        elif k == 6:
            exponent = _parse_sum(cur)
            tok, k = cur.take()
            if k != 7:
                raise OrdinalError(f"expected ')' at position {cur.pos}")
        else:
            raise OrdinalError(f"bad exponent {tok!r}")
        if exponent.is_zero():
            raise OrdinalError("w^0 is not CNF; write 1")
    coeff = 1
    m, k = cur.peek()
    if k == 4:
        cur.take()
        tok, k = cur.take()
        if k != 1 or int(tok) < 1:
            raise OrdinalError(f"coefficient must be a positive integer, got {tok!r}")
        coeff = int(tok)
    return exponent, coeff


def as_ordinal(value) -> Ordinal:
    if isinstance(value, Ordinal):
        return value
    if isinstance(value, int):
        return Ordinal.finite(value)
    return parse_ordinal(str(value))
