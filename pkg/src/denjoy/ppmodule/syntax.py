"""Concrete syntax for polynomials, pp-formulas and sentences.

Grammar (whitespace insensitive)::

    poly := rat | "X" | poly "+" poly | poly "-" poly | poly "*" poly
          | poly "^" nat | "(" poly ")" | "-" poly
    term := summand (("+" | "-") summand)*
    summand := ["-"] (var | poly "*" var | "0")
    atom := term "=" term | "Inv" "(" pp "," pp ")" ("=" | ">") nat
    pp   := ["E" var+ "."] eq ("&" eq)*
    form := atom | "~" form | form "&" form | form "|" form
          | ("A" | "E") var+ "." form | "(" form ")"

``&`` binds tighter than ``|``; a quantifier body extends as far right as
possible.  Variables are lower-case identifiers.  The printer emits every
coefficient other than 1 in parentheses, so ``parse(show(t)) == t``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Optional, Union

from denjoy.ppmodule.poly import ONE_POLY, X, ZERO_POLY, PolyQ


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, text: str = ""):
        self.pos = pos
        self.text = text
        super().__init__(f"position {pos}: {message}")


Span = Optional[tuple]


# --- AST ---------------------------------------------------------------------


@dataclass(frozen=True)
class Summand:
    coeff: PolyQ
    var: str
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Eq:
    lhs: tuple  # of Summand
    rhs: tuple
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class PP:
    bound: tuple  # of str
    eqs: tuple  # of Eq
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Inv:
    left: PP
    right: PP
    op: str  # "=" or ">"
    k: int
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Not:
    body: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Exists:
    var: str
    body: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Forall:
    var: str
    body: "Formula"
    span: Span = field(default=None, compare=False, repr=False)


Formula = Union[Eq, Inv, Not, And, Or, Exists, Forall]


@dataclass(frozen=True)
class PPFormula:
    """A pp-formula as data: equations ``sum p_i * v_i = 0``."""

    bound_vars: tuple
    free_vars: tuple
    equations: tuple  # of tuple of (var, PolyQ), sorted by var

    @classmethod
    def from_pp(cls, pp: PP) -> "PPFormula":
        rows = tuple(equation_row(e) for e in pp.eqs)
        used = sorted({v for row in rows for v, _ in row} | {s.var for e in pp.eqs for s in e.lhs + e.rhs})
        free = tuple(v for v in used if v not in pp.bound)
        return cls(tuple(pp.bound), free, rows)


def equation_row(e: Eq) -> tuple:
    """``lhs - rhs`` collected by variable, zero coefficients dropped."""
    acc: dict = {}
    for s in e.lhs:
        acc[s.var] = acc.get(s.var, ZERO_POLY) + s.coeff
    for s in e.rhs:
        acc[s.var] = acc.get(s.var, ZERO_POLY) - s.coeff
    return tuple(sorted((v, p) for v, p in acc.items() if not p.is_zero()))


def free_vars(f) -> set:
    if isinstance(f, Eq):
        return {s.var for s in f.lhs + f.rhs}
    if isinstance(f, PP):
        return set().union(*(free_vars(e) for e in f.eqs)) - set(f.bound)
    if isinstance(f, Inv):
        return set()
    if isinstance(f, Not):
        return free_vars(f.body)
    if isinstance(f, (And, Or)):
        return free_vars(f.left) | free_vars(f.right)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    raise TypeError(f"not a formula: {f!r}")


# --- lexer -------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<kw>Inv|A|E|X)(?![A-Za-z0-9_])|(?P<var>[a-z][a-z0-9_]*)|(?P<op>[/().,=>+\-*^~&|]))"
)


@dataclass(frozen=True)
class Tok:
    kind: str  # num, kw, var, op, end
    text: str
    pos: int


def tokenize(text: str) -> list[Tok]:
    out = []
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if not m:
            rest = text[pos:]
            if rest.strip() == "":
                out.append(Tok("end", "", len(text)))
                return out
            bad = pos + len(rest) - len(rest.lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", bad, text)
        kind = m.lastgroup
        out.append(Tok(kind, m.group(kind), m.start(kind)))
        pos = m.end()


# --- parser ------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.furthest: Optional[ParseError] = None

    # helpers

    @property
    def tok(self) -> Tok:
        return self.toks[self.i]

    def at(self, text: str, kind: str = None) -> bool:
        t = self.tok
        return t.text == text and (kind is None or t.kind == kind) and t.kind != "end"

    def error(self, msg: str) -> ParseError:
        e = ParseError(msg, self.tok.pos, self.text)
        if self.furthest is None or e.pos >= self.furthest.pos:
            self.furthest = e
        return e

    def expect(self, text: str) -> Tok:
        if not self.at(text):
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        t = self.tok
        self.i += 1
        return t

    def nat(self) -> int:
        if self.tok.kind != "num":
            raise self.error("expected a natural number")
        v = int(self.tok.text)
        self.i += 1
        return v

    def var(self) -> str:
        if self.tok.kind != "var":
            raise self.error("expected a variable")
        v = self.tok.text
        self.i += 1
        return v

    def done(self):
        if self.tok.kind != "end":
            raise self.error(f"unexpected {self.tok.text!r}")

    # polynomials

    def poly(self) -> PolyQ:
        neg = False
        if self.at("-"):
            self.i += 1
            neg = True
        acc = self.pterm()
        if neg:
            acc = -acc
        while self.at("+") or self.at("-"):
            op = self.tok.text
            self.i += 1
            t = self.pterm()
            acc = acc + t if op == "+" else acc - t
        return acc

    def pterm(self) -> PolyQ:
        acc = self.factor()
        while self.at("*") and self.toks[self.i + 1].kind != "var":
            self.i += 1
            acc = acc * self.factor()
        return acc

    def factor(self) -> PolyQ:
        base = self.primary()
        if self.at("^"):
            self.i += 1
            base = base ** self.nat()
        return base

    def primary(self) -> PolyQ:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            num = int(t.text)
            if self.at("/"):
                self.i += 1
                if self.tok.kind == "num" and int(self.tok.text) == 0:
                    raise self.error("zero denominator")
                den = self.nat()
                return PolyQ.const(Fraction(num, den))
            return PolyQ.const(num)
        if t.kind == "kw" and t.text == "X":
            self.i += 1
            return X
        if self.at("("):
            self.i += 1
            p = self.poly()
            self.expect(")")
            return p
        raise self.error("expected a polynomial")

    # terms and equations

    def summand(self) -> Optional[Summand]:
        start = self.tok.pos
        sign = ONE_POLY
        if self.at("-"):
            self.i += 1
            sign = -ONE_POLY
        if self.tok.kind == "var":
            v = self.var()
            return Summand(sign, v, (start, self.tok.pos))
        coeff = self.pterm()
        if self.at("*") and self.toks[self.i + 1].kind == "var":
            self.i += 1
            v = self.var()
            return Summand(sign * coeff, v, (start, self.tok.pos))
        if coeff.is_zero():
            return None
        raise self.error("equations must be homogeneous: a constant needs a variable")

    def term(self) -> tuple:
        out = []
        s = self.summand()
        if s is not None:
            out.append(s)
        while self.at("+") or self.at("-"):
            if self.at("+"):
                self.i += 1
            s = self.summand()
            if s is not None:
                out.append(s)
        return tuple(out)

    def eq(self) -> Eq:
        start = self.tok.pos
        lhs = self.term()
        self.expect("=")
        rhs = self.term()
        return Eq(lhs, rhs, (start, self.tok.pos))

    def pp(self) -> PP:
        start = self.tok.pos
        bound = []
        if self.at("E", "kw"):
            self.i += 1
            bound.append(self.var())
            while self.tok.kind == "var":
                bound.append(self.var())
            self.expect(".")
        eqs = [self.eq()]
        while self.at("&"):
            self.i += 1
            eqs.append(self.eq())
        return PP(tuple(bound), tuple(eqs), (start, self.tok.pos))

    # formulas

    def form(self):
        start = self.tok.pos
        left = self.conj()
        while self.at("|"):
            self.i += 1
            left = Or(left, self.conj(), (start, self.tok.pos))
        return left

    def conj(self):
        start = self.tok.pos
        left = self.unary()
        while self.at("&"):
            self.i += 1
            left = And(left, self.unary(), (start, self.tok.pos))
        return left

    def unary(self):
        start = self.tok.pos
        if self.at("~"):
            self.i += 1
            return Not(self.unary(), (start, self.tok.pos))
        if self.tok.kind == "kw" and self.tok.text in ("A", "E"):
            q = Forall if self.tok.text == "A" else Exists
            self.i += 1
            vs = [self.var()]
            while self.tok.kind == "var":
                vs.append(self.var())
            self.expect(".")
            body = self.form()
            for v in reversed(vs):
                body = q(v, body, (start, self.tok.pos))
            return body
        return self.atom()

    def atom(self):
        start = self.tok.pos
        if self.at("Inv", "kw"):
            self.i += 1
            self.expect("(")
            left = self.pp()
            self.expect(",")
            right = self.pp()
            self.expect(")")
            if not (self.at("=") or self.at(">")):
                raise self.error("expected '=' or '>' after Inv(...)")
            op = self.tok.text
            self.i += 1
            return Inv(left, right, op, self.nat(), (start, self.tok.pos))
        if self.at("("):
            mark = self.i
            try:
                return self.eq()
            except ParseError:
                self.i = mark
            self.i += 1
            f = self.form()
            self.expect(")")
            return f
        return self.eq()


def _run(text: str, rule: str):
    p = _Parser(text)
    try:
        out = getattr(p, rule)()
        p.done()
    except ParseError as e:
        best = p.furthest if p.furthest is not None and p.furthest.pos > e.pos else e
        raise ParseError(str(best).split(": ", 1)[1], best.pos, text) from None
    return out


def parse_poly(text: str) -> PolyQ:
    return _run(text, "poly")


def parse_formula(text: str):
    return _run(text, "form")


def parse_pp(text: str) -> PP:
    return _run(text, "pp")


def parse(text: str):
    """Polynomial, pp-formula (when free variables remain) or sentence."""
    try:
        return parse_poly(text)
    except ParseError:
        pass
    f = parse_formula(text)
    if free_vars(f):
        pp = _as_pp(f)
        if pp is not None:
            return PPFormula.from_pp(pp)
    return f


def _as_pp(f) -> Optional[PP]:
    bound = []
    while isinstance(f, Exists):
        bound.append(f.var)
        f = f.body
    eqs = []
    stack = [f]
    while stack:
        g = stack.pop()
        if isinstance(g, And):
            stack += [g.right, g.left]
        elif isinstance(g, Eq):
            eqs.append(g)
        else:
            return None
    return PP(tuple(bound), tuple(eqs))


# --- printer -----------------------------------------------------------------


def show_summand(s: Summand) -> str:
    return s.var if s.coeff == ONE_POLY else f"({s.coeff})*{s.var}"


def show_term(t: tuple) -> str:
    return " + ".join(show_summand(s) for s in t) if t else "0"


def show_pp(pp: PP) -> str:
    head = f"E {' '.join(pp.bound)} . " if pp.bound else ""
    return head + " & ".join(show(e) for e in pp.eqs)


_PREC = {Or: 1, And: 2, Not: 3, Eq: 4, Inv: 4, Exists: 0, Forall: 0}


def show(f, prec: int = 0) -> str:
    if isinstance(f, PolyQ):
        return str(f)
    if isinstance(f, PP):
        return show_pp(f)
    if isinstance(f, PPFormula):
        raise TypeError("print the PP syntax node instead")
    if isinstance(f, Eq):
        s = f"{show_term(f.lhs)} = {show_term(f.rhs)}"
    elif isinstance(f, Inv):
        s = f"Inv({show_pp(f.left)}, {show_pp(f.right)}) {f.op} {f.k}"
    elif isinstance(f, Not):
        s = f"~ {show(f.body, 3)}"
    elif isinstance(f, And):
        s = f"{show(f.left, 2)} & {show(f.right, 3)}"
    elif isinstance(f, Or):
        s = f"{show(f.left, 1)} | {show(f.right, 2)}"
    elif isinstance(f, (Exists, Forall)):
        q = "E" if isinstance(f, Exists) else "A"
        s = f"{q} {f.var} . {show(f.body, 0)}"
    else:
        raise TypeError(f"cannot print {f!r}")
    return f"({s})" if _PREC[type(f)] < prec else s
