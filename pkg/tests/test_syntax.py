from fractions import Fraction as Q

import pytest
from hypothesis import given, settings, strategies as st

from denjoy.ppmodule.poly import PolyQ
from denjoy.ppmodule.syntax import (
    PP,
    And,
    Eq,
    Exists,
    Forall,
    Inv,
    Not,
    Or,
    ParseError,
    PPFormula,
    Summand,
    parse,
    parse_formula,
    parse_pp,
    show,
)

VARS = ["x", "y", "z", "u"]

rats = st.builds(Q, st.integers(-4, 4), st.integers(1, 5))
polys = st.lists(rats, min_size=1, max_size=3).map(PolyQ)
summands = st.builds(Summand, polys.filter(lambda p: not p.is_zero()), st.sampled_from(VARS))
terms = st.lists(summands, max_size=3).map(tuple)
eqs = st.builds(Eq, terms, terms)
pps = st.builds(
    PP,
    st.lists(st.sampled_from(VARS), max_size=2, unique=True).map(tuple),
    st.lists(eqs, min_size=1, max_size=3).map(tuple),
)
invs = st.builds(Inv, pps, pps, st.sampled_from(["=", ">"]), st.integers(0, 20))
formulas = st.recursive(
    st.one_of(eqs, invs),
    lambda sub: st.one_of(
        st.builds(Not, sub),
        st.builds(And, sub, sub),
        st.builds(Or, sub, sub),
        st.builds(Exists, st.sampled_from(VARS), sub),
        st.builds(Forall, st.sampled_from(VARS), sub),
    ),
    max_leaves=8,
)


@settings(max_examples=1000, deadline=None)
@given(formulas)
def test_roundtrip_random_asts(f):
    assert parse_formula(show(f)) == f


@settings(max_examples=200, deadline=None)
@given(pps)
def test_pp_roundtrip(pp):
    assert parse_pp(show(pp)) == pp


def test_parse_kinds():
    assert parse("X^2 + 1") == PolyQ([1, 0, 1])
    phi = parse("E y . x + X*y = 0")
    assert isinstance(phi, PPFormula)
    assert phi.free_vars == ("x",) and phi.bound_vars == ("y",)
    s = parse("A x . E y . x = X*y")
    assert isinstance(s, Forall) and isinstance(s.body, Exists)


def test_precedence():
    f = parse_formula("x = 0 | y = 0 & z = 0")
    assert isinstance(f, Or) and isinstance(f.right, And)
    f = parse_formula("~ x = 0 & y = 0")
    assert isinstance(f, And) and isinstance(f.left, Not)
    f = parse_formula("E x . x = 0 & y = 0")
    assert isinstance(f, Exists) and isinstance(f.body, And)
    f = parse_formula("(E x . x = 0) & y = 0")
    assert isinstance(f, And)


def test_spans():
    f = parse_formula("A x . x = X*x")
    assert f.span[0] == 0
    assert f.body.span[0] == 6


@pytest.mark.parametrize(
    "text,pos",
    [("A x . x = ", 10), ("x = X**y", 6), ("A x x = 0", 6), ("Inv(x = x, x = 0) < 3", 18), ("x = 1/0*y", 6)],
)
def test_errors_report_position(text, pos):
    with pytest.raises(ParseError) as ei:
        parse_formula(text)
    assert ei.value.pos == pos


def test_rationals_and_zero_term():
    f = parse_formula("(1/2 - X)*x + 0 = 0")
    assert f.lhs[0].coeff == PolyQ([Q(1, 2), -1])
    assert f.rhs == ()
