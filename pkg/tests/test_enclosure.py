import math
from fractions import Fraction as Q

import pytest
from hypothesis import given, strategies as st

from denjoy.enclosure import (
    PI_HI,
    PI_LO,
    PI_UPPER,
    Enclosure,
    TailBound,
    cos2pi,
    fmt,
    mul,
    parse_rational,
    sin2pi,
)

fracs = st.fractions(min_value=-3, max_value=3, max_denominator=1000)


def test_pi_bracket():
    assert PI_LO < PI_HI < PI_UPPER
    assert PI_HI - PI_LO < Q(1, 2**90)
    assert PI_LO <= Q(math.pi) + Q(1, 10**15) and Q(math.pi) - Q(1, 10**15) <= PI_HI


@pytest.mark.parametrize("q,v", [(0, 1), (Q(1, 4), 0), (Q(1, 2), -1), (Q(1, 6), Q(1, 2)), (Q(5, 4), 0)])
def test_cos_rational_points(q, v):
    e = cos2pi(Q(q))
    assert e.is_point and e.lo == v


@given(fracs)
def test_cos_sin_contain_float(q):
    for f, ref in ((cos2pi, math.cos), (sin2pi, math.sin)):
        e = f(q)
        x = ref(2 * math.pi * float(q))
        assert e.width < Q(1, 2**80)
        assert e.lo - Q(1, 10**12) <= Q(x) <= e.hi + Q(1, 10**12)


@given(fracs, fracs, fracs, fracs)
def test_arithmetic_sound(a, b, c, d):
    x = Enclosure(min(a, b), max(a, b))
    y = Enclosure(min(c, d), max(c, d))
    for u in (x.lo, x.hi):
        for v in (y.lo, y.hi):
            assert (x + y).contains(u + v)
            assert (x - y).contains(u - v)
            assert mul(x, y).contains(u * v)
    assert x.scale(-2).contains(-2 * x.lo)
    assert x.hull(y).contains(x) and x.hull(y).contains(y)


def test_tail_justification_propagates():
    t = Enclosure.tail(-1, 1, 3)
    s = t + Enclosure.point(2)
    assert isinstance(s.justification, TailBound) and s.justification.depth == 3
    assert (Enclosure.point(1) + Enclosure.point(2)).exact


def test_empty_rejected():
    with pytest.raises(ValueError):
        Enclosure(Q(1), Q(0))


def test_fmt_and_parse():
    assert fmt(Q(3, 4)) == "3/4"
    assert fmt(Q(-2)) == "-2"
    assert fmt(math.inf) == "inf"
    assert parse_rational("3/2") == Q(3, 2)
    assert parse_rational(" -7 ") == -7
    assert parse_rational("0.25") == Q(1, 4)
