import pytest
from hypothesis import given, strategies as st

from denjoy.ppmodule.poly import ONE_POLY, ZERO_POLY, PolyQ, X, strip_x_power
from denjoy.ppmodule.syntax import parse_poly

coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.lists(coeffs, max_size=6).map(PolyQ)
nonzero = polys.filter(lambda p: not p.is_zero())
points = st.fractions(min_value=-3, max_value=3, max_denominator=5)


def test_normalisation():
    assert PolyQ([1, 0, 0]).coefficients == (1,)
    assert PolyQ([0, 0]).is_zero()
    assert PolyQ([1, 0, 1]).degree == 2
    assert parse_poly("X^2 + 1") == PolyQ([1, 0, 1])


def test_strip_examples():
    assert strip_x_power(parse_poly("X^3 + X^2")) == (2, parse_poly("X + 1"))
    assert strip_x_power(PolyQ.const(5)) == (0, PolyQ.const(5))
    assert strip_x_power(X) == (1, ONE_POLY)
    with pytest.raises(ValueError):
        strip_x_power(ZERO_POLY)


def test_str():
    assert str(parse_poly("-X^3 + 2/3*X - 1")) == "-X^3 + 2/3*X - 1"
    assert str(ZERO_POLY) == "0"


@given(polys, polys, points)
def test_ring_ops_match_evaluation(p, q, x):
    assert (p + q)(x) == p(x) + q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert (p * q)(x) == p(x) * q(x)


@given(polys, nonzero)
def test_divmod(p, q):
    d, r = divmod(p, q)
    assert d * q + r == p
    assert r.is_zero() or r.degree < q.degree


@given(nonzero)
def test_strip_property(p):
    k, p0 = strip_x_power(p)
    assert X**k * p0 == p
    assert p0(0) != 0


@given(polys)
def test_print_parse_roundtrip(p):
    assert parse_poly(str(p)) == p
