import pytest
from hypothesis import given, settings, strategies as st

from denjoy.ordinal import (
    OMEGA,
    ONE,
    ZERO,
    Kind,
    Order,
    Ordinal,
    OrdinalError,
    classify,
    compare,
    enumerate_below,
    infinite_fiber_map,
    pair,
    parse_ordinal,
    unpair,
)

P = parse_ordinal


def ordinals(max_depth=2):
    """Random CNF ordinals with exponents nested up to ``max_depth``."""
    if max_depth == 0:
        return st.integers(0, 20).map(Ordinal.finite)
    exps = ordinals(max_depth - 1)

    def build(pairs):
        terms = {}
        for e, c in pairs:
            terms[e] = terms.get(e, 0) + c
        return Ordinal(tuple(sorted(terms.items(), key=lambda t: t[0], reverse=True)))

    return st.lists(st.tuples(exps, st.integers(1, 5)), max_size=4).map(build)


def test_compare_examples():
    assert compare(ZERO, ZERO) is Order.EQ
    assert compare(Ordinal.finite(3), OMEGA) is Order.LT
    assert compare(P("w*2+1"), P("w*2")) is Order.GT


def test_classify_examples():
    assert classify(ZERO).kind is Kind.ZERO
    c = classify(P("w+3"))
    assert c.kind is Kind.SUCCESSOR and c.pred == P("w+2")
    assert classify(P("w^2")).kind is Kind.LIMIT
    assert classify(P("w^2+w")).kind is Kind.LIMIT
    assert classify(ONE).pred == ZERO


def test_enumerate_below_examples():
    assert all(enumerate_below(OMEGA, k) == k for k in range(50))
    assert enumerate_below(P("w*2"), 5) == P("w+2")
    assert enumerate_below(P("w*2"), 4) == 2
    seen = {enumerate_below(P("w^2"), n) for n in range(100)}
    assert {ZERO, OMEGA, P("w*2")} <= seen


def test_enumerate_below_rejects_non_limits():
    with pytest.raises(OrdinalError):
        enumerate_below(P("w+1"), 0)
    with pytest.raises(OrdinalError):
        enumerate_below(ZERO, 0)


def test_fiber_map_examples():
    assert all(infinite_fiber_map(pair(3, j)) == 3 for j in range(200))
    assert sum(1 for n in range(1000) if infinite_fiber_map(n) == 0) >= 10


def test_fiber_map_total():
    for n in range(0, 10**6, 997):
        assert infinite_fiber_map(n) >= 0
    assert infinite_fiber_map(10**6) >= 0


def test_fiber_counts():
    counts = [0] * 11
    for n in range(10**5):
        h = infinite_fiber_map(n)
        if h <= 10:
            counts[h] += 1
    assert min(counts) >= 10


@pytest.mark.parametrize("alpha", ["w", "w*2", "w^2", "w^2+w", "w^3", "w^w", "w^(w+1)"])
def test_enumerate_below_injective_and_bounded(alpha):
    a = P(alpha)
    N = 10**4 if alpha in ("w", "w*2", "w^2") else 2000
    vals = [enumerate_below(a, n) for n in range(N)]
    assert len(set(vals)) == N
    assert all(compare(v, a) is Order.LT for v in vals)


@pytest.mark.parametrize("text", ["0", "7", "w", "w+3", "w*2", "w^2*3+w+4", "w^(w+1)", "w^w", "w^(w^2+1)*2+5"])
def test_parse_print_roundtrip(text):
    assert str(P(text)) == text
    assert P(str(P(text))) == P(text)


@pytest.mark.parametrize("bad", ["e0", "", "w+", "3+w", "w^0", "w*0", "w+w^2", "1+1", "w^(w", "-1"])
def test_parse_rejects(bad):
    with pytest.raises(OrdinalError):
        P(bad)


def test_pairing_inverse():
    for n in range(5000):
        assert pair(*unpair(n)) == n


@given(ordinals(), ordinals(), ordinals())
def test_total_order(a, b, c):
    ab, ba = compare(a, b), compare(b, a)
    assert ab.value == -ba.value
    assert (ab is Order.EQ) == (a == b)
    if a <= b and b <= c:
        assert a <= c


@given(ordinals())
def test_classify_successor(a):
    c = classify(a + 1)
    assert c.kind is Kind.SUCCESSOR and c.pred == a


@given(ordinals())
def test_str_parse_roundtrip(a):
    assert P(str(a)) == a


@given(ordinals(), ordinals())
def test_addition_monotone(a, b):
    assert a <= a + b
    if not b.is_zero():
        assert b <= a + b


@settings(max_examples=40)
@given(ordinals().filter(lambda a: classify(a).kind is Kind.LIMIT), st.integers(0, 500))
def test_enumerate_below_bounded(a, n):
    assert enumerate_below(a, n) < a
