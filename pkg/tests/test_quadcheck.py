import math
import random
from fractions import Fraction as Q

import pytest
from scipy.integrate import quad

from denjoy.closedset import IntervalQ
from denjoy.denfun import build_rank
from denjoy.ordinal import parse_ordinal
from denjoy.quadcheck import ftc_constant, ftc_spotcheck, integrate, verify_improper, verify_step

H = IntervalQ(0, 1)


def fun(rank, r=1, host=H):
    return build_rank(parse_ordinal(rank), host, r)


def test_base_integrals():
    b = fun("0")
    e = integrate(b, H, 0)
    assert e.exact and e.lo == e.hi == 0
    e = integrate(b, IntervalQ(0, Q(1, 2)), 0)
    assert e.exact and e.lo == e.hi == 1


@pytest.mark.parametrize("p,q", [(0, Q(1, 3)), (Q(1, 7), Q(5, 8)), (Q(2, 3), 1), (Q(1, 10), Q(9, 10))])
def test_base_integrals_against_quadrature(p, q):
    r = Q(3, 2)
    host = IntervalQ(-1, 2)
    b = build_rank(0, host, r)
    A, L = float(r) * math.pi / 3, 3.0
    a, c = float(host.lo + host.length * p), float(host.lo + host.length * q)
    ref, _ = quad(lambda x: A * math.sin(2 * math.pi * (x + 1) / L), a, c)
    e = integrate(b, IntervalQ(host.lo + host.length * p, host.lo + host.length * q), 0)
    assert float(e.lo) - 1e-12 <= ref <= float(e.hi) + 1e-12


@pytest.mark.parametrize("rank", ["1", "2", "w", "w+1"])
def test_host_integral_contains_zero(rank):
    f = fun(rank)
    widths = []
    for d in (3, 4, 5):
        e = integrate(f, H, d)
        assert e.contains(0)
        widths.append(e.width)
    assert widths[0] > widths[1] > widths[2]
    assert widths[1] <= Q(1, 4)


def _random_intervals(k, seed):
    rng = random.Random(seed)
    out = []
    while len(out) < k:
        p, q = sorted(Q(rng.randrange(0, 1025), 1024) for _ in range(2))
        if p < q:
            out.append(IntervalQ(p, q))
    return out


@pytest.mark.parametrize("rank", ["0", "1", "2", "w", "w+1"])
def test_integral_enclosures_nest(rank):
    f = fun(rank)
    for J in _random_intervals(100, 3):
        prev = None
        for d in (1, 2, 3):
            e = integrate(f, J, d)
            if prev is not None:
                assert prev.contains(e), (J, d)
            prev = e


@pytest.mark.parametrize("rank", ["0", "1", "w"])
def test_additivity(rank):
    f = fun(rank)
    rng = random.Random(5)
    for _ in range(40):
        p, q, s = sorted(Q(rng.randrange(0, 513), 512) for _ in range(3))
        if not p < q < s:
            continue
        left, right = integrate(f, IntervalQ(p, q), 3), integrate(f, IntervalQ(q, s), 3)
        whole = integrate(f, IntervalQ(p, s), 3)
        joined = left + right
        assert joined.overlaps(whole)


@pytest.mark.parametrize("rank,depth", [("1", d) for d in range(0, 5)] + [("2", d) for d in range(0, 4)])
def test_verify_step_top(rank, depth):
    rep = verify_step(fun(rank), depth)
    assert rep.passed, [c.name for c in rep.checks if not c.passed]


def test_verify_step_on_inner_successor_nodes():
    f = fun("2")
    for n, m in [(1, 1), (2, 3), (3, 9)]:
        child = f.successor_child(n, m)
        assert verify_step(child, 2).passed


def test_verify_step_partial_sum_bound():
    rep = verify_step(fun("1"), 3)
    by_name = {c.name: c for c in rep.checks}
    assert by_name["partial gap oscillation sum <= 2r"].value <= 2


def test_verify_step_rejects_base():
    with pytest.raises(TypeError):
        verify_step(fun("0"), 2)


@pytest.mark.parametrize("rank,N", [("w", 8), ("w", 1), ("w*2", 4), ("w*2", 8), ("w^2", 8)])
def test_verify_improper(rank, N):
    rep = verify_improper(fun(rank), N)
    assert rep.passed
    assert len(rep.checks) == 4 * N


def test_verify_improper_errors():
    with pytest.raises(TypeError):
        verify_improper(fun("1"), 4)
    with pytest.raises(ValueError):
        verify_improper(fun("w"), 0)


def test_ftc_constant():
    # 2 pi^2 for Base r=1 on [0,1], with the rational bound on pi
    assert ftc_constant(fun("0")) == 2 * Q(355, 113) ** 2


def test_ftc_base_and_rank1():
    rep = ftc_spotcheck(fun("0"), 100, Q(1, 1024), 0, 1)
    assert rep.passed
    worst = max(c.value for c in rep.checks[:-1])
    assert worst <= 2 * Q(355, 113) ** 2 * Q(1, 1024)
    rep = ftc_spotcheck(fun("1"), 100, Q(1, 1024), 5, 0)
    assert rep.passed and len(rep.checks) == 101


def test_ftc_deterministic():
    a = ftc_spotcheck(fun("w"), 20, Q(1, 4096), 3, 9).to_json()
    b = ftc_spotcheck(fun("w"), 20, Q(1, 4096), 3, 9).to_json()
    assert a == b


def test_report_json():
    js = verify_step(fun("1"), 2).to_json()
    assert js["pass"] is True and js["subject"]["rank"] == "1"
    assert all({"name", "value", "pass", "tolerance"} <= set(c) for c in js["checks"])
