import math
from fractions import Fraction as Q

import pytest
from scipy.integrate import quad

from denjoy.closedset import (
    IntervalQ,
    cantor,
    full,
    gaps_cover,
    intersect_interval,
    measure_bounds,
    validate_prepartition,
)
from denjoy.denfun import build_rank, eval_F
from denjoy.derivative import (
    BoundedBy,
    CertificateError,
    DivergesAbove,
    acstar_falsifier,
    derivative_step,
    local_l1_certificate,
    rank_certify,
    successor_witness_points,
)
from denjoy.ordinal import parse_ordinal

H = IntervalQ(0, 1)


def fun(rank, r=1):
    return build_rank(parse_ordinal(rank), H, r)


# --- local L1 ---------------------------------------------------------------


@pytest.mark.parametrize("r", [Q(1), Q(3, 2)])
def test_base_l1_bound_against_quadrature(r):
    b = build_rank(0, H, r)
    cert = local_l1_certificate(b, H, 3)
    ref, _ = quad(lambda x: abs(float(r) * math.pi * math.sin(2 * math.pi * x)), 0, 1, limit=200)
    assert isinstance(cert, BoundedBy)
    assert cert.bound == 2 * r
    assert abs(ref - float(cert.bound)) < 1e-9
    part = local_l1_certificate(b, IntervalQ(0, Q(1, 10)), 3)
    ref, _ = quad(lambda x: abs(float(r) * math.pi * math.sin(2 * math.pi * x)), 0, 0.1)
    assert isinstance(part, BoundedBy) and float(part.bound) >= ref


def test_rank1_diverges_near_cantor_points():
    f = fun("1")
    lows = []
    for d in (2, 4, 6):
        cert = local_l1_certificate(f, IntervalQ(0, Q(1, 100)), d)
        assert isinstance(cert, DivergesAbove)
        lows.append(cert.lower)
    assert lows[0] < lows[1] < lows[2]


def test_rank1_inside_gap_is_bounded():
    f = fun("1")
    assert isinstance(local_l1_certificate(f, f.gap(1), 3), BoundedBy)
    assert isinstance(local_l1_certificate(f, f.gap(20), 3), BoundedBy)
    # between two children, where f vanishes identically
    G = f.gap(1)
    c1, c2 = f.child_interval(1, 2), f.child_interval(1, 1)
    J = IntervalQ(c1.hi, c2.lo) if c1.hi < c2.lo else IntervalQ(c2.hi, c1.lo)
    assert G.contains_interval(J)


def test_limit_diverges_at_ends_only():
    g = fun("w")
    assert isinstance(local_l1_certificate(g, IntervalQ(0, Q(1, 100)), 3), DivergesAbove)
    assert isinstance(local_l1_certificate(g, IntervalQ(Q(1, 4), Q(1, 2)), 3), BoundedBy)


# --- AC* falsifier ----------------------------------------------------------


@pytest.mark.parametrize("k", range(0, 7))
def test_acstar_witness_rank1(k):
    f = fun("1")
    pts = successor_witness_points(f, 7, 7)
    delta = Q(1, 3**k)
    w = acstar_falsifier(f, pts, Q(1, 2), delta, 6)
    assert w is not None
    assert w.mu_sum < delta and w.osc_sum_lower >= Q(1, 2)
    assert validate_prepartition(w.prepartition, pts, H)
    # independent check of the claimed oscillation by evaluating F
    total = Q(0)
    for J in w.prepartition.intervals:
        hi = max(eval_F(f, J.lo + J.length * Q(i, 16), 6).lo for i in range(17))
        lo = min(eval_F(f, J.lo + J.length * Q(i, 16), 6).hi for i in range(17))
        total += max(Q(0), hi - lo)
    assert total >= Q(1, 2)


def test_acstar_none_for_base():
    b = fun("0")
    pts = [Q(i, 64) for i in range(65)]
    assert acstar_falsifier(b, pts, 1, Q(1, 100), 4) is None


def test_acstar_none_without_small_intervals():
    f = fun("1")
    assert acstar_falsifier(f, [0, 1], Q(1, 2), Q(1, 2), 4) is None


# --- rank certificates ------------------------------------------------------


@pytest.mark.parametrize("rank", ["0", "1", "2", "w", "w+1"])
def test_rank_certificate(rank):
    alpha = parse_ordinal(rank)
    c = rank_certify(fun(rank), 4)
    assert c.vanish_level == alpha + 1
    assert c.den_layer == alpha
    assert {Q(0), Q(1)} <= c.members_at(alpha)
    js = c.to_json()
    assert js["vanish_level"] == str(alpha + 1)


def test_rank1_certificate_has_witness():
    c = rank_certify(fun("1"), 3)
    assert c.witnesses and c.witnesses[0].osc_sum_lower >= Q(1, 2)


def test_limit_certificate_probes_lower_levels():
    c = rank_certify(fun("w"), 5)
    for n in range(5):
        gamma = fun("w").piece_rank(n)
        assert Q(0) in c.members_at(gamma)


def test_rank_certify_probe_floor():
    with pytest.raises(CertificateError):
        rank_certify(fun("1"), 2)


# --- derivative step --------------------------------------------------------


def test_base_step_is_empty():
    out, notes = derivative_step(fun("0"), full(H), 2)
    assert [(g.lo, g.hi) for g in out.gaps(2)] == [(0, 1)]
    assert measure_bounds(out, 2)[1] == 0
    assert notes == []


def test_rank1_step_keeps_cantor_set():
    f = fun("1")
    out, notes = derivative_step(f, full(H), 3)
    # the removed gaps are exactly outer Cantor gaps
    C = cantor(H)
    assert gaps_cover(C.gaps(8), out.gaps(3))
    assert {(g.lo, g.hi) for g in out.gaps(3)} <= {(g.lo, g.hi) for g in C.gaps(8)}
    assert {a.point for a in notes} == {Q(0), Q(1)}
    assert all(isinstance(a.certificate, DivergesAbove) for a in notes)


@pytest.mark.parametrize("rank", ["1", "2", "w"])
def test_step_monotone(rank):
    f = fun(rank)
    big, _ = derivative_step(f, full(H), 2)
    for small_set in (cantor(H), intersect_interval(full(H), IntervalQ(0, Q(1, 2)), 2)):
        small, _ = derivative_step(f, small_set, 2)
        # every point removed from the big output is removed from the small one
        clipped = [g.clip(small_set.host) for g in big.gaps(2)]
        clipped = [c for c in clipped if c is not None and c.lo < c.hi]
        assert gaps_cover(small.gaps(2), clipped)


def test_annotated_points_survive():
    # points with an L1-divergence certificate belong to D_f, hence to D_{f,F}
    f = fun("2")
    out, notes = derivative_step(f, full(H), 2)
    for a in notes:
        assert out.may_contain(a.point, 2)
