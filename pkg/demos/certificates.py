"""Rank certificates and the AC* falsifier on the rank-1 function.

    python3 demos/certificates.py
"""

from fractions import Fraction as Q

from denjoy.closedset import IntervalQ, full
from denjoy.denfun import build_rank
from denjoy.derivative import (
    acstar_falsifier,
    derivative_step,
    local_l1_certificate,
    rank_certify,
    successor_witness_points,
)
from denjoy.ordinal import parse_ordinal
from denjoy.quadcheck import ftc_spotcheck, verify_improper, verify_step

H = IntervalQ(0, 1)
f = build_rank(1, H, 1)

print("local L1 near 0 grows with depth:")
for d in (1, 3, 5):
    print(" ", d, local_l1_certificate(f, IntervalQ(0, Q(1, 27)), d))
print("inside gap 1:", local_l1_certificate(f, f.gap(1), 3))

print("\nAC* fails on the Cantor set: small total length, oscillation >= 1/2")
pts = successor_witness_points(f, 7, 7)
for k in (1, 3, 6):
    w = acstar_falsifier(f, pts, Q(1, 2), Q(1, 3**k), 6)
    print(f"  delta = 1/3^{k}: {len(w.prepartition.intervals)} intervals, mu = {w.mu_sum}, osc >= {w.osc_sum_lower}")

print("\none derivative step removes the sine gaps and keeps the Cantor set:")
S, notes = derivative_step(f, full(H), 2)
print("  first gaps:", [str(g) for g in S.gaps(2)[:4]])
print("  annotations:", [(str(a.point), a.via, a.certificate) for a in notes])

print("\nrank certificates:")
for a in ("0", "1", "2", "w", "w+1"):
    c = rank_certify(build_rank(parse_ordinal(a), H, 1), 4)
    print(f"  rank {a:>4}: vanishes at {c.vanish_level}, layer {c.den_layer}, "
          f"endpoints at level {a}: {sorted(map(str, c.members_at(parse_ordinal(a))))}")

print("\nlemma checks:")
print("  step lemma, rank 2, depth 3:", verify_step(build_rank(2, H, 1), 3).passed)
print("  improper limit, rank w, N=8:", verify_improper(build_rank(parse_ordinal("w"), H, 1), 8).passed)
rep = ftc_spotcheck(f, 100, Q(1, 1024), 5, 0)
print("  F' = f spot check, 100 samples:", rep.passed)
