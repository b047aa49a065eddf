"""Walk through the rank-alpha functions: what the tree looks like, how F
behaves, and how tight the certified enclosures get as depth grows.

    python3 demos/rank_construction.py
"""

from fractions import Fraction as Q

from denjoy.closedset import IntervalQ
from denjoy.denfun import build_rank, eval_F, eval_f, integral, oscillation, schedule_partial_sum
from denjoy.ordinal import enumerate_below, parse_ordinal

H = IntervalQ(0, 1)

print("== rank 0: a single sine hump ==")
b = build_rank(0, H, 1)
print("amplitude A = pi *", b.amplitude_over_pi)
for x in (Q(1, 4), Q(1, 2), Q(3, 4)):
    print(f"  f({x}) in [{float(eval_f(b, x, 0).lo):.6f}, {float(eval_f(b, x, 0).hi):.6f}]", end="")
    print(f"   F({x}) = {eval_F(b, x, 0).lo}")
print("oscillation of F over [0,1]:", oscillation(b, H, 0).lo)

print("\n== rank 1: sine humps on a double Cantor grid ==")
f = build_rank(1, H, 1)
for n in (1, 2, 3):
    print(f"  gap {n} = {f.gap(n)}; first children:", [str(f.child_interval(n, m)) for m in (1, 2, 3)])
    print(f"    child oscillations: {[str(f.child_osc(n, m)) for m in range(1, 2**n + 3)]}")
print(f"  schedule of gap 3 sums to 1: partial sum to m=20 is 1 - {1 - schedule_partial_sum(3, 20)}")
print("  F at a Cantor point (1/4) is exactly", eval_F(f, Q(1, 4), 3).lo)
for n in range(1, 7):
    print(f"  osc bound over gap {n}: {oscillation(f, f.gap(n), 0).hi}  (2*2^-{n} = {Q(2, 2**n)})")

print("\n== rank w: pieces accumulating at both ends ==")
g = build_rank(parse_ordinal("w"), H, 1)
for n in range(0, 6):
    c = g.limit_child("L", n)
    print(f"  piece {n}: {c.interval}, rank {c.rank_label}, osc {c.target_osc}")
print("  ranks enumerated below w*2:", [str(enumerate_below(parse_ordinal("w*2"), k)) for k in range(8)])

print("\n== the whole-interval integral is 0; enclosures shrink with depth ==")
for a in ("1", "2", "w", "w+1"):
    fun = build_rank(parse_ordinal(a), H, 1)
    ws = [integral(fun, H, d) for d in (3, 4, 5)]
    print(f"  rank {a:>4}: widths {[round(float(e.width), 4) for e in ws]}, all contain 0: {all(e.contains(0) for e in ws)}")
