"""Sentences about C, L1 and Den as modules over Q[X], with X the
indefinite integral.  The three modules answer every sentence alike.

    python3 demos/decide_corpus.py
"""

from denjoy.ppmodule import classify_basic, decide, parse, parse_poly, reduce_pp, subgroup_of_pp

print("classes of p^-1(qM):")
for p, q in [("1", "X"), ("X^2+1", "1"), ("X", "X^3"), ("X+2", "X^2"), ("0", "X"), ("X", "0")]:
    print(f"  p = {p:>6}, q = {q:>4}: {classify_basic(parse_poly(p), parse_poly(q))}")

print("\nreduction of pp-formulas to basic ones:")
for text in ["E y . X*x + X^2*y = 0 & x + X*y = 0", "E y z . x = X*y & y = X*z", "E y . x = X*y & x = X^2*y"]:
    phi = parse(text)
    print(f"  {text}\n     -> {[str(b) for b in reduce_pp(phi)]} = {subgroup_of_pp(phi)}")

print("\nsentences:")
for s in [
    "A x . E y . x = X*y",
    "A x . E y . x = (X+1)*y",
    "Inv(x = x, E y . x = X^2*y) > 5",
    "Inv(E y . x = X^3*y, E y . x = X^2*y) = 1",
    "A x . E y . A z . ~ y + x = X*z",
    "E x . A y . E z . y = X*z + x",
]:
    vals = {m: decide(s, m) for m in ("C", "L1", "Den")}
    print(f"  {s:45s} {vals['Den']!s:5}  (same in C, L1, Den: {len(set(vals.values())) == 1})")
