"""Decision procedure for sentences about the modules C, L1 and Den over Q[X].

Quantifiers are eliminated innermost first.  After putting the matrix in
disjunctive normal form, each clause is ``phi(x, y) & ~psi_1 & ... & ~psi_k``
with pp-formulas ``phi`` and ``psi_j``.  By Neumann's lemma on coverings of
a coset by finitely many cosets,

    E y . clause  <->  (E y . phi) & ~(E y . phi & psi_j) for every j with
                       [phi(0, M) : (phi & psi_j)(0, M)] finite,

and here every such index is either 1 or infinite, as computed by
:func:`invariant_index`.  A pp-sentence is true (take all variables 0), so
once all quantifiers are gone the Boolean value can be read off.

The answer does not depend on which of the three modules is meant; the
``module`` parameter is accepted and checked, nothing more.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from denjoy.ppmodule.reduce import Index, invariant_index, subgroup_of_pp
from denjoy.ppmodule.syntax import (
    PP,
    And,
    Eq,
    Exists,
    Forall,
    Inv,
    Not,
    Or,
    PPFormula,
    equation_row,
    free_vars,
    parse_formula,
)

MODULES = ("C", "L1", "Den")
DEFAULT_BUDGET = 4096


class BudgetExceeded(RuntimeError):
    pass


class DecideError(ValueError):
    pass


_fresh = itertools.count()


@dataclass(frozen=True)
class Sys:
    """Existentially quantified homogeneous linear system."""

    bound: tuple
    rows: tuple  # of tuple of (var, PolyQ)

    def free(self) -> frozenset:
        return frozenset(v for row in self.rows for v, _ in row) - frozenset(self.bound)

    def conj(self, other: "Sys") -> "Sys":
        a, b = self._renamed(), other._renamed()
        return Sys(a.bound + b.bound, a.rows + b.rows)

    def _renamed(self) -> "Sys":
        if not self.bound:
            return self
        ren = {z: f"_b{next(_fresh)}" for z in self.bound}
        rows = tuple(tuple((ren.get(v, v), p) for v, p in row) for row in self.rows)
        return Sys(tuple(ren[z] for z in self.bound), rows)

    def exists(self, var: str) -> "Sys":
        return Sys(self.bound + (var,), self.rows)

    def at_zero_except(self, var: str) -> PPFormula:
        """The one-variable formula obtained by setting every other free variable to 0."""
        keep = set(self.bound) | {var}
        rows = tuple(tuple((v, p) for v, p in row if v in keep) for row in self.rows)
        used = {v for row in rows for v, _ in row}
        return PPFormula(self.bound, (var,) if var in used else (), rows)


TOP = Sys((), ())


def _subgroup(s: Sys, var: str):
    phi = s.at_zero_except(var)
    if not phi.free_vars:
        return subgroup_of_pp([])
    return subgroup_of_pp(phi)


# quantifier-free formulas: ("lit", Sys) | ("const", bool) | ("not", f) | ("and", [..]) | ("or", [..])


def _translate(f):
    if isinstance(f, Eq):
        return ("lit", Sys((), (equation_row(f),)))
    if isinstance(f, Inv):
        return ("const", eval_inv(f))
    if isinstance(f, Not):
        return ("not", _translate(f.body))
    if isinstance(f, And):
        return ("and", [_translate(f.left), _translate(f.right)])
    if isinstance(f, Or):
        return ("or", [_translate(f.left), _translate(f.right)])
    if isinstance(f, Exists):
        return ("exists", f.var, _translate(f.body))
    if isinstance(f, Forall):
        return ("not", ("exists", f.var, ("not", _translate(f.body))))
    raise DecideError(f"not a formula: {f!r}")


def eval_inv(f: Inv) -> bool:
    g, h = _pp_class(f.left), _pp_class(f.right)
    idx = invariant_index(g, h)
    if f.op == "=":
        return f.k == 1 and idx == Index.ONE
    return idx == Index.INFINITE or f.k == 0


def _pp_class(pp: PP):
    phi = PPFormula.from_pp(pp)
    if len(phi.free_vars) > 1:
        raise DecideError(f"invariant conditions need one free variable, got {list(phi.free_vars)}")
    return subgroup_of_pp(phi) if phi.free_vars else subgroup_of_pp([])


class _Eliminator:
    def __init__(self, budget: int):
        self.budget = budget

    def dnf(self, f, neg=False) -> list:
        """Clauses ``(positives, negatives, const)`` equivalent to ``f`` (or its negation)."""
        tag = f[0]
        if tag == "const":
            return [((), (), True)] if f[1] != neg else []
        if tag == "lit":
            if not f[1].free():
                # a pp-sentence holds (all variables 0)
                return [] if neg else [((), (), True)]
            return [((), (f[1],), True)] if neg else [((f[1],), (), True)]
        if tag == "not":
            return self.dnf(f[1], not neg)
        if tag == "exists":
            return self.dnf(self.eliminate(f[1], f[2]), neg)
        parts = f[1]
        is_and = (tag == "and") != neg
        if not is_and:
            out = []
            for p in parts:
                out = _simplify(out + self.dnf(p, neg))
                self._check(len(out))
            return out
        out = [((), (), True)]
        for p in parts:
            sub = self.dnf(p, neg)
            out = _simplify([(_merge(a[0], b[0]), _merge(a[1], b[1]), True) for a in out for b in sub])
            self._check(len(out))
        return out

    def _check(self, n):
        if n > self.budget:
            raise BudgetExceeded(f"normal form grew past {self.budget} clauses")

    def eliminate(self, var: str, body):
        clauses = self.dnf(body)
        disjuncts = []
        for pos, negs, _ in clauses:
            phi = TOP
            outside = []
            for s in pos:
                if var in s.free():
                    phi = phi.conj(s)
                else:
                    outside.append(("lit", s))
            inner_negs = []
            for s in negs:
                if var in s.free():
                    inner_negs.append(s)
                else:
                    outside.append(("not", ("lit", s)))
            g = _subgroup(phi, var)
            conj = outside + [("lit", phi.exists(var))]
            for psi in inner_negs:
                both = phi.conj(psi)
                if invariant_index(g, _subgroup(both, var)) == Index.ONE:
                    conj.append(("not", ("lit", both.exists(var))))
            disjuncts.append(("and", conj))
        return ("or", disjuncts)


def _merge(a: tuple, b: tuple) -> tuple:
    return a + tuple(x for x in b if x not in a)


def _simplify(clauses: list) -> list:
    if any(not c[0] and not c[1] for c in clauses):
        return [((), (), True)]
    seen = {}
    for c in clauses:
        seen.setdefault((c[0], c[1]), c)
    return list(seen.values())


def _truth(f) -> bool:
    tag = f[0]
    if tag == "const":
        return f[1]
    if tag == "lit":
        if f[1].free():
            raise DecideError("free variable left after elimination")
        return True
    if tag == "not":
        return not _truth(f[1])
    if tag == "and":
        return all(_truth(p) for p in f[1])
    if tag == "or":
        return any(_truth(p) for p in f[1])
    raise DecideError(f"unexpected node {tag}")


def decide(sentence, module: str = "Den", budget: int = DEFAULT_BUDGET) -> bool:
    """Truth value of a sentence in the modules C, L1 and Den (all agree)."""
    if module not in MODULES:
        raise DecideError(f"unknown module {module!r}; expected one of {', '.join(MODULES)}")
    if isinstance(sentence, str):
        sentence = parse_formula(sentence)
    fv = free_vars(sentence)
    if fv:
        raise DecideError(f"sentence has free variables: {', '.join(sorted(fv))}")
    elim = _Eliminator(budget)
    clauses = elim.dnf(_translate(sentence))
    return any(
        all(_truth(("lit", s)) for s in pos) and not any(_truth(("lit", s)) for s in negs)
        for pos, negs, _ in clauses
    )
