"""Classification of one-variable pp-definable subgroups.

In every module considered here ``X`` acts injectively and each polynomial
with nonzero constant term acts bijectively.  A polynomial therefore acts
like ``X^v`` times an automorphism, and the one-variable pp-definable
subgroups form the chain ``0 < ... < X^2 M < X M < M``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from denjoy.ppmodule.poly import ZERO_POLY, PolyQ, strip_x_power
from denjoy.ppmodule.syntax import PP, PPFormula


# --- classes -----------------------------------------------------------------


@dataclass(frozen=True)
class Zero:
    def __str__(self):
        return "Zero"


@dataclass(frozen=True)
class XPower:
    ell: int

    def __post_init__(self):
        if self.ell < 1:
            raise ValueError("XPower needs ell >= 1")

    def __str__(self):
        return f"XPower({self.ell})"


@dataclass(frozen=True)
class Full:
    def __str__(self):
        return "Full"


SubgroupClass = Union[Zero, XPower, Full]


def _key(c: SubgroupClass):
    if isinstance(c, Zero):
        return (0, 0)
    if isinstance(c, XPower):
        return (1, -c.ell)
    return (2, 0)


def contained(g: SubgroupClass, h: SubgroupClass) -> bool:
    return _key(g) <= _key(h)


def meet(*classes: SubgroupClass) -> SubgroupClass:
    return min(classes, key=_key, default=Full())


def classify_kernel(p: PolyQ) -> SubgroupClass:
    return Full() if p.is_zero() else Zero()


def classify_basic(p: PolyQ, q: PolyQ) -> SubgroupClass:
    """Class of ``{x : exists y, p x + q y = 0}``, i.e. ``p^-1(q M)``."""
    if p.is_zero():
        return Full()
    if q.is_zero():
        return classify_kernel(p)
    kp, _ = strip_x_power(p)
    kq, _ = strip_x_power(q)
    ell = kq - min(kp, kq)
    return XPower(ell) if ell else Full()


class Index:
    ONE = "One"
    INFINITE = "Infinite"


def invariant_index(g: SubgroupClass, h: SubgroupClass) -> str:
    """``[G : G n H]``: one when ``G`` lies in ``H``, otherwise infinite.

    The infinite cases rest on ``[X^k M : X^(k+1) M]`` being infinite, which
    is taken as an axiom about the modules.
    """
    return Index.ONE if contained(g, h) else Index.INFINITE


# --- basic forms ---------------------------------------------------------------


@dataclass(frozen=True)
class Kernel:
    p: PolyQ

    def classify(self):
        return classify_kernel(self.p)

    def __str__(self):
        return f"Kernel({self.p})"


@dataclass(frozen=True)
class InverseImage:
    p: PolyQ
    q: PolyQ

    def classify(self):
        return classify_basic(self.p, self.q)

    def __str__(self):
        return f"InverseImage({self.p}, {self.q})"


BasicForm = Union[Kernel, InverseImage]


def smith_rows(a: list, B: list) -> tuple[list, list]:
    """Diagonalise ``B`` by unimodular row and column operations over Q[X].

    Row operations are mirrored on the column vector ``a``.  Returns
    ``(a', pivots)``: rows ``i < len(pivots)`` read ``a'_i x + d_i z_i = 0``
    and the remaining rows read ``a'_i x = 0``.
    """
    a = list(a)
    B = [list(r) for r in B]
    rows = len(B)
    cols = len(B[0]) if B else 0
    pivots = []
    t = 0
    while t < min(rows, cols):
        entries = [(B[i][j].degree, i, j) for i in range(t, rows) for j in range(t, cols) if not B[i][j].is_zero()]
        if not entries:
            break
        _, i0, j0 = min(entries)
        B[t], B[i0] = B[i0], B[t]
        a[t], a[i0] = a[i0], a[t]
        for r in B:
            r[t], r[j0] = r[j0], r[t]
        while True:
            d = B[t][t]
            for i in range(t + 1, rows):
                if not B[i][t].is_zero():
                    q = B[i][t] // d
                    B[i] = [x - q * y for x, y in zip(B[i], B[t])]
                    a[i] = a[i] - q * a[t]
            for j in range(t + 1, cols):
                if not B[t][j].is_zero():
                    q = B[t][j] // d
                    for r in B:
                        r[j] = r[j] - q * r[t]
            rest = [(B[i][t].degree, "r", i) for i in range(t + 1, rows) if not B[i][t].is_zero()]
            rest += [(B[t][j].degree, "c", j) for j in range(t + 1, cols) if not B[t][j].is_zero()]
            if not rest:
                break
            _, kind, k = min(rest)
            if kind == "r":
                B[t], B[k] = B[k], B[t]
                a[t], a[k] = a[k], a[t]
            else:
                for r in B:
                    r[t], r[k] = r[k], r[t]
        pivots.append(B[t][t])
        t += 1
    return a, pivots


def _matrix(phi: PPFormula, var: str):
    bound = list(phi.bound_vars)
    a, B = [], []
    for row in phi.equations:
        d = dict(row)
        if not d:
            continue
        a.append(d.get(var, ZERO_POLY))
        B.append([d.get(z, ZERO_POLY) for z in bound])
    return a, B


def reduce_pp(phi) -> list:
    """Equivalent conjunction of basic forms for a one-free-variable pp-formula."""
    if isinstance(phi, PP):
        phi = PPFormula.from_pp(phi)
    if len(phi.free_vars) > 1:
        raise ValueError(f"reduce_pp needs one free variable, got {list(phi.free_vars)}")
    if not phi.free_vars:
        return []
    var = phi.free_vars[0]
    a, B = _matrix(phi, var)
    if not phi.bound_vars:
        B = [[] for _ in a]
    a, pivots = smith_rows(a, B)
    out = []
    for i, p in enumerate(a):
        if p.is_zero():
            continue
        if i < len(pivots):
            d = pivots[i]
            lc = d.lead
            out.append(InverseImage(p.scale(1 / lc), d.monic()))
        else:
            out.append(Kernel(p.monic()))
    return list(dict.fromkeys(out))


def subgroup_of_pp(phi) -> SubgroupClass:
    if isinstance(phi, (list, tuple)):
        forms = phi
    else:
        forms = reduce_pp(phi)
    return meet(*(f.classify() for f in forms))
