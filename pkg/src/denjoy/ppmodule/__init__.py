"""First-order theory of C, L1 and Den as modules over Q[X].

``X`` acts as the indefinite integral ``x -> (t -> int_a^t x)``.
"""

from denjoy.ppmodule.decide import BudgetExceeded, DecideError, decide
from denjoy.ppmodule.poly import PolyQ, strip_x_power
from denjoy.ppmodule.reduce import (
    Full,
    Index,
    InverseImage,
    Kernel,
    XPower,
    Zero,
    classify_basic,
    classify_kernel,
    invariant_index,
    meet,
    reduce_pp,
    subgroup_of_pp,
)
from denjoy.ppmodule.syntax import ParseError, PPFormula, parse, parse_formula, parse_poly, parse_pp, show
