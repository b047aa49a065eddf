"""Executable content around Denjoy-integrable functions of prescribed rank.

Subpackages and modules:

* :mod:`denjoy.ordinal` -- Cantor normal form ordinals below epsilon_0.
* :mod:`denjoy.closedset` -- closed sets presented by their complementary gaps.
* :mod:`denjoy.denfun` -- the rank-alpha functions as lazy expression trees.
* :mod:`denjoy.derivative` -- derivative operators, rank certificates, AC* falsifier.
* :mod:`denjoy.quadcheck` -- structural integration and lemma verification.
* :mod:`denjoy.ppmodule` -- decision procedure for the Q[X]-module theory.
"""

from denjoy.ordinal import Ordinal, parse_ordinal
from denjoy.closedset import IntervalQ, SkeletonSet, PrePartition
from denjoy.enclosure import Enclosure
from denjoy.denfun import ConstructedFunction, build_rank

__all__ = [
    "Ordinal",
    "parse_ordinal",
    "IntervalQ",
    "SkeletonSet",
    "PrePartition",
    "Enclosure",
    "ConstructedFunction",
    "build_rank",
]

__version__ = "0.1.0"
