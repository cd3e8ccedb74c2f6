"""Fixed seeds shipped with the tool.

A vanishing coefficient for one null pair or one singular pair says
nothing about whether the lift itself is zero: vary the seed or the word
before drawing conclusions.
"""
from __future__ import annotations

from fractions import Fraction

from .scalars import T

# r = (r1, ..., r6) for make_null_pair
DEFAULT_R = (1, 0, 0, 0, 0, 0)
NULL_SEEDS = (
    (1, 0, 0, 0, 0, 0),
    (0, 1, 0, 0, 0, 0),
    (1, 1, 0, 0, 0, 0),
    (1, 2, 1, 0, -1, 0),
    (2, -1, 0, 1, 0, 3),
    (T, 1, Fraction(1, 2), 0, 2, -1),
)

# words for make_singular_pair: (generator index, coefficient)
DEFAULT_WORD: tuple = ()
PAIR_WORDS = (
    (),
    ((0, T), (9, 1), (17, T)),
    ((3, Fraction(1, 2)), (12, -1), (20, 2)),
)
