from fractions import Fraction as F

import pytest

from stfib import STParams

# Positive-discriminant grid: >= 20 pairs, perfect-square discriminants
# included ((3,-2), (4,-3), (5,-6), (7,-12), (3,4)), negative s, rationals.
POSITIVE_GRID = [
    (1, 1), (2, 1), (1, 2), (3, -2), (1, 3), (3, 1), (4, 1), (2, 3),
    (5, -2), (1, 5), (-1, 1), (-2, 1), (-1, 2), (-3, -2), (4, -3),
    (5, -6), (2, 2), (3, 4), (7, -12), (5, 2), (F(1, 2), 1), (F(3, 2), F(-1, 2)),
]

INTEGER_POSITIVE_GRID = [
    (s, t) for s, t in POSITIVE_GRID if isinstance(s, int) and isinstance(t, int)
]

NEGATIVE_GRID = [(1, -2), (1, -3), (2, -3), (3, -5), (1, -5)]

CLASSICS = {
    "fibonacci": (1, 1),
    "pell": (2, 1),
    "jacobsthal": (1, 2),
    "mersenne": (3, -2),
}


@pytest.fixture(scope="session")
def positive_params():
    return [STParams(s, t) for s, t in POSITIVE_GRID]


@pytest.fixture(scope="session")
def integer_positive_params():
    return [STParams(s, t) for s, t in INTEGER_POSITIVE_GRID]


@pytest.fixture(scope="session")
def negative_params():
    return [STParams(s, t) for s, t in NEGATIVE_GRID]
