from __future__ import annotations

import pytest

from cutval.basedomain import integers, p_local, valuation_ring
from cutval.cuts import at_most, bottom, top
from cutval.numfield import ValuedField
from cutval.sampling import SplitMix64


@pytest.fixture
def field_q():
    return ValuedField("Q", 2)


@pytest.fixture
def field_qt():
    return ValuedField("Qt", 2)


@pytest.fixture
def z():
    return integers()


@pytest.fixture
def z2():
    return p_local(2)


@pytest.fixture
def ov_qt(field_qt):
    return valuation_ring(field_qt)


def random_cut(rng: SplitMix64, rank: int, bound: int = 3):
    """Fuzzed canonical descriptor; extremes drawn occasionally."""
    r = rng.randrange(12)
    if r == 0:
        return bottom(rank)
    if r == 1:
        return top(rank)
    level = rng.randrange(rank)
    b = tuple(rng.randint(-bound, bound) for _ in range(rank - level))
    return at_most(rank, level, b)


def random_vec(rng: SplitMix64, rank: int, bound: int = 6):
    return tuple(rng.randint(-bound, bound) for _ in range(rank))
