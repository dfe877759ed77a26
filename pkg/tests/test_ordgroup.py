from __future__ import annotations

import pytest

from conftest import random_vec
from cutval.errors import RankMismatchError, StructuralError
from cutval.ordgroup import (format_group_element, group_add, group_neg,
                             lex_compare, parse_group_element, zero)
from cutval.sampling import SplitMix64


def test_lex_compare_examples():
    assert lex_compare((1, -5), (2, 100)) == -1
    assert lex_compare((3, 7), (3, 7)) == 0
    assert lex_compare((0, 9), (0, 2)) == 1


def test_group_law_examples():
    assert group_add((1, 2), (-1, 3)) == (0, 5)
    assert group_neg((4, -7)) == (-4, 7)
    a = (4, -7)
    assert group_add(a, group_neg(a)) == (0, 0)


def test_rank_mismatch():
    with pytest.raises(RankMismatchError):
        lex_compare((1,), (1, 2))
    with pytest.raises(RankMismatchError):
        group_add((1,), (1, 2))


def test_total_order_and_translation_invariance():
    rng = SplitMix64(101)
    for _ in range(2000):
        rank = rng.choice((1, 2, 3))
        a, b, c = (random_vec(rng, rank) for _ in range(3))
        cmp_ab = lex_compare(a, b)
        assert cmp_ab in (-1, 0, 1)
        assert cmp_ab == -lex_compare(b, a)
        if cmp_ab < 0:
            assert lex_compare(group_add(a, c), group_add(b, c)) < 0
        # associativity / commutativity
        assert group_add(group_add(a, b), c) == group_add(a, group_add(b, c))
        assert group_add(a, b) == group_add(b, a)


def test_text_round_trip():
    rng = SplitMix64(5)
    for _ in range(200):
        v = random_vec(rng, rng.choice((1, 2, 3)), bound=10 ** 6)
        assert parse_group_element(format_group_element(v)) == v
    assert format_group_element((3, -1)) == "(3,-1)"
    assert parse_group_element("(3, -1)") == (3, -1)
    with pytest.raises(StructuralError):
        parse_group_element("3,-1")
    assert zero(2) == (0, 0)
