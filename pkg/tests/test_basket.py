from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd

import pytest
from hypothesis import given, strategies as st

from fanoindex.basket import (
    Basket,
    BasketPoint,
    InvalidPointError,
    MalformedBasketError,
    PointRangeError,
    basket_from_json,
    basket_to_json,
    candidate_points,
    enumerate_baskets,
    gorenstein_index,
    kc2,
    make_point,
    parse_basket,
    partition_keys,
)

Q19 = Basket.of((3, 1), (4, 1), (5, 2), (7, 3))


def test_make_point_examples():
    assert make_point(2, 1) == BasketPoint(2, 1)
    assert make_point(7, 4) == BasketPoint(7, 3)
    with pytest.raises(InvalidPointError):
        make_point(4, 2)
    with pytest.raises(PointRangeError):
        make_point(5, 7)
    with pytest.raises(PointRangeError):
        make_point(1, 1)


@given(st.integers(2, 60), st.integers(1, 59))
def test_make_point_idempotent(r, b):
    if not b < r or gcd(r, b) != 1:
        return
    p = make_point(r, b)
    assert make_point(p.r, p.b) == p
    assert p.b == min(b, r - b)


def test_kc2_examples():
    assert kc2(Basket()) == 24
    assert kc2(Basket.of((2, 1))) == Fraction(45, 2)
    # 24 - (8/3 + 15/4 + 24/5 + 48/7) computed by hand over the denominator 420
    assert kc2(Q19) == Fraction(24 * 420 - (1120 + 1575 + 2016 + 2880), 420) == Fraction(2489, 420)


def test_kc2_can_go_negative():
    heavy = Basket.of((5, 1), (5, 1), (5, 1), (5, 1), (5, 1), (5, 2))
    assert kc2(heavy) < 0


@given(st.lists(st.sampled_from(candidate_points(8)), max_size=4), st.sampled_from(candidate_points(24)))
def test_kc2_strictly_decreases(points, extra):
    b = Basket(tuple(points))
    assert kc2(Basket((*b.points, extra))) < kc2(b)


def test_gorenstein_index():
    assert gorenstein_index(Basket()) == 1
    assert gorenstein_index(Basket.of((2, 1), (3, 1))) == 6
    assert gorenstein_index(Q19) == 420


def test_enumeration_small_bounds():
    as_lists = lambda w: [[(p.r, p.b) for p in b] for b in enumerate_baskets(w)]
    assert as_lists(0) == [[]]
    assert as_lists(Fraction(3, 2)) == [[], [(2, 1)]]
    assert as_lists(3) == [[], [(2, 1)], [(2, 1), (2, 1)], [(3, 1)]]


@pytest.mark.parametrize("bound", [Fraction(3, 2), 3, 4, Fraction(9, 2), 5])
def test_enumeration_matches_brute_force(bound):
    bound = Fraction(bound)
    pts = [BasketPoint(r, b) for r in range(2, 7) for b in range(1, r // 2 + 1) if gcd(r, b) == 1]
    expected = set()
    for size in range(0, 5):
        for combo in combinations_with_replacement(pts, size):
            if sum((p.weight for p in combo), Fraction(0)) <= bound:
                expected.add(tuple(sorted(combo)))
    got = [b.points for b in enumerate_baskets(bound)]
    assert len(got) == len(set(got))
    assert set(got) == expected


def test_enumeration_is_sorted_and_deterministic():
    a = [b.points for b in enumerate_baskets(10)]
    assert a == sorted(a)
    assert a == [b.points for b in enumerate_baskets(10)]


def test_partition_streams_are_disjoint_and_cover():
    full = [b.points for b in enumerate_baskets(9)]
    parts = []
    for key in partition_keys(9):
        parts.extend(b.points for b in enumerate_baskets(9, first=key))
    assert sorted(parts) == full


def test_full_enumeration_size():
    assert all(b.weight <= 24 for b in enumerate_baskets(24))
    assert sum(1 for _ in enumerate_baskets(24)) == 8338


def test_text_and_json_forms():
    assert parse_basket("3:1+4:1+5:2+7:3") == Q19
    assert parse_basket("7:4+3:1") == Basket.of((3, 1), (7, 3))
    assert basket_from_json(basket_to_json(Q19)) == Q19
    assert parse_basket('[{"r": 2, "b": 1}]') == Basket.of((2, 1))
    assert parse_basket("0") == Basket()
    for bad in ("3:x", "4:2", "3", "[{", '[{"r": 2}]'):
        with pytest.raises(MalformedBasketError):
            parse_basket(bad)
