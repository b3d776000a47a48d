from collections import Counter
from fractions import Fraction
from math import gcd, lcm

import pytest
from hypothesis import given, settings, strategies as st

from fanoindex.basket import Basket
from fanoindex.classify import (
    ALL_FILTERS,
    DEFAULT_FILTERS,
    classify,
    check_vanishing,
    evaluate,
    index_projection,
    only_cyclic_points,
    run_preset,
    special_search,
    suzuki_filter,
)
from fanoindex.riemann_roch import PolarizedBasket, chi

P3457 = PolarizedBasket(19, Basket.of((3, 1), (4, 1), (5, 2), (7, 3)))

LEMMA_LIST = {
    8: [(3, 3, 5), (3, 3, 5, 9), (3, 5, 11), (3, 7), (3, 9), (5, 7), (7, 11), (7, 13), (11,)],
    9: [(2, 4, 5), (2, 2, 2, 5, 7), (2, 5, 13)],
    10: [(7, 11)],
    11: [(2, 3, 5), (2, 5, 7), (2, 2, 3, 4, 7)],
    13: [(3, 4, 5), (2, 3, 3, 5, 7)],
    17: [(2, 3, 5, 7)],
    19: [(3, 4, 5, 7)],
}

PROP_TABLE = [
    (9, (2, 4, 5), "1/20", [0, 1, 2, 4, 6, 8, 11], 19),
    (9, (2, 2, 2, 5, 7), "1/70", [-1, 0, 0, 1, 1, 2, 3], 5),
    (10, (7, 11), "2/77", [-1, 0, 1, 1, 3, 4, 6], 13),
    (11, (2, 3, 5), "1/30", [0, 1, 2, 3, 5, 7, 9], 23),
    (11, (2, 5, 7), "1/70", [0, 0, 0, 1, 2, 3, 4], 10),
    (11, (2, 2, 3, 4, 7), "1/84", [-1, 0, 0, 1, 1, 2, 3], 8),
    (13, (3, 4, 5), "1/60", [0, 0, 1, 2, 3, 4, 5], 19),
    (13, (2, 3, 3, 5, 7), "1/210", [-1, -1, 0, 0, 0, 1, 1], 5),
    (17, (2, 3, 5, 7), "1/210", [-1, 0, 0, 0, 1, 1, 2], 12),
    (19, (3, 4, 5, 7), "1/420", [-1, -1, 0, 0, 0, 0, 1], 8),
]


def test_vanishing_examples():
    assert check_vanishing(P3457)
    bad = PolarizedBasket(19, Basket.of((2, 1)))
    assert not check_vanishing(bad)
    # confirm by evaluating chi directly
    vals = [chi(bad, t) for t in range(-18, 39)]
    assert any(v.denominator != 1 or v < 0 for v in vals[19:]) or any(v != 0 for v in vals[:18])


def test_suzuki_examples():
    pb = PolarizedBasket(9, Basket.of((2, 1), (5, 2), (13, 4)))
    assert pb.a_cubed == Fraction(9, 130) and pb.kc2 == Fraction(621, 130)
    assert (4 * 81 - 27) * pb.a_cubed == Fraction(2673, 130)
    assert 4 * pb.kc2 == Fraction(1242, 65)
    assert not suzuki_filter(pb)
    assert suzuki_filter(P3457)
    assert suzuki_filter(PolarizedBasket(9, Basket.of((2, 1), (4, 1), (5, 2))))


def test_lemma_list_reproduced():
    cands = run_preset("lemma-comput")
    got = Counter(index_projection(cands))
    want = Counter((q, idx) for q, rows in LEMMA_LIST.items() for idx in rows)
    assert got == want
    assert all(c.torsion_free for c in cands)
    # (3,5,11) for q=8 comes with two admissible b-assignments
    assert sum(1 for c in cands if (c.q, c.indices) == (8, (3, 5, 11))) == 2
    assert len(cands) == 21


def test_prop_table_reproduced():
    cands = run_preset("prop-comput")
    rows = [
        (c.q, c.indices, f"{c.a_cubed.numerator}/{c.a_cubed.denominator}", list(c.dims[:7]), c.dim_minus_k)
        for c in cands
    ]
    assert sorted(rows) == sorted(PROP_TABLE)


def test_classify_examples():
    [c17] = classify(17, 17)
    assert c17.indices == (2, 3, 5, 7) and c17.a_cubed == Fraction(1, 210)
    [c10] = classify(10, 10)
    assert c10.indices == (7, 11) and c10.a_cubed == Fraction(2, 77)
    [c19] = classify(19, 19)
    assert c19.dims[:7] == (-1, -1, 0, 0, 0, 0, 1) and c19.dim_minus_k == 8


def test_suzuki_removes_only_the_q9_basket():
    plain = classify(9, 19)
    strict = classify(9, 19, DEFAULT_FILTERS | {"suzuki"})
    gone = [c for c in plain if c not in strict]
    assert [(c.q, c.indices) for c in gone] == [(9, (2, 5, 13))]


def test_special_searches():
    assert [(c.q, c.indices, c.a_cubed) for c in special_search(5, 2)] == [(5, (2,), Fraction(1, 2))]
    assert [(c.q, c.indices, c.a_cubed) for c in special_search(7, 1)] == [(7, (2, 3), Fraction(1, 6))]
    assert special_search(9, 1) == []


def test_candidate_invariants():
    for c in classify(5, 19):
        pb = c.polarized
        assert c.q in {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 17, 19}
        g = lcm(1, *c.indices)
        assert gcd(g, c.q) == 1 and (g * c.a_cubed).denominator == 1
        assert c.q**3 * c.a_cubed <= Fraction(125, 2)
        assert all(chi(pb, t).denominator == 1 for t in range(1 - c.q, 2 * c.q + 1))
        assert all(d >= -1 for d in c.dims)


def test_output_sorted_and_deterministic():
    a = classify(8, 19)
    assert a == sorted(a, key=lambda c: c.sort_key()) == classify(8, 19)


def test_worker_count_does_not_change_output():
    assert classify(13, 19, workers=2) == classify(13, 19, workers=1)


def test_worker_env(monkeypatch):
    from fanoindex.classify import worker_count

    monkeypatch.setenv("FANOINDEX_WORKERS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("FANOINDEX_WORKERS", "junk")
    assert worker_count() == 1


def test_bad_ranges_and_filters():
    for lo, hi in ((2, 5), (9, 8), (10, 20)):
        with pytest.raises(ValueError):
            classify(lo, hi)
    with pytest.raises(ValueError):
        classify(9, 9, {"nonsense"})


@settings(max_examples=25)
@given(st.sets(st.sampled_from(sorted(ALL_FILTERS))), st.sets(st.sampled_from(sorted(ALL_FILTERS))), st.integers(13, 19))
def test_filter_monotonicity(s1, extra, q):
    small = classify(q, q, s1, max_weight=10)
    big = classify(q, q, s1 | extra, max_weight=10)
    assert set(big) <= set(small)


def test_evaluate_skips_non_coprime_points():
    assert evaluate(10, Basket.of((5, 2)), frozenset()) is None


def test_only_cyclic_points():
    assert only_cyclic_points((3, 4, 5, 7))
    assert not only_cyclic_points((2, 2, 3, 4, 7))
    assert not only_cyclic_points((2, 4, 5))
    assert only_cyclic_points(())
