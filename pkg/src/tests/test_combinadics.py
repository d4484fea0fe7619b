from itertools import combinations, product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fermion_entropy.combinadics import binomial, merge_sign, permutation_sign, rank, subsets, unrank, validate_subset


@pytest.mark.parametrize("n, k, expected", [(5, 2, 10), (7, 0, 1), (4, 6, 0)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_reports_overflow():
    with pytest.raises(OverflowError):
        binomial(100, 50)
    with pytest.raises(ValueError):
        binomial(-1, 2)


@pytest.mark.parametrize("subset, expected", [((0, 1), 0), ((1, 2), 3), ((2, 3), 5)])
def test_rank(subset, expected):
    assert rank(subset, 4) == expected


@pytest.mark.parametrize("r, expected", [(0, (0, 1)), (4, (1, 3)), (5, (2, 3))])
def test_unrank(r, expected):
    assert unrank(r, 4, 2) == expected


@pytest.mark.parametrize("subset", [(1, 1), (2, 0), (0, 4), (-1, 2)])
def test_rank_rejects_invalid_subsets(subset):
    with pytest.raises(ValueError):
        rank(subset, 4)


def test_unrank_rejects_out_of_range():
    with pytest.raises(ValueError):
        unrank(6, 4, 2)
    with pytest.raises(ValueError):
        unrank(-1, 4, 2)


def test_rank_unrank_exhaustive():
    for d in range(0, 15):
        for k in range(0, d + 1):
            if binomial(d, k) > 10 ** 4:
                continue
            for r, subset in enumerate(combinations(range(d), k)):
                assert rank(subset, d) == r
                assert unrank(r, d, k) == subset


def test_subsets_follow_rank_order():
    assert subsets(4, 2) == ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))


@given(st.data())
def test_rank_is_monotone_in_lex_order(data):
    d = data.draw(st.integers(min_value=1, max_value=12))
    k = data.draw(st.integers(min_value=0, max_value=d))
    a = tuple(sorted(data.draw(st.sets(st.integers(0, d - 1), min_size=k, max_size=k))))
    b = tuple(sorted(data.draw(st.sets(st.integers(0, d - 1), min_size=k, max_size=k))))
    if a < b:
        assert rank(a, d) < rank(b, d)
    elif a == b:
        assert rank(a, d) == rank(b, d)
    else:
        assert rank(a, d) > rank(b, d)


@pytest.mark.parametrize(
    "a, c, expected",
    [
        ((0, 2), (1,), ((0, 1, 2), -1)),
        ((0, 1), (2,), ((0, 1, 2), 1)),
        ((3,), (0, 1), ((0, 1, 3), 1)),
    ],
)
def test_merge_sign(a, c, expected):
    assert merge_sign(a, c) == expected


def test_merge_sign_rejects_overlap():
    with pytest.raises(ValueError):
        merge_sign((0, 1), (1, 2))


def test_merge_sign_antisymmetry_exhaustive():
    d = 8
    # each orbital goes to a, to c, or to neither
    for assignment in product(range(3), repeat=d):
        a = tuple(i for i, slot in enumerate(assignment) if slot == 1)
        c = tuple(i for i, slot in enumerate(assignment) if slot == 2)
        _, forward = merge_sign(a, c)
        _, backward = merge_sign(c, a)
        assert forward * backward == (-1) ** (len(a) * len(c))


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((2, 0, 1)) == 1


def test_validate_subset():
    assert validate_subset([0, 3, 5], 6) == (0, 3, 5)
    with pytest.raises(ValueError):
        validate_subset([0, 3, 6], 6)
