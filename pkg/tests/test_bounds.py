import pytest

from ekrkit import (
    cross_bound_product,
    ekr_bound,
    is_t_intersecting,
    is_up_set,
    rwise_bound,
    satisfies_relaxed_pairwise,
    star_family,
    tightness_example,
    uniform_ekr_bound,
)
from ekrkit.sets import elements_of

from conftest import all_sets


def brute_star(n, k, t):
    core = (1 << t) - 1
    return sorted(m for m in all_sets(n, k) if m & core == core)


@pytest.mark.parametrize("args,expected", [((6, 2, 1), 6), ((7, 4, 4), 1), ((5, 3, 2), 4)])
def test_ekr_bound_examples(args, expected):
    assert ekr_bound(*args) == expected


def test_ekr_bound_rejects_order():
    with pytest.raises(ValueError):
        ekr_bound(3, 2, 3)
    with pytest.raises(ValueError):
        ekr_bound(3, 4, 1)


def test_uniform_examples():
    assert uniform_ekr_bound(6, 2, 1) == (5, True)
    assert uniform_ekr_bound(4, 2, 2).value == 1
    assert uniform_ekr_bound(4, 2, 1) == (3, True)
    assert uniform_ekr_bound(5, 3, 1) == (6, False)


def test_cross_examples():
    assert cross_bound_product(6, (2, 2), 1) == 36
    assert cross_bound_product(6, (3,), 2) == ekr_bound(6, 3, 2)
    assert cross_bound_product(6, (2, 3), 1) == 96
    with pytest.raises(ValueError):
        cross_bound_product(4, (1, 2), 2)


@pytest.mark.parametrize("args,expected", [((4, 2), 4), ((9, 1), 1), ((6, 2), 6)])
def test_rwise_examples(args, expected):
    assert rwise_bound(*args) == expected


def test_star_examples():
    assert star_family(6, 2, 1).as_lists() == [[1]] + [[1, j] for j in range(2, 7)]
    assert star_family(7, 3, 3).as_lists() == [[1, 2, 3]]
    assert sorted(star_family(5, 3, 2).as_lists()) == [[1, 2], [1, 2, 3], [1, 2, 4], [1, 2, 5]]


def test_star_matches_bound_and_enumeration():
    for n in range(1, 13):
        for k in range(0, n + 1):
            for t in range(0, k + 1):
                star = star_family(n, k, t)
                assert len(star) == ekr_bound(n, k, t)
                if n <= 8:
                    assert sorted(star.members) == brute_star(n, k, t)
                    assert is_t_intersecting(star, t)
                    assert is_up_set(star)


def test_telescoping():
    for n in range(1, 21):
        for k in range(1, n + 1):
            for t in range(0, k):
                assert ekr_bound(n, k, t) == uniform_ekr_bound(n, k, t).value + ekr_bound(n, k - 1, t)


def test_tightness_examples():
    fam = tightness_example(5, 3, 2)
    assert sorted(map(tuple, fam.as_lists())) == sorted([(1, 2), (1, 2, 3), (1, 2, 4), (1, 2, 5), (1,), (2,)])
    lone = {1: 0b1, 2: 0b10}
    assert (lone[1] & lone[2]).bit_count() == 0 and (lone[1] ^ lone[2]).bit_count() == 2
    # oracle: the star of (6,4,2) by enumeration plus the two (t-1)-subsets of {1,2}
    assert len(tightness_example(6, 4, 2)) == len(brute_star(6, 4, 2)) + 2 == 13


def test_tightness_max_close_pair_distance():
    for n in range(4, 9):
        for k in range(3, n):
            for t in range(2, k):
                fam = tightness_example(n, k, t)
                assert len(fam) == ekr_bound(n, k, t) + t
                worst = max(
                    (a ^ b).bit_count()
                    for i, a in enumerate(fam.members)
                    for b in fam.members[i + 1:]
                    if (a & b).bit_count() <= t - 1
                )
                assert worst == k - t + 1
                assert satisfies_relaxed_pairwise(fam, k + 1, t)
                assert not satisfies_relaxed_pairwise(fam, k, t)


def test_tightness_rejects_regime():
    for bad in [(5, 3, 1), (5, 3, 3), (3, 3, 2)]:
        with pytest.raises(ValueError):
            tightness_example(*bad)
