from itertools import combinations

import pytest

from ekrkit import (
    GuardExceeded,
    SetFamily,
    are_cross_t_intersecting,
    ekr_bound,
    is_r_wise_intersecting,
    is_t_intersecting,
    max_cross_product,
    max_family_pairwise,
    max_family_rwise,
    max_family_uniform,
    satisfies_cross_relaxed,
    satisfies_relaxed_pairwise,
    satisfies_relaxed_rwise,
    star_family,
)
from ekrkit.clique import max_clique
from ekrkit.search import sets_up_to

from conftest import all_sets


def brute_max(vertices, ok):
    """Largest qualifying subfamily and the lexicographically least one attaining it."""
    best, witness = 0, ()
    n = len(vertices)
    for size in range(n, 0, -1):
        for combo in combinations(range(n), size):
            if ok([vertices[i] for i in combo]):
                return size, combo
    return best, witness


def pairwise_ok(pred):
    return lambda sets: all(pred(a, b) for a, b in combinations(sets, 2))


def test_pairwise_examples():
    out = max_family_pairwise(6, 2, 1, "relaxed-thm12")
    assert out.optimum == 6 == ekr_bound(6, 2, 1)
    assert out.proof_complete
    assert max_family_pairwise(4, 2, 2, "strict-t-intersecting").optimum == 1
    for n in range(2, 6):
        assert max_family_uniform(n, 2, 2).optimum == 1


def test_uniform_examples():
    assert max_family_uniform(6, 2, 1).optimum == 5
    assert max_family_uniform(4, 2, 1).optimum == 3
    assert max_family_uniform(5, 4, 4).optimum == 1


@pytest.mark.parametrize("n,k,t", [(3, 2, 1), (4, 2, 1), (4, 2, 2), (3, 3, 1), (4, 3, 2), (4, 1, 1)])
def test_pairwise_against_brute_force(n, k, t):
    verts = sets_up_to(n, k)
    for mode, pred in [
        ("strict-t-intersecting", lambda a, b: (a & b).bit_count() >= t),
        ("relaxed-thm12", lambda a, b: (a & b).bit_count() >= t or (a ^ b).bit_count() <= k - t),
    ]:
        size, combo = brute_max(verts, pairwise_ok(pred))
        out = max_family_pairwise(n, k, t, mode)
        assert out.optimum == size
        assert out.witness.members == tuple(verts[i] for i in combo)


def test_witnesses_reverify():
    for n, k, t in [(5, 2, 1), (6, 3, 2), (7, 3, 1)]:
        out = max_family_pairwise(n, k, t, "relaxed-thm12")
        assert len(out.witness) == out.optimum and satisfies_relaxed_pairwise(out.witness, k, t)
        out = max_family_pairwise(n, k, t, "strict-t-intersecting")
        assert len(out.witness) == out.optimum and is_t_intersecting(out.witness, t)
        out = max_family_uniform(n, k, t)
        assert is_t_intersecting(out.witness, t) and all(m.bit_count() == k for m in out.witness)


def test_monotone_in_n():
    for k, t in [(2, 1), (3, 2), (3, 1)]:
        prev = 0
        for n in range(k, 9):
            cur = max_family_pairwise(n, k, t).optimum
            assert cur >= prev
            prev = cur


def test_deterministic():
    a = max_family_pairwise(8, 3, 1)
    b = max_family_pairwise(8, 3, 1)
    assert a == b


def test_guards():
    with pytest.raises(GuardExceeded):
        max_family_pairwise(20, 4, 1)
    with pytest.raises(GuardExceeded):
        max_family_rwise(10, 5, 3)
    with pytest.raises(GuardExceeded):
        max_cross_product(8, (4, 4), 1)
    with pytest.raises(ValueError):
        max_family_pairwise(6, 2, 1, "nope")


def test_rwise_examples():
    out = max_family_rwise(4, 2, 3, "relaxed-thm16")
    assert out.optimum == 4
    assert satisfies_relaxed_rwise(out.witness, 2, 3)
    assert max_family_rwise(6, 2, 2, "strict-r-wise").optimum == max_family_pairwise(6, 2, 1, "strict-t-intersecting").optimum == 6
    assert max_family_rwise(3, 0, 2, "strict-r-wise").optimum == 0
    assert max_family_rwise(3, 0, 2, "relaxed-thm16").optimum == 1


def test_rwise_pairs_relaxed_exceeds_sum():
    # with r = 2 the relaxed rule admits the empty set and all singletons
    out = max_family_rwise(6, 2, 2, "relaxed-thm16")
    assert out.optimum == 7
    assert out.witness.as_lists() == [[]] + [[i] for i in range(1, 7)]


@pytest.mark.parametrize("n,k,r", [(3, 2, 3), (4, 2, 3), (3, 3, 3), (3, 2, 4), (4, 2, 4)])
def test_rwise_against_brute_force(n, k, r):
    verts = sets_up_to(n, k)
    for mode, budget in [("strict-r-wise", None), ("relaxed-thm16", k)]:
        def ok(sets):
            fam = SetFamily.from_masks(n, k, sets)
            return is_r_wise_intersecting(fam, r) if budget is None else satisfies_relaxed_rwise(fam, k, r)
        size, combo = brute_max(verts, ok)
        out = max_family_rwise(n, k, r, mode)
        assert out.optimum == size
        assert out.witness.members == tuple(verts[i] for i in combo)


def _brute_cross(n, k1, k2, t, relaxed):
    left, right = all_sets(n, k1), all_sets(n, k2)
    best = 0
    for s1 in range(1 << len(left)):
        f1 = [left[i] for i in range(len(left)) if s1 >> i & 1]
        for s2 in range(1 << len(right)):
            f2 = [right[i] for i in range(len(right)) if s2 >> i & 1]
            if len(f1) * len(f2) <= best:
                continue
            fams = [SetFamily.from_masks(n, k1, f1), SetFamily.from_masks(n, k2, f2)]
            good = satisfies_cross_relaxed(fams, [k1, k2], t) if relaxed else are_cross_t_intersecting(fams, t)
            if good:
                best = len(f1) * len(f2)
    return best


@pytest.mark.parametrize("n,k1,k2,t", [(2, 1, 2, 1), (3, 1, 2, 1), (3, 2, 2, 1), (3, 2, 2, 2)])
def test_cross_against_brute_force(n, k1, k2, t):
    for mode in ("strict", "relaxed"):
        out = max_cross_product(n, (k1, k2), t, mode)
        assert out.optimum == _brute_cross(n, k1, k2, t, mode == "relaxed")
        fams = out.witness
        assert len(fams[0]) * len(fams[1]) == out.optimum


def test_cross_examples():
    out = max_cross_product(6, (2, 2), 1)
    assert out.optimum >= 36
    star = star_family(6, 2, 1)
    assert len(star) ** 2 <= out.optimum
    assert max_cross_product(3, (3, 3), 3).optimum == 1
    with pytest.raises(ValueError):
        max_cross_product(6, (2, 2, 2), 1)


def test_clique_engine_small_graphs():
    # 5-cycle: clique number 2, lexicographically least edge {0,1}
    adj = [0] * 5
    for i in range(5):
        j = (i + 1) % 5
        adj[i] |= 1 << j
        adj[j] |= 1 << i
    assert max_clique(adj).clique == [0, 1]
    assert max_clique([]).clique == []
    assert max_clique([0, 0, 0]).clique == [0]
