import math
import random
from fractions import Fraction
from itertools import combinations_with_replacement, permutations

import pytest

from ekrkit import (
    ElementSet,
    PairSystem,
    bollobas_sum,
    check_conditions,
    exact_separation_probability,
    mc_separation_estimate,
    properly_separates,
    search_c_prime_violation,
    separation_count,
    verify_disjointness_exact,
)
from ekrkit.bollobas import (
    all_permutation_positions,
    fisher_yates_rows,
    implication_census,
    separation_matrix,
)
from ekrkit.reproduce import classic_system

import numpy as np

SINGLETON_CYCLE = PairSystem.from_lists(3, 0, [([1], [2]), ([2], [3]), ([3], [1])])


def test_classic_conditions():
    rep = check_conditions(classic_system())
    assert (rep.a_holds, rep.b_holds, rep.c_holds, rep.c_prime_holds) == (True, True, True, True)
    assert rep.violations == []


def test_singleton_cycle_conditions():
    rep = check_conditions(SINGLETON_CYCLE)
    assert rep.a_holds and rep.b_holds and rep.c_prime_holds
    assert not rep.c_holds
    assert ((0, 1), "c") in rep.violations


def test_single_pair_conditions():
    rep = check_conditions(PairSystem.from_lists(4, 2, [([1, 2, 3], [2, 3, 4])]))
    assert rep.a_holds and rep.b_holds and rep.c_holds and rep.c_prime_holds
    rep = check_conditions(PairSystem.from_lists(4, 1, [([1, 2, 3], [2, 3, 4])]))
    assert not rep.a_holds


def test_condition_b_both_directions():
    # |A_1 & B_2| = 1 but |A_2 & B_1| = 0
    sys_ = PairSystem.from_lists(4, 1, [([1], [2]), ([3], [1])])
    rep = check_conditions(sys_)
    assert not rep.b_holds


def test_c_implies_c_prime_random():
    rng = random.Random(3)
    for _ in range(2000):
        n = rng.randint(1, 4)
        t = rng.randint(0, 2)
        pairs = [(rng.randrange(1 << n), rng.randrange(1 << n)) for _ in range(rng.randint(0, 4))]
        rep = check_conditions(PairSystem(n, t, tuple(pairs)))
        if rep.c_holds:
            assert rep.c_prime_holds


def test_bollobas_sum_examples():
    assert bollobas_sum(classic_system()) == 1
    assert bollobas_sum(SINGLETON_CYCLE) == Fraction(3, 2)
    assert bollobas_sum(PairSystem.from_lists(3, 1, [([1, 2], [2, 3])])) == Fraction(1, 6)
    assert bollobas_sum(PairSystem(3, 0, ())) == 0


def test_bollobas_sum_disjoint_reduces_to_classic_form():
    rng = random.Random(4)
    for _ in range(500):
        n = rng.randint(1, 8)
        pairs = []
        for _ in range(rng.randint(1, 4)):
            a = rng.randrange(1 << n)
            b = rng.randrange(1 << n) & ~a
            pairs.append((a, b))
        expected = sum(Fraction(1, math.comb(a.bit_count() + b.bit_count(), a.bit_count())) for a, b in pairs)
        assert bollobas_sum(PairSystem(n, 0, tuple(pairs))) == expected


def test_properly_separates_examples():
    a, b = ElementSet.of([1, 2], 3), ElementSet.of([2, 3], 3)
    results = {p: properly_separates(p, a, b) for p in permutations((1, 2, 3))}
    assert [p for p, ok in results.items() if ok] == [(1, 2, 3)]
    same = ElementSet.of([1, 3], 4)
    assert all(properly_separates(p, same, same) for p in permutations((1, 2, 3, 4)))
    assert not properly_separates((2, 1), 0b01, 0b10)
    assert properly_separates((1, 2), 0b01, 0b10)
    with pytest.raises(ValueError):
        properly_separates((1, 1, 2), 0b1, 0b10)


def test_exact_probability_examples():
    assert exact_separation_probability(0b011, 0b110, 3, verify=True) == Fraction(1, 6)
    assert separation_count(0b011, 0b110, 3) == 1
    for n in (1, 3, 5):
        assert exact_separation_probability(0b1, 0b1, n, verify=True) == 1
    assert exact_separation_probability(0b01, 0b10, 2, verify=True) == Fraction(1, 2)
    with pytest.raises(ValueError):
        exact_separation_probability(1, 2, 9, verify=True)


def test_enumeration_paths_agree():
    # scalar enumeration versus vectorised matrix, both independent of the closed form
    for n in range(1, 5):
        pos = all_permutation_positions(n)
        pairs = [(a, b) for a in range(1 << n) for b in range(1 << n)]
        counts = separation_matrix(pos, pairs).sum(axis=0)
        for (a, b), c in zip(pairs, counts):
            assert separation_count(a, b, n) == c


def test_closed_form_spot_checks_n7_n8():
    rng = random.Random(8)
    for n in (7, 8):
        pos = all_permutation_positions(n)
        pairs = [(rng.randrange(1 << n), rng.randrange(1 << n)) for _ in range(12)]
        counts = separation_matrix(pos, pairs).sum(axis=0)
        for (a, b), c in zip(pairs, counts):
            assert Fraction(int(c), math.factorial(n)) == exact_separation_probability(a, b, n)


def test_fisher_yates_rows_are_permutations():
    rng = np.random.Generator(np.random.PCG64(1))
    rows = fisher_yates_rows(rng, 5000, 5)
    assert (np.sort(rows, axis=1) == np.arange(5)).all()
    # every one of the 120 orders shows up
    assert len({tuple(r) for r in rows}) == 120


def test_mc_tight_system():
    est = mc_separation_estimate(classic_system(), 100_000, seed=7)
    assert est.sum_estimate == 1
    assert not est.collision_detected
    for p_hat, p in zip(est.point_estimates, est.exact_reference):
        se = math.sqrt(float(p) * (1 - float(p)) / est.trials)
        assert abs(float(p_hat) - float(p)) <= 5 * se


def test_mc_reproducible_and_thread_independent():
    a = mc_separation_estimate(classic_system(), 40_000, seed=99, threads=1)
    b = mc_separation_estimate(classic_system(), 40_000, seed=99, threads=3)
    c = mc_separation_estimate(classic_system(), 40_000, seed=99)
    assert a == b == c
    d = mc_separation_estimate(classic_system(), 40_000, seed=100)
    assert d.hits_per_pair != a.hits_per_pair


def test_mc_single_pair():
    system = PairSystem.from_lists(5, 1, [([1, 2], [2, 3])])
    est = mc_separation_estimate(system, 30_000, seed=1)
    p = 1 / 6
    assert abs(float(est.point_estimates[0]) - p) <= 3 * math.sqrt(p * (1 - p) / 30_000)


def test_mc_reports_collision_when_b_fails():
    system = PairSystem.from_lists(3, 0, [([1], [2]), ([1], [3])])
    assert not check_conditions(system).c_holds
    est = mc_separation_estimate(system, 2000, seed=5)
    assert est.collision_detected
    assert not verify_disjointness_exact(system)


def test_verify_disjointness_examples():
    assert verify_disjointness_exact(classic_system())
    assert not verify_disjointness_exact(SINGLETON_CYCLE)
    assert verify_disjointness_exact(PairSystem.from_lists(3, 0, [([1], [2])]))
    with pytest.raises(ValueError):
        verify_disjointness_exact(PairSystem.from_lists(9, 0, [([1], [2]), ([2], [1])]))


def test_disjointness_implies_sum_bound_random():
    rng = random.Random(12)
    for _ in range(300):
        n = rng.randint(1, 5)
        pairs = tuple((rng.randrange(1 << n), rng.randrange(1 << n)) for _ in range(rng.randint(1, 4)))
        system = PairSystem(n, 0, pairs)
        if verify_disjointness_exact(system):
            assert bollobas_sum(system) <= 1


def test_hypotheses_give_disjoint_events():
    rng = random.Random(13)
    hits = 0
    for _ in range(4000):
        n = rng.randint(1, 4)
        t = rng.randint(0, 2)
        pairs = tuple((rng.randrange(1 << n), rng.randrange(1 << n)) for _ in range(rng.randint(2, 3)))
        system = PairSystem(n, t, pairs)
        rep = check_conditions(system)
        third = rep.c_holds if t == 0 else rep.c_prime_holds
        if rep.a_holds and rep.b_holds and third:
            hits += 1
            assert verify_disjointness_exact(system)
    assert hits > 50


def test_c_prime_search_examples():
    out = search_c_prime_violation(1, 1, 3)
    assert out.optimum == 3
    assert out.details["sum"] == Fraction(3, 2) == 2 - Fraction(1, 2)
    assert out.witness.as_lists() == [([1], [2]), ([2], [3]), ([3], [1])]
    out2 = search_c_prime_violation(1, 1, 2)
    assert out2.optimum == 2 and out2.details["sum"] == 1
    for args in [(1, 1, 3), (1, 2, 4), (1, 2, 5), (2, 3, 5)]:
        rep = check_conditions(search_c_prime_violation(*args).witness)
        assert rep.a_holds and rep.b_holds and rep.c_prime_holds


def test_c_prime_search_brute_force_small():
    # full search without fixing the first pair
    for a, b, n in [(1, 1, 3), (1, 1, 4), (1, 2, 3), (1, 2, 4)]:
        from ekrkit.bollobas import _disjoint_pairs

        verts = _disjoint_pairs(a, b, n)
        best = 0
        for size in range(1, 7):
            found = False
            for combo in __import__("itertools").combinations(verts, size):
                if all(p[0] & q[1] or q[0] & p[1] for i, p in enumerate(combo) for q in combo[i + 1:]):
                    found = True
                    break
            if found:
                best = size
            else:
                break
        assert search_c_prime_violation(a, b, n).optimum == best


def test_c_prime_search_preconditions():
    with pytest.raises(ValueError):
        search_c_prime_violation(2, 2, 5)
    with pytest.raises(ValueError):
        search_c_prime_violation(1, 2, 2)
    with pytest.raises(ValueError):
        search_c_prime_violation(1, 2, 9)


def _naive_census(n, t, clause, max_size):
    pairs = [(a, b) for a in range(1 << n) for b in range(1 << n)]
    count = 0
    worst = Fraction(0)
    for size in range(0, max_size + 1):
        for combo in combinations_with_replacement(pairs, size):
            system = PairSystem(n, t, combo)
            rep = check_conditions(system)
            third = rep.c_holds if clause == "c" else rep.c_prime_holds
            if rep.a_holds and rep.b_holds and third:
                count += 1
                worst = max(worst, bollobas_sum(system))
    return count, worst


@pytest.mark.parametrize("n,t,clause,size", [(1, 0, "c", 3), (2, 0, "c", 3), (2, 1, "c'", 3), (2, 0, "c'", 3), (3, 1, "c'", 2)])
def test_census_matches_naive_enumeration(n, t, clause, size):
    census = implication_census(n, t, clause, size)
    count, worst = _naive_census(n, t, clause, size)
    assert census.systems_checked == count
    assert census.max_sum == worst


def test_census_finds_t0_c_prime_counterexamples():
    census = implication_census(3, 0, "c'", 3)
    assert census.max_sum > 1
    for system in census.counterexamples:
        rep = check_conditions(system)
        assert rep.a_holds and rep.b_holds and rep.c_prime_holds and bollobas_sum(system) > 1
