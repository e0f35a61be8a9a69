"""Randomized and exhaustive experiment drivers behind the acceptance tables."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ekrkit.compression import SetFamily, compress_once, is_up_set, up_closure
from ekrkit.predicates import is_t_intersecting, satisfies_condition_one, satisfies_relaxed_pairwise
from ekrkit.sets import GroundParams


def random_set(rng: random.Random, n: int, k: int) -> int:
    size = rng.randint(0, k)
    m = 0
    for b in rng.sample(range(n), size):
        m |= 1 << b
    return m


def random_condition_one_tuple(rng: random.Random, n_max: int = 6) -> tuple[list[SetFamily], int, int]:
    """A random tuple of families satisfying condition (1), built by guarded insertion.

    Returns the families, the threshold ``t`` and ``k = min k_j``.
    """
    r = rng.choice((2, 3))
    n = rng.randint(1, n_max)
    ranks = [rng.randint(1, n) for _ in range(r)]
    k = min(ranks)
    t = rng.randint(1, k)
    members: list[list[int]] = [[] for _ in range(r)]
    for _ in range(rng.randint(r, 4 * r + 4)):
        j = rng.randrange(r)
        s = random_set(rng, n, ranks[j])
        if s in members[j]:
            continue
        members[j].append(s)
        fams = [SetFamily(GroundParams(n, ranks[x], 0), tuple(members[x])) for x in range(r)]
        if not satisfies_condition_one(fams, k, t):
            members[j].pop()
    fams = [SetFamily(GroundParams(n, ranks[x], 0), tuple(members[x])) for x in range(r)]
    return fams, k, t


def principal_up_set(n: int, k: int, generators: list[int]) -> SetFamily:
    out = set()
    for g in generators:
        free = [b for b in range(n) if not g >> b & 1]
        frontier = [g]
        while frontier:
            s = frontier.pop()
            if s in out:
                continue
            out.add(s)
            if s.bit_count() < k:
                frontier.extend(s | 1 << b for b in free if not s >> b & 1)
    return SetFamily(GroundParams(n, k, 0), tuple(out))


def random_up_set_tuple(rng: random.Random, n_max: int = 6) -> tuple[list[SetFamily], int, int]:
    r = rng.choice((2, 3))
    n = rng.randint(1, n_max)
    ranks = [rng.randint(1, n) for _ in range(r)]
    k = min(ranks)
    t = rng.randint(1, k)
    core = 0
    for b in rng.sample(range(n), rng.randint(0, t)):
        core |= 1 << b
    fams = []
    for kj in ranks:
        gens = [core] if rng.random() < 0.2 else []
        for _ in range(rng.randint(1, 3)):
            g = random_set(rng, n, kj)
            if rng.random() < 0.7:
                g |= core
                while g.bit_count() > kj:
                    extra = g & ~core
                    if not extra:
                        break
                    g &= ~(extra & -extra)
            if g.bit_count() <= kj:
                gens.append(g)
        if not gens:
            gens.append(core)
        fams.append(principal_up_set(n, kj, gens))
    return fams, k, t


def all_tuples_meet(fams: list[SetFamily], t: int) -> bool:
    def dfs(depth: int, inter: int) -> bool:
        if inter.bit_count() < t:
            return False
        if depth == len(fams):
            return True
        return all(dfs(depth + 1, inter & m) for m in fams[depth].members)

    if any(len(f) == 0 for f in fams):
        return True
    full = (1 << fams[0].n) - 1
    return dfs(0, full)


def random_relaxed_family(rng: random.Random, n_max: int = 8) -> tuple[SetFamily, int]:
    """A random family obeying the relaxed pairwise rule, with its threshold ``t``."""
    n = rng.randint(1, n_max)
    k = rng.randint(1, n)
    t = rng.randint(1, k)
    members: list[int] = []
    for _ in range(rng.randint(1, 14)):
        s = random_set(rng, n, k)
        if s in members:
            continue
        members.append(s)
        if not satisfies_relaxed_pairwise(SetFamily.from_masks(n, k, members), k, t):
            members.pop()
    return SetFamily.from_masks(n, k, members, t), t


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    detail: str
    flags: list[str] = field(default_factory=list)

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        extra = f" [{'; '.join(self.flags)}]" if self.flags else ""
        return f"[{mark}] {self.number:2d}. {self.title}: {self.detail}{extra}"


def ekr_grid() -> list[tuple[int, int, int]]:
    return [
        (n, k, t)
        for n in range(1, 10)
        for k in range(1, 4)
        for t in range(1, k + 1)
        if k <= n and n >= (k - t + 1) * (t + 1)
    ]


def criterion_bounded_rank() -> CriterionResult:
    from ekrkit.bounds import ekr_bound
    from ekrkit.search import max_family_pairwise

    bad = []
    grid = ekr_grid()
    for n, k, t in grid:
        out = max_family_pairwise(n, k, t, "relaxed-thm12")
        ok = (
            out.optimum == ekr_bound(n, k, t)
            and out.proof_complete
            and len(out.witness) == out.optimum
            and satisfies_relaxed_pairwise(out.witness, k, t)
        )
        if not ok:
            bad.append((n, k, t, out.optimum, ekr_bound(n, k, t)))
    return CriterionResult(1, "bounded-rank EKR, relaxed pairwise rule", not bad,
                           f"{len(grid) - len(bad)}/{len(grid)} grid points match ekr_bound" + (f"; mismatches {bad}" if bad else ""))


def criterion_uniform() -> CriterionResult:
    from ekrkit.bounds import uniform_ekr_bound
    from ekrkit.search import max_family_uniform

    bad = []
    grid = ekr_grid()
    for n, k, t in grid:
        out = max_family_uniform(n, k, t)
        expected = uniform_ekr_bound(n, k, t).value
        ok = (
            out.optimum == expected
            and out.proof_complete
            and all(m.bit_count() == k for m in out.witness)
            and is_t_intersecting(out.witness, t)
        )
        if not ok:
            bad.append((n, k, t, out.optimum, expected))
    return CriterionResult(2, "uniform EKR", not bad,
                           f"{len(grid) - len(bad)}/{len(grid)} grid points match C(n-t,k-t)" + (f"; mismatches {bad}" if bad else ""))


def criterion_sharpness() -> CriterionResult:
    from ekrkit.bounds import ekr_bound, tightness_example

    fam = tightness_example(5, 3, 2)
    size_ok = len(fam) == ekr_bound(5, 3, 2) + 2 == 6
    strict_fails = not satisfies_relaxed_pairwise(fam, 3, 2)
    # threshold k - t + 1 = 2 is the relaxed rule with budget k + 1
    loose_holds = satisfies_relaxed_pairwise(fam, 4, 2)
    return CriterionResult(3, "sharpness example (5,3,2)", size_ok and strict_fails and loose_holds,
                           f"size {len(fam)}, fails k-t threshold: {strict_fails}, passes k-t+1 threshold: {loose_holds}")


def criterion_shift_preserves(count: int = 10_000, seed: int = 2101) -> CriterionResult:
    rng = random.Random(seed)
    failures = 0
    shifts = 0
    for _ in range(count):
        fams, k, t = random_condition_one_tuple(rng)
        for i in range(1, fams[0].n + 1):
            shifted = [compress_once(f, i, f.k) for f in fams]
            shifts += 1
            if [len(f) for f in shifted] != [len(f) for f in fams] or not satisfies_condition_one(shifted, k, t):
                failures += 1
    return CriterionResult(4, "single shifts preserve condition (1)", failures == 0,
                           f"{count} tuples, {shifts} shifts, {failures} failures")


def criterion_up_sets_intersect(count: int = 10_000, seed: int = 2202) -> CriterionResult:
    rng = random.Random(seed)
    accepted = 0
    failures = 0
    while accepted < count:
        fams, k, t = random_up_set_tuple(rng)
        if not satisfies_condition_one(fams, k, t):
            continue
        accepted += 1
        if not all_tuples_meet(fams, t):
            failures += 1
    closure_failures = 0
    for _ in range(count):
        fam, t = random_relaxed_family(rng)
        closed = up_closure(fam)
        if len(closed) != len(fam) or not is_up_set(closed) or not is_t_intersecting(closed, t):
            closure_failures += 1
    return CriterionResult(5, "up-sets obeying condition (1) are t-intersecting", failures == 0 and closure_failures == 0,
                           f"{accepted} up-set tuples ({failures} failures), {count} closures ({closure_failures} failures)")


RWISE_GRID = ((4, 2, 3), (5, 2, 3), (6, 2, 3), (6, 3, 3))


def criterion_rwise() -> CriterionResult:
    from ekrkit.bounds import rwise_bound
    from ekrkit.predicates import satisfies_relaxed_rwise
    from ekrkit.search import max_family_rwise

    rows = []
    ok = True
    for n, k, r in RWISE_GRID:
        out = max_family_rwise(n, k, r, "relaxed-thm16")
        good = out.optimum == rwise_bound(n, k) and out.proof_complete and satisfies_relaxed_rwise(out.witness, k, r)
        ok &= good
        rows.append(f"({n},{k},{r})={out.optimum}/{rwise_bound(n, k)}")
    return CriterionResult(6, "r-wise relaxed rule", ok, ", ".join(rows))


def criterion_bollobas_implication() -> CriterionResult:
    from ekrkit.bollobas import implication_census

    rows = []
    ok = True
    for n in range(1, 5):
        for t, clause in ((0, "c"), (1, "c"), (1, "c'")):
            census = implication_census(n, t, clause, max_size=3)
            ok &= not census.counterexamples and census.max_sum <= 1
            rows.append((n, t, clause, census.systems_checked, census.max_sum))
    last = [r for r in rows if r[0] == 4]
    detail = "; ".join(f"n=4 t={t} ({c}): {cnt} systems, max sum {m}" for _, t, c, cnt, m in last)
    return CriterionResult(7, "Bollobás-type sum <= 1 under (a),(b),(c)/(c')", ok, detail)


def criterion_c_prime_sharpness() -> CriterionResult:
    from fractions import Fraction

    from ekrkit.bollobas import bollobas_sum, check_conditions, search_c_prime_violation, verify_disjointness_exact

    out = search_c_prime_violation(1, 1, 3)
    system = out.witness
    total = bollobas_sum(system)
    report = check_conditions(system)
    disjoint = verify_disjointness_exact(system)
    ok = (
        out.optimum == 3
        and total == Fraction(3, 2) == 2 - Fraction(1, 2)
        and report.a_holds and report.b_holds and report.c_prime_holds
        and not disjoint
    )
    return CriterionResult(8, "(c') alone is not enough at t = 0", ok,
                           f"|I|={out.optimum}, sum={total}, disjoint events: {disjoint}")


def criterion_separation_enumeration(n_max: int = 6) -> CriterionResult:
    import math
    from fractions import Fraction

    from ekrkit.bollobas import all_permutation_positions, pair_weight_denominator, separation_matrix

    checked = 0
    mismatches = []
    for n in range(1, n_max + 1):
        positions = all_permutation_positions(n)
        pairs = [(a, b) for a in range(1 << n) for b in range(1 << n)]
        counts = separation_matrix(positions, pairs).sum(axis=0)
        total = math.factorial(n)
        for (a, b), c in zip(pairs, counts):
            checked += 1
            if Fraction(int(c), total) != Fraction(1, pair_weight_denominator(a, b)):
                mismatches.append((n, a, b))
    return CriterionResult(9, "separation probability closed form", not mismatches,
                           f"{checked} pairs (A,B) over n<=6 enumerated, {len(mismatches)} mismatches")


def classic_system() -> "PairSystem":
    from ekrkit.bollobas import PairSystem

    full = 0b1111
    pairs = [(a, full & ~a) for a in range(16) if a.bit_count() == 2]
    return PairSystem(4, 0, tuple(pairs))


def criterion_monte_carlo(trials: int = 100_000, seed: int = 20161) -> CriterionResult:
    from ekrkit.bollobas import mc_separation_estimate

    system = classic_system()
    est = mc_separation_estimate(system, trials, seed)
    again = mc_separation_estimate(system, trials, seed)
    se = est.sum_standard_error()
    deviation = abs(float(est.sum_estimate) - 1.0)
    within = deviation <= 3 * se
    same = est == again
    ok = within and not est.collision_detected and same
    return CriterionResult(10, "Monte Carlo on the tight system", ok,
                           f"sum estimate {est.sum_estimate} (|dev|={deviation:.3g}, 3SE={3 * se:.3g}), "
                           f"collision={est.collision_detected}, reproducible={same}")


def criterion_cross() -> CriterionResult:
    from ekrkit.bounds import cross_bound_product, star_family
    from ekrkit.predicates import are_cross_t_intersecting
    from ekrkit.search import max_cross_product

    star = star_family(6, 2, 1)
    construction = len(star) * len(star) == cross_bound_product(6, (2, 2), 1) and are_cross_t_intersecting([star, star], 1)
    out = max_cross_product(6, (2, 2), 1)
    witness_ok = are_cross_t_intersecting(out.witness, 1) and len(out.witness[0]) * len(out.witness[1]) == out.optimum
    flags = []
    if out.optimum == 36:
        flags.append("consistent with the product bound")
    elif out.optimum > 36:
        flags.append("below n_0 candidate")
    ok = construction and witness_ok and out.optimum >= 36
    return CriterionResult(11, "cross families n=6, ranks (2,2), t=1", ok,
                           f"star product {len(star) ** 2}, search optimum {out.optimum}", flags)


CRITERIA = (
    criterion_bounded_rank,
    criterion_uniform,
    criterion_sharpness,
    criterion_shift_preserves,
    criterion_up_sets_intersect,
    criterion_rwise,
    criterion_bollobas_implication,
    criterion_c_prime_sharpness,
    criterion_separation_enumeration,
    criterion_monte_carlo,
    criterion_cross,
)


def run_all() -> list[CriterionResult]:
    return [c() for c in CRITERIA]
