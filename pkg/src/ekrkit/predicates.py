"""Intersection hypotheses and conclusions for families of sets.

All predicates are universal statements, so an empty family (or a tuple
containing one) satisfies every one of them.
"""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from ekrkit.compression import SetFamily


def is_t_intersecting(family: SetFamily, t: int) -> bool:
    """Every two distinct members share at least ``t`` elements."""
    members = family.members
    for x, a in enumerate(members):
        for b in members[x + 1:]:
            if (a & b).bit_count() < t:
                return False
    return True


def relaxed_pair_ok(a: int, b: int, k: int, t: int) -> bool:
    return (a & b).bit_count() >= t or (a ^ b).bit_count() <= k - t


def satisfies_relaxed_pairwise(family: SetFamily, k: int | None = None, t: int | None = None) -> bool:
    """Distinct members meeting in fewer than ``t`` elements differ in at most ``k - t``."""
    k = family.k if k is None else k
    t = family.params.t if t is None else t
    members = family.members
    for x, a in enumerate(members):
        for b in members[x + 1:]:
            if not relaxed_pair_ok(a, b, k, t):
                return False
    return True


def condition_one_violation(families: Sequence[SetFamily], k: int, t: int) -> tuple[int, ...] | None:
    """First tuple ``(F_1, ..., F_r)`` breaking condition (1), or ``None``.

    A tuple breaks the condition when its common intersection has fewer than
    ``t`` elements while union minus intersection exceeds ``k - t``. Both
    quantities are monotone as the tuple grows, so partial tuples already in
    violation are reported without completing them.
    """
    if not families:
        raise ValueError("need at least one family")
    if any(len(f) == 0 for f in families):
        return None
    lists = [f.members for f in families]
    r = len(lists)
    limit = k - t
    chosen: list[int] = []

    def dfs(depth: int, inter: int, union: int) -> bool:
        if depth == r:
            return inter.bit_count() < t and (union & ~inter).bit_count() > limit
        for m in lists[depth]:
            ni = m if depth == 0 else inter & m
            nu = union | m
            chosen.append(m)
            if ni.bit_count() < t and (nu & ~ni).bit_count() > limit:
                chosen.extend(lists[j][0] for j in range(depth + 1, r))
                return True
            if dfs(depth + 1, ni, nu):
                return True
            chosen.pop()
        return False

    return tuple(chosen) if dfs(0, 0, 0) else None


def satisfies_condition_one(families: Sequence[SetFamily], k: int, t: int) -> bool:
    """Condition (1) over the product ``F_1 x ... x F_r``.

    ``k`` is the smallest rank bound among the families.
    """
    return condition_one_violation(families, k, t) is None


def are_cross_t_intersecting(families: Sequence[SetFamily], t: int) -> bool:
    """Members of different families always share at least ``t`` elements."""
    if len(families) < 2:
        raise ValueError("cross intersection needs at least two families")
    for i, j in combinations(range(len(families)), 2):
        for a in families[i].members:
            for b in families[j].members:
                if (a & b).bit_count() < t:
                    return False
    return True


def satisfies_cross_relaxed(families: Sequence[SetFamily], ranks: Sequence[int], t: int) -> bool:
    """Cross pairs meeting in fewer than ``t`` elements differ in at most ``min(k_i, k_j) - t``."""
    if len(ranks) != len(families):
        raise ValueError(f"{len(families)} families but {len(ranks)} ranks")
    for i, j in combinations(range(len(families)), 2):
        limit = min(ranks[i], ranks[j]) - t
        for a in families[i].members:
            for b in families[j].members:
                if (a & b).bit_count() < t and (a ^ b).bit_count() > limit:
                    return False
    return True


def _supports(members: Sequence[int], r: int):
    # r-tuples with repetition are determined by their support of <= r distinct members
    for size in range(1, min(r, len(members)) + 1):
        yield from combinations(members, size)


def _meet(sets: Sequence[int]) -> int:
    inter = sets[0]
    for s in sets[1:]:
        inter &= s
    return inter


def _join(sets: Sequence[int]) -> int:
    union = 0
    for s in sets:
        union |= s
    return union


def rwise_tuple_ok(sets: Sequence[int], k: int | None) -> bool:
    """One support set: strict when ``k`` is None, relaxed-with-budget ``k`` otherwise."""
    inter = _meet(sets)
    if inter:
        return True
    if k is None:
        return False
    return _join(sets).bit_count() <= k


def is_r_wise_intersecting(family: SetFamily, r: int) -> bool:
    """Every ``r`` members, repetition allowed, have a common element."""
    if r < 2:
        raise ValueError("r must be at least 2")
    return all(rwise_tuple_ok(s, None) for s in _supports(family.members, r))


def satisfies_relaxed_rwise(family: SetFamily, k: int | None = None, r: int = 2) -> bool:
    """Every ``r``-tuple with empty common intersection has union of size at most ``k``.

    Union minus intersection equals the union once the intersection is empty.
    """
    if r < 2:
        raise ValueError("r must be at least 2")
    k = family.k if k is None else k
    return all(rwise_tuple_ok(s, k) for s in _supports(family.members, r))


def first_rwise_violation(family: SetFamily, r: int, k: int | None) -> tuple[int, ...] | None:
    """First support of at most ``r`` members failing the strict (``k=None``) or relaxed rule."""
    for s in _supports(family.members, r):
        if not rwise_tuple_ok(s, k):
            return s
    return None
