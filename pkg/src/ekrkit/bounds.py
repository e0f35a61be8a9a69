"""Closed-form EKR-type bounds and the star / sharpness constructions."""

from __future__ import annotations

from itertools import combinations
from math import prod
from typing import NamedTuple, Sequence

from ekrkit.compression import SetFamily
from ekrkit.sets import GroundParams, binomial


def _check_ntk(n: int, k: int, t: int) -> None:
    if not 0 <= t <= k <= n:
        raise ValueError(f"need 0 <= t <= k <= n, got n={n}, k={k}, t={t}")


def ekr_bound(n: int, k: int, t: int) -> int:
    """Largest size of a t-intersecting family of sets of size <= k: sum_j C(n-t, k-t-j)."""
    _check_ntk(n, k, t)
    return sum(binomial(n - t, k - t - j) for j in range(k - t + 1))


def wilson_regime(n: int, k: int, t: int) -> bool:
    return n >= (k - t + 1) * (t + 1)


class UniformBound(NamedTuple):
    value: int
    regime_holds: bool


def uniform_ekr_bound(n: int, k: int, t: int) -> UniformBound:
    """C(n-t, k-t) together with whether ``n >= (k-t+1)(t+1)``."""
    _check_ntk(n, k, t)
    return UniformBound(binomial(n - t, k - t), wilson_regime(n, k, t))


def cross_bound_product(n: int, ranks: Sequence[int], t: int) -> int:
    if not ranks:
        raise ValueError("need at least one rank")
    if not t <= min(ranks) or max(ranks) > n:
        raise ValueError(f"need t <= min(ranks) <= max(ranks) <= n, got ranks={list(ranks)}, t={t}, n={n}")
    return prod(ekr_bound(n, k, t) for k in ranks)


def rwise_bound(n: int, k: int) -> int:
    """sum_{i=1..k} C(n-1, i-1)."""
    if not 1 <= k <= n:
        raise ValueError(f"need 1 <= k <= n, got n={n}, k={k}")
    return sum(binomial(n - 1, i - 1) for i in range(1, k + 1))


def star_family(n: int, k: int, t: int) -> SetFamily:
    """All sets of size <= k containing the core {1, ..., t}."""
    _check_ntk(n, k, t)
    core = (1 << t) - 1
    rest = range(t, n)
    masks = []
    for extra in range(k - t + 1):
        for chosen in combinations(rest, extra):
            m = core
            for b in chosen:
                m |= 1 << b
            masks.append(m)
    return SetFamily(GroundParams(n, k, t), tuple(masks))


def tightness_example(n: int, k: int, t: int) -> SetFamily:
    """The star plus the ``t`` subsets of ``{1..t}`` of size ``t - 1``.

    Its close pairs differ in ``k - t + 1`` elements, one more than the
    threshold that forces the EKR bound, while it has ``t`` extra members.
    """
    if not (2 <= t < k < n):
        raise ValueError(f"need 2 <= t < k < n, got n={n}, k={k}, t={t}")
    star = star_family(n, k, t)
    core = (1 << t) - 1
    extra = [core & ~(1 << b) for b in range(t)]
    return star.with_members(star.members + tuple(extra))
