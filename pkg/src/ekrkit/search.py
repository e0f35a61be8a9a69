"""Exhaustive searches for the largest families obeying an intersection rule.

Pairwise rules turn into maximum clique on a compatibility graph whose
vertices are the admissible sets in canonical order. Every search either
exhausts its space (``proof_complete=True``) or refuses to run.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from ekrkit.clique import max_clique
from ekrkit.compression import SetFamily, canonical_key
from ekrkit.predicates import relaxed_pair_ok, rwise_tuple_ok
from ekrkit.sets import GroundParams, binomial

PAIRWISE_GUARD = 4096
RWISE_GUARD = 512
CROSS_GUARD = 128

PAIRWISE_MODES = ("strict-t-intersecting", "relaxed-thm12")
RWISE_MODES = ("strict-r-wise", "relaxed-thm16")
CROSS_MODES = ("strict", "relaxed")


class GuardExceeded(ValueError):
    """The requested search space is larger than the exhaustive-search guard."""


@dataclass
class SearchOutcome:
    optimum: int
    witness: object
    nodes_explored: int
    proof_complete: bool
    flags: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)


def sets_up_to(n: int, k: int) -> list[int]:
    """All subsets of ``[n]`` with at most ``k`` elements, canonical order."""
    out = []
    for size in range(k + 1):
        for chosen in combinations(range(n), size):
            m = 0
            for b in chosen:
                m |= 1 << b
            out.append(m)
    out.sort(key=canonical_key)
    return out


def count_up_to(n: int, k: int) -> int:
    return sum(binomial(n, j) for j in range(k + 1))


def _check_guard(count: int, guard: int, what: str) -> None:
    if count > guard:
        raise GuardExceeded(f"{what}: {count} candidate sets exceeds guard {guard}")


def compatibility_graph(vertices: Sequence[int], ok: Callable[[int, int], bool]) -> list[int]:
    adj = [0] * len(vertices)
    for i, a in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            if ok(a, vertices[j]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return adj


def _clique_outcome(n, k, t, vertices, adj, candidates=None, refine=None) -> SearchOutcome:
    res = max_clique(adj, candidates, refine)
    witness = SetFamily(GroundParams(n, k, t), tuple(vertices[i] for i in res.clique))
    return SearchOutcome(len(res.clique), witness, res.nodes, True)


def max_family_pairwise(n: int, k: int, t: int, mode: str = "relaxed-thm12") -> SearchOutcome:
    """Largest family of sets of size <= k whose distinct pairs obey ``mode``.

    ``strict-t-intersecting`` asks for ``|A & B| >= t``; ``relaxed-thm12``
    allows smaller intersections when ``|A ^ B| <= k - t``.
    """
    if mode not in PAIRWISE_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {PAIRWISE_MODES}")
    GroundParams(n, k, t)
    _check_guard(count_up_to(n, k), PAIRWISE_GUARD, "max_family_pairwise")
    vertices = sets_up_to(n, k)
    if mode == "strict-t-intersecting":
        adj = compatibility_graph(vertices, lambda a, b: (a & b).bit_count() >= t)
    else:
        adj = compatibility_graph(vertices, lambda a, b: relaxed_pair_ok(a, b, k, t))
    return _clique_outcome(n, k, t, vertices, adj)


def max_family_uniform(n: int, k: int, t: int) -> SearchOutcome:
    """Largest t-intersecting family of k-element subsets of ``[n]``."""
    GroundParams(n, k, t)
    _check_guard(binomial(n, k), PAIRWISE_GUARD, "max_family_uniform")
    vertices = [m for m in sets_up_to(n, k) if m.bit_count() == k]
    adj = compatibility_graph(vertices, lambda a, b: (a & b).bit_count() >= t)
    return _clique_outcome(n, k, t, vertices, adj)


class _RwiseRefiner:
    """Candidate filter enforcing every support of size 3..r once a vertex joins.

    ``allowed(S)`` (memoised) is the mask of vertices ``w`` for which the
    support ``S | {w}`` passes; when ``v`` joins clique ``C`` the candidates
    are cut by ``allowed(T | {v})`` for each ``T`` in ``C`` with
    ``1 <= |T| <= r - 2``.
    """

    def __init__(self, vertices: Sequence[int], r: int, budget: int | None):
        self.vertices = vertices
        self.r = r
        self.budget = budget
        self.memo: dict[tuple[int, ...], int] = {}

    def allowed(self, support: tuple[int, ...]) -> int:
        mask = self.memo.get(support)
        if mask is None:
            base = [self.vertices[i] for i in support]
            mask = 0
            for w, s in enumerate(self.vertices):
                if rwise_tuple_ok(base + [s], self.budget):
                    mask |= 1 << w
            self.memo[support] = mask
        return mask

    def __call__(self, clique: Sequence[int], v: int, cand: int) -> int:
        for size in range(1, self.r - 1):
            for rest in combinations(clique, size):
                if not cand:
                    return 0
                cand &= self.allowed(tuple(sorted(rest + (v,))))
        return cand


def max_family_rwise(n: int, k: int, r: int, mode: str = "relaxed-thm16") -> SearchOutcome:
    """Largest family of sets of size <= k whose r-tuples (with repetition) obey ``mode``.

    ``strict-r-wise`` asks for a common element; ``relaxed-thm16`` also admits
    tuples with empty intersection whose union has at most ``k`` elements.
    """
    if mode not in RWISE_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {RWISE_MODES}")
    if r < 2:
        raise ValueError("r must be at least 2")
    GroundParams(n, k, 0)
    _check_guard(count_up_to(n, k), RWISE_GUARD, "max_family_rwise")
    budget = None if mode == "strict-r-wise" else k
    vertices = sets_up_to(n, k)
    adj = compatibility_graph(vertices, lambda a, b: rwise_tuple_ok([a, b], budget))
    candidates = 0
    for i, m in enumerate(vertices):
        if rwise_tuple_ok([m], budget):
            candidates |= 1 << i
    refine = _RwiseRefiner(vertices, r, budget) if r > 2 else None
    return _clique_outcome(n, k, 0, vertices, adj, candidates, refine)


def max_cross_product(n: int, ranks: Sequence[int], t: int, mode: str = "strict") -> SearchOutcome:
    """Largest ``|F_1| * |F_2|`` over cross-compatible pairs of families.

    For any feasible pair, ``F_2`` sits inside the common compatible set of
    ``F_1`` and vice versa, so it suffices to scan closed pairs: every
    intersection of neighbourhoods of left vertices is a candidate ``F_2``,
    and its ``F_1`` is everything compatible with all of it.
    """
    if mode not in CROSS_MODES:
        raise ValueError(f"unknown mode {mode!r}; expected one of {CROSS_MODES}")
    if len(ranks) != 2:
        raise ValueError(f"max_cross_product supports exactly two families, got {len(ranks)}")
    k1, k2 = ranks
    if not (0 <= t <= min(k1, k2) and max(k1, k2) <= n):
        raise ValueError(f"need t <= min(ranks) <= max(ranks) <= n, got ranks={list(ranks)}, t={t}, n={n}")
    _check_guard(count_up_to(n, max(k1, k2)), CROSS_GUARD, "max_cross_product")
    left = sets_up_to(n, k1)
    right = sets_up_to(n, k2)
    limit = min(k1, k2) - t

    def ok(a: int, b: int) -> bool:
        if (a & b).bit_count() >= t:
            return True
        return mode == "relaxed" and (a ^ b).bit_count() <= limit

    nbr = []
    for a in left:
        m = 0
        for j, b in enumerate(right):
            if ok(a, b):
                m |= 1 << j
        nbr.append(m)

    everything = (1 << len(right)) - 1
    closed = {everything}
    for m in nbr:
        closed |= {c & m for c in closed}

    best = None
    for c in closed:
        f1 = 0
        for i, m in enumerate(nbr):
            if m & c == c:
                f1 |= 1 << i
        value = f1.bit_count() * c.bit_count()
        key = (-value, _index_list(f1), _index_list(c))
        if best is None or key < best[0]:
            best = (key, f1, c)

    _, f1, c = best
    fam1 = SetFamily(GroundParams(n, k1, t), tuple(left[i] for i in _index_list(f1)))
    fam2 = SetFamily(GroundParams(n, k2, t), tuple(right[i] for i in _index_list(c)))
    return SearchOutcome(len(fam1) * len(fam2), [fam1, fam2], len(closed), True)


def _index_list(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out
