"""Set-pair systems: intersection conditions, Bollobás sums and separating permutations.

A permutation ``(x_1, ..., x_n)`` of ``[n]`` properly separates ``(A, B)``
when every element of ``A - B`` comes before every element of ``B`` and every
element of ``A`` comes before every element of ``B - A``. For a uniform
random permutation this happens with probability
``1 / (C(|A|B|, |A-B|) * C(|B|, |A&B|))``, which is the summand of the
Bollobás sum.

Pair indices in reports are 0-based list positions; elements are 1-indexed.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Sequence

import numpy as np

from ekrkit.clique import max_clique
from ekrkit.search import GuardExceeded, SearchOutcome
from ekrkit.sets import ElementSet, binomial, elements_of, mask_of

MAX_ENUM_N = 8
MC_CHUNK = 1 << 14
MC_GENERATOR = "numpy.PCG64/SeedSequence-spawn/fisher-yates-v1"


def _mask(x: ElementSet | int) -> int:
    return x.bits if isinstance(x, ElementSet) else int(x)


@dataclass(frozen=True)
class PairSystem:
    """An indexed list of pairs ``(A_i, B_i)`` over ``[n]`` with threshold ``t``."""

    n: int
    t: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if not 1 <= self.n <= 64:
            raise ValueError(f"n must be in 1..64, got {self.n}")
        if self.t < 0:
            raise ValueError(f"t must be nonnegative, got {self.t}")
        pairs = tuple((_mask(a), _mask(b)) for a, b in self.pairs)
        for a, b in pairs:
            if a < 0 or b < 0 or a >> self.n or b >> self.n:
                raise ValueError(f"pair ({elements_of(a)}, {elements_of(b)}) not inside [1..{self.n}]")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_lists(cls, n: int, t: int, pairs: Iterable[tuple[Iterable[int], Iterable[int]]]) -> "PairSystem":
        return cls(n, t, tuple((mask_of(a, n), mask_of(b, n)) for a, b in pairs))

    def __len__(self) -> int:
        return len(self.pairs)

    def as_lists(self) -> list[tuple[list[int], list[int]]]:
        return [(elements_of(a), elements_of(b)) for a, b in self.pairs]


@dataclass
class ConditionReport:
    a_holds: bool
    b_holds: bool
    c_holds: bool
    c_prime_holds: bool
    violations: list[tuple[tuple[int, ...], str]] = field(default_factory=list)


def pair_conditions(p: tuple[int, int], q: tuple[int, int], t: int) -> tuple[bool, bool, bool]:
    """Clauses (b), (c), (c') for two distinct indices holding pairs ``p`` and ``q``."""
    ai, bi = p
    aj, bj = q
    b_ok = (ai & bj).bit_count() >= t and (aj & bi).bit_count() >= t
    core = ai & bi
    if core != aj & bj:
        return b_ok, True, True
    left, right = ai & bj, aj & bi
    c_ok = left != core and right != core
    c_prime_ok = not (left == core and right == core)
    return b_ok, c_ok, c_prime_ok


def check_conditions(system: PairSystem) -> ConditionReport:
    """Evaluate (a), (b), (c) and (c') against the system's stored ``t``."""
    t = system.t
    pairs = system.pairs
    report = ConditionReport(True, True, True, True)
    for i, (a, b) in enumerate(pairs):
        if (a & b).bit_count() > t:
            report.a_holds = False
            report.violations.append(((i,), "a"))
    for i, j in combinations(range(len(pairs)), 2):
        b_ok, c_ok, cp_ok = pair_conditions(pairs[i], pairs[j], t)
        if not b_ok:
            report.b_holds = False
            report.violations.append(((i, j), "b"))
        if not c_ok:
            report.c_holds = False
            report.violations.append(((i, j), "c"))
        if not cp_ok:
            report.c_prime_holds = False
            report.violations.append(((i, j), "c'"))
    return report


def pair_weight_denominator(a: int, b: int) -> int:
    return binomial((a | b).bit_count(), (a & ~b).bit_count()) * binomial(b.bit_count(), (a & b).bit_count())


def bollobas_sum(system: PairSystem) -> Fraction:
    """Exact sum of ``1 / (C(|A_i|B_i|, |A_i-B_i|) * C(|B_i|, |A_i&B_i|))``."""
    return sum((Fraction(1, pair_weight_denominator(a, b)) for a, b in system.pairs), Fraction(0))


def _check_perm(perm: Sequence[int], n: int | None) -> list[int]:
    perm = list(perm)
    size = len(perm) if n is None else n
    if sorted(perm) != list(range(1, size + 1)):
        raise ValueError(f"{perm} is not a permutation of [1..{size}]")
    return perm


def properly_separates(perm: Sequence[int], a: ElementSet | int, b: ElementSet | int) -> bool:
    """Whether the ordering ``perm`` (1-indexed elements) properly separates ``(a, b)``."""
    perm = _check_perm(perm, None)
    a, b = _mask(a), _mask(b)
    if (a | b) >> len(perm):
        raise ValueError("sets use elements outside the permutation")
    a_only = a & ~b
    b_only = b & ~a
    seen = 0
    for x in perm:
        bit = 1 << (x - 1)
        if bit & b and a_only & ~seen:
            return False
        if bit & b_only and a & ~seen:
            return False
        seen |= bit
    return True


def separation_count(a: ElementSet | int, b: ElementSet | int, n: int) -> int:
    """Number of permutations of ``[n]`` that properly separate ``(a, b)``, by enumeration."""
    if n > MAX_ENUM_N:
        raise ValueError(f"enumeration over {n}! permutations refused (n <= {MAX_ENUM_N})")
    a, b = _mask(a), _mask(b)
    a_only = a & ~b
    b_only = b & ~a
    count = 0
    for perm in permutations(range(n)):
        seen = 0
        for x in perm:
            bit = 1 << x
            if (bit & b and a_only & ~seen) or (bit & b_only and a & ~seen):
                break
            seen |= bit
        else:
            count += 1
    return count


def exact_separation_probability(a: ElementSet | int, b: ElementSet | int, n: int, verify: bool = False) -> Fraction:
    """Closed-form probability that a uniform permutation of ``[n]`` separates ``(a, b)``.

    With ``verify=True`` the closed form is cross-checked against a full
    enumeration of the ``n!`` permutations (``n <= 8``).
    """
    a, b = _mask(a), _mask(b)
    if (a | b) >> n:
        raise ValueError(f"sets not inside [1..{n}]")
    closed = Fraction(1, pair_weight_denominator(a, b))
    if verify:
        counted = Fraction(separation_count(a, b, n), math.factorial(n))
        if counted != closed:
            raise ArithmeticError(f"enumeration gives {counted}, closed form gives {closed}")
    return closed


def _element_lists(a: int, b: int) -> tuple[list[int], ...]:
    return tuple(
        [e - 1 for e in elements_of(m)] for m in (a & ~b, b, a, b & ~a)
    )


def separation_matrix(positions: np.ndarray, pairs: Sequence[tuple[int, int]]) -> np.ndarray:
    """Boolean ``(rows, len(pairs))`` matrix: does row ``r`` separate pair ``i``.

    ``positions[r, e]`` is the 0-based position of element ``e + 1``.
    """
    rows, n = positions.shape
    out = np.empty((rows, len(pairs)), dtype=bool)
    for i, (a, b) in enumerate(pairs):
        a_only, b_all, a_all, b_only = _element_lists(a, b)

        def last(cols):
            return positions[:, cols].max(axis=1) if cols else np.full(rows, -1)

        def first(cols):
            return positions[:, cols].min(axis=1) if cols else np.full(rows, n)

        out[:, i] = (last(a_only) < first(b_all)) & (last(a_all) < first(b_only))
    return out


def all_permutation_positions(n: int) -> np.ndarray:
    if n > MAX_ENUM_N:
        raise ValueError(f"enumeration over {n}! permutations refused (n <= {MAX_ENUM_N})")
    perms = np.array(list(permutations(range(n))), dtype=np.int8).reshape(-1, n)
    return np.argsort(perms, axis=1).astype(np.int8)


def verify_disjointness_exact(system: PairSystem) -> bool:
    """True iff no permutation of ``[n]`` properly separates two distinct indexed pairs."""
    if len(system) < 2:
        if system.n > MAX_ENUM_N:
            raise ValueError(f"enumeration over {system.n}! permutations refused (n <= {MAX_ENUM_N})")
        return True
    sep = separation_matrix(all_permutation_positions(system.n), system.pairs)
    return bool((sep.sum(axis=1) <= 1).all())


@dataclass
class McEstimate:
    trials: int
    hits_per_pair: list[int]
    point_estimates: list[Fraction]
    exact_reference: list[Fraction] | None
    collision_detected: bool
    collisions: int = 0
    union_hits: int = 0
    generator: str = MC_GENERATOR

    @property
    def sum_estimate(self) -> Fraction:
        return Fraction(sum(self.hits_per_pair), self.trials)

    def sum_standard_error(self) -> float:
        """Binomial standard error of the summed estimate, using the exact sum as ``p``."""
        if self.exact_reference is None:
            p = float(self.sum_estimate)
        else:
            p = float(sum(self.exact_reference))
        p = min(max(p, 0.0), 1.0)
        return math.sqrt(p * (1 - p) / self.trials)


def fisher_yates_rows(rng: np.random.Generator, rows: int, n: int) -> np.ndarray:
    """``rows`` independent uniform permutations of ``0..n-1`` by explicit Fisher-Yates."""
    perms = np.tile(np.arange(n, dtype=np.int64), (rows, 1))
    idx = np.arange(rows)
    for i in range(n - 1, 0, -1):
        j = rng.integers(0, i + 1, size=rows)
        tmp = perms[idx, j].copy()
        perms[idx, j] = perms[:, i]
        perms[:, i] = tmp
    return perms


def _mc_chunk(seed_seq: np.random.SeedSequence, rows: int, n: int, pairs) -> tuple[np.ndarray, int, int]:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    perms = fisher_yates_rows(rng, rows, n)
    positions = np.argsort(perms, axis=1)
    sep = separation_matrix(positions, pairs)
    per_row = sep.sum(axis=1)
    return sep.sum(axis=0), int((per_row >= 2).sum()), int((per_row >= 1).sum())


def mc_separation_estimate(system: PairSystem, trials: int, seed: int, threads: int = 1) -> McEstimate:
    """Estimate each pair's separation probability from seeded uniform permutations.

    Trials are cut into fixed-size chunks, each driven by its own child of
    ``SeedSequence(seed)``; results do not depend on ``threads``.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    if threads < 1:
        raise ValueError("threads must be at least 1")
    chunks = [MC_CHUNK] * (trials // MC_CHUNK)
    if trials % MC_CHUNK:
        chunks.append(trials % MC_CHUNK)
    children = np.random.SeedSequence(seed).spawn(len(chunks))
    jobs = list(zip(children, chunks))
    if threads == 1:
        results = [_mc_chunk(s, rows, system.n, system.pairs) for s, rows in jobs]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: _mc_chunk(job[0], job[1], system.n, system.pairs), jobs))
    hits = np.zeros(len(system), dtype=np.int64)
    collisions = 0
    union_hits = 0
    for h, c, u in results:
        hits += h
        collisions += c
        union_hits += u
    hits_list = [int(h) for h in hits]
    return McEstimate(
        trials=trials,
        hits_per_pair=hits_list,
        point_estimates=[Fraction(h, trials) for h in hits_list],
        exact_reference=[Fraction(1, pair_weight_denominator(a, b)) for a, b in system.pairs],
        collision_detected=collisions > 0,
        collisions=collisions,
        union_hits=union_hits,
    )


def _subsets_of_size(n: int, size: int) -> list[int]:
    out = []
    for chosen in combinations(range(n), size):
        m = 0
        for bit in chosen:
            m |= 1 << bit
        out.append(m)
    return out


def _disjoint_pairs(a: int, b: int, n: int) -> list[tuple[int, int]]:
    out = []
    for x in _subsets_of_size(n, a):
        for y in _subsets_of_size(n, b):
            if not x & y:
                out.append((x, y))
    out.sort(key=lambda p: ((p[0].bit_count(), p[0]), (p[1].bit_count(), p[1])))
    return out


def search_c_prime_violation(a: int, b: int, n: int, max_index: int = 4096) -> SearchOutcome:
    """Largest t = 0 system of disjoint ``(a, b)``-pairs over ``[n]`` obeying only (c').

    Distinct indices may not have ``A_i & B_j`` and ``A_j & B_i`` both empty.
    The symmetric group on ``[n]`` acts transitively on candidate pairs, so
    the search fixes the canonically first pair and looks for the largest
    clique among its compatible pairs. ``max_index`` caps the number of
    candidate pairs considered.
    """
    if a < 1 or b < 1 or math.gcd(a, b) != 1:
        raise ValueError(f"need positive coprime a, b, got a={a}, b={b}")
    if not a + b <= n <= MAX_ENUM_N:
        raise ValueError(f"need a + b <= n <= {MAX_ENUM_N}, got a={a}, b={b}, n={n}")
    vertices = _disjoint_pairs(a, b, n)
    if len(vertices) > max_index:
        raise GuardExceeded(f"search_c_prime_violation: {len(vertices)} candidate pairs exceeds guard {max_index}")

    def ok(p, q):
        return bool(p[0] & q[1]) or bool(q[0] & p[1])

    adj = [0] * len(vertices)
    for i, p in enumerate(vertices):
        for j in range(i + 1, len(vertices)):
            if ok(p, vertices[j]):
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    res = max_clique(adj, adj[0])
    chosen = [0] + res.clique
    system = PairSystem(n, 0, tuple(vertices[i] for i in chosen))
    total = Fraction(len(chosen), binomial(a + b, a))
    target = 2 - Fraction(1, a + b)
    out = SearchOutcome(len(chosen), system, res.nodes, True)
    out.details = {"sum": total, "target": target, "reaches_target": total >= target}
    if total > 1:
        out.flags.append("sum exceeds 1")
    if total >= target:
        out.flags.append("reaches 2 - 1/(a+b)")
    return out


@dataclass
class ImplicationCensus:
    """Result of scanning every small system for a hypothesis and a sum above 1."""

    n: int
    t: int
    clause: str
    max_size: int
    systems_checked: int
    max_sum: Fraction
    counterexamples: list[PairSystem]


def implication_census(n: int, t: int, clause: str, max_size: int = 3, keep: int = 5) -> ImplicationCensus:
    """Enumerate every system over ``[n]`` with at most ``max_size`` pairs obeying (a), (b) and ``clause``.

    ``clause`` is ``"c"`` or ``"c'"``. All hypotheses are conditions on single
    indices and on pairs of indices, and they are invariant under reordering
    the indices, so the scan walks cliques (repetition allowed where a pair
    is compatible with itself) of a compatibility graph over all pairs
    ``(A, B)`` with ``A, B`` inside ``[n]``. Systems are counted up to index
    order. Sums are compared as exact integers over a common denominator.
    """
    if clause not in ("c", "c'"):
        raise ValueError(f"clause must be 'c' or \"c'\", got {clause!r}")
    if n > 6:
        raise ValueError("implication census is limited to n <= 6")
    which = 1 if clause == "c" else 2
    verts = [(x, y) for x in range(1 << n) for y in range(1 << n) if (x & y).bit_count() <= t]
    dens = [pair_weight_denominator(x, y) for x, y in verts]
    lcm = math.lcm(*dens)
    weight = [lcm // d for d in dens]
    size = len(verts)
    adj = [0] * size
    for i in range(size):
        for j in range(i, size):
            res = pair_conditions(verts[i], verts[j], t)
            if res[0] and res[which]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i

    checked = 1
    best = 0
    bad: list[tuple[int, ...]] = []

    def record(idx: tuple[int, ...], w: int) -> None:
        nonlocal best
        if w > best:
            best = w
        if w > lcm and len(bad) < keep:
            bad.append(idx)

    def walk(idx: tuple[int, ...], w: int, cand: int) -> None:
        nonlocal checked
        while cand:
            low = cand & -cand
            v = low.bit_length() - 1
            nw = w + weight[v]
            nidx = idx + (v,)
            checked += 1
            record(nidx, nw)
            if len(nidx) < max_size:
                walk(nidx, nw, cand & adj[v] & ~(low - 1))
            cand ^= low

    walk((), 0, (1 << size) - 1)
    systems = [PairSystem(n, t, tuple(verts[i] for i in idx)) for idx in bad]
    return ImplicationCensus(n, t, clause, max_size, checked, Fraction(best, lcm), systems)
