"""Rank-bounded set families and the shifting operator that adds one element."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

from ekrkit.sets import ElementSet, GroundParams, elements_of, mask_of


def canonical_key(bits: int) -> tuple[int, int]:
    return (bits.bit_count(), bits)


@dataclass(frozen=True)
class SetFamily:
    """Distinct subsets of ``[n]`` of size at most ``k``, kept in canonical order.

    Canonical order is by size, then by bitmask value. Members are stored as
    raw bitmasks; use :meth:`sets` for :class:`ElementSet` views.
    """

    params: GroundParams
    members: tuple[int, ...]

    def __post_init__(self) -> None:
        n, k = self.params.n, self.params.k
        seen = set()
        for m in self.members:
            if m < 0 or m >> n:
                raise ValueError(f"member {elements_of(m)} not inside [1..{n}]")
            if m.bit_count() > k:
                raise ValueError(f"member {elements_of(m)} exceeds rank bound k={k}")
            if m in seen:
                raise ValueError(f"duplicate member {elements_of(m)}")
            seen.add(m)
        ordered = tuple(sorted(self.members, key=canonical_key))
        object.__setattr__(self, "members", ordered)

    @classmethod
    def from_masks(cls, n: int, k: int, masks: Iterable[int], t: int = 0) -> "SetFamily":
        return cls(GroundParams(n, k, t), tuple(masks))

    @classmethod
    def from_sets(cls, n: int, k: int, sets: Iterable[Iterable[int]], t: int = 0) -> "SetFamily":
        """Build from 1-indexed element lists (or :class:`ElementSet` values)."""
        masks = []
        for s in sets:
            if isinstance(s, ElementSet):
                if s.n != n:
                    raise ValueError(f"ground sets differ: n={n} vs n={s.n}")
                masks.append(s.bits)
            else:
                masks.append(mask_of(s, n))
        return cls(GroundParams(n, k, t), tuple(masks))

    @property
    def n(self) -> int:
        return self.params.n

    @property
    def k(self) -> int:
        return self.params.k

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __contains__(self, bits: object) -> bool:
        return bits in self._member_set

    @property
    def _member_set(self) -> frozenset[int]:
        cached = self.__dict__.get("_cache")
        if cached is None:
            cached = frozenset(self.members)
            object.__setattr__(self, "_cache", cached)
        return cached

    def sets(self) -> list[ElementSet]:
        return [ElementSet(self.n, m) for m in self.members]

    def as_lists(self) -> list[list[int]]:
        return [elements_of(m) for m in self.members]

    def with_members(self, masks: Iterable[int]) -> "SetFamily":
        return SetFamily(self.params, tuple(masks))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SetFamily):
            return NotImplemented
        return self.params == other.params and self.members == other.members

    def __hash__(self) -> int:
        return hash((self.params, self.members))

    def __repr__(self) -> str:
        body = ", ".join("{" + ",".join(map(str, s)) + "}" for s in self.as_lists())
        return f"SetFamily(n={self.n}, k={self.k}, [{body}])"


def _shift(members: tuple[int, ...], present: frozenset[int], bit: int, k: int) -> list[int]:
    out = []
    for a in members:
        grown = a | bit
        if grown != a and grown not in present and a.bit_count() < k:
            out.append(grown)
        else:
            out.append(a)
    return out


def compress_once(family: SetFamily, i: int, k: int | None = None) -> SetFamily:
    """Apply the shift toward element ``i`` with rank bound ``k``.

    Each member ``A`` becomes ``A | {i}`` when that set is not already in the
    family and ``|A| < k``; otherwise ``A`` is kept. ``k`` defaults to the
    family's own rank bound and may not exceed it.
    """
    n = family.n
    if not 1 <= i <= n:
        raise ValueError(f"element {i} outside ground set [1..{n}]")
    if k is None:
        k = family.k
    if not 0 <= k <= family.k:
        raise ValueError(f"shift rank {k} must be in 0..{family.k}")
    shifted = _shift(family.members, family._member_set, 1 << (i - 1), k)
    return family.with_members(shifted)


def is_up_set(family: SetFamily) -> bool:
    """True iff every member below the rank bound has all its one-element extensions."""
    n, k = family.n, family.k
    present = family._member_set
    full = (1 << n) - 1
    for a in family.members:
        if a.bit_count() >= k:
            continue
        missing = full & ~a
        while missing:
            low = missing & -missing
            if a | low not in present:
                return False
            missing ^= low
    return True


def closure_passes(family: SetFamily) -> tuple[SetFamily, int]:
    """Run full ascending shifting passes to a fixpoint; return it with the pass count.

    The pass count includes the final pass that changed nothing.
    """
    n, k = family.n, family.k
    limit = n * k * len(family) + 1
    members = family.members
    passes = 0
    while True:
        passes += 1
        if passes > limit:
            raise RuntimeError(f"up-closure did not stabilise within {limit} passes")
        current = members
        for i in range(n):
            current = tuple(_shift(current, frozenset(current), 1 << i, k))
        if sorted(current) == sorted(members):
            return family.with_members(current), passes
        members = current


def up_closure(family: SetFamily) -> SetFamily:
    """The up-set reached by iterating passes ``S_n ∘ ... ∘ S_1`` until nothing moves."""
    return closure_passes(family)[0]
