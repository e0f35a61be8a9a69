"""Ground-set arithmetic: bitmask element sets, binomials and exact rationals.

Elements are 1-indexed at every public boundary; element ``e`` lives in bit
``e - 1`` of the mask.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

MAX_GROUND = 64

# Exact rationals with reduced form and arbitrary-precision parts.
BigRational = Fraction


def binomial(n: int, r: int) -> int:
    """C(n, r), zero outside ``0 <= r <= n``."""
    if r < 0 or n < 0 or r > n:
        return 0
    return math.comb(n, r)


def mask_of(elements: Iterable[int], n: int) -> int:
    bits = 0
    for e in elements:
        if not 1 <= e <= n:
            raise ValueError(f"element {e} outside ground set [1..{n}]")
        bits |= 1 << (e - 1)
    return bits


def elements_of(bits: int) -> list[int]:
    out = []
    e = 1
    while bits:
        if bits & 1:
            out.append(e)
        bits >>= 1
        e += 1
    return out


def popcount(bits: int) -> int:
    return bits.bit_count()


@dataclass(frozen=True)
class GroundParams:
    """Ground-set size ``n``, rank bound ``k`` and intersection threshold ``t``."""

    n: int
    k: int
    t: int = 0

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_GROUND:
            raise ValueError(f"n must be in 1..{MAX_GROUND}, got {self.n}")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"k must be in 0..n, got k={self.k}, n={self.n}")
        if not 0 <= self.t <= self.k:
            raise ValueError(f"t must be in 0..k, got t={self.t}, k={self.k}")


@dataclass(frozen=True, order=True)
class ElementSet:
    """A subset of ``[n]`` stored as a bitmask."""

    n: int
    bits: int

    def __post_init__(self) -> None:
        if not 1 <= self.n <= MAX_GROUND:
            raise ValueError(f"n must be in 1..{MAX_GROUND}, got {self.n}")
        if self.bits < 0 or self.bits >> self.n:
            raise ValueError(f"bitmask {self.bits:#x} has bits outside [1..{self.n}]")

    @classmethod
    def of(cls, elements: Iterable[int], n: int) -> "ElementSet":
        return cls(n, mask_of(elements, n))

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter(elements_of(self.bits))

    def __contains__(self, e: object) -> bool:
        return isinstance(e, int) and 1 <= e <= self.n and bool(self.bits >> (e - 1) & 1)

    def _check(self, other: "ElementSet") -> None:
        if not isinstance(other, ElementSet):
            raise TypeError(f"expected ElementSet, got {type(other).__name__}")
        if other.n != self.n:
            raise ValueError(f"ground sets differ: n={self.n} vs n={other.n}")

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.bits | other.bits)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.bits & other.bits)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.bits & ~other.bits)

    def __xor__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.n, self.bits ^ other.bits)

    def elements(self) -> list[int]:
        return elements_of(self.bits)

    def __repr__(self) -> str:
        return f"ElementSet({{{', '.join(map(str, self.elements()))}}}, n={self.n})"


@dataclass(frozen=True)
class SetAlgebra:
    union: ElementSet
    intersection: ElementSet
    difference: ElementSet
    symmetric_difference: ElementSet

    @property
    def sizes(self) -> dict[str, int]:
        return {
            "union": len(self.union),
            "intersection": len(self.intersection),
            "difference": len(self.difference),
            "symmetric_difference": len(self.symmetric_difference),
        }


def set_algebra(a: ElementSet, b: ElementSet) -> SetAlgebra:
    """Union, intersection, ``a - b`` and symmetric difference of two sets.

    Raises ``ValueError`` if the sets live over different ground sets.
    """
    return SetAlgebra(a | b, a & b, a - b, a ^ b)
