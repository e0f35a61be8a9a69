"""Bitset branch-and-bound maximum clique with greedy colouring bounds.

Graphs are lists of Python-int neighbour masks over vertices ``0..N-1``.
The search runs in two phases: a colour-ordered branch and bound proves the
clique number, then a canonical-order depth-first pass with that target
returns the lexicographically least maximum clique (as a sorted index list).

``refine(clique, v, candidates)`` lets callers narrow the candidate set beyond
plain adjacency when ``v`` joins ``clique``; it must return a subset of
``candidates & adj[v]`` and only drop vertices that can no longer join.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Callable, Sequence

Refine = Callable[[Sequence[int], int, int], int]


@dataclass
class CliqueResult:
    clique: list[int]
    nodes: int


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class _Solver:
    def __init__(self, adj: Sequence[int], refine: Refine | None):
        self.adj = adj
        self.refine = refine
        self.nodes = 0

    def extend(self, clique: Sequence[int], v: int, cand: int) -> int:
        if self.refine is None:
            return cand & self.adj[v]
        return self.refine(clique, v, cand & self.adj[v])

    def colour_sort(self, cand: int) -> tuple[list[int], list[int]]:
        adj = self.adj
        order: list[int] = []
        colours: list[int] = []
        colour = 0
        uncoloured = cand
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                low = q & -q
                v = low.bit_length() - 1
                uncoloured ^= low
                q &= ~adj[v]
                q &= ~low
                order.append(v)
                colours.append(colour)
        return order, colours

    def colour_bound(self, cand: int) -> int:
        adj = self.adj
        colour = 0
        uncoloured = cand
        while uncoloured:
            colour += 1
            q = uncoloured
            while q:
                low = q & -q
                uncoloured ^= low
                q &= ~adj[low.bit_length() - 1]
                q &= ~low
        return colour

    def best_size(self, cand: int, floor: int) -> list[int]:
        best: list[int] = []
        best_len = floor
        clique: list[int] = []

        def expand(cand: int) -> None:
            nonlocal best, best_len
            self.nodes += 1
            order, colours = self.colour_sort(cand)
            for idx in range(len(order) - 1, -1, -1):
                if len(clique) + colours[idx] <= best_len:
                    return
                v = order[idx]
                cand &= ~(1 << v)
                nxt = self.extend(clique, v, cand)
                clique.append(v)
                if nxt:
                    expand(nxt)
                elif len(clique) > best_len:
                    best, best_len = list(clique), len(clique)
                clique.pop()

        expand(cand)
        return best

    def lex_least(self, cand: int, target: int) -> list[int] | None:
        clique: list[int] = []

        def dfs(cand: int) -> bool:
            self.nodes += 1
            if len(clique) == target:
                return True
            if len(clique) + cand.bit_count() < target:
                return False
            if len(clique) + self.colour_bound(cand) < target:
                return False
            while cand:
                if len(clique) + cand.bit_count() < target:
                    return False
                low = cand & -cand
                v = low.bit_length() - 1
                cand ^= low
                nxt = self.extend(clique, v, cand)
                clique.append(v)
                if dfs(nxt):
                    return True
                clique.pop()
            return False

        return list(clique) if dfs(cand) else None


def max_clique(adj: Sequence[int], candidates: int | None = None, refine: Refine | None = None) -> CliqueResult:
    """Lexicographically least maximum clique inside ``candidates`` (default: all vertices)."""
    if candidates is None:
        candidates = (1 << len(adj)) - 1
    if not candidates:
        return CliqueResult([], 0)
    limit = sys.getrecursionlimit()
    if limit < len(adj) + 100:
        sys.setrecursionlimit(len(adj) + 100)
    solver = _Solver(adj, refine)
    found = solver.best_size(candidates, 0)
    witness = solver.lex_least(candidates, len(found))
    if witness is None:
        raise RuntimeError("lexicographic pass missed a clique of the proven size")
    return CliqueResult(witness, solver.nodes)
