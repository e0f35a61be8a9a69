from itertools import combinations

import pytest

from ekrkit import SetFamily


def all_sets(n, k):
    out = []
    for size in range(k + 1):
        for c in combinations(range(n), size):
            out.append(sum(1 << b for b in c))
    return out


def all_families(n, k, max_members=None):
    sets = all_sets(n, k)
    top = len(sets) if max_members is None else max_members
    for size in range(top + 1):
        for chosen in combinations(sets, size):
            yield SetFamily.from_masks(n, k, chosen)


@pytest.fixture
def fam():
    return SetFamily.from_sets
