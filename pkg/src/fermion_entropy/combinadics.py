"""
Ranking and unranking of k-subsets of {0, ..., d-1} in lexicographic order,
plus the permutation signs needed to merge two disjoint subsets.

Subsets are plain tuples of strictly increasing 0-based indices. The lexicographic
order fixed here is the single basis convention for every wedge space in the package.
"""
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, List, Tuple

import numpy as np

Subset = Tuple[int, ...]

# index arrays are numpy int64
_MAX_INDEX = int(np.iinfo(np.int64).max)


def binomial(n: int, k: int) -> int:
    """
    Exact binomial coefficient C(n, k), 0 when k > n.

    Raises:
        ValueError: If n or k is negative.
        OverflowError: If the result does not fit the 64-bit index width.
    """
    if n < 0 or k < 0:
        raise ValueError(f"binomial expects non-negative arguments, got ({n}, {k})")
    value = comb(n, k)
    if value > _MAX_INDEX:
        raise OverflowError(f"C({n},{k}) exceeds the 64-bit index range")
    return value


def validate_subset(s: Iterable[int], d: int) -> Subset:
    """Return s as a Subset, raising ValueError unless it is strictly increasing within [0, d)."""
    subset = tuple(int(x) for x in s)
    if d < 0:
        raise ValueError(f"Dimension must be non-negative, got {d}")
    if len(subset) > d:
        raise ValueError(f"Subset {subset} has more than d={d} elements")
    for i, x in enumerate(subset):
        if x < 0 or x >= d:
            raise ValueError(f"Subset element {x} outside [0, {d})")
        if i > 0 and subset[i - 1] >= x:
            raise ValueError(f"Subset {subset} is not strictly increasing")
    return subset


def rank(s: Iterable[int], d: int) -> int:
    """0-based position of s among all |s|-subsets of {0..d-1} in lexicographic order."""
    subset = validate_subset(s, d)
    k = len(subset)
    offset = sum(binomial(d - 1 - x, k - i) for i, x in enumerate(subset))
    return binomial(d, k) - 1 - offset


def unrank(r: int, d: int, k: int) -> Subset:
    """Inverse of rank: the k-subset at lexicographic position r."""
    if k < 0 or k > d:
        raise ValueError(f"Subset size k={k} outside [0, {d}]")
    total = binomial(d, k)
    if r < 0 or r >= total:
        raise ValueError(f"Rank {r} outside [0, {total})")

    result: List[int] = []
    x = 0
    for i in range(k):
        # skip every block of subsets that starts with a smaller element
        while r >= binomial(d - 1 - x, k - 1 - i):
            r -= binomial(d - 1 - x, k - 1 - i)
            x += 1
        result.append(x)
        x += 1
    return tuple(result)


def merge_sign(a: Iterable[int], c: Iterable[int]) -> Tuple[Subset, int]:
    """
    Merge two disjoint sorted subsets.

    Returns:
        Tuple[Subset, int]: The sorted union and the sign (+1/-1) of the permutation
        sorting the concatenation a followed by c.

    Raises:
        ValueError: If a and c share an element.
    """
    a, c = tuple(a), tuple(c)
    if set(a) & set(c):
        raise ValueError(f"Subsets {a} and {c} are not disjoint")
    # both inputs are sorted, so inversions are exactly the pairs x in a, y in c with x > y
    inversions = sum(1 for x in a for y in c if x > y)
    return tuple(sorted(a + c)), -1 if inversions % 2 else 1


def permutation_sign(p: Iterable[int]) -> int:
    """Sign of a sequence of distinct integers relative to its sorted order."""
    p = tuple(p)
    inversions = sum(1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j])
    return -1 if inversions % 2 else 1


@lru_cache(maxsize=None)
def subsets(d: int, k: int) -> Tuple[Subset, ...]:
    """All k-subsets of {0..d-1} in rank order."""
    if k < 0 or k > d:
        raise ValueError(f"Subset size k={k} outside [0, {d}]")
    return tuple(combinations(range(d), k))
