"""Ground-truth layer for flattened permutations.

A permutation of length n is a tuple of the letters 1..n in one-line
notation.  Its standard cycle form places the smallest letter of each
cycle first and orders cycles by increasing first letters; erasing the
parentheses yields the flattened permutation, which always begins with 1.

An occurrence of the vincular pattern 13-2 in a word w is a pair of
indices (i, j), 2 <= i < j <= n, with w[i-1] < w[j] < w[i] (1-based):
an adjacent ascent whose gap is filled by some later letter.

Everything here is exact and brute force by design: this module is the
oracle the algebraic routes are validated against.
"""

from __future__ import annotations

import itertools
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

DEFAULT_ENUM_LIMIT = 10


class EnumerationLimitError(ValueError):
    """Raised when an exhaustive enumeration is requested beyond the
    configured limit (a hard error, never a silent slow path)."""


Perm = tuple[int, ...]


def as_permutation(letters: Sequence[int]) -> Perm:
    """Validate and normalize a one-line permutation of {1, ..., n}."""
    p = tuple(letters)
    n = len(p)
    if n < 1:
        raise ValueError("a permutation must have length >= 1")
    if sorted(p) != list(range(1, n + 1)):
        raise ValueError(f"{p!r} is not a rearrangement of 1..{n}")
    return p


def standard_cycle_form(p: Sequence[int]) -> tuple[Perm, ...]:
    """Cycle decomposition with each cycle led by its minimum and cycles
    sorted by increasing minima.

    >>> standard_cycle_form((7, 1, 5, 6, 4, 3, 2, 8))
    ((1, 7, 2), (3, 5, 4, 6), (8,))
    """
    p = as_permutation(p)
    n = len(p)
    seen = bytearray(n + 1)
    cycles = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = 1
        x = p[start - 1]
        while x != start:
            cycle.append(x)
            seen[x] = 1
            x = p[x - 1]
        cycles.append(tuple(cycle))
    return tuple(cycles)


def cycles_to_permutation(cycles: Iterable[Sequence[int]]) -> Perm:
    """Read a cycle decomposition back as a one-line permutation."""
    cycles = [tuple(c) for c in cycles]
    n = sum(len(c) for c in cycles)
    out = [0] * n
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + cycle[:1]):
            if not 1 <= a <= n or out[a - 1]:
                raise ValueError("cycles do not form a permutation of 1..n")
            out[a - 1] = b
    return as_permutation(out)


def flatten(p: Sequence[int]) -> Perm:
    """Erase the parentheses of the standard cycle form.

    >>> flatten((7, 1, 5, 6, 4, 3, 2, 8))
    (1, 7, 2, 3, 5, 4, 6, 8)
    """
    p = as_permutation(p)
    return _flatten_valid(p)


def _flatten_valid(p: Perm) -> Perm:
    # Scanning starts in increasing order visits each cycle at its minimum,
    # so the concatenation below is the standard cycle form read flat.
    n = len(p)
    seen = bytearray(n + 1)
    out = []
    for start in range(1, n + 1):
        if seen[start]:
            continue
        seen[start] = 1
        out.append(start)
        x = p[start - 1]
        while x != start:
            seen[x] = 1
            out.append(x)
            x = p[x - 1]
    return tuple(out)


def count_13_2(word: Sequence[int]) -> int:
    """Number of occurrences of the pattern 13-2 in a permutation.

    >>> count_13_2((1, 3, 2))
    1
    >>> count_13_2((1, 7, 2, 3, 5, 4, 6, 8))
    6
    """
    w = as_permutation(word)
    return _count_valid(w)


def _count_valid(w: Perm) -> int:
    total = 0
    n = len(w)
    for i in range(1, n):
        lo = w[i - 1]
        hi = w[i]
        if lo + 1 < hi:
            for j in range(i + 1, n):
                if lo < w[j] < hi:
                    total += 1
    return total


# ---------------------------------------------------------------------------
# Exhaustive distributions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OccurrenceTable:
    """Distribution of 13-2 occurrence counts over the permutations whose
    flattening starts with ``prefix`` (empty prefix means all of S_n).

    counts maps an occurrence count r to the number of such permutations;
    only nonzero entries are stored.
    """

    n: int
    counts: dict[int, int]
    prefix: tuple[int, ...] = field(default=())

    def total(self) -> int:
        return sum(self.counts.values())

    def count(self, r: int) -> int:
        return self.counts.get(r, 0)

    def max_occurrences(self) -> int:
        return max(self.counts, default=0)

    def coeff_list(self) -> list[int]:
        """Dense list [counts[0], counts[1], ...] up to the last nonzero."""
        top = self.max_occurrences()
        return [self.count(r) for r in range(top + 1)] if self.counts else []


@lru_cache(maxsize=12)
def _word_stats(n: int) -> dict[Perm, tuple[int, int]]:
    """For each flattened word of S_n: (pattern count, multiplicity).

    Multiplicity is the number of permutations flattening to that word;
    multiplicities sum to n! and there are (n-1)! distinct words.
    """
    mult: Counter[Perm] = Counter()
    for p in itertools.permutations(range(1, n + 1)):
        mult[_flatten_valid(p)] += 1
    return {w: (_count_valid(w), m) for w, m in mult.items()}


def _check_prefix(n: int, prefix: Sequence[int]) -> tuple[int, ...]:
    pre = tuple(prefix)
    if len(set(pre)) != len(pre):
        raise ValueError("prefix letters must be distinct")
    for a in pre:
        if not 1 <= a <= n:
            raise ValueError(f"prefix letter {a} outside 1..{n}")
    return pre


def distribution(
    n: int,
    prefix: Sequence[int] = (),
    limit: int = DEFAULT_ENUM_LIMIT,
) -> OccurrenceTable:
    """Exhaustive occurrence distribution over S_n, optionally restricted
    to flattenings starting with ``prefix``.

    >>> distribution(3).counts
    {0: 4, 1: 2}
    >>> distribution(3, prefix=(1, 3)).counts
    {1: 2}
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > limit:
        raise EnumerationLimitError(
            f"exhaustive enumeration of S_{n} exceeds the limit {limit}"
        )
    pre = _check_prefix(n, prefix)
    counts: Counter[int] = Counter()
    for word, (occ, m) in _word_stats(n).items():
        if word[: len(pre)] == pre:
            counts[occ] += m
    return OccurrenceTable(n, dict(sorted(counts.items())), pre)


def _distribution_chunk(args: tuple[int, int, tuple[int, ...]]) -> dict[int, int]:
    n, first, pre = args
    rest = [x for x in range(1, n + 1) if x != first]
    k = len(pre)
    counts: Counter[int] = Counter()
    for tail in itertools.permutations(rest):
        word = _flatten_valid((first,) + tail)
        if word[:k] == pre:
            counts[_count_valid(word)] += 1
    return dict(counts)


def distribution_parallel(
    n: int,
    prefix: Sequence[int] = (),
    limit: int = DEFAULT_ENUM_LIMIT,
    max_workers: int | None = None,
) -> OccurrenceTable:
    """Same result as :func:`distribution`, enumerated in parallel across
    processes (one chunk per first letter of the unflattened permutation)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > limit:
        raise EnumerationLimitError(
            f"exhaustive enumeration of S_{n} exceeds the limit {limit}"
        )
    pre = _check_prefix(n, prefix)
    if n == 1:
        return distribution(n, pre, limit)
    totals: Counter[int] = Counter()
    jobs = [(n, first, pre) for first in range(1, n + 1)]
    with ProcessPoolExecutor(max_workers=max_workers) as pool:
        for part in pool.map(_distribution_chunk, jobs):
            totals.update(part)
    return OccurrenceTable(n, dict(sorted(totals.items())), pre)


# ---------------------------------------------------------------------------
# Explicit constructions
# ---------------------------------------------------------------------------

def doubling_pair(sigma: Sequence[int]) -> tuple[Perm, Perm]:
    """The one-to-two map behind the prefix-12 doubling.

    Shifts every letter of sigma (length n-1) up by one and returns the
    two length-n permutations obtained by (a) prepending the fixed point 1
    as its own cycle and (b) splicing the letter 1 into the front of the
    first shifted cycle.  Both images flatten to the same word, which
    starts 1,2 and has exactly as many 13-2 occurrences as Flatten(sigma).

    >>> doubling_pair((2, 1))
    ((1, 3, 2), (2, 3, 1))
    """
    cycles = standard_cycle_form(sigma)
    shifted = [tuple(a + 1 for a in c) for c in cycles]
    pi = cycles_to_permutation([(1,)] + shifted)
    pi_prime = cycles_to_permutation([(1,) + shifted[0]] + shifted[1:])
    return pi, pi_prime


def max_occurrences(n: int) -> int:
    """Largest possible number of 13-2 occurrences in a flattened word of
    length n: n(n-2)/4 for even n, (n-1)^2/4 for odd n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return n * (n - 2) // 4 if n % 2 == 0 else (n - 1) ** 2 // 4


def max_pattern_perm(n: int) -> Perm:
    """The interleaved word 1, n, 2, n-1, 3, n-2, ... attaining
    max_occurrences(n).

    >>> max_pattern_perm(5)
    (1, 5, 2, 4, 3)
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    low = list(range(1, (n + 1) // 2 + 1))
    high = list(range(n, (n + 1) // 2, -1))
    out = []
    for a, b in itertools.zip_longest(low, high):
        if a is not None:
            out.append(a)
        if b is not None:
            out.append(b)
    return as_permutation(out)


def min_length_for(r: int) -> int:
    """Smallest length n whose maximal occurrence count reaches r; always
    at least 1 + 2*sqrt(r)."""
    if r < 1:
        raise ValueError("r must be >= 1")
    n = 1
    while max_occurrences(n) < r:
        n += 1
    return n


def witness_perm(r: int, i: int) -> Perm:
    """A flattened word of length r+2 starting 1,(i+2) with exactly r
    occurrences of 13-2.

    For i = r this is 1,(r+2),(r+1),...,2.  For i < r the remaining
    letters are laid out in decreasing order, except that the three
    smallest, a < b < c, close the word as a, c, b.
    """
    if r < 4:
        raise ValueError("the construction requires r >= 4")
    if not 0 <= i <= r:
        raise ValueError(f"i must lie in [0, {r}]")
    if i == r:
        return as_permutation((1,) + tuple(range(r + 2, 1, -1)))
    rest = sorted(set(range(1, r + 3)) - {1, i + 2})
    a, b, c = rest[:3]
    middle = sorted(rest[3:], reverse=True)
    return as_permutation([1, i + 2] + middle + [a, c, b])
