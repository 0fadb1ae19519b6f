"""Exact law of the alternating-subsequence statistic on S_n.

``counts[k-1]`` is the number of permutations of length n whose longest
alternating subsequence has length k. Counts are Python ints throughout.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

import numpy as np

from .permcore import Convention, OracleTooLargeError, Sign, as_linear_batch

__all__ = [
    "BRUTEFORCE_DIST_MAX_N",
    "DEFAULT_N_MAX",
    "DistributionTable",
    "ResourceLimitError",
    "distribution_bruteforce",
    "distribution_dp",
    "iter_distributions",
]

DEFAULT_N_MAX = 300
BRUTEFORCE_DIST_MAX_N = 10
_ENUM_CHUNK = 200_000


class ResourceLimitError(ValueError):
    """Raised when n exceeds the configured DP limit."""


@dataclass(frozen=True)
class DistributionTable:
    n: int
    convention: Convention
    counts: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if len(self.counts) != self.n:
            raise ValueError(f"expected {self.n} counts, got {len(self.counts)}")
        if any(c < 0 for c in self.counts):
            raise ValueError("counts must be non-negative")

    @property
    def total(self) -> int:
        return sum(self.counts)

    def is_normalized(self) -> bool:
        return self.total == math.factorial(self.n)

    def probabilities(self) -> list[Fraction]:
        nfact = math.factorial(self.n)
        return [Fraction(c, nfact) for c in self.counts]

    def __getitem__(self, k: int) -> int:
        """Count for statistic value k (1-based)."""
        if not 1 <= k <= self.n:
            raise IndexError(k)
        return self.counts[k - 1]


def distribution_bruteforce(
    n: int,
    convention: Convention = Convention.FIRST_STEP_DESCENT,
    max_n: int = BRUTEFORCE_DIST_MAX_N,
) -> DistributionTable:
    """Tally the statistic over every permutation of length n.

    Permutations are enumerated in lexicographic order and evaluated in
    chunks with the vectorized evaluator.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > max_n:
        raise OracleTooLargeError(f"oracle too large: n={n} exceeds guard {max_n}")
    tally = np.zeros(n + 1, dtype=np.int64)
    perms = itertools.permutations(range(1, n + 1))
    while True:
        chunk = list(itertools.islice(perms, _ENUM_CHUNK))
        if not chunk:
            break
        stats = as_linear_batch(np.array(chunk, dtype=np.int8), convention)
        tally += np.bincount(stats, minlength=n + 1)
    return DistributionTable(n, convention, tuple(int(c) for c in tally[1:]))


def iter_distributions(
    n: int,
    convention: Convention = Convention.FIRST_STEP_DESCENT,
    n_max: int = DEFAULT_N_MAX,
) -> Iterator[DistributionTable]:
    """Yield the tables for lengths 1, 2, ..., n from a single DP pass.

    State after a prefix of length i: the relative rank l (1..i) of its last
    entry, the sign of its last comparison, and the statistic value k so far.
    ``asc[l-1, k]`` / ``desc[l-1, k]`` hold the number of prefixes per state.
    Appending an entry of relative rank r in 1..i+1 is an ascent iff r > l,
    so the ascent targets for rank r collect a prefix sum over l < r and the
    descent targets a suffix sum over l >= r. Entering a new sign bumps k by
    one; repeating the previous sign keeps it.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > n_max:
        raise ResourceLimitError(f"n={n} exceeds the DP limit n_max={n_max}")

    yield DistributionTable(1, convention, (1,))
    if n == 1:
        return

    width = n + 1  # k index 0..n, index 0 unused
    start_asc = 1 + (convention.start_sign is Sign.ASCENT)
    start_desc = 1 + (convention.start_sign is Sign.DESCENT)
    asc = np.zeros((2, width), dtype=object)
    desc = np.zeros((2, width), dtype=object)
    # prefix (1,2) ends with rank 2 after an ascent; (2,1) ends with rank 1 after a descent
    asc[1, start_asc] = 1
    desc[0, start_desc] = 1

    for i in range(2, n + 1):
        if i > 2:
            # i-1 -> i; previous arrays have i-1 rank rows
            zero_row = np.zeros((1, width), dtype=object)
            # ascent into rank r (1..i): sum over l < r
            a_pre = np.vstack([zero_row, np.cumsum(asc, axis=0)])[:i]
            d_pre = np.vstack([zero_row, np.cumsum(desc, axis=0)])[:i]
            # descent into rank r: sum over l >= r, r in 1..i
            a_suf = np.vstack([np.cumsum(asc[::-1], axis=0)[::-1], zero_row])[:i]
            d_suf = np.vstack([np.cumsum(desc[::-1], axis=0)[::-1], zero_row])[:i]
            new_asc = a_pre.copy()
            new_asc[:, 1:] += d_pre[:, :-1]
            new_desc = d_suf.copy()
            new_desc[:, 1:] += a_suf[:, :-1]
            asc, desc = new_asc, new_desc
        per_k = asc.sum(axis=0) + desc.sum(axis=0)
        yield DistributionTable(i, convention, tuple(int(c) for c in per_k[1 : i + 1]))


def distribution_dp(
    n: int,
    convention: Convention = Convention.FIRST_STEP_DESCENT,
    n_max: int = DEFAULT_N_MAX,
) -> DistributionTable:
    """Exact table for one n via the rank/sign/value dynamic program."""
    table = None
    for table in iter_distributions(n, convention, n_max):
        pass
    return table
