"""Permutations and the longest-alternating-subsequence statistic.

Two evaluators are provided: :func:`as_bruteforce`, which searches
subsequences directly, and :func:`as_linear`, which reads the answer off the
runs of the descent word. The second is the one used everywhere else.

>>> as_linear(Permutation((2, 1, 3)))
3
>>> as_linear(Permutation((1, 3, 2)), Convention.FIRST_STEP_ASCENT)
3
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

__all__ = [
    "BRUTEFORCE_MAX_N",
    "Convention",
    "OracleTooLargeError",
    "Permutation",
    "Sign",
    "all_permutations",
    "as_bruteforce",
    "as_bruteforce_batch",
    "as_linear",
    "as_linear_batch",
    "bounded_draws",
    "complement",
    "descent_word",
    "make_rng",
    "sample_permutation",
    "sample_permutations",
]

BRUTEFORCE_MAX_N = 14


class OracleTooLargeError(ValueError):
    """Raised when an exhaustive oracle is asked for an input beyond its guard."""


class Sign(enum.Enum):
    ASCENT = "A"
    DESCENT = "D"


class Convention(enum.Enum):
    """Which comparison an alternating subsequence must start with."""

    FIRST_STEP_DESCENT = "descent-first"  # a1 > a2 < a3 > ...
    FIRST_STEP_ASCENT = "ascent-first"  # a1 < a2 > a3 < ...

    @property
    def start_sign(self) -> Sign:
        if self is Convention.FIRST_STEP_DESCENT:
            return Sign.DESCENT
        return Sign.ASCENT

    @classmethod
    def parse(cls, text: str) -> "Convention":
        key = text.strip().lower()
        for conv in cls:
            if key in (conv.value, conv.name.lower(), conv.value.split("-")[0]):
                return conv
        raise ValueError(f"unknown convention {text!r}")


@dataclass(frozen=True)
class Permutation:
    """A bijection on {1..n} in one-line notation."""

    values: tuple[int, ...]

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        n = len(vals)
        if n < 1:
            raise ValueError("a permutation needs n >= 1")
        if sorted(vals) != list(range(1, n + 1)):
            raise ValueError(f"not a permutation of 1..{n}: {list(vals)}")

    @property
    def n(self) -> int:
        return len(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)


def _values(w: Permutation | Sequence[int]) -> tuple[int, ...]:
    if isinstance(w, Permutation):
        return w.values
    return Permutation(tuple(w)).values


def all_permutations(n: int) -> Iterator[Permutation]:
    for vals in itertools.permutations(range(1, n + 1)):
        yield Permutation(vals)


def descent_word(w: Permutation | Sequence[int]) -> tuple[Sign, ...]:
    vals = _values(w)
    return tuple(
        Sign.ASCENT if b > a else Sign.DESCENT for a, b in zip(vals, vals[1:])
    )


def _is_alternating(seq: Sequence[int], start: Sign) -> bool:
    want_descent = start is Sign.DESCENT
    for a, b in zip(seq, seq[1:]):
        if (a > b) != want_descent:
            return False
        want_descent = not want_descent
    return True


def as_bruteforce(
    w: Permutation | Sequence[int],
    convention: Convention = Convention.FIRST_STEP_DESCENT,
    max_n: int = BRUTEFORCE_MAX_N,
) -> int:
    """Longest alternating subsequence by direct search over subsequences.

    Lengths are tried in increasing order. A length-L alternating subsequence
    has an alternating prefix of every shorter length, so the search stops at
    the first length with no witness.
    """
    vals = _values(w)
    n = len(vals)
    if n > max_n:
        raise OracleTooLargeError(f"oracle too large: n={n} exceeds guard {max_n}")
    start = convention.start_sign
    best = 1
    for length in range(2, n + 1):
        if any(_is_alternating(sub, start) for sub in itertools.combinations(vals, length)):
            best = length
        else:
            break
    return best


def as_bruteforce_batch(
    perms: np.ndarray,
    convention: Convention = Convention.FIRST_STEP_DESCENT,
    max_n: int = BRUTEFORCE_MAX_N,
) -> np.ndarray:
    """Row-wise :func:`as_bruteforce` for a 2-d array of permutations.

    Same search, run on all rows at once: for each length, every index
    subsequence is tested against every row through a precomputed
    pairwise-comparison tensor.
    """
    count, n = perms.shape
    if n > max_n:
        raise OracleTooLargeError(f"oracle too large: n={n} exceeds guard {max_n}")
    greater = perms[:, :, None] > perms[:, None, :]  # [row, i, j]: w_i > w_j
    want_descent = convention.start_sign is Sign.DESCENT
    best = np.ones(count, dtype=np.int64)
    for length in range(2, n + 1):
        found = np.zeros(count, dtype=bool)
        for idx in itertools.combinations(range(n), length):
            ok = np.ones(count, dtype=bool)
            for step, (a, b) in enumerate(zip(idx, idx[1:])):
                descent = want_descent if step % 2 == 0 else not want_descent
                ok &= greater[:, a, b] if descent else ~greater[:, a, b]
            found |= ok
        if not found.any():
            break
        best[found] = length
    return best


def as_linear(
    w: Permutation | Sequence[int],
    convention: Convention = Convention.FIRST_STEP_DESCENT,
) -> int:
    """Longest alternating subsequence from the runs of the descent word.

    With m maximal runs of equal signs, the answer is m + 1 when the first
    sign agrees with the convention and m otherwise.
    """
    signs = descent_word(w)
    if not signs:
        return 1
    runs = 1 + sum(1 for a, b in zip(signs, signs[1:]) if a is not b)
    return runs + 1 if signs[0] is convention.start_sign else runs


def complement(w: Permutation | Sequence[int]) -> Permutation:
    vals = _values(w)
    n = len(vals)
    return Permutation(tuple(n + 1 - v for v in vals))


# Random sampling. The bit generator is numpy's PCG64 seeded directly with
# the 64-bit seed; only its raw 64-bit output stream is consumed, and the
# bounded draws below are our own, so the permutation stream does not depend
# on numpy's Generator methods.

def make_rng(seed: int) -> np.random.PCG64:
    if not 0 <= seed < 2**64:
        raise ValueError("seed must be a 64-bit unsigned integer")
    return np.random.PCG64(seed)


def bounded_draws(rng: np.random.PCG64, bound: int, size: int) -> np.ndarray:
    """`size` independent uniform integers in [0, bound).

    Rejection sampling on the top bits of raw 64-bit words: take the
    bit_length(bound - 1) high bits and retry values >= bound. Retries are
    drawn in order for the still-rejected positions only.
    """
    if bound < 1:
        raise ValueError("bound must be positive")
    out = np.zeros(size, dtype=np.uint64)
    if bound == 1:
        return out
    shift = np.uint64(64 - (bound - 1).bit_length())
    pending = np.arange(size)
    while pending.size:
        raw = rng.random_raw(pending.size) >> shift
        ok = raw < bound
        out[pending[ok]] = raw[ok]
        pending = pending[~ok]
    return out


def sample_permutations(n: int, count: int, rng: np.random.PCG64) -> np.ndarray:
    """`count` uniform permutations of 1..n as rows of an int array.

    Fisher-Yates run on all rows at once: for i = n-1 down to 1 draw
    j in [0, i] per row and swap positions i and j.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    perms = np.tile(np.arange(1, n + 1, dtype=np.int64), (count, 1))
    rows = np.arange(count)
    for i in range(n - 1, 0, -1):
        j = bounded_draws(rng, i + 1, count).astype(np.int64)
        tmp = perms[rows, j].copy()
        perms[rows, j] = perms[:, i]
        perms[:, i] = tmp
    return perms


def sample_permutation(n: int, rng: np.random.PCG64) -> Permutation:
    return Permutation(tuple(int(v) for v in sample_permutations(n, 1, rng)[0]))


def as_linear_batch(perms: np.ndarray, convention: Convention = Convention.FIRST_STEP_DESCENT) -> np.ndarray:
    """Row-wise :func:`as_linear` for a 2-d array of permutations."""
    count, n = perms.shape
    if n == 1:
        return np.ones(count, dtype=np.int64)
    descents = np.diff(perms, axis=1) < 0
    runs = 1 + np.count_nonzero(descents[:, 1:] != descents[:, :-1], axis=1)
    want_descent = convention.start_sign is Sign.DESCENT
    return runs + (descents[:, 0] == want_descent)
