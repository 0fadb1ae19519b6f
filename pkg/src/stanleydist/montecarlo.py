"""Seeded sampling of the statistic and distances to the exact law."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .distexact import DistributionTable
from .moments import moments_from_table
from .permcore import Convention, as_linear_batch, make_rng, sample_permutations

__all__ = [
    "EmpiricalHistogram",
    "empirical_histogram",
    "kolmogorov_to_normal",
    "normal_cdf",
    "tv_distance",
]

CHUNK = 50_000


@dataclass(frozen=True)
class EmpiricalHistogram:
    n: int
    samples: int
    counts: tuple[int, ...]  # k = 1..n
    seed: int
    convention: Convention = Convention.FIRST_STEP_DESCENT

    def __post_init__(self):
        if len(self.counts) != self.n:
            raise ValueError("counts must have length n")
        if sum(self.counts) != self.samples:
            raise ValueError("counts must sum to the sample size")

    def proportions(self) -> list[Fraction]:
        return [Fraction(c, self.samples) for c in self.counts]


def empirical_histogram(
    n: int,
    samples: int,
    seed: int,
    convention: Convention = Convention.FIRST_STEP_DESCENT,
) -> EmpiricalHistogram:
    """Histogram of the statistic over ``samples`` uniform permutations.

    One PCG64 stream seeded with ``seed`` drives everything; permutations
    are generated in chunks of 50000 rows, in order, so the result depends
    only on (n, samples, seed).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = make_rng(seed)
    counts = np.zeros(n + 1, dtype=np.int64)
    left = samples
    while left:
        size = min(CHUNK, left)
        stats = as_linear_batch(sample_permutations(n, size, rng), convention)
        counts += np.bincount(stats, minlength=n + 1)
        left -= size
    return EmpiricalHistogram(n, samples, tuple(int(c) for c in counts[1:]), seed, convention)


def _proportions(x) -> list[Fraction]:
    if isinstance(x, (EmpiricalHistogram, DistributionTable)):
        return x.proportions() if isinstance(x, EmpiricalHistogram) else x.probabilities()
    raise TypeError(f"cannot take proportions of {type(x).__name__}")


def tv_distance(a, b) -> float:
    """Half the L1 distance between two laws on {1..n}.

    Either argument may be an :class:`EmpiricalHistogram` or a
    :class:`DistributionTable`; the sum is exact and rounded once.
    """
    pa, pb = _proportions(a), _proportions(b)
    if len(pa) != len(pb):
        raise ValueError("histograms must have the same n")
    return float(sum(abs(x - y) for x, y in zip(pa, pb)) / 2)


def normal_cdf(x: float) -> float:
    return 0.5 * math.erfc(-x / math.sqrt(2.0))


def kolmogorov_to_normal(t: DistributionTable) -> float:
    """max_k |P(X <= k) - Phi((k - mu) / sigma)| using the exact mean and variance.

    No continuity correction; the discrete CDF is compared at its right
    endpoints k = 1..n only.
    """
    if t.n < 2:
        raise ValueError("n must be >= 2")
    mt = moments_from_table(t, 2)
    mu = mt.mean
    sigma = math.sqrt(mt.central[2])
    nfact = math.factorial(t.n)
    running = 0
    worst = 0.0
    for k, c in enumerate(t.counts, start=1):
        running += c
        gap = abs(float(Fraction(running, nfact)) - normal_cdf(float(k - mu) / sigma))
        worst = max(worst, gap)
    return worst
