"""Exact moments of the statistic and the closed forms they are checked against.

Everything here is :class:`fractions.Fraction`. Odd standardized moments
carry an irrational factor 1/sqrt(m_2); they are stored without it as
``q_{2r+1} = m_{2r+1} / m_2**r`` and the square root is applied only when a
number is rendered (see :meth:`MomentTable.alpha`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .distexact import DistributionTable

__all__ = [
    "DEFAULT_MAX_MOMENT",
    "MomentTable",
    "OddCoefficients",
    "ZeroVarianceError",
    "gaussian_moment",
    "moments_from_table",
    "paper_even_correction",
    "paper_mean",
    "paper_odd_coeffs",
    "paper_variance",
    "predict_alpha",
]

DEFAULT_MAX_MOMENT = 12

EVEN_DENOMINATOR = 1764
ODD_DENOMINATOR = 931392
ODD_PREFACTOR = Fraction(-1, 43)  # times sqrt(10)


class ZeroVarianceError(ValueError):
    """Standardized moments requested for a degenerate (n = 1) law."""


@dataclass(frozen=True)
class MomentTable:
    n: int
    mean: Fraction
    central: dict[int, Fraction]  # r -> m_r, r = 2..R
    std_even: dict[int, Fraction] = field(default_factory=dict)  # 2r -> alpha_{2r}
    std_odd_q: dict[int, Fraction] = field(default_factory=dict)  # 2r+1 -> q_{2r+1}
    max_moment: int = DEFAULT_MAX_MOMENT

    @property
    def variance(self) -> Fraction:
        return self.central[2]

    @property
    def standardized(self) -> bool:
        return bool(self.std_even)

    def alpha(self, order: int, digits: int = 30):
        """Standardized moment of the given order as an mpmath number."""
        if not self.standardized:
            raise ZeroVarianceError(f"n={self.n}: zero variance, alpha undefined")
        ctx = mpmath.MPContext()
        ctx.dps = digits
        if order % 2 == 0:
            q = self.std_even[order]
            return ctx.mpf(q.numerator) / q.denominator
        q = self.std_odd_q[order]
        m2 = self.central[2]
        return (ctx.mpf(q.numerator) / q.denominator) / ctx.sqrt(
            ctx.mpf(m2.numerator) / m2.denominator
        )


def moments_from_table(t: DistributionTable, max_moment: int = DEFAULT_MAX_MOMENT) -> MomentTable:
    """Mean, central moments m_2..m_R and standardized moments of the law in ``t``.

    Standardized entries are left empty when the variance is zero (n = 1);
    :meth:`MomentTable.alpha` then raises :class:`ZeroVarianceError`.

    >>> from stanleydist.distexact import distribution_dp
    >>> mt = moments_from_table(distribution_dp(4))
    >>> mt.mean, mt.central[2], mt.std_odd_q[3]
    (Fraction(17, 6), Fraction(23, 36), Fraction(-10, 69))
    """
    if max_moment < 2:
        raise ValueError("max_moment must be >= 2")
    total = t.total
    ks = range(1, t.n + 1)
    mean = Fraction(sum(k * c for k, c in zip(ks, t.counts)), total)
    p, q = mean.numerator, mean.denominator
    # (k - mean)^r = (q k - p)^r / q^r, summed in integers
    shifted = [(q * k - p, c) for k, c in zip(ks, t.counts) if c]
    central = {}
    for r in range(2, max_moment + 1):
        s = sum(c * d**r for d, c in shifted)
        central[r] = Fraction(s, total * q**r)

    m2 = central[2]
    std_even: dict[int, Fraction] = {}
    std_odd: dict[int, Fraction] = {}
    if m2 != 0:
        std_odd[1] = Fraction(0)  # first moment of a centered variable
        for order in range(2, max_moment + 1):
            half = order // 2
            value = central[order] / m2**half
            if order % 2 == 0:
                std_even[order] = value
            else:
                std_odd[order] = value
    return MomentTable(t.n, mean, central, std_even, std_odd, max_moment)


def paper_mean(n: int) -> Fraction:
    return Fraction(2 * n, 3) + Fraction(1, 6)


def paper_variance(n: int) -> Fraction:
    """8n/45 - 13/180; exact for n >= 4, off by 1/90 at n = 3."""
    return Fraction(8 * n, 45) - Fraction(13, 180)


def gaussian_moment(r: int) -> Fraction:
    """(2r)! / (2^r r!), the 2r-th moment of a standard normal."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return Fraction(math.factorial(2 * r), 2**r * math.factorial(r))


def paper_even_correction(r: int) -> Fraction:
    """Coefficient of 1/n in alpha_{2r} / gaussian_moment(r)."""
    if r < 0:
        raise ValueError("r must be >= 0")
    return Fraction(r * (r - 1) * (10 * r - 713), EVEN_DENOMINATOR)


def _odd_inner_poly(r: int) -> int:
    return 1760 * r**3 - 381744 * r**2 + 1430752 * r + 150351


@dataclass(frozen=True)
class OddCoefficients:
    """Odd-moment expansion alpha_{2r+1} sqrt(n) ~ sqrt(10) (lead + lead_1/n).

    ``leading_q`` and ``first_order_q`` are the rational multipliers of
    sqrt(10). ``correction`` is the 1/n term inside the bracket, relative to
    the (r - 1) factor; ``inner`` is the bare polynomial ratio
    poly(r)/931392, which is what remains meaningful at r = 1.
    """

    r: int
    leading_q: Fraction
    first_order_q: Fraction
    correction: Fraction
    inner: Fraction

    def leading(self, digits: int = 30):
        ctx = mpmath.MPContext()
        ctx.dps = digits
        return ctx.sqrt(10) * self.leading_q.numerator / self.leading_q.denominator

    def first_order(self, digits: int = 30):
        ctx = mpmath.MPContext()
        ctx.dps = digits
        q = self.first_order_q
        return ctx.sqrt(10) * q.numerator / q.denominator


def paper_odd_coeffs(r: int) -> OddCoefficients:
    if r < 0:
        raise ValueError("r must be >= 0")
    g = gaussian_moment(r)
    inner = Fraction(_odd_inner_poly(r), ODD_DENOMINATOR)
    correction = (r - 1) * inner
    return OddCoefficients(
        r=r,
        leading_q=ODD_PREFACTOR * g * (r - 1),
        first_order_q=ODD_PREFACTOR * g * correction,
        correction=correction,
        inner=inner,
    )


def predict_alpha(n, r: int, parity: str, order: int = 1, digits: int = 30):
    """Truncated closed-form prediction of alpha_{2r} or alpha_{2r+1}.

    ``parity`` is ``"even"`` or ``"odd"``; ``order`` 0 keeps only the
    leading term, 1 adds the printed 1/n term. ``n`` may be ``math.inf``.
    Both families need r >= 1; the odd one is identically 0 at r = 1. At
    r = 0 the odd formula would give a nonzero first moment, which is wrong
    for a standardized variable.
    """
    if order not in (0, 1):
        raise ValueError("only orders 0 and 1 are printed")
    ctx = mpmath.MPContext()
    ctx.dps = digits
    inv_n = ctx.zero if n == math.inf else ctx.one / ctx.mpf(n)
    if parity == "even":
        if r < 1:
            raise ValueError("even prediction needs r >= 1")
        g = gaussian_moment(r)
        corr = paper_even_correction(r)
        bracket = 1 + (ctx.mpf(corr.numerator) / corr.denominator) * inv_n * order
        return ctx.mpf(g.numerator) / g.denominator * bracket
    if parity == "odd":
        if r < 1:
            raise ValueError("odd prediction needs r >= 1")
        if r == 1:
            return ctx.zero
        c = paper_odd_coeffs(r)
        lead = ctx.mpf(c.leading_q.numerator) / c.leading_q.denominator
        first = ctx.mpf(c.first_order_q.numerator) / c.first_order_q.denominator
        if n == math.inf:
            return ctx.zero
        return ctx.sqrt(10) * (lead + first * inv_n * order) / ctx.sqrt(n)
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")
