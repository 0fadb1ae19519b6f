"""Inverse-power series fits to exact moment sequences.

A sequence f(n) is modelled as ``sum_j c_j n**-j`` for j = 0..J. Each window
of J+1 consecutive sample points determines the coefficients exactly (a
Vandermonde system in 1/n). The window that reaches the largest n supplies
the reported coefficients, and the change from the previous window is the
uncertainty estimate.

Samples are converted to :class:`~fractions.Fraction` before solving, so the
solve itself is exact. Irrational samples (odd moments) are first rounded to
``digits`` significant digits. Results come back as :class:`decimal.Decimal`
at that precision, under a local decimal context.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

__all__ = [
    "AsymptoticSeries",
    "Comparison",
    "FitError",
    "FitReport",
    "WindowFit",
    "compare",
    "evaluate_poly",
    "fit_inverse_powers",
    "fit_odd_scaled",
    "interpolate_in_r",
    "solve_exact",
    "to_high_precision",
]

DEFAULT_DIGITS = 64
MIN_DIGITS = 30


class FitError(ValueError):
    """Bad fit input: too few samples, duplicate n, or a singular window."""


def _context(digits: int) -> decimal.Context:
    if digits < MIN_DIGITS:
        raise ValueError(f"precision must be at least {MIN_DIGITS} digits")
    return decimal.Context(prec=digits, rounding=decimal.ROUND_HALF_EVEN)


def to_high_precision(x, digits: int = DEFAULT_DIGITS) -> decimal.Decimal:
    """Correctly rounded decimal value of a rational (or int/Decimal)."""
    ctx = _context(digits)
    x = Fraction(x)
    return ctx.divide(decimal.Decimal(x.numerator), decimal.Decimal(x.denominator))


def _as_fraction(value, digits: int) -> Fraction:
    if isinstance(value, (Fraction, int)):
        return Fraction(value)
    if isinstance(value, decimal.Decimal):
        return Fraction(_context(digits).plus(value))
    if isinstance(value, float):
        return Fraction(value)
    # mpmath and friends: go through a decimal string
    return Fraction(_context(digits).create_decimal(str(value)))


def solve_exact(matrix: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Gaussian elimination over the rationals."""
    size = len(rhs)
    a = [list(map(Fraction, row)) + [Fraction(b)] for row, b in zip(matrix, rhs)]
    for col in range(size):
        pivot = next((i for i in range(col, size) if a[i][col] != 0), None)
        if pivot is None:
            raise FitError("singular system")
        a[col], a[pivot] = a[pivot], a[col]
        for i in range(size):
            if i != col and a[i][col] != 0:
                f = a[i][col] / a[col][col]
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return [a[i][size] / a[i][i] for i in range(size)]


@dataclass(frozen=True)
class WindowFit:
    ns: tuple[int, ...]
    coefficients: tuple[Fraction, ...]


@dataclass(frozen=True)
class AsymptoticSeries:
    """Coefficients c_0..c_J of ``n**prefactor_exponent * sum_j c_j n**-j``."""

    prefactor_exponent: Fraction
    coefficients: tuple[decimal.Decimal, ...]
    windows: tuple[WindowFit, ...]
    digits: int = DEFAULT_DIGITS
    exact: tuple[Fraction, ...] = field(default=(), repr=False)
    max_residual: decimal.Decimal | None = None

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def drift(self, j: int) -> list[decimal.Decimal]:
        """Relative change of c_j between successive windows.

        Falls back to the absolute change when the later value is zero.
        """
        ctx = _context(self.digits)
        out = []
        for prev, cur in zip(self.windows, self.windows[1:]):
            a, b = prev.coefficients[j], cur.coefficients[j]
            delta = abs(b - a)
            scale = abs(b) if b != 0 else Fraction(1)
            out.append(to_high_precision(delta / scale, self.digits) if delta else ctx.create_decimal(0))
        return out

    def uncertainty(self, j: int) -> decimal.Decimal:
        """Absolute change of c_j between the last two windows."""
        last, prev = self.windows[-1].coefficients[j], self.windows[-2].coefficients[j]
        return to_high_precision(abs(last - prev), self.digits)

    def is_converging(self, upto: int = 1) -> bool:
        """Drift of c_0..c_upto shrinks monotonically as windows move out."""
        for j in range(upto + 1):
            d = self.drift(j)
            if any(b > a for a, b in zip(d, d[1:])):
                return False
        return True

    def diagnostics(self) -> list[dict]:
        rows = []
        for idx, w in enumerate(self.windows):
            row = {
                "n": list(w.ns),
                "coefficients": [str(to_high_precision(c, self.digits)) for c in w.coefficients],
            }
            if idx:
                row["relative_delta"] = [str(self.drift(j)[idx - 1]) for j in range(self.order + 1)]
            rows.append(row)
        return rows

    def to_dict(self) -> dict:
        return {
            "prefactor_exponent": str(self.prefactor_exponent),
            "precision_digits": self.digits,
            "coefficients": [str(c) for c in self.coefficients],
            "uncertainty": [str(self.uncertainty(j)) for j in range(self.order + 1)],
            "max_residual": None if self.max_residual is None else str(self.max_residual),
            "windows": self.diagnostics(),
        }


def _windows(ns: list[int], size: int, policy: str) -> list[list[int]]:
    if policy == "consecutive":
        return [ns[i : i + size] for i in range(len(ns) - size + 1)]
    if policy == "last2":
        return [ns[-size - 1 : -1], ns[-size:]]
    raise ValueError(f"unknown window policy {policy!r}")


def fit_inverse_powers(
    samples: Mapping[int, object],
    order: int = 3,
    window_policy: str = "consecutive",
    digits: int = DEFAULT_DIGITS,
    prefactor_exponent: Fraction = Fraction(0),
) -> AsymptoticSeries:
    """Fit ``f(n) = sum_{j<=order} c_j / n**j`` on sliding windows.

    ``samples`` maps distinct positive n to values (Fraction, int, Decimal,
    float or anything whose ``str`` is a decimal literal). At least
    ``order + 2`` samples are needed so that two windows exist.

    >>> s = fit_inverse_powers({10: Fraction(3, 2), 11: Fraction(16, 11), 12: Fraction(17, 12)}, order=1)
    >>> [str(c) for c in s.coefficients]
    ['1', '5']
    """
    if order < 0:
        raise ValueError("order must be >= 0")
    items = list(samples.items())
    ns = [int(n) for n, _ in items]
    if len(set(ns)) != len(ns):
        raise FitError("duplicate n in samples")
    if any(n <= 0 for n in ns):
        raise FitError("sample n must be positive")
    size = order + 1
    if len(ns) < size + 1:
        raise FitError(f"need at least {size + 1} samples for order {order}, got {len(ns)}")
    values = {int(n): _as_fraction(v, digits) for n, v in items}
    ns.sort()

    fits = []
    for win in _windows(ns, size, window_policy):
        matrix = [[Fraction(1, n**j) for j in range(size)] for n in win]
        coeffs = solve_exact(matrix, [values[n] for n in win])
        fits.append(WindowFit(tuple(win), tuple(coeffs)))
    best = fits[-1].coefficients
    residual = max(abs(values[n] - sum(c / Fraction(n) ** j for j, c in enumerate(best))) for n in ns)
    return AsymptoticSeries(
        prefactor_exponent=Fraction(prefactor_exponent),
        coefficients=tuple(to_high_precision(c, digits) for c in best),
        windows=tuple(fits),
        digits=digits,
        exact=tuple(best),
        max_residual=to_high_precision(residual, digits),
    )


def fit_odd_scaled(
    q_values: Mapping[int, Fraction],
    m2_values: Mapping[int, Fraction],
    order: int = 3,
    window_policy: str = "consecutive",
    digits: int = DEFAULT_DIGITS,
) -> AsymptoticSeries:
    """Fit an odd standardized moment times sqrt(n).

    alpha_{2r+1} sqrt(n) = q_{2r+1} sqrt(n / m_2), evaluated with a few
    guard digits and handed to :func:`fit_inverse_powers`. The returned
    series has ``prefactor_exponent = -1/2`` (it models alpha itself).
    """
    if set(q_values) != set(m2_values):
        raise FitError("q and m_2 samples must cover the same n")
    ctx = _context(digits + 10)
    scaled = {}
    for n, q in q_values.items():
        m2 = Fraction(m2_values[n])
        if m2 <= 0:
            raise FitError(f"non-positive variance at n={n}")
        ratio = Fraction(n) / m2
        root = ctx.sqrt(ctx.divide(decimal.Decimal(ratio.numerator), decimal.Decimal(ratio.denominator)))
        scaled[n] = ctx.multiply(to_high_precision(Fraction(q), digits + 10), root)
    return fit_inverse_powers(scaled, order, window_policy, digits, prefactor_exponent=Fraction(-1, 2))


def evaluate_poly(coeffs: Sequence[Fraction], x) -> Fraction:
    """Evaluate a polynomial given highest-degree-first coefficients."""
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def interpolate_in_r(values: Mapping[int, object], degree: int) -> list[Fraction]:
    """Exact polynomial through ``(r, values[r])``, highest degree first.

    Exactly ``degree + 1`` points are used (the smallest r values); extra
    points must lie on the result, otherwise :class:`FitError` is raised.

    >>> interpolate_in_r({r: Fraction(r * (r - 1) * (10 * r - 713)) for r in range(4)}, 3)
    [Fraction(10, 1), Fraction(-723, 1), Fraction(713, 1), Fraction(0, 1)]
    """
    pts = sorted((int(r), Fraction(v)) for r, v in values.items())
    if len({r for r, _ in pts}) != len(pts):
        raise FitError("duplicate r")
    if len(pts) < degree + 1:
        raise FitError(f"need {degree + 1} points for degree {degree}, got {len(pts)}")
    used, extra = pts[: degree + 1], pts[degree + 1 :]
    # ascending-power Vandermonde solve
    matrix = [[Fraction(r) ** j for j in range(degree + 1)] for r, _ in used]
    ascending = solve_exact(matrix, [v for _, v in used])
    coeffs = ascending[::-1]
    for r, v in extra:
        if evaluate_poly(coeffs, r) != v:
            raise FitError(f"point r={r} is not on the degree-{degree} interpolant")
    return coeffs


@dataclass(frozen=True)
class Comparison:
    label: str
    expected: decimal.Decimal
    fitted: decimal.Decimal
    abs_error: decimal.Decimal
    rel_error: decimal.Decimal | None

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "paper": str(self.expected),
            "fitted": str(self.fitted),
            "abs_error": str(self.abs_error),
            "rel_error": None if self.rel_error is None else str(self.rel_error),
        }


def _decimal(x, digits: int) -> decimal.Decimal:
    if isinstance(x, (Fraction, int)):
        return to_high_precision(x, digits)
    if isinstance(x, decimal.Decimal):
        return _context(digits).plus(x)
    return _context(digits).create_decimal(str(x))


def compare(label: str, expected, fitted, digits: int = DEFAULT_DIGITS) -> Comparison:
    """Absolute and relative error of a fitted value against a closed form."""
    ctx = _context(digits)
    e = _decimal(expected, digits)
    f = _decimal(fitted, digits)
    err = ctx.abs(ctx.subtract(f, e))
    rel = ctx.divide(err, ctx.abs(e)) if e != 0 else None
    return Comparison(label, e, f, err, rel)


@dataclass
class FitReport:
    target: str
    n_values: list[int]
    series: AsymptoticSeries
    comparisons: list[Comparison] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "schema_version": 1,
            "kind": "FitReport",
            "target": self.target,
            "n_values": self.n_values,
            "series": self.series.to_dict(),
            "converging": self.series.is_converging(min(1, self.series.order)) if len(self.series.windows) > 2 else None,
            "comparisons": [c.to_dict() for c in self.comparisons],
        }


