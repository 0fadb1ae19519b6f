import math
from fractions import Fraction

import mpmath
import pytest

from stanleydist.distexact import distribution_dp
from stanleydist.moments import (
    ZeroVarianceError,
    gaussian_moment,
    moments_from_table,
    paper_even_correction,
    paper_mean,
    paper_odd_coeffs,
    paper_variance,
    predict_alpha,
)
from stanleydist.permcore import all_permutations, as_bruteforce


def enumerated_moments(n, max_moment):
    """Moments straight from the permutations, without the table."""
    values = [as_bruteforce(w) for w in all_permutations(n)]
    mean = Fraction(sum(values), len(values))
    central = {r: sum((Fraction(v) - mean) ** r for v in values) / len(values) for r in range(2, max_moment + 1)}
    return mean, central


@pytest.mark.parametrize("n", range(2, 8))
def test_moments_match_enumeration(n):
    mean, central = enumerated_moments(n, 6)
    mt = moments_from_table(distribution_dp(n), 6)
    assert mt.mean == mean
    assert mt.central == central
    assert mt.std_even[4] == central[4] / central[2] ** 2
    assert mt.std_odd_q[5] == central[5] / central[2] ** 2


def test_worked_values():
    mt4 = moments_from_table(distribution_dp(4))
    assert mt4.mean == Fraction(17, 6)
    assert mt4.central[2] == Fraction(23, 36)
    assert mt4.central[3] == Fraction(-5, 54)
    assert mt4.std_odd_q[3] == Fraction(-10, 69)
    mt3 = moments_from_table(distribution_dp(3))
    assert (mt3.mean, mt3.central[2]) == (Fraction(13, 6), Fraction(17, 36))


def test_alpha_rendering():
    mt = moments_from_table(distribution_dp(4))
    assert mt.alpha(2) == 1
    with mpmath.workdps(40):
        expected = mpmath.mpf(-10) / 69 / mpmath.sqrt(mpmath.mpf(23) / 36)
        assert abs(mt.alpha(3) - expected) < mpmath.mpf(10) ** -25


def test_n1_is_degenerate():
    mt = moments_from_table(distribution_dp(1))
    assert mt.mean == 1 and mt.central[2] == 0
    assert not mt.standardized
    with pytest.raises(ZeroVarianceError):
        mt.alpha(4)
    with pytest.raises(ValueError):
        moments_from_table(distribution_dp(3), 1)


def test_closed_form_mean_and_variance():
    assert paper_mean(4) == Fraction(17, 6)
    assert paper_mean(2) == Fraction(3, 2)
    assert paper_mean(1) == Fraction(5, 6)
    assert paper_variance(4) == Fraction(23, 36)
    assert paper_variance(3) == Fraction(83, 180)
    assert paper_variance(100) == Fraction(3187, 180)


def test_mean_and_variance_over_range(tables):
    for n in range(2, 201):
        mt = moments_from_table(tables[n], 2)
        assert mt.mean == paper_mean(n)
        if n >= 4:
            assert mt.central[2] == paper_variance(n)
    assert moments_from_table(tables[3], 2).central[2] == Fraction(85, 180) != paper_variance(3)
    assert moments_from_table(tables[1], 2).mean == 1


def test_gaussian_moments():
    assert [gaussian_moment(r) for r in range(6)] == [1, 1, 3, 15, 105, 945]
    for r in range(1, 15):
        assert gaussian_moment(r) == (2 * r - 1) * gaussian_moment(r - 1)
        assert gaussian_moment(r) == Fraction(math.factorial(2 * r), 2**r * math.factorial(r))


def test_even_correction():
    assert paper_even_correction(1) == 0
    assert paper_even_correction(2) == Fraction(-11, 14)
    assert paper_even_correction(3) == Fraction(-683, 294)


def test_odd_coefficients():
    assert paper_odd_coeffs(1).leading_q == 0
    c2 = paper_odd_coeffs(2)
    assert c2.leading_q == Fraction(-3, 43)
    assert abs(c2.leading() + mpmath.mpf("0.220624")) < 1e-6
    assert c2.correction == Fraction(1498959, 931392)
    assert c2.inner == Fraction(1498959, 931392)


@mpmath.workdps(40)
def test_predict_alpha():
    assert predict_alpha(math.inf, 2, "even") == 3
    assert abs(predict_alpha(100, 2, "even") - 3 * (1 - mpmath.mpf(11) / 1400)) < mpmath.mpf(10) ** -25
    assert predict_alpha(50, 1, "odd", order=0) == 0
    assert predict_alpha(50, 1, "odd", order=1) == 0
    lead = predict_alpha(100, 2, "odd", order=0)
    assert abs(lead * 10 - paper_odd_coeffs(2).leading()) < mpmath.mpf(10) ** -25
    with pytest.raises(ValueError):
        predict_alpha(10, 0, "odd")
    with pytest.raises(ValueError):
        predict_alpha(10, 2, "sideways")


def test_third_central_moment_is_eventually_linear(tables):
    m3 = {n: moments_from_table(tables[n], 3).central[3] for n in range(6, 80)}
    assert all(m3[n + 1] - m3[n] == Fraction(-16, 945) for n in range(6, 79))
