import decimal
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from stanleydist.asymfit import (
    FitError,
    evaluate_poly,
    fit_inverse_powers,
    fit_odd_scaled,
    interpolate_in_r,
    solve_exact,
    to_high_precision,
)
from stanleydist.moments import gaussian_moment, paper_even_correction, paper_odd_coeffs

D = decimal.Decimal


def test_to_high_precision():
    assert str(to_high_precision(Fraction(1, 3), 30)) == "0." + "3" * 30
    assert str(to_high_precision(Fraction(17, 6), 30)).startswith("2.8333333")
    assert str(to_high_precision(Fraction(-10, 69))).startswith("-0.14492753")
    with pytest.raises(ValueError):
        to_high_precision(Fraction(1, 3), 10)


def test_exact_model_recovered():
    s = fit_inverse_powers({n: 1 + Fraction(5, n) for n in (10, 11, 12)}, order=1)
    assert s.exact == (1, 5)
    assert s.coefficients == (D(1), D(5))
    assert s.max_residual == 0
    s = fit_inverse_powers({n: Fraction(3) for n in (5, 6, 7, 8)}, order=2)
    assert s.exact == (3, 0, 0)


@given(
    st.lists(st.fractions(max_denominator=50).filter(lambda x: abs(x) < 100), min_size=1, max_size=5),
    st.integers(1, 40),
)
def test_exact_on_polynomials_in_inverse_n(coeffs, start):
    order = len(coeffs) - 1
    samples = {n: sum(c / Fraction(n) ** j for j, c in enumerate(coeffs)) for n in range(start, start + order + 4)}
    s = fit_inverse_powers(samples, order)
    assert list(s.exact) == coeffs
    assert s.max_residual == 0


def test_fit_errors():
    with pytest.raises(FitError):
        fit_inverse_powers({10: 1, 11: 2}, order=1)  # one window only
    with pytest.raises(FitError):
        fit_inverse_powers({0: 1, 1: 1, 2: 1}, order=1)
    with pytest.raises(FitError):
        solve_exact([[1, 1], [2, 2]], [1, 2])
    with pytest.raises(FitError):
        fit_odd_scaled({1: 1, 2: 1, 3: 1}, {1: 1, 2: 1}, order=1)


def test_float_and_decimal_samples():
    with decimal.localcontext(decimal.Context(prec=70)):
        samples = {n: D(2) + D(1) / D(n) for n in (20, 21, 22, 23)}
    s = fit_inverse_powers(samples, order=1)
    assert abs(s.coefficients[0] - 2) < D("1e-50")
    s = fit_inverse_powers({n: 2.0 for n in (20, 21, 22)}, order=1)
    assert s.exact == (2, 0)


def test_odd_scaled_constant():
    # q sqrt(n/m_2) = 7 with m_2 = n
    s = fit_odd_scaled({n: Fraction(7) for n in range(10, 15)}, {n: Fraction(n) for n in range(10, 15)}, order=2)
    assert s.prefactor_exponent == Fraction(-1, 2)
    assert abs(s.coefficients[0] - 7) < D("1e-55")


def test_alpha4_fit(fit_moments):
    s = fit_inverse_powers({n: m.std_even[4] for n, m in fit_moments.items()}, 3)
    c0, c1 = s.exact[:2]
    assert abs(c0 / 3 - 1) < 1e-3
    assert abs(c1 / c0 / paper_even_correction(2) - 1) < 1e-3


@pytest.mark.parametrize("r", [2, 3, 4])
def test_even_drift_shrinks(fit_moments, r):
    s = fit_inverse_powers({n: m.std_even[2 * r] for n, m in fit_moments.items()}, 3)
    assert len(s.windows) == 8
    assert s.is_converging(upto=3)
    assert s.windows[-1].ns == (170, 180, 190, 200)


def test_precision_change_below_drift(fit_moments):
    q = {n: m.std_odd_q[5] for n, m in fit_moments.items()}
    m2 = {n: m.central[2] for n, m in fit_moments.items()}
    lo = fit_odd_scaled(q, m2, 3, digits=64)
    hi = fit_odd_scaled(q, m2, 3, digits=128)
    for j in range(4):
        assert abs(hi.coefficients[j] - lo.coefficients[j]) < lo.uncertainty(j)


def skewness_prediction(r):
    """Leading alpha_{2r+1} sqrt(n) from the cumulant expansion.

    With kappa_3 ~ -16 n / 945 and variance ~ 8 n / 45, the standardized
    third cumulant times sqrt(n) is -sqrt(10)/14, and the (2r+1)-th moment
    picks it up C(2r+1, 3) (2r-3)!! = g_r r (2r+1) / 3 times.
    """
    gamma = -mpmath.sqrt(10) / 14
    return gamma * float(gaussian_moment(r)) * r * (2 * r + 1) / 3


@pytest.mark.parametrize("r", [1, 2, 3, 4])
def test_odd_leading_matches_skewness_expansion(fit_moments, r):
    q = {n: m.std_odd_q[2 * r + 1] for n, m in fit_moments.items()}
    m2 = {n: m.central[2] for n, m in fit_moments.items()}
    s = fit_odd_scaled(q, m2, 3)
    pred = skewness_prediction(r)
    assert abs(float(s.coefficients[0]) / float(pred) - 1) < 1e-6
    assert s.is_converging()


@pytest.mark.parametrize("r", [1, 2, 3])
def test_odd_fit_equals_shifted_closed_form_times_43_over_42(fit_moments, r):
    # the printed odd expansion, read at index r + 1 and rescaled by 43/42,
    # reproduces both fitted coefficients of alpha_{2r+1} sqrt(n)
    q = {n: m.std_odd_q[2 * r + 1] for n, m in fit_moments.items()}
    m2 = {n: m.central[2] for n, m in fit_moments.items()}
    s = fit_odd_scaled(q, m2, 3)
    shifted = paper_odd_coeffs(r + 1)
    assert abs(float(s.coefficients[0]) / float(shifted.leading() * 43 / 42) - 1) < 1e-6
    assert abs(float(s.coefficients[1]) / float(shifted.first_order() * 43 / 42) - 1) < 1e-3


def test_interpolate_even_correction():
    coeffs = interpolate_in_r({r: paper_even_correction(r) for r in range(4)}, 3)
    assert [c * 1764 for c in coeffs] == [10, -723, 713, 0]
    assert interpolate_in_r({0: Fraction(4), 3: Fraction(4)}, 0) == [4]
    with pytest.raises(FitError):
        interpolate_in_r({0: 1, 1: 2, 2: 5}, 1)
    with pytest.raises(FitError):
        interpolate_in_r({0: 1}, 1)


@given(st.lists(st.fractions(max_denominator=20), min_size=1, max_size=6), st.integers(-5, 5))
def test_interpolation_round_trip(coeffs, offset):
    degree = len(coeffs) - 1
    values = {r: evaluate_poly(coeffs, r) for r in range(offset, offset + degree + 1)}
    got = interpolate_in_r(values, degree)
    assert got == [Fraction(c) for c in coeffs]


def test_fitted_even_polynomial(fit_moments):
    values = {}
    for r in range(1, 5):
        s = fit_inverse_powers({n: m.std_even[2 * r] for n, m in fit_moments.items()}, 3)
        values[r] = s.exact[1] / s.exact[0] * 1764
    coeffs = interpolate_in_r(values, 3)
    for got, want in zip(coeffs, (10, -723, 713, 0)):
        assert abs(got - want) < 0.05


def test_report_dict_shape(fit_moments):
    s = fit_inverse_powers({n: m.std_even[4] for n, m in fit_moments.items()}, 3)
    d = s.to_dict()
    assert d["prefactor_exponent"] == "0"
    assert len(d["coefficients"]) == 4
    assert len(d["windows"]) == 8 and "relative_delta" in d["windows"][1]
