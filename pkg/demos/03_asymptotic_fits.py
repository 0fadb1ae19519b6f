#! /usr/bin/env python3
"""Inverse-power fits of standardized moments, compared with the closed forms.

The even fits reproduce the printed 1/n correction. The odd fits do not
match the printed odd expansion at the index it is stated for; they match it
one index up with 42 in place of 43, which is also what the third cumulant
(-16 n / 945) predicts.
"""


import mpmath

from stanleydist import (
    fit_inverse_powers,
    fit_odd_scaled,
    gaussian_moment,
    interpolate_in_r,
    iter_distributions,
    moments_from_table,
    paper_even_correction,
    paper_odd_coeffs,
)

NS = range(100, 201, 10)


def main():
    mts = {t.n: moments_from_table(t, 10) for t in iter_distributions(200) if t.n in NS}

    print("even moments: alpha_2r ~ g_r (1 + c/n)")
    ratios = {}
    for r in range(1, 5):
        s = fit_inverse_powers({n: mts[n].std_even[2 * r] for n in NS}, 3)
        c0, c1 = s.exact[:2]
        ratios[r] = c1 / c0 * 1764
        print(f"  r={r}: c_0 = {float(c0):.9f} (g_r = {gaussian_moment(r)}), "
              f"c = {float(c1 / c0):+.7f}, closed form {float(paper_even_correction(r)):+.7f}")
    print("  window drift of c_1 for r=2:", [f"{float(d):.1e}" for d in
          fit_inverse_powers({n: mts[n].std_even[4] for n in NS}, 3).drift(1)])
    poly = interpolate_in_r(ratios, 3)
    print("  cubic through 1764 c(r), r=1..4:", [round(float(c), 3) for c in poly], "vs [10, -723, 713, 0]")

    print("\nodd moments: alpha_{2r+1} sqrt(n) ~ c_0 + c_1/n")
    for r in range(1, 4):
        s = fit_odd_scaled({n: mts[n].std_odd_q[2 * r + 1] for n in NS},
                           {n: mts[n].central[2] for n in NS}, 3)
        printed = paper_odd_coeffs(r).leading()
        shifted = paper_odd_coeffs(r + 1).leading() * 43 / 42
        print(f"  r={r}: c_0 = {float(s.coefficients[0]):+.8f}; printed {float(printed):+.8f}; "
              f"printed at r+1 times 43/42 {float(shifted):+.8f}")
    print(f"  skewness limit -sqrt(10)/14 = {float(-mpmath.sqrt(10) / 14):+.8f}")


if __name__ == "__main__":
    main()
