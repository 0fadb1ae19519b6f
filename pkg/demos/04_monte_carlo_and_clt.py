#! /usr/bin/env python3
"""Seeded sampling against the exact law, and distance to the normal law."""

from stanleydist import distribution_dp, empirical_histogram, iter_distributions, kolmogorov_to_normal, tv_distance


def main():
    exact = distribution_dp(8)
    for m in (1_000, 10_000, 100_000, 1_000_000):
        h = empirical_histogram(8, m, seed=1)
        print(f"n=8, M={m:>9}: TV to exact = {tv_distance(h, exact):.5f}")

    print("\nsampling beyond exact reach, n = 2000, M = 20000:")
    h = empirical_histogram(2000, 20_000, seed=7)
    k = max(range(1, 2001), key=lambda k: h.counts[k - 1])
    print(f"  most frequent value {k}; 2n/3 + 1/6 = {2 * 2000 / 3 + 1 / 6:.2f}")

    print("\nKolmogorov distance of the standardized law to N(0,1):")
    wanted = {10, 25, 50, 100, 200, 300}
    for t in iter_distributions(300):
        if t.n in wanted:
            print(f"  n={t.n:>3}: {kolmogorov_to_normal(t):.5f}")


if __name__ == "__main__":
    main()
