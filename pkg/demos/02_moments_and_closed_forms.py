#! /usr/bin/env python3
"""Exact moments against the closed forms for the mean and the variance."""

from stanleydist import iter_distributions, moments_from_table, paper_mean, paper_variance


def main():
    print(f"{'n':>3}  {'mean':>8}  {'2n/3+1/6':>8}  {'m_2':>9}  {'8n/45-13/180':>12}  q_3 = m_3/m_2")
    for t in iter_distributions(12):
        mt = moments_from_table(t, 4)
        print(f"{t.n:>3}  {str(mt.mean):>8}  {str(paper_mean(t.n)):>8}  {str(mt.central[2]):>9}  "
              f"{str(paper_variance(t.n)):>12}  {mt.std_odd_q.get(3, '-')}")
    print("\nmean(1) = 1 while 2/3 + 1/6 = 5/6; at n = 3 the variance is 17/36, "
          "the formula gives 83/180.")

    mt = moments_from_table(list(iter_distributions(150))[-1], 8)
    print("\nstandardized moments at n = 150:")
    for order in range(2, 9):
        print(f"  alpha_{order} = {mt.alpha(order, 20)}")


if __name__ == "__main__":
    main()
