#! /usr/bin/env python3
"""The statistic on single permutations, then its exact law on S_n."""

import math

from stanleydist import Convention, as_bruteforce, as_linear, complement, distribution_dp
from stanleydist.permcore import descent_word


def main():
    # one permutation, both evaluators, both conventions
    w = (3, 1, 4, 5, 2, 6)
    word = "".join(s.value for s in descent_word(w))
    print(f"w = {w}, descent word {word}")
    for conv in Convention:
        print(f"  {conv.value:>13}: linear {as_linear(w, conv)}, brute force {as_bruteforce(w, conv)}")
    print(f"  complement {complement(w).values} under descent-first: "
          f"{as_linear(complement(w), Convention.FIRST_STEP_DESCENT)}")

    # exact counts b_{n,k}
    print()
    for n in range(1, 9):
        t = distribution_dp(n)
        print(f"n={n}: {list(t.counts)}  (sum = {n}! = {math.factorial(n)})")

    t = distribution_dp(60)
    print(f"\nn=60 has {len(str(t.counts[30]))}-digit counts; the mode is at k = "
          f"{max(range(1, 61), key=lambda k: t[k])}")


if __name__ == "__main__":
    main()
