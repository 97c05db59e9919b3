"""Convergence of the two double-sum constants against their closed forms."""

import argparse

import mpmath as mp

from umbra.catalogue import lambda1_brute, lambda2_brute


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--precision", type=int, default=30)
    args = ap.parse_args()
    mp.mp.dps = args.precision
    c1 = (1 + mp.log(2)) / 2 - 5 * mp.pi**2 / 48
    c2 = (1 - 2 * mp.log(2)) / 4
    print("lambda_1: outer sum split at N, Euler-Maclaurin tail beyond")
    for N in (5, 10, 20, 40):
        print(f"  N={N:<4} {mp.nstr(lambda1_brute(N), 25)}  gap {mp.nstr(abs(lambda1_brute(N) - c1), 3)}")
    print("lambda_2: Richardson over partial sums at N = 20 * 2^j")
    for levels in (3, 5, 7):
        v = lambda2_brute(levels)
        print(f"  levels={levels:<2} {mp.nstr(v, 25)}  gap {mp.nstr(abs(v - c2), 3)}")


if __name__ == "__main__":
    main()
