"""Difference between the prime side and the explicit side as zeros are added.

Prints |psi(x) - explicit(x)| for each K and x, and the mean over the x grid.
"""

import argparse

import mpmath as mp

from umbra.explicit_formula import default_zeros_path, load_zeros, psi_explicit_side


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x", type=float, nargs="+", default=[10, 20, 50])
    ap.add_argument("--K", type=int, nargs="+", default=[0, 10, 20, 50, 100])
    ap.add_argument("--precision", type=int, default=30)
    args = ap.parse_args()
    mp.mp.dps = args.precision
    zeros = load_zeros(default_zeros_path())
    print(f"{'K':>5}  " + "  ".join(f"x={x:<8g}" for x in args.x) + "  mean")
    for K in args.K:
        diffs = [psi_explicit_side(x, zeros, K).difference for x in args.x]
        mean = mp.fsum(diffs) / len(diffs)
        print(f"{K:>5}  " + "  ".join(f"{mp.nstr(d, 4):<10}" for d in diffs) + f"  {mp.nstr(mean, 4)}")


if __name__ == "__main__":
    main()
