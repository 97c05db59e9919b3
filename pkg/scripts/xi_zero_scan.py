"""Sign changes of t -> xi(B + it) for both kernels, next to the zeta zeros.

The operator zeros sit close to, but not on, the ordinates of the zeta zeros;
the last column shows the offset from the nearest tabulated ordinate.
"""

import argparse

import mpmath as mp

from umbra.explicit_formula import default_zeros_path, load_zeros
from umbra.xi_operator import PLAIN, SIN_WEIGHTED, scan_xi_zeros


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--t-max", type=float, default=60)
    ap.add_argument("--step", type=float, default=0.5)
    ap.add_argument("--precision", type=int, default=30)
    args = ap.parse_args()
    mp.mp.dps = args.precision
    table = load_zeros(default_zeros_path()).ordinates
    for flavor in (PLAIN, SIN_WEIGHTED):
        zeros = scan_xi_zeros(args.t_max, args.step, flavor)
        print(f"{flavor}: {len(zeros)} sign changes on (0, {args.t_max:g}]")
        for k, t in enumerate(zeros, 1):
            nearest = min(table, key=lambda g: abs(g - t))
            print(f"  {k:>3}  {mp.nstr(t, 10):<14} zeta zero {mp.nstr(nearest, 10):<14} offset {mp.nstr(t - nearest, 3)}")


if __name__ == "__main__":
    main()
